/*
 * Copyright 2026 The greedyco Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "greedyco/random.hpp"

#include <cmath>

namespace greedyco
{

std::vector<double> random_unit_vector(Rng& rng, std::size_t n)
{
    std::vector<double> v(n);
    double s = 0.0;
    do
    {
        s = 0.0;
        for (double& x : v)
        {
            x = standard_normal(rng);
            s += x * x;
        }
    } while (s == 0.0);
    const double inv = 1.0 / std::sqrt(s);
    for (double& x : v)
    {
        x *= inv;
    }
    return v;
}

std::vector<double> random_in_ball(Rng& rng, std::size_t n, double radius)
{
    std::vector<double> v = random_unit_vector(rng, n);
    const double r =
        radius * std::pow(uniform(rng, 0.0, 1.0), 1.0 / static_cast<double>(n));
    for (double& x : v)
    {
        x *= r;
    }
    return v;
}

}  // namespace greedyco
