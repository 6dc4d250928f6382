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

#include "greedyco/kernels.hpp"

namespace greedyco::kernels::scalar
{

double dot(const double* a, const double* b, std::size_t n) noexcept
{
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
    {
        s += a[i] * b[i];
    }
    return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) noexcept
{
    for (std::size_t i = 0; i < n; ++i)
    {
        y[i] += alpha * x[i];
    }
}

void axpby(double alpha, const double* x, double beta, const double* y,
           double* z, std::size_t n) noexcept
{
    for (std::size_t i = 0; i < n; ++i)
    {
        z[i] = alpha * x[i] + beta * y[i];
    }
}

}  // namespace greedyco::kernels::scalar
