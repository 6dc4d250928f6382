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

#include <algorithm>
#include <cmath>
#include <limits>

#include "greedyco/objectives.hpp"
#include "greedyco/random.hpp"

namespace greedyco
{

double bregman_gap(const Objective& E, const Point& x, const Point& x_prime)
{
    if (x.dimension() != E.dimension())
    {
        throw DimensionMismatch(E.dimension(), x.dimension());
    }
    if (x_prime.dimension() != E.dimension())
    {
        throw DimensionMismatch(E.dimension(), x_prime.dimension());
    }
    return E.value(x_prime) - E.value(x) - inner(E.gradient(x), x_prime - x);
}

double check_gradient(const Objective& E, const Point& x, double h)
{
    if (!(h > 0.0))
    {
        throw InvalidArgument("finite-difference step must be positive");
    }
    const Point g = E.gradient(x);
    std::vector<double> probe = x.to_vector();
    double worst = 0.0;
    for (std::size_t i = 0; i < probe.size(); ++i)
    {
        const double xi = probe[i];
        probe[i] = xi + h;
        const double up = E.value(Point(probe));
        probe[i] = xi - h;
        const double down = E.value(Point(probe));
        probe[i] = xi;
        const double fd = (up - down) / (2.0 * h);
        worst = std::max(worst, std::abs(fd - g[i]) / (1.0 + std::abs(g[i])));
    }
    return worst;
}

ConditionEstimate estimate_condition_constants(const Objective& E,
                                               const ConditionSampling& cfg)
{
    if (cfg.sample_count == 0)
    {
        throw InvalidArgument("sample_count must be at least 1");
    }
    if (!(cfg.omega_radius > 0.0) || !(cfg.max_step > 0.0))
    {
        throw InvalidArgument("sampling radii must be positive");
    }
    if (!(cfg.q > 1.0 && cfg.q <= 2.0) || !(cfg.p >= 2.0))
    {
        throw InvalidArgument("exponents must satisfy 1 < q <= 2 <= p");
    }
    const std::size_t n = E.dimension();
    const Point center = cfg.center.value_or(Point::zeros(n));
    if (center.dimension() != n)
    {
        throw DimensionMismatch(n, center.dimension());
    }

    Rng rng = make_rng(cfg.seed);
    ConditionEstimate out;
    out.alpha_hat = 0.0;
    out.beta_hat = std::numeric_limits<double>::infinity();
    // Steps much shorter than M only measure cancellation noise in the gap.
    const double min_step = 1e-3 * cfg.max_step;
    for (std::size_t s = 0; s < cfg.sample_count; ++s)
    {
        const Point x = center + Point(random_in_ball(rng, n, cfg.omega_radius));
        const Point y(random_unit_vector(rng, n));
        const double d = uniform(rng, min_step, cfg.max_step);
        const Point xp = add_scaled(x, d, y);
        const double dist = norm(xp - x);
        if (dist == 0.0)
        {
            continue;
        }
        const double gap = bregman_gap(E, x, xp);
        out.samples.push_back({dist, gap});
        out.alpha_hat = std::max(out.alpha_hat, gap / std::pow(dist, cfg.q));
        out.beta_hat = std::min(out.beta_hat, gap / std::pow(dist, cfg.p));
    }
    if (out.samples.empty())
    {
        throw InvalidArgument("all sampled pairs were degenerate (x' = x)");
    }
    return out;
}

}  // namespace greedyco
