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
#include <cstdio>
#include <limits>
#include <ostream>

#include "greedyco/analysis.hpp"
#include "greedyco/random.hpp"

namespace greedyco
{

ModulusEstimate estimate_moduli(const Objective& E, const ModuliSampling& cfg)
{
    if (cfg.u_grid.empty())
    {
        throw InvalidArgument("u_grid must not be empty");
    }
    for (std::size_t i = 0; i < cfg.u_grid.size(); ++i)
    {
        if (!(cfg.u_grid[i] > 0.0) || (i > 0 && !(cfg.u_grid[i] > cfg.u_grid[i - 1])))
        {
            throw InvalidArgument("u_grid must be increasing and positive");
        }
    }
    if (cfg.sample_count == 0)
    {
        throw InvalidArgument("sample_count must be >= 1");
    }
    if (cfg.lambda_grid_size < 2)
    {
        throw InvalidArgument("lambda_grid_size must be >= 2");
    }
    if (!(cfg.radius >= 0.0))
    {
        throw InvalidArgument("moduli radius must be >= 0");
    }
    const std::size_t n = E.dimension();
    const Point center = cfg.center ? *cfg.center : Point::zeros(n);
    if (center.dimension() != n)
    {
        throw DimensionMismatch(n, center.dimension());
    }

    std::vector<double> lambdas(cfg.lambda_grid_size);
    for (std::size_t i = 0; i < lambdas.size(); ++i)
    {
        lambdas[i] = static_cast<double>(i + 1)
                     / static_cast<double>(cfg.lambda_grid_size + 1);
    }

    const std::size_t nu = cfg.u_grid.size();
    ModulusEstimate out;
    out.u_grid = cfg.u_grid;
    out.rho.assign(nu, -std::numeric_limits<double>::infinity());
    out.rho1.assign(nu, -std::numeric_limits<double>::infinity());
    out.delta1.assign(nu, std::numeric_limits<double>::infinity());
    out.sample_count = cfg.sample_count;
    out.seed = cfg.seed;

    // One (x, y) pair per sample shared by all u and lambda, so that the
    // sampled moduli inherit the pointwise relations between the exact ones.
    Rng rng = make_rng(cfg.seed);
    for (std::size_t s = 0; s < cfg.sample_count; ++s)
    {
        const Point x = center + Point(random_in_ball(rng, n, cfg.radius));
        const Point y(random_unit_vector(rng, n));
        const double ex = E.value(x);
        for (std::size_t i = 0; i < nu; ++i)
        {
            const double u = cfg.u_grid[i];
            const double second = 0.5
                                  * (E.value(add_scaled(x, u, y))
                                     + E.value(add_scaled(x, -u, y)) - 2.0 * ex);
            out.rho[i] = std::max(out.rho[i], second);
            for (double lam : lambdas)
            {
                const double v = ((1.0 - lam) * E.value(add_scaled(x, -lam * u, y))
                                  + lam * E.value(add_scaled(x, (1.0 - lam) * u, y))
                                  - ex)
                                 / (lam * (1.0 - lam));
                out.rho1[i] = std::max(out.rho1[i], v);
                out.delta1[i] = std::min(out.delta1[i], v);
            }
        }
    }
    return out;
}

EquivalenceReport check_moduli_equivalence(const ModulusEstimate& m, double slack,
                                           double tol)
{
    const std::size_t nu = m.u_grid.size();
    if (m.rho.size() != nu || m.rho1.size() != nu || m.delta1.size() != nu)
    {
        throw InvalidArgument("moduli estimate has inconsistent column lengths");
    }
    EquivalenceReport rep;
    for (std::size_t i = 0; i < nu; ++i)
    {
        const double half = 0.5 * m.u_grid[i];
        const auto it = std::find_if(m.u_grid.begin(), m.u_grid.end(), [&](double v) {
            return std::abs(v - half) <= 1e-12 * std::max(1.0, half);
        });
        if (it == m.u_grid.end())
        {
            continue;
        }
        const std::size_t h = static_cast<std::size_t>(it - m.u_grid.begin());
        EquivalenceRow row;
        row.u = m.u_grid[i];
        row.four_rho_half = 4.0 * m.rho[h];
        row.rho1 = m.rho1[i];
        row.two_rho = 2.0 * m.rho[i];
        row.left_ok = row.four_rho_half <= slack * row.rho1 + tol;
        row.right_ok = row.rho1 <= row.two_rho + tol;
        rep.all_left = rep.all_left && row.left_ok;
        rep.all_right = rep.all_right && row.right_ok;
        rep.rows.push_back(row);
    }
    if (rep.rows.empty())
    {
        throw InvalidArgument(
            "moduli equivalence needs grid points u and u/2; none found");
    }
    return rep;
}

void write_moduli_csv(std::ostream& os, const ModulusEstimate& m)
{
    os << "u,rho,rho1,delta1\n";
    char buf[128];
    for (std::size_t i = 0; i < m.u_grid.size(); ++i)
    {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", m.u_grid[i],
                      m.rho[i], m.rho1[i], m.delta1[i]);
        os << buf;
    }
}

}  // namespace greedyco
