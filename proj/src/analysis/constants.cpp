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

#include "greedyco/analysis.hpp"
#include "greedyco/random.hpp"

namespace greedyco
{

double RateConstants::polynomial_slope() const noexcept
{
    return -p * (q - 1.0) / (p - q);
}

double compute_beta0(double beta, double p, double L)
{
    if (!(beta > 0.0))
    {
        throw InvalidArgument("beta must be > 0");
    }
    if (!(p >= 2.0))
    {
        throw InvalidArgument("p must be >= 2");
    }
    if (!(L >= 1.0))
    {
        throw InvalidArgument("L must be >= 1");
    }
    return std::min(beta, beta * std::pow(L, 1.0 - p));
}

double compute_C3(double M0, double M, double alpha, double q)
{
    if (!(M0 > 0.0 && M > 0.0 && alpha > 0.0))
    {
        throw InvalidArgument("compute_C3 needs M0, M, alpha > 0");
    }
    if (!(q > 1.0 && q <= 2.0))
    {
        throw InvalidArgument("q must lie in (1,2]");
    }
    const double ratio = M0 * std::pow(M, 1.0 - q) / alpha;
    const double e = q / (q - 1.0);
    if (ratio < q)
    {
        return (q - 1.0) * std::pow(q, -e);
    }
    return (ratio - 1.0) * std::pow(M0, -e) * std::pow(M, -q) * std::pow(alpha, e);
}

RateConstants compute_rate_constants(const ConditionParams& params, double L,
                                     std::size_t support_size, double C2)
{
    const double alpha = params.smooth.alpha;
    const double q = params.smooth.q;
    const double beta = params.convex.beta;
    const double p = params.convex.p;
    const bool quadratic_case = p == 2.0 && q == 2.0;
    if (p == q && !quadratic_case)
    {
        throw InvalidArgument("rate theory covers p != q or p = q = 2 (got p = q = "
                              + format_real(p) + ")");
    }
    params.smooth.validate();
    params.convex.validate();
    if (support_size == 0)
    {
        throw InvalidArgument("support size must be >= 1");
    }
    if (!(C2 >= 0.0) || !std::isfinite(C2))
    {
        throw InvalidArgument("C2 = E(0) - E(x_bar) must be finite and >= 0");
    }

    RateConstants rc;
    rc.alpha = alpha;
    rc.q = q;
    rc.beta = beta;
    rc.p = p;
    rc.M = params.smooth.M;
    rc.M0 = params.smooth.M0;
    rc.L = L;
    rc.support_size = support_size;
    rc.C2 = C2;

    rc.beta0 = compute_beta0(beta, p, L);
    const double C = p * std::pow(rc.beta0, 1.0 / p)
                     * std::pow(p - 1.0, (1.0 - p) / p);
    const double K = std::pow(alpha, 1.0 / (q - 1.0)) * std::pow(C, -q / (q - 1.0));
    const double S = static_cast<double>(support_size);
    rc.r = std::pow(S, q / (2.0 * (q - 1.0))) * K;
    rc.C3 = compute_C3(rc.M0, rc.M, alpha, q);

    if (quadratic_case)
    {
        const double ratio = rc.M0 / (rc.M * alpha);
        rc.C3_tilde = ratio < 2.0 ? rc.beta0 / alpha
                                  : 4.0 * rc.beta0 * (ratio - 1.0)
                                        * std::pow(rc.M0, -2.0)
                                        * std::pow(rc.M, -2.0) * alpha;
        const double gamma = 1.0 - *rc.C3_tilde / S;
        if (!(gamma > 0.0))
        {
            throw VacuousBound("bound vacuous: C3_tilde = "
                               + format_real(*rc.C3_tilde)
                               + " >= |S| = " + std::to_string(support_size)
                               + " gives gamma <= 0");
        }
        rc.gamma = gamma;
    }
    else
    {
        const double ell = (p - q) / (p * (q - 1.0));
        rc.C0 = std::pow(K, 1.0 / ell)
                * std::max(1.0, std::pow(1.0 / ell, 1.0 / ell));
        rc.C1 = C2 > 0.0 ? K * std::pow(C2, -ell)
                         : std::numeric_limits<double>::infinity();
    }
    return rc;
}

RateConstants compute_rate_constants(const Objective& E, const Point& x_bar,
                                     std::size_t support_size,
                                     const ConditionParams& params, double L)
{
    const double e0 = E.value(Point::zeros(E.dimension()));
    const double ebar = E.value(x_bar);
    return compute_rate_constants(params, L, support_size, std::max(0.0, e0 - ebar));
}

double compute_L(double omega_diameter, double M)
{
    if (!(M > 0.0))
    {
        throw InvalidArgument("M must be > 0");
    }
    if (!(omega_diameter >= 0.0) || !std::isfinite(omega_diameter))
    {
        throw InvalidArgument("sublevel set diameter must be finite and >= 0");
    }
    return std::max(1.0, omega_diameter / M);
}

double estimate_omega_diameter(const Objective& E, const Point& x_bar,
                               std::size_t directions, std::uint64_t seed)
{
    if (directions == 0)
    {
        throw InvalidArgument("direction count must be >= 1");
    }
    const std::size_t n = E.dimension();
    const double level = E.value(Point::zeros(n));
    if (!(level > E.value(x_bar)))
    {
        return 0.0;  // the sublevel set collapses onto the minimizer
    }
    Rng rng = make_rng(seed);
    double rmax = 0.0;
    for (std::size_t d = 0; d < directions; ++d)
    {
        const Point dir(random_unit_vector(rng, n));
        double lo = 0.0;
        double hi = std::max(1.0, norm(x_bar));
        int grow = 0;
        while (E.value(add_scaled(x_bar, hi, dir)) <= level)
        {
            lo = hi;
            hi *= 2.0;
            if (++grow > 200)
            {
                throw InvalidArgument("sublevel set {E <= E(0)} looks unbounded");
            }
        }
        for (int it = 0; it < 100 && hi - lo > 1e-12 * hi; ++it)
        {
            const double mid = 0.5 * (lo + hi);
            (E.value(add_scaled(x_bar, mid, dir)) <= level ? lo : hi) = mid;
        }
        rmax = std::max(rmax, hi);
    }
    return 2.0 * rmax * 1.1;
}

double lmseq_bound(const SequenceBoundInput& in, std::size_t m)
{
    if (!(in.B > 0.0 && in.r > 0.0 && in.ell > 0.0))
    {
        throw InvalidArgument("sequence bound needs B, r, ell > 0");
    }
    if (m < 2)
    {
        throw InvalidArgument("sequence bound needs m >= 2");
    }
    if (in.r_seq.size() < m - 1)
    {
        throw InvalidArgument("r_seq must hold r_2..r_m");
    }
    double sum = in.r * std::pow(in.B, -in.ell);
    for (std::size_t k = 2; k <= m; ++k)
    {
        sum += in.r_seq[k - 2];
    }
    const double inv = 1.0 / in.ell;
    return std::max(1.0, std::pow(in.ell, -inv)) * std::pow(in.r, inv)
           * std::pow(sum, -inv);
}

}  // namespace greedyco
