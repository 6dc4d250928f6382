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
#include <ostream>

#include "greedyco/analysis.hpp"

namespace greedyco
{
namespace
{

double ell_of(const RateConstants& rc)
{
    return (rc.p - rc.q) / (rc.p * (rc.q - 1.0));
}

double weight(const RateConstants& rc, const WeaknessSchedule* schedule,
              std::size_t k)
{
    return schedule ? std::pow(schedule->at(k), rc.q / (rc.q - 1.0)) : 1.0;
}

/// Contraction factor of step k applied to e_{k-1}.
double bracket(const RateConstants& rc, const WeaknessSchedule* schedule,
               std::size_t k, double e_prev)
{
    if (rc.exponential())
    {
        return 1.0 - (*rc.C3_tilde / static_cast<double>(rc.support_size))
                         * weight(rc, schedule, k);
    }
    return 1.0 - (rc.C3 / rc.r) * weight(rc, schedule, k)
                     * std::pow(e_prev, ell_of(rc));
}

void put_real(std::ostream& os, double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os << buf;
}

double ols_slope(std::span<const double> x, std::span<const double> y,
                 double* intercept, double* rms)
{
    const double n = static_cast<double>(x.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
    {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
    {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    const double slope = sxy / sxx;
    const double b = my - slope * mx;
    if (intercept)
    {
        *intercept = b;
    }
    if (rms)
    {
        double ss = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i)
        {
            const double d = y[i] - (b + slope * x[i]);
            ss += d * d;
        }
        *rms = std::sqrt(ss / n);
    }
    return slope;
}

}  // namespace

RecursionReport check_error_recursion(const IterateTrace& trace,
                                      const RateConstants& rc,
                                      const WeaknessSchedule* schedule, double tol)
{
    RecursionReport rep;
    for (std::size_t i = 1; i < trace.steps.size(); ++i)
    {
        const TraceStep& prev = trace.steps[i - 1];
        const TraceStep& cur = trace.steps[i];
        if (cur.k < 2 || !prev.e || !cur.e)
        {
            continue;
        }
        RecursionRow row;
        row.k = cur.k;
        row.e_prev = *prev.e;
        row.e_k = *cur.e;
        row.rhs = row.e_prev * bracket(rc, schedule, cur.k, row.e_prev);
        row.margin = row.rhs - row.e_k;
        row.ok = row.e_k <= row.rhs + tol;
        rep.violations += row.ok ? 0 : 1;
        rep.min_margin = rep.min_margin ? std::min(*rep.min_margin, row.margin)
                                        : row.margin;
        rep.rows.push_back(row);
    }
    return rep;
}

double theoretical_error_bound(const RateConstants& rc, std::size_t k,
                               const WeaknessSchedule* schedule)
{
    if (k < 2)
    {
        throw InvalidArgument("error bound is defined for k >= 2");
    }
    if (rc.exponential())
    {
        const double g = *rc.C3_tilde / static_cast<double>(rc.support_size);
        if (!schedule)
        {
            return rc.C2 * std::pow(*rc.gamma, static_cast<double>(k - 1));
        }
        double prod = rc.C2;
        for (std::size_t j = 2; j <= k; ++j)
        {
            prod *= 1.0 - g * weight(rc, schedule, j);
        }
        return prod;
    }
    double steps = 0.0;
    if (schedule)
    {
        for (std::size_t j = 2; j <= k; ++j)
        {
            steps += weight(rc, schedule, j);
        }
    }
    else
    {
        steps = static_cast<double>(k - 1);
    }
    const double s = std::pow(static_cast<double>(rc.support_size),
                              rc.q / (2.0 * (rc.q - 1.0)));
    const double denom = *rc.C1 * s + rc.C3 * steps;
    return *rc.C0 * std::pow(s / denom, 1.0 / ell_of(rc));
}

double distance_bound(const RateConstants& rc, double e_k)
{
    if (!(e_k >= 0.0))
    {
        throw InvalidArgument("distance bound needs e_k >= 0");
    }
    return std::pow(e_k / rc.beta0, 1.0 / rc.p);
}

BoundReport check_error_bounds(const IterateTrace& trace, const RateConstants& rc,
                               const WeaknessSchedule* schedule, double tol,
                               double dist_tol)
{
    BoundReport rep;
    for (const TraceStep& s : trace.steps)
    {
        if (s.k < 1 || !s.e)
        {
            continue;
        }
        BoundRow row;
        row.k = s.k;
        row.e_k = *s.e;
        row.bound = s.k == 1 ? rc.C2 : theoretical_error_bound(rc, s.k, schedule);
        row.margin = row.bound - row.e_k;
        row.dist = s.dist_to_min;
        row.dist_bound = distance_bound(rc, std::max(0.0, row.bound));
        row.ok = row.e_k <= row.bound + tol;
        rep.violations += row.ok ? 0 : 1;
        if (row.dist && !(*row.dist <= row.dist_bound + dist_tol))
        {
            ++rep.distance_violations;
        }
        rep.min_margin = rep.min_margin ? std::min(*rep.min_margin, row.margin)
                                        : row.margin;
        rep.rows.push_back(row);
    }
    return rep;
}

void write_bounds_csv(std::ostream& os, const BoundReport& report)
{
    os << "k,e_k,bound_k,margin\n";
    for (const BoundRow& r : report.rows)
    {
        os << r.k << ',';
        put_real(os, r.e_k);
        os << ',';
        put_real(os, r.bound);
        os << ',';
        put_real(os, r.margin);
        os << '\n';
    }
}

RateFit fit_rate(std::span<const double> k, std::span<const double> e,
                 double tail_fraction)
{
    if (k.size() != e.size())
    {
        throw DimensionMismatch(k.size(), e.size());
    }
    if (!(tail_fraction > 0.0 && tail_fraction <= 1.0))
    {
        throw InvalidArgument("tail_fraction must lie in (0,1]");
    }
    // Errors at the rounding floor of the largest one carry no rate
    // information and would dominate a log-log fit.
    double emax = 0.0;
    for (double v : e)
    {
        emax = std::max(emax, v);
    }
    const double floor = 1e-12 * emax;
    std::vector<double> lx;
    std::vector<double> ly;
    for (std::size_t i = 0; i < k.size(); ++i)
    {
        if (k[i] >= 1.0 && e[i] > floor && e[i] > 0.0)
        {
            lx.push_back(std::log(k[i]));
            ly.push_back(std::log(e[i]));
        }
    }
    const auto take = static_cast<std::size_t>(
        std::ceil(tail_fraction * static_cast<double>(lx.size())));
    if (take < 5)
    {
        throw InvalidArgument("rate fit needs >= 5 positive-error steps in the "
                              "tail window, found "
                              + std::to_string(take));
    }
    const std::span<const double> x(lx.data() + (lx.size() - take), take);
    const std::span<const double> y(ly.data() + (ly.size() - take), take);

    RateFit fit;
    fit.points = take;
    fit.slope = ols_slope(x, y, &fit.intercept, &fit.residual);

    // Compare the slopes of the two (overlapping) halves of the window: a
    // power law keeps them equal, geometric decay steepens the later half.
    const std::size_t half = (take + 1) / 2 + 1;
    const double s1 = ols_slope(x.first(half), y.first(half), nullptr, nullptr);
    const double s2 = ols_slope(x.last(half), y.last(half), nullptr, nullptr);
    fit.super_polynomial = s2 - s1 < -0.25 * std::max(1.0, std::abs(s1));
    return fit;
}

RateFit fit_rate(const IterateTrace& trace, double tail_fraction)
{
    std::vector<double> k;
    std::vector<double> e;
    for (const TraceStep& s : trace.steps)
    {
        if (s.e)
        {
            k.push_back(static_cast<double>(s.k));
            e.push_back(*s.e);
        }
    }
    return fit_rate(k, e, tail_fraction);
}

}  // namespace greedyco
