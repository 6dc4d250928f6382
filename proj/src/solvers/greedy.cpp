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
#include <sstream>

#include "greedyco/random.hpp"
#include "greedyco/solvers.hpp"

namespace greedyco
{

WeaknessSchedule::WeaknessSchedule(double t) : WeaknessSchedule(std::vector<double>{t})
{
}

WeaknessSchedule::WeaknessSchedule(std::vector<double> ts) : ts_(std::move(ts))
{
    if (ts_.empty())
    {
        throw InvalidArgument("weakness schedule must not be empty");
    }
    for (double t : ts_)
    {
        if (!(t > 0.0 && t <= 1.0))
        {
            throw InvalidArgument("weakness values must lie in (0,1], got "
                                  + format_real(t));
        }
    }
}

double WeaknessSchedule::at(std::size_t k) const
{
    if (k == 0)
    {
        throw InvalidArgument("weakness schedule is indexed from k = 1");
    }
    return ts_[std::min(k, ts_.size()) - 1];
}

bool WeaknessSchedule::is_constant_one() const noexcept
{
    return std::all_of(ts_.begin(), ts_.end(), [](double t) { return t == 1.0; });
}

std::string WeaknessSchedule::describe() const
{
    std::ostringstream os;
    os << "t=";
    for (std::size_t i = 0; i < ts_.size(); ++i)
    {
        os << (i ? ";" : "") << ts_[i];
    }
    return os.str();
}

void SolverConfig::validate() const
{
    if (max_steps == 0)
    {
        throw InvalidArgument("max_steps must be >= 1");
    }
    if (!(stop_tol > 0.0))
    {
        throw InvalidArgument("stop_tol must be > 0");
    }
    inner.validate();
    // Freshness of selected atoms relies on the restricted residual sitting
    // strictly below the stopping threshold.
    if (!(inner.inner_tol < stop_tol))
    {
        throw InvalidArgument("inner_tol must be smaller than stop_tol");
    }
}

namespace
{

double sup_abs(const std::vector<double>& v)
{
    double m = 0.0;
    for (double x : v)
    {
        m = std::max(m, std::abs(x));
    }
    return m;
}

IterateTrace run_greedy(const Objective& E, const Dictionary& D,
                        const SolverConfig& cfg, bool weak)
{
    cfg.validate();
    if (D.size() != E.dimension())
    {
        throw DimensionMismatch(E.dimension(), D.size());
    }
    const std::size_t n = E.dimension();
    const std::optional<Point> xbar = E.known_minimizer();
    const double ebar = xbar ? E.value(*xbar) : 0.0;

    IterateTrace trace;
    auto record = [&](TraceStep row) {
        if (xbar)
        {
            row.e = std::max(0.0, row.E - ebar);
            row.dist_to_min = norm(row.x - *xbar);
        }
        trace.steps.push_back(std::move(row));
    };

    Point x = Point::zeros(n);
    CoefficientMap coeffs;
    SparseSupport support;
    std::vector<double> g = D.analyze(E.gradient(x));

    TraceStep row0;
    row0.k = 0;
    row0.x = x;
    row0.E = E.value(x);
    row0.stopped = sup_abs(g) <= cfg.stop_tol;
    record(std::move(row0));

    for (std::size_t m = 1; m <= cfg.max_steps && !trace.stopped(); ++m)
    {
        if (support.size() == n)
        {
            trace.notes.push_back("step " + std::to_string(m)
                                  + ": every atom selected without meeting "
                                    "stop_tol");
            break;
        }
        // Selected atoms carry a zero restricted gradient in exact
        // arithmetic; masking them keeps rounding residue from re-selecting.
        std::vector<double> masked = g;
        for (std::size_t j : support.indices())
        {
            masked[j] = 0.0;
        }
        const AtomChoice choice =
            weak ? weak_select(masked, cfg.weakness.at(m), cfg.selection_strategy,
                               mix_seed(cfg.seed + m))
                 : argmax_atom(masked);
        const std::size_t j = choice.index;

        support.insert(j);
        CoefficientMap warm = coeffs;
        warm[j] = 0.0;
        RestrictedResult res;
        try
        {
            res = restricted_minimize(E, D, support, warm, cfg.inner);
        }
        catch (const InnerSolveError& err)
        {
            throw SolverError(m, err.what());
        }
        if (res.degenerate)
        {
            trace.notes.push_back("step " + std::to_string(m)
                                  + ": restricted Hessian singular, minimizer "
                                    "may not be unique");
        }

        TraceStep row;
        row.k = m;
        row.selected_index = j;
        row.grad_coeff = g[j];
        row.grad_sup = sup_abs(g);

        x = res.x;
        coeffs = std::move(res.coeffs);
        g = D.analyze(E.gradient(x));

        row.x = x;
        row.E = E.value(x);
        row.stopped = sup_abs(g) <= cfg.stop_tol;
        record(std::move(row));
    }
    trace.final_grad_sup = sup_abs(g);
    return trace;
}

void put_real(std::ostream& os, double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os << buf;
}

void put_opt(std::ostream& os, const std::optional<double>& v)
{
    if (v)
    {
        put_real(os, *v);
    }
}

}  // namespace

IterateTrace run_omp(const Objective& E, const Dictionary& D,
                     const SolverConfig& cfg)
{
    if (cfg.algorithm != Algorithm::omp)
    {
        throw InvalidArgument("run_omp requires algorithm = omp");
    }
    return run_greedy(E, D, cfg, false);
}

IterateTrace run_wcga(const Objective& E, const Dictionary& D,
                      const SolverConfig& cfg)
{
    if (cfg.algorithm != Algorithm::wcga)
    {
        throw InvalidArgument("run_wcga requires algorithm = wcga");
    }
    return run_greedy(E, D, cfg, true);
}

IterateTrace run_solver(const Objective& E, const Dictionary& D,
                        const SolverConfig& cfg)
{
    return cfg.algorithm == Algorithm::omp ? run_omp(E, D, cfg)
                                           : run_wcga(E, D, cfg);
}

void write_trace_csv(std::ostream& os, const IterateTrace& trace)
{
    os << "k,E_k,e_k,dist_to_min,selected_index,grad_coeff,grad_sup,stopped\n";
    for (const TraceStep& s : trace.steps)
    {
        os << s.k << ',';
        put_real(os, s.E);
        os << ',';
        put_opt(os, s.e);
        os << ',';
        put_opt(os, s.dist_to_min);
        os << ',';
        if (s.selected_index)
        {
            os << *s.selected_index;
        }
        os << ',';
        put_opt(os, s.grad_coeff);
        os << ',';
        put_opt(os, s.grad_sup);
        os << ',' << (s.stopped ? 1 : 0) << '\n';
    }
}

}  // namespace greedyco
