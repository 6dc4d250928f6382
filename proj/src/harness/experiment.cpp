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
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "internal.hpp"

namespace greedyco::harness
{
namespace detail
{

std::filesystem::path output_dir(const ExperimentConfig& cfg,
                                 const CommonOptions& opt)
{
    std::filesystem::path dir = opt.output_dir ? *opt.output_dir
                                : cfg.output_dir ? *cfg.output_dir
                                                 : std::filesystem::path(".");
    std::filesystem::create_directories(dir);
    return dir;
}

void write_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
    out.flush();
    if (!out)
    {
        throw std::runtime_error("cannot write '" + path.string() + "'");
    }
}

std::size_t support_size(const ExperimentConfig& cfg)
{
    std::vector<double> c;
    if (cfg.minimizer_coeffs)
    {
        c = *cfg.minimizer_coeffs;
    }
    else if (const auto m = cfg.objective->known_minimizer())
    {
        c = cfg.dictionary->analyze(*m);
    }
    double cmax = 0.0;
    for (double v : c)
    {
        cmax = std::max(cmax, std::abs(v));
    }
    std::size_t s = 0;
    for (double v : c)
    {
        s += std::abs(v) > 1e-12 * cmax ? 1 : 0;
    }
    return s;
}

std::optional<RateConstants> rate_constants(const ExperimentConfig& cfg,
                                            std::string* reason)
{
    const std::optional<ConditionParams> params = resolve_params(cfg);
    if (!params)
    {
        *reason = "objective has no certified condition constants (set params.*)";
        return std::nullopt;
    }
    const std::optional<Point> x_bar = cfg.objective->known_minimizer();
    if (!x_bar)
    {
        *reason = "minimizer unknown";
        return std::nullopt;
    }
    double diam = 0.0;
    if (cfg.analysis.L_mode == LMode::closed_form)
    {
        const auto d = cfg.objective->omega_diameter();
        if (!d)
        {
            throw ConfigError("analysis.L_mode",
                              "no closed-form sublevel diameter for "
                                  + cfg.objective_type + "; use monte_carlo");
        }
        diam = *d;
    }
    else
    {
        diam = estimate_omega_diameter(*cfg.objective, *x_bar,
                                       cfg.analysis.directions, cfg.analysis.seed);
    }
    const double L = compute_L(diam, params->smooth.M);
    return compute_rate_constants(*cfg.objective, *x_bar,
                                  std::max<std::size_t>(1, support_size(cfg)),
                                  *params, L);
}

std::string fmt(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

}  // namespace detail

namespace
{

using detail::fmt;

std::string render_report(const ExperimentConfig& cfg, const RunReport& r)
{
    std::ostringstream os;
    os << "STATUS: "
       << (r.status == exit_ok ? "OK" : r.status == exit_violation ? "VIOLATION"
                                                                    : "ERROR")
       << '\n';
    os << "name: " << r.name << '\n';
    if (!r.error.empty())
    {
        os << "error: " << r.error << '\n';
    }
    os << "\n[config]\n" << cfg.echo;
    os << "\n[run]\n";
    os << "algorithm: "
       << (cfg.solver.algorithm == Algorithm::omp
               ? std::string("omp")
               : "wcga " + cfg.solver.weakness.describe() + " "
                     + std::string(to_string(cfg.solver.selection_strategy)))
       << '\n';
    os << "trace: " << r.trace_path.filename().string() << '\n';
    os << "steps: " << r.trace.last_step() << '\n';
    os << "stopped: " << (r.trace.stopped() ? "yes" : "no") << '\n';
    os << "final_grad_sup: " << fmt(r.trace.final_grad_sup) << '\n';
    if (!r.trace.steps.empty() && r.trace.steps.back().e)
    {
        os << "final_e: " << fmt(*r.trace.steps.back().e) << '\n';
    }
    if (r.constants)
    {
        const RateConstants& c = *r.constants;
        os << "\n[constants]\n";
        os << "alpha: " << fmt(c.alpha) << "\nq: " << fmt(c.q)
           << "\nbeta: " << fmt(c.beta) << "\np: " << fmt(c.p)
           << "\nM: " << fmt(c.M) << "\nM0: " << fmt(c.M0)
           << "\nL: " << fmt(c.L) << "\nsupport_size: " << c.support_size
           << "\nbeta0: " << fmt(c.beta0) << "\nr: " << fmt(c.r)
           << "\nC3: " << fmt(c.C3) << "\nC2: " << fmt(c.C2) << '\n';
        if (c.C3_tilde)
        {
            os << "C3_tilde: " << fmt(*c.C3_tilde) << "\ngamma: " << fmt(*c.gamma)
               << '\n';
        }
        if (c.C0)
        {
            os << "C0: " << fmt(*c.C0) << "\nC1: " << fmt(*c.C1) << '\n';
        }
    }
    if (r.recursion)
    {
        os << "\n[recursion check]\n";
        os << "pairs_checked: " << r.recursion->rows.size() << '\n';
        os << "violations: " << r.recursion->violations << '\n';
        os << "min_margin: "
           << (r.recursion->min_margin ? fmt(*r.recursion->min_margin) : "n/a")
           << '\n';
    }
    if (r.bounds)
    {
        os << "\n[bound check]\n";
        os << "steps_checked: " << r.bounds->rows.size() << '\n';
        os << "violations: " << r.bounds->violations << '\n';
        os << "distance_violations: " << r.bounds->distance_violations << '\n';
        os << "min_margin: "
           << (r.bounds->min_margin ? fmt(*r.bounds->min_margin) : "n/a") << '\n';
    }
    os << "\n[rate]\n";
    if (r.fit)
    {
        os << "fitted_slope: " << fmt(r.fit->slope) << '\n';
        os << "fit_points: " << r.fit->points << '\n';
        os << "fit_residual: " << fmt(r.fit->residual) << '\n';
        os << "super_polynomial: " << (r.fit->super_polynomial ? "yes" : "no")
           << '\n';
    }
    else
    {
        os << "fitted_slope: n/a (" << r.fit_note << ")\n";
    }
    if (r.constants)
    {
        os << "theoretical_slope: "
           << (r.constants->exponential() ? std::string("exponential")
                                          : fmt(r.constants->polynomial_slope()))
           << '\n';
    }
    if (!r.notes.empty() || !r.trace.notes.empty())
    {
        os << "\n[notes]\n";
        for (const std::string& n : r.notes)
        {
            os << "- " << n << '\n';
        }
        for (const std::string& n : r.trace.notes)
        {
            os << "- " << n << '\n';
        }
    }
    os << "\nwall_time_s: " << fmt(r.wall_seconds) << '\n';
    return os.str();
}

}  // namespace

RunReport run_experiment(const ExperimentConfig& cfg, const CommonOptions& opt)
{
    const auto t0 = std::chrono::steady_clock::now();
    RunReport r;
    r.name = cfg.name;
    const std::filesystem::path dir = detail::output_dir(cfg, opt);
    r.trace_path = dir / (cfg.name + ".trace.csv");
    try
    {
        std::string reason;
        r.constants = detail::rate_constants(cfg, &reason);
        if (!r.constants)
        {
            r.notes.push_back("theory checks skipped: " + reason);
        }

        r.trace = run_solver(*cfg.objective, *cfg.dictionary, cfg.solver);
        std::ostringstream trace_csv;
        write_trace_csv(trace_csv, r.trace);
        detail::write_file(r.trace_path, trace_csv.str());

        const WeaknessSchedule* schedule =
            cfg.solver.algorithm == Algorithm::wcga ? &cfg.solver.weakness : nullptr;
        BoundReport bounds;
        if (r.constants)
        {
            r.recursion = check_error_recursion(r.trace, *r.constants, schedule);
            bounds = check_error_bounds(r.trace, *r.constants, schedule);
            r.bounds = bounds;
            if (schedule && !r.constants->exponential())
            {
                r.notes.push_back(
                    "weak-schedule bound uses the sum of t_j^(q/(q-1)) in the "
                    "denominator (negative exponent), which reduces to the "
                    "plain bound at t_j = 1");
            }
            if (r.recursion->violations + bounds.violations
                    + bounds.distance_violations
                > 0)
            {
                r.status = exit_violation;
            }
        }
        std::ostringstream bounds_csv;
        write_bounds_csv(bounds_csv, bounds);
        detail::write_file(dir / (cfg.name + ".bounds.csv"), bounds_csv.str());

        try
        {
            r.fit = fit_rate(r.trace, cfg.analysis.tail_fraction);
        }
        catch (const std::exception& err)
        {
            r.fit_note = err.what();
        }
    }
    catch (const std::exception& err)
    {
        r.status = exit_error;
        r.error = err.what();
    }
    r.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    detail::write_file(dir / (cfg.name + ".report.txt"), render_report(cfg, r));
    return r;
}

}  // namespace greedyco::harness
