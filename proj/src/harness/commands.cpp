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
#include <atomic>
#include <cmath>
#include <iostream>
#include <numeric>
#include <sstream>
#include <limits>
#include <thread>

#include "greedyco/random.hpp"
#include "internal.hpp"

namespace greedyco::harness
{
namespace
{

using detail::fmt;

const char* status_word(int status)
{
    return status == exit_ok ? "OK" : status == exit_violation ? "VIOLATION" : "ERROR";
}

/// Error exit shared by all commands: message on stderr, code 1.
int fail(const std::string& what)
{
    std::cerr << "error: " << what << '\n';
    return exit_error;
}

std::string variant_label(const std::string& spec)
{
    std::string s = spec;
    std::replace(s.begin(), s.end(), ',', ';');
    s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
    return s;
}

}  // namespace

int cmd_run(const std::vector<std::filesystem::path>& configs,
            const CommonOptions& opt, std::size_t jobs)
{
    if (configs.empty())
    {
        return fail("run needs at least one config");
    }
    struct Outcome
    {
        int status = exit_ok;
        std::string line;
    };
    std::vector<Outcome> outcomes(configs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < configs.size(); i = next++)
        {
            Outcome& o = outcomes[i];
            try
            {
                const ExperimentConfig cfg = load_experiment(configs[i]);
                const RunReport r = run_experiment(cfg, opt);
                o.status = r.status;
                std::ostringstream line;
                line << r.name << ": " << status_word(r.status) << " (steps "
                     << r.trace.last_step();
                if (r.recursion && r.bounds)
                {
                    line << ", recursion violations " << r.recursion->violations
                         << ", bound violations "
                         << r.bounds->violations + r.bounds->distance_violations;
                }
                if (r.fit)
                {
                    line << ", slope " << fmt(r.fit->slope);
                }
                line << ")";
                if (!r.error.empty())
                {
                    line << ": " << r.error;
                }
                o.line = line.str();
            }
            catch (const std::exception& err)
            {
                o.status = exit_error;
                o.line = configs[i].string() + ": ERROR: " + err.what();
            }
        }
    };
    const std::size_t nthreads = std::max<std::size_t>(1, std::min(jobs, configs.size()));
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < nthreads; ++t)
    {
        pool.emplace_back(worker);
    }
    worker();
    for (std::thread& t : pool)
    {
        t.join();
    }

    int code = exit_ok;
    for (const Outcome& o : outcomes)
    {
        if (o.status == exit_error)
        {
            std::cerr << "error: " << o.line << '\n';
        }
        else if (!opt.quiet)
        {
            std::cout << o.line << '\n';
        }
        // Errors dominate violations.
        if (o.status == exit_error || (o.status == exit_violation && code == exit_ok))
        {
            code = o.status;
        }
    }
    return code;
}

int cmd_moduli(const std::filesystem::path& config, const CommonOptions& opt)
{
    try
    {
        const ExperimentConfig cfg = load_experiment(config);
        const AnalysisConfig& a = cfg.analysis;
        ModuliSampling ms;
        ms.radius = a.omega_radius;
        ms.u_grid = a.u_grid;
        ms.sample_count = a.sample_count;
        ms.lambda_grid_size = a.lambda_grid_size;
        ms.seed = a.seed;
        ms.center = cfg.objective->known_minimizer();
        const ModulusEstimate m = estimate_moduli(*cfg.objective, ms);
        const EquivalenceReport eq = check_moduli_equivalence(m);

        const std::filesystem::path dir = detail::output_dir(cfg, opt);
        std::ostringstream csv;
        write_moduli_csv(csv, m);
        detail::write_file(dir / (cfg.name + ".moduli.csv"), csv.str());

        const int status = eq.all_left && eq.all_right ? exit_ok : exit_violation;
        std::ostringstream os;
        os << "STATUS: " << status_word(status) << '\n';
        os << "name: " << cfg.name << '\n';
        os << "samples: " << m.sample_count << "  lambda_grid: "
           << a.lambda_grid_size << "  radius: " << fmt(a.omega_radius) << '\n';
        os << "\n[equivalence: 4 rho(u/2) <= 1.05 rho1(u), rho1(u) <= 2 rho(u)]\n";
        os << "u,4rho(u/2),rho1(u),2rho(u),left,right\n";
        for (const EquivalenceRow& r : eq.rows)
        {
            os << fmt(r.u) << ',' << fmt(r.four_rho_half) << ',' << fmt(r.rho1)
               << ',' << fmt(r.two_rho) << ',' << (r.left_ok ? "ok" : "FAIL") << ','
               << (r.right_ok ? "ok" : "FAIL") << '\n';
        }
        if (const auto params = resolve_params(cfg))
        {
            // Informational: the sampling ball need not lie in the sublevel set.
            std::size_t above = 0;
            for (std::size_t i = 0; i < m.u_grid.size(); ++i)
            {
                const double cap = params->smooth.alpha
                                   * std::pow(m.u_grid[i], params->smooth.q);
                above += m.rho[i] > cap + 1e-9 ? 1 : 0;
            }
            os << "\nrho(u) above alpha u^q at " << above << " of "
               << m.u_grid.size() << " grid points (informational)\n";
        }
        detail::write_file(dir / (cfg.name + ".moduli.txt"), os.str());
        if (!opt.quiet)
        {
            std::cout << cfg.name << ": " << status_word(status) << " ("
                      << eq.rows.size() << " equivalence rows)\n";
        }
        return status;
    }
    catch (const std::exception& err)
    {
        return fail(err.what());
    }
}

int cmd_compare(const std::filesystem::path& config,
                const std::vector<std::string>& algorithms, const CommonOptions& opt)
{
    try
    {
        if (algorithms.size() < 2)
        {
            throw ConfigError("algs", "compare needs at least two variants");
        }
        const ExperimentConfig cfg = load_experiment(config);
        if (!cfg.objective->known_minimizer())
        {
            throw ConfigError("objective", "compare needs a known minimizer");
        }
        std::string reason;
        const std::optional<RateConstants> rc = detail::rate_constants(cfg, &reason);

        struct Variant
        {
            std::string label;
            SolverConfig solver;
            IterateTrace trace;
            std::optional<BoundReport> bounds;
            std::optional<RecursionReport> recursion;
            std::optional<RateFit> fit;
        };
        std::vector<Variant> vs;
        for (const std::string& spec : algorithms)
        {
            Variant v;
            v.label = variant_label(spec);
            v.solver = parse_variant(spec, cfg.solver);
            vs.push_back(std::move(v));
        }
        int status = exit_ok;
        std::size_t kmax = 0;
        for (Variant& v : vs)
        {
            v.trace = run_solver(*cfg.objective, *cfg.dictionary, v.solver);
            kmax = std::max(kmax, v.trace.last_step());
            const WeaknessSchedule* schedule =
                v.solver.algorithm == Algorithm::wcga ? &v.solver.weakness : nullptr;
            if (rc)
            {
                v.recursion = check_error_recursion(v.trace, *rc, schedule);
                v.bounds = check_error_bounds(v.trace, *rc, schedule);
                if (v.recursion->violations + v.bounds->violations
                        + v.bounds->distance_violations
                    > 0)
                {
                    status = exit_violation;
                }
            }
            try
            {
                v.fit = fit_rate(v.trace, cfg.analysis.tail_fraction);
            }
            catch (const std::exception&)
            {
            }
        }

        const std::filesystem::path dir = detail::output_dir(cfg, opt);
        std::ostringstream csv;
        csv << 'k';
        for (const Variant& v : vs)
        {
            csv << ",e_k(" << v.label << ')';
        }
        csv << '\n';
        char buf[40];
        for (std::size_t k = 0; k <= kmax; ++k)
        {
            csv << k;
            for (const Variant& v : vs)
            {
                // Runs that stopped early hold their last value.
                const TraceStep& s = v.trace.steps[std::min(k, v.trace.steps.size() - 1)];
                std::snprintf(buf, sizeof buf, "%.17g", *s.e);
                csv << ',' << buf;
            }
            csv << '\n';
        }
        detail::write_file(dir / (cfg.name + ".compare.csv"), csv.str());

        std::ostringstream os;
        os << "STATUS: " << status_word(status) << '\n';
        os << "name: " << cfg.name << '\n';
        if (!rc)
        {
            os << "theory checks skipped: " << reason << '\n';
        }
        for (const Variant& v : vs)
        {
            os << "\n[" << v.label << "]\n";
            os << "steps: " << v.trace.last_step()
               << "  stopped: " << (v.trace.stopped() ? "yes" : "no") << '\n';
            os << "final_e: " << fmt(*v.trace.steps.back().e) << '\n';
            os << "selected:";
            for (const TraceStep& s : v.trace.steps)
            {
                if (s.selected_index)
                {
                    os << ' ' << *s.selected_index;
                }
            }
            os << '\n';
            if (v.recursion)
            {
                os << "recursion_violations: " << v.recursion->violations << '\n';
                os << "bound_violations: "
                   << v.bounds->violations + v.bounds->distance_violations << '\n';
            }
            os << "fitted_slope: " << (v.fit ? fmt(v.fit->slope) : "n/a") << '\n';
        }
        detail::write_file(dir / (cfg.name + ".compare.txt"), os.str());
        if (!opt.quiet)
        {
            std::cout << cfg.name << ": " << status_word(status) << " ("
                      << vs.size() << " variants, " << kmax << " steps)\n";
        }
        return status;
    }
    catch (const std::exception& err)
    {
        return fail(err.what());
    }
}

int cmd_demo_cs(const DemoCsOptions& demo, const CommonOptions& opt)
{
    try
    {
        if (demo.rows == 0)
        {
            throw ConfigError("rows", "must be >= 1");
        }
        if (demo.cols < demo.rows)
        {
            throw ConfigError("cols", "must be >= rows");
        }
        if (2 * demo.sparsity > demo.rows)
        {
            throw ConfigError("sparsity", "must be <= rows/2");
        }
        const std::size_t n = demo.cols;
        const auto rows = static_cast<Eigen::Index>(demo.rows);
        const auto cols = static_cast<Eigen::Index>(demo.cols);

        Rng rng = make_rng(sub_seed(demo.seed, "objective"));
        Eigen::MatrixXd A(rows, cols);
        const double scale = 1.0 / std::sqrt(static_cast<double>(demo.rows));
        for (Eigen::Index j = 0; j < cols; ++j)
        {
            for (Eigen::Index i = 0; i < rows; ++i)
            {
                A(i, j) = scale * standard_normal(rng);
            }
        }
        std::vector<std::size_t> idx(n);
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        std::vector<double> xb(n, 0.0);
        for (std::size_t i = 0; i < demo.sparsity; ++i)
        {
            std::uniform_int_distribution<std::size_t> pick(i, n - 1);
            std::swap(idx[i], idx[pick(rng)]);
            const double mag = uniform(rng, 1.0, 2.0);
            xb[idx[i]] = uniform(rng, 0.0, 1.0) < 0.5 ? -mag : mag;
        }
        const Point x_bar(xb);
        const Eigen::VectorXd b =
            A * Eigen::Map<const Eigen::VectorXd>(x_bar.data(), cols);
        const LeastSquares E(A, b, x_bar);
        const CanonicalBasis D(n);

        SolverConfig s;
        s.algorithm = Algorithm::omp;
        s.max_steps = demo.rows;
        s.seed = sub_seed(demo.seed, "solver");
        const IterateTrace trace = run_solver(E, D, s);

        const Point& xf = trace.steps.back().x;
        // Nonzeros of x_bar are at least 1 in magnitude; coefficients at the
        // rounding floor (extra atoms picked once the residual is ~0) do not
        // count as support.
        const auto numerical_support = [](const Point& x) {
            std::vector<std::size_t> s;
            for (std::size_t i = 0; i < x.dimension(); ++i)
            {
                if (std::abs(x[i]) > 1e-8)
                {
                    s.push_back(i);
                }
            }
            return s;
        };
        const bool recovered = numerical_support(xf) == numerical_support(x_bar);
        const double err_norm = norm(xf - x_bar);

        // Sampled restricted-isometry ratios |Az|^2 / |z|^2 over sparse z.
        std::optional<std::pair<double, double>> rip;
        if (demo.sparsity > 0)
        {
            Rng zr = make_rng(sub_seed(demo.seed, "analysis"));
            double lo = std::numeric_limits<double>::infinity();
            double hi = 0.0;
            std::vector<std::size_t> perm(n);
            for (int t = 0; t < 1000; ++t)
            {
                std::iota(perm.begin(), perm.end(), std::size_t{0});
                Eigen::VectorXd z = Eigen::VectorXd::Zero(cols);
                for (std::size_t i = 0; i < demo.sparsity; ++i)
                {
                    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
                    std::swap(perm[i], perm[pick(zr)]);
                    z(static_cast<Eigen::Index>(perm[i])) = standard_normal(zr);
                }
                const double zz = z.squaredNorm();
                if (zz == 0.0)
                {
                    continue;
                }
                const double ratio = (A * z).squaredNorm() / zz;
                lo = std::min(lo, ratio);
                hi = std::max(hi, ratio);
            }
            rip = std::make_pair(lo, hi);
        }

        std::filesystem::path dir = opt.output_dir ? *opt.output_dir : ".";
        std::filesystem::create_directories(dir);
        std::ostringstream csv;
        write_trace_csv(csv, trace);
        detail::write_file(dir / (demo.name + ".trace.csv"), csv.str());

        std::ostringstream os;
        os << "STATUS: OK\n";
        os << "name: " << demo.name << '\n';
        os << "rows: " << demo.rows << "\ncols: " << demo.cols
           << "\nsparsity: " << demo.sparsity << "\nseed: " << demo.seed << '\n';
        os << "steps: " << trace.last_step()
           << "\nstopped: " << (trace.stopped() ? "yes" : "no") << '\n';
        os << "support_recovered: " << (recovered ? "yes" : "no") << '\n';
        os << "final_error_norm: " << fmt(err_norm) << '\n';
        if (rip)
        {
            os << "rip_ratio_min: " << fmt(rip->first)
               << "\nrip_ratio_max: " << fmt(rip->second) << '\n';
        }
        else
        {
            os << "rip_ratio_min: n/a\nrip_ratio_max: n/a\n";
        }
        for (const std::string& note : trace.notes)
        {
            os << "note: " << note << '\n';
        }
        detail::write_file(dir / (demo.name + ".report.txt"), os.str());
        if (!opt.quiet)
        {
            std::cout << demo.name << ": support "
                      << (recovered ? "recovered" : "NOT recovered") << " in "
                      << trace.last_step() << " steps, |x - x_bar| = "
                      << fmt(err_norm) << '\n';
        }
        return exit_ok;
    }
    catch (const std::exception& err)
    {
        return fail(err.what());
    }
}

}  // namespace greedyco::harness
