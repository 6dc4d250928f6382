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
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "greedyco/harness.hpp"
#include "greedyco/random.hpp"

namespace greedyco::harness
{
namespace
{

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
    {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true)
    {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos - start)));
        if (pos == std::string_view::npos)
        {
            break;
        }
        start = pos + 1;
    }
    return out;
}

std::optional<double> to_double(const std::string& s)
{
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (first != last && *first == '+')
    {
        ++first;
    }
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || s.empty() || !std::isfinite(v))
    {
        return std::nullopt;
    }
    return v;
}

double parse_real(const std::string& key, const std::string& s)
{
    const auto v = to_double(s);
    if (!v)
    {
        throw ConfigError(key, "expected a finite number, got '" + s + "'");
    }
    return *v;
}

std::vector<double> parse_list(const std::string& key, const std::string& s)
{
    std::vector<double> out;
    for (const std::string& item : split(s, ','))
    {
        out.push_back(parse_real(key, item));
    }
    return out;
}

/// "name(a,b)" -> {"a","b"}; nullopt if s is not a call of `name`.
std::optional<std::vector<std::string>> call_args(const std::string& s,
                                                  const std::string& name)
{
    if (s.size() < name.size() + 2 || s.compare(0, name.size(), name) != 0
        || s[name.size()] != '(' || s.back() != ')')
    {
        return std::nullopt;
    }
    const std::string inner = s.substr(name.size() + 1, s.size() - name.size() - 2);
    if (trim(inner).empty())
    {
        return std::vector<std::string>{};
    }
    return split(inner, ',');
}

Eigen::MatrixXd read_csv_matrix(const std::string& key,
                                const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
    {
        throw ConfigError(key, "cannot open '" + path.string() + "'");
    }
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line))
    {
        if (trim(line).empty())
        {
            continue;
        }
        rows.push_back(parse_list(key, line));
        if (rows.back().size() != rows.front().size())
        {
            throw ConfigError(key, "ragged rows in '" + path.string() + "'");
        }
    }
    if (rows.empty())
    {
        throw ConfigError(key, "'" + path.string() + "' is empty");
    }
    Eigen::MatrixXd M(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(rows.front().size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
    {
        for (std::size_t j = 0; j < rows[i].size(); ++j)
        {
            M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                rows[i][j];
        }
    }
    return M;
}

/// Dictionary coefficients of the minimizer. Forms: "random(k)", a dense
/// list of length n, "zero", or sparse "index:value" pairs.
std::vector<double> parse_center(const std::string& key, const std::string& s,
                                 std::size_t n, Rng& rng)
{
    std::vector<double> c(n, 0.0);
    if (s == "zero")
    {
        return c;
    }
    if (const auto args = call_args(s, "random"))
    {
        if (args->size() != 1)
        {
            throw ConfigError(key, "random(k) takes one argument");
        }
        const double kd = parse_real(key, (*args)[0]);
        if (kd < 0.0 || kd > static_cast<double>(n) || kd != std::floor(kd))
        {
            throw ConfigError(key, "random(k) needs an integer 0 <= k <= dimension");
        }
        std::vector<std::size_t> idx(n);
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        for (std::size_t i = 0; i < static_cast<std::size_t>(kd); ++i)
        {
            std::uniform_int_distribution<std::size_t> pick(i, n - 1);
            std::swap(idx[i], idx[pick(rng)]);
            const double mag = uniform(rng, 1.0, 2.0);
            c[idx[i]] = uniform(rng, 0.0, 1.0) < 0.5 ? -mag : mag;
        }
        return c;
    }
    if (s.find(':') != std::string::npos)
    {
        for (const std::string& item : split(s, ','))
        {
            const auto kv = split(item, ':');
            if (kv.size() != 2)
            {
                throw ConfigError(key, "expected index:value, got '" + item + "'");
            }
            const double id = parse_real(key, kv[0]);
            if (id < 0.0 || id >= static_cast<double>(n) || id != std::floor(id))
            {
                throw ConfigError(key, "index " + kv[0] + " outside [0, dimension)");
            }
            c[static_cast<std::size_t>(id)] = parse_real(key, kv[1]);
        }
        return c;
    }
    std::vector<double> dense = parse_list(key, s);
    if (dense.size() != n)
    {
        throw ConfigError(key, "has " + std::to_string(dense.size())
                                   + " entries, dimension is " + std::to_string(n));
    }
    return dense;
}

/// Forms: scalar (broadcast), list of length n, "uniform(a,b)",
/// "loguniform(a,b)".
std::vector<double> parse_weights(const std::string& key, const std::string& s,
                                  std::size_t n, Rng& rng)
{
    std::vector<double> w;
    const auto uni = call_args(s, "uniform");
    const auto logu = call_args(s, "loguniform");
    if (uni || logu)
    {
        const std::string form = uni ? "uniform" : "loguniform";
        const auto& args = uni ? *uni : *logu;
        if (args.size() != 2)
        {
            throw ConfigError(key, form + "(a,b) takes two arguments");
        }
        const double a = parse_real(key, args[0]);
        const double b = parse_real(key, args[1]);
        if (!(a > 0.0 && b >= a))
        {
            throw ConfigError(key, form + "(a,b) needs 0 < a <= b");
        }
        for (std::size_t i = 0; i < n; ++i)
        {
            w.push_back(uni ? uniform(rng, a, b)
                            : std::exp(uniform(rng, std::log(a), std::log(b))));
        }
    }
    else
    {
        w = parse_list(key, s);
        if (w.size() == 1)
        {
            w.assign(n, w.front());
        }
    }
    if (w.size() != n)
    {
        throw ConfigError(key, "has " + std::to_string(w.size())
                                   + " entries, dimension is " + std::to_string(n));
    }
    for (double v : w)
    {
        if (!(v > 0.0))
        {
            throw ConfigError(key, "weights must be > 0");
        }
    }
    return w;
}

template <class F>
auto wrap(const std::string& key, F&& f) -> decltype(f())
{
    try
    {
        return f();
    }
    catch (const ConfigError&)
    {
        throw;
    }
    catch (const std::exception& err)
    {
        throw ConfigError(key, err.what());
    }
}

}  // namespace

ConfigError::ConfigError(const std::string& key, const std::string& what)
    : InvalidArgument(key + ": " + what), key_(key)
{
}

KeyValueConfig KeyValueConfig::parse(std::istream& in, const std::string& source)
{
    KeyValueConfig cfg;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line))
    {
        ++lineno;
        const auto hash = line.find('#');
        const std::string body = trim(std::string_view(line).substr(0, hash));
        if (body.empty())
        {
            continue;
        }
        const auto eq = body.find('=');
        const std::string where = source + ":" + std::to_string(lineno);
        if (eq == std::string::npos)
        {
            throw ConfigError(where, "expected 'key = value'");
        }
        const std::string key = trim(std::string_view(body).substr(0, eq));
        const std::string value = trim(std::string_view(body).substr(eq + 1));
        if (key.empty())
        {
            throw ConfigError(where, "empty key");
        }
        if (!cfg.entries_.emplace(key, value).second)
        {
            throw ConfigError(key, "duplicate key (" + where + ")");
        }
        cfg.used_[key] = false;
    }
    return cfg;
}

KeyValueConfig KeyValueConfig::load(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
    {
        throw ConfigError("config", "cannot open '" + path.string() + "'");
    }
    KeyValueConfig cfg = parse(in, path.string());
    cfg.base_dir_ = path.parent_path();
    return cfg;
}

bool KeyValueConfig::has(const std::string& key) const
{
    return entries_.count(key) != 0;
}

const std::string& KeyValueConfig::raw(const std::string& key) const
{
    const auto it = entries_.find(key);
    if (it == entries_.end())
    {
        throw ConfigError(key, "missing required key");
    }
    used_[key] = true;
    return it->second;
}

std::string KeyValueConfig::get_string(const std::string& key) const
{
    return raw(key);
}

std::string KeyValueConfig::get_string(const std::string& key,
                                       const std::string& dflt) const
{
    return has(key) ? raw(key) : dflt;
}

double KeyValueConfig::get_double(const std::string& key) const
{
    return parse_real(key, raw(key));
}

double KeyValueConfig::get_double(const std::string& key, double dflt) const
{
    return has(key) ? get_double(key) : dflt;
}

std::size_t KeyValueConfig::get_size(const std::string& key) const
{
    const std::string& s = raw(key);
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    {
        throw ConfigError(key, "expected a non-negative integer, got '" + s + "'");
    }
    return v;
}

std::size_t KeyValueConfig::get_size(const std::string& key,
                                     std::size_t dflt) const
{
    return has(key) ? get_size(key) : dflt;
}

std::uint64_t KeyValueConfig::get_u64(const std::string& key,
                                      std::uint64_t dflt) const
{
    if (!has(key))
    {
        return dflt;
    }
    const std::string& s = raw(key);
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    {
        throw ConfigError(key, "expected a non-negative integer, got '" + s + "'");
    }
    return v;
}

std::vector<double> KeyValueConfig::get_doubles(const std::string& key) const
{
    return parse_list(key, raw(key));
}

void KeyValueConfig::reject_unused() const
{
    for (const auto& [key, used] : used_)
    {
        if (!used)
        {
            throw ConfigError(key, "unknown key");
        }
    }
}

ExperimentConfig build_experiment(const KeyValueConfig& kv)
{
    ExperimentConfig cfg;
    cfg.name = kv.get_string("name");
    if (cfg.name.empty()
        || !std::all_of(cfg.name.begin(), cfg.name.end(), [](char c) {
               return std::isalnum(static_cast<unsigned char>(c)) || c == '_'
                      || c == '-' || c == '.';
           }))
    {
        throw ConfigError("name", "must be non-empty and use [A-Za-z0-9_.-]");
    }
    cfg.dimension = kv.get_size("dimension");
    if (cfg.dimension == 0)
    {
        throw ConfigError("dimension", "must be >= 1");
    }
    const std::size_t n = cfg.dimension;
    cfg.seed = kv.get_u64("seed", 0);
    if (kv.has("output_dir"))
    {
        cfg.output_dir = kv.get_string("output_dir");
    }

    // Dictionary.
    const std::string dict_type = kv.get_string("dictionary.type", "canonical");
    if (dict_type == "canonical")
    {
        cfg.dictionary = std::make_shared<CanonicalBasis>(n);
    }
    else if (dict_type == "rotated")
    {
        const std::uint64_t ds =
            kv.get_u64("dictionary.seed", sub_seed(cfg.seed, "dictionary"));
        cfg.dictionary = std::make_shared<RotatedBasis>(n, ds);
    }
    else
    {
        throw ConfigError("dictionary.type",
                          "expected canonical or rotated, got '" + dict_type + "'");
    }

    // Objective. Centers are dictionary coefficients; the objective lives in
    // canonical coordinates around their synthesis.
    cfg.objective_type = kv.get_string("objective.type");
    Rng rng = make_rng(kv.get_u64("objective.seed", sub_seed(cfg.seed, "objective")));
    std::optional<Point> x_bar;
    if (kv.has("objective.center"))
    {
        cfg.minimizer_coeffs =
            parse_center("objective.center", kv.raw("objective.center"), n, rng);
        x_bar = cfg.dictionary->synthesize_dense(*cfg.minimizer_coeffs);
    }
    auto require_center = [&]() -> const Point& {
        if (!x_bar)
        {
            throw ConfigError("objective.center",
                              "missing required key for " + cfg.objective_type);
        }
        return *x_bar;
    };

    if (cfg.objective_type == "diagonal_quadratic")
    {
        const Point& c = require_center();
        auto w = parse_weights("objective.weights",
                               kv.get_string("objective.weights", "1"), n, rng);
        cfg.objective = std::make_shared<DiagonalQuadratic>(c, std::move(w));
    }
    else if (cfg.objective_type == "power_sum")
    {
        const Point& c = require_center();
        const double p = kv.get_double("objective.exponent");
        if (!(p >= 2.0))
        {
            throw ConfigError("objective.exponent", "must be >= 2");
        }
        auto w = parse_weights("objective.weights",
                               kv.get_string("objective.weights", "1"), n, rng);
        cfg.objective = std::make_shared<PowerSum>(c, p, std::move(w));
    }
    else if (cfg.objective_type == "constant")
    {
        cfg.objective = std::make_shared<ConstantObjective>(
            n, kv.get_double("objective.value", 0.0));
        cfg.minimizer_coeffs = std::vector<double>(n, 0.0);
    }
    else if (cfg.objective_type == "least_squares")
    {
        Eigen::MatrixXd A;
        Eigen::VectorXd b;
        if (kv.has("objective.matrix_file"))
        {
            const auto path = kv.base_dir() / kv.get_string("objective.matrix_file");
            A = read_csv_matrix("objective.matrix_file", path);
            if (static_cast<std::size_t>(A.cols()) != n)
            {
                throw ConfigError("objective.matrix_file",
                                  "has " + std::to_string(A.cols())
                                      + " columns, dimension is " + std::to_string(n));
            }
            if (kv.has("objective.b_file"))
            {
                const auto bpath = kv.base_dir() / kv.get_string("objective.b_file");
                const Eigen::MatrixXd bm = read_csv_matrix("objective.b_file", bpath);
                if (bm.size() != A.rows() || (bm.rows() != 1 && bm.cols() != 1))
                {
                    throw ConfigError("objective.b_file",
                                      "must hold one value per matrix row");
                }
                b = Eigen::Map<const Eigen::VectorXd>(bm.data(), bm.size());
            }
            else
            {
                b = A * Eigen::Map<const Eigen::VectorXd>(require_center().data(),
                                                          static_cast<Eigen::Index>(n));
            }
        }
        else
        {
            const std::size_t rows = kv.get_size("objective.rows");
            if (rows == 0)
            {
                throw ConfigError("objective.rows", "must be >= 1");
            }
            const Point& c = require_center();
            A.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(n));
            const double scale = 1.0 / std::sqrt(static_cast<double>(rows));
            for (Eigen::Index j = 0; j < A.cols(); ++j)
            {
                for (Eigen::Index i = 0; i < A.rows(); ++i)
                {
                    A(i, j) = scale * standard_normal(rng);
                }
            }
            b = A * Eigen::Map<const Eigen::VectorXd>(c.data(),
                                                      static_cast<Eigen::Index>(n));
        }
        std::optional<Point> known;
        if (x_bar && !kv.has("objective.b_file"))
        {
            known = x_bar;
        }
        cfg.objective = wrap("objective", [&] {
            return std::make_shared<LeastSquares>(std::move(A), std::move(b), known);
        });
        if (!known)
        {
            // Minimizer from the normal equations, if unique.
            if (const auto m = cfg.objective->known_minimizer())
            {
                cfg.minimizer_coeffs = cfg.dictionary->analyze(*m);
            }
            else
            {
                cfg.minimizer_coeffs.reset();
            }
        }
    }
    else
    {
        throw ConfigError("objective.type",
                          "expected diagonal_quadratic, least_squares, power_sum "
                          "or constant, got '" + cfg.objective_type + "'");
    }

    // Solver.
    SolverConfig& s = cfg.solver;
    const std::string alg = kv.get_string("solver.algorithm", "omp");
    if (alg == "omp")
    {
        s.algorithm = Algorithm::omp;
    }
    else if (alg == "wcga")
    {
        s.algorithm = Algorithm::wcga;
    }
    else
    {
        throw ConfigError("solver.algorithm", "expected omp or wcga, got '" + alg + "'");
    }
    if (kv.has("solver.weakness"))
    {
        const auto ts = kv.get_doubles("solver.weakness");
        s.weakness = wrap("solver.weakness", [&] { return WeaknessSchedule(ts); });
    }
    s.max_steps = kv.get_size("solver.max_steps", s.max_steps);
    s.stop_tol = kv.get_double("solver.stop_tol", s.stop_tol);
    s.inner.inner_tol = kv.get_double("solver.inner_tol", s.inner.inner_tol);
    s.inner.max_inner_iters =
        kv.get_size("solver.max_inner_iters", s.inner.max_inner_iters);
    if (kv.has("solver.selection"))
    {
        s.selection_strategy = wrap("solver.selection", [&] {
            return parse_selection_strategy(kv.raw("solver.selection"));
        });
    }
    s.seed = kv.get_u64("solver.seed", sub_seed(cfg.seed, "solver"));
    wrap("solver", [&] {
        s.validate();
        return 0;
    });

    // Analysis.
    AnalysisConfig& a = cfg.analysis;
    if (kv.has("analysis.u_grid"))
    {
        a.u_grid = kv.get_doubles("analysis.u_grid");
    }
    else
    {
        for (int i = 1; i <= 10; ++i)
        {
            a.u_grid.push_back(0.1 * i);
        }
    }
    for (std::size_t i = 0; i < a.u_grid.size(); ++i)
    {
        if (!(a.u_grid[i] > 0.0) || (i > 0 && !(a.u_grid[i] > a.u_grid[i - 1])))
        {
            throw ConfigError("analysis.u_grid", "must be positive and increasing");
        }
    }
    a.sample_count = kv.get_size("analysis.sample_count", a.sample_count);
    if (a.sample_count == 0)
    {
        throw ConfigError("analysis.sample_count", "must be >= 1");
    }
    a.lambda_grid_size = kv.get_size("analysis.lambda_grid_size", a.lambda_grid_size);
    if (a.lambda_grid_size < 2)
    {
        throw ConfigError("analysis.lambda_grid_size", "must be >= 2");
    }
    a.tail_fraction = kv.get_double("analysis.tail_fraction", a.tail_fraction);
    if (!(a.tail_fraction > 0.0 && a.tail_fraction <= 1.0))
    {
        throw ConfigError("analysis.tail_fraction", "must lie in (0,1]");
    }
    a.omega_radius = kv.get_double("analysis.omega_radius", a.omega_radius);
    if (!(a.omega_radius >= 0.0))
    {
        throw ConfigError("analysis.omega_radius", "must be >= 0");
    }
    const std::string lmode = kv.get_string("analysis.L_mode", "closed_form");
    if (lmode == "closed_form")
    {
        a.L_mode = LMode::closed_form;
    }
    else if (lmode == "monte_carlo")
    {
        a.L_mode = LMode::monte_carlo;
    }
    else
    {
        throw ConfigError("analysis.L_mode",
                          "expected closed_form or monte_carlo, got '" + lmode + "'");
    }
    a.directions = kv.get_size("analysis.directions", a.directions);
    if (a.directions == 0)
    {
        throw ConfigError("analysis.directions", "must be >= 1");
    }
    a.seed = kv.get_u64("analysis.seed", sub_seed(cfg.seed, "analysis"));

    // Parameter overrides.
    auto opt = [&](const char* key) -> std::optional<double> {
        return kv.has(key) ? std::optional<double>(kv.get_double(key)) : std::nullopt;
    };
    cfg.params.alpha = opt("params.alpha");
    cfg.params.q = opt("params.q");
    cfg.params.beta = opt("params.beta");
    cfg.params.p = opt("params.p");
    cfg.params.M = opt("params.M");
    cfg.params.M0 = opt("params.M0");

    kv.reject_unused();

    std::ostringstream echo;
    for (const auto& [key, value] : kv.entries())
    {
        echo << key << " = " << value << '\n';
    }
    cfg.echo = echo.str();
    return cfg;
}

ExperimentConfig load_experiment(const std::filesystem::path& path)
{
    return build_experiment(KeyValueConfig::load(path));
}

std::optional<ConditionParams> resolve_params(const ExperimentConfig& cfg)
{
    std::optional<ConditionParams> base = cfg.objective->known_params();
    const ParamOverrides& o = cfg.params;
    if (!o.any())
    {
        return base;
    }
    if (!base)
    {
        if (!(o.alpha && o.beta && o.M && o.M0))
        {
            throw ConfigError("params",
                              "objective has no certified constants; set "
                              "params.alpha, params.beta, params.M and params.M0");
        }
        base = ConditionParams{};
    }
    ConditionParams p = *base;
    if (o.alpha) p.smooth.alpha = *o.alpha;
    if (o.q) p.smooth.q = *o.q;
    if (o.beta) p.convex.beta = *o.beta;
    if (o.p) p.convex.p = *o.p;
    if (o.M)
    {
        p.smooth.M = *o.M;
        p.convex.M = *o.M;
    }
    if (o.M0) p.smooth.M0 = *o.M0;
    return p;
}

SolverConfig parse_variant(const std::string& spec, const SolverConfig& base)
{
    SolverConfig s = base;
    const std::string t = trim(spec);
    if (t == "omp")
    {
        s.algorithm = Algorithm::omp;
        s.weakness = WeaknessSchedule();
        s.selection_strategy = SelectionStrategy::exact;
        return s;
    }
    std::vector<std::string> args;
    if (t == "wcga")
    {
        args = {};
    }
    else if (const auto a = call_args(t, "wcga"))
    {
        args = *a;
    }
    else
    {
        throw ConfigError("algs", "unknown variant '" + spec
                                      + "' (expected omp or wcga(...))");
    }
    s.algorithm = Algorithm::wcga;
    s.weakness = WeaknessSchedule();
    s.selection_strategy = SelectionStrategy::exact;
    for (const std::string& arg : args)
    {
        if (arg.rfind("t=", 0) == 0)
        {
            const double v = parse_real("algs", arg.substr(2));
            s.weakness = wrap("algs", [&] { return WeaknessSchedule(v); });
        }
        else if (arg.rfind("seed=", 0) == 0)
        {
            s.seed = static_cast<std::uint64_t>(parse_real("algs", arg.substr(5)));
        }
        else
        {
            s.selection_strategy =
                wrap("algs", [&] { return parse_selection_strategy(arg); });
        }
    }
    wrap("algs", [&] {
        s.validate();
        return 0;
    });
    return s;
}

}  // namespace greedyco::harness
