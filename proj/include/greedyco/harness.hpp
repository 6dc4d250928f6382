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

// Experiment harness behind the command-line tool: config parsing, problem
// construction, and the run / moduli / compare / demo-cs commands.
//
// Config grammar (one entry per line):
//   key = value        keys are dotted names, e.g. objective.weights
//   # comment          from '#' to end of line; blank lines are ignored
// Lists are comma separated. Every key may appear once; unknown keys are
// rejected so typos surface as errors naming the key.
//
// Randomness: each component draws from seed + stable_hash(component) with
// components "objective", "dictionary", "solver" and "analysis", unless
// the config pins a component seed explicitly.

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "greedyco/analysis.hpp"
#include "greedyco/core.hpp"
#include "greedyco/dictionary.hpp"
#include "greedyco/objectives.hpp"
#include "greedyco/solvers.hpp"

namespace greedyco::harness
{

/// Malformed config; the message starts with the offending key.
class ConfigError : public InvalidArgument
{
public:
    ConfigError(const std::string& key, const std::string& what);
    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

/// Flat key = value store with typed, key-named accessors.
class KeyValueConfig
{
public:
    static KeyValueConfig parse(std::istream& in, const std::string& source);
    static KeyValueConfig load(const std::filesystem::path& path);

    bool has(const std::string& key) const;
    const std::string& raw(const std::string& key) const;
    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& dflt) const;
    double get_double(const std::string& key) const;
    double get_double(const std::string& key, double dflt) const;
    std::size_t get_size(const std::string& key) const;
    std::size_t get_size(const std::string& key, std::size_t dflt) const;
    std::uint64_t get_u64(const std::string& key, std::uint64_t dflt) const;
    std::vector<double> get_doubles(const std::string& key) const;

    /// Throws ConfigError for the first key never read by an accessor.
    void reject_unused() const;
    const std::filesystem::path& base_dir() const noexcept { return base_dir_; }
    const std::map<std::string, std::string>& entries() const noexcept
    {
        return entries_;
    }

private:
    std::map<std::string, std::string> entries_;
    mutable std::map<std::string, bool> used_;
    std::filesystem::path base_dir_;
};

enum class LMode
{
    closed_form,
    monte_carlo,
};

struct AnalysisConfig
{
    std::vector<double> u_grid;  ///< default 0.1, 0.2, ..., 1.0
    std::size_t sample_count = 200;
    std::size_t lambda_grid_size = 9;
    double tail_fraction = 0.5;
    double omega_radius = 1.0;
    LMode L_mode = LMode::closed_form;
    std::size_t directions = 64;  ///< rays of the Monte Carlo diameter
    std::uint64_t seed = 0;
};

/// Explicit overrides of the certified condition constants.
struct ParamOverrides
{
    std::optional<double> alpha, q, beta, p, M, M0;
    bool any() const noexcept { return alpha || q || beta || p || M || M0; }
};

struct ExperimentConfig
{
    std::string name;
    std::size_t dimension = 0;
    std::uint64_t seed = 0;
    std::optional<std::filesystem::path> output_dir;

    std::string objective_type;
    std::shared_ptr<const Dictionary> dictionary;
    ObjectivePtr objective;
    /// Coefficients of the sparse minimizer in the dictionary, when known.
    std::optional<std::vector<double>> minimizer_coeffs;

    SolverConfig solver;
    AnalysisConfig analysis;
    ParamOverrides params;

    std::string echo;  ///< normalized key = value listing for reports
};

/// Parses, validates and builds every component. Throws ConfigError.
ExperimentConfig build_experiment(const KeyValueConfig& kv);
ExperimentConfig load_experiment(const std::filesystem::path& path);

/// Condition constants: certified by the objective, then overridden.
std::optional<ConditionParams> resolve_params(const ExperimentConfig& cfg);

/// "omp", "wcga", "wcga(t=0.5)", "wcga(t=0.5,first_admissible)", ...
SolverConfig parse_variant(const std::string& spec, const SolverConfig& base);

enum ExitCode : int
{
    exit_ok = 0,
    exit_error = 1,
    exit_violation = 2,
};

struct CommonOptions
{
    std::optional<std::filesystem::path> output_dir;
    bool quiet = false;
};

/// Summary of one cmd_run (also rendered into <name>.report.txt).
struct RunReport
{
    std::string name;
    int status = exit_ok;
    std::string error;
    IterateTrace trace;
    std::optional<RateConstants> constants;
    std::optional<RecursionReport> recursion;
    std::optional<BoundReport> bounds;
    std::optional<RateFit> fit;
    std::string fit_note;
    std::vector<std::string> notes;
    std::filesystem::path trace_path;
    double wall_seconds = 0.0;
};

/// Runs the solver, checks the trace against the theory and writes
/// <name>.trace.csv, <name>.bounds.csv and <name>.report.txt.
RunReport run_experiment(const ExperimentConfig& cfg, const CommonOptions& opt);

int cmd_run(const std::vector<std::filesystem::path>& configs,
            const CommonOptions& opt, std::size_t jobs);
int cmd_moduli(const std::filesystem::path& config, const CommonOptions& opt);
int cmd_compare(const std::filesystem::path& config,
                const std::vector<std::string>& algorithms,
                const CommonOptions& opt);

struct DemoCsOptions
{
    std::size_t rows = 50;
    std::size_t cols = 200;
    std::size_t sparsity = 4;
    std::uint64_t seed = 7;
    std::string name = "demo_cs";
};

int cmd_demo_cs(const DemoCsOptions& demo, const CommonOptions& opt);

}  // namespace greedyco::harness
