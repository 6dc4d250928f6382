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

// greedyco: run greedy convex-minimization experiments from config files.
//
//   greedyco run <config>... [--jobs N]
//   greedyco moduli <config>
//   greedyco compare <config> --algs omp "wcga(t=0.5,first_admissible)"
//   greedyco demo-cs --rows 50 --cols 200 --sparsity 4 --seed 7
//
// Exit codes: 0 success, 2 theory check violated, 1 error.

#include <CLI11.hpp>
#include <iostream>

#include "greedyco/harness.hpp"

int main(int argc, char** argv)
{
    using namespace greedyco::harness;

    CLI::App app{"Greedy convex minimization over orthonormal dictionaries"};
    app.require_subcommand(1);
    std::string output_dir;
    CommonOptions opt;
    app.add_option("--output-dir", output_dir,
                   "Directory for output files (overrides config output_dir)");
    app.add_flag("--quiet", opt.quiet, "Suppress the per-run summary on stdout");

    std::vector<std::string> run_configs;
    std::size_t jobs = 1;
    CLI::App* run = app.add_subcommand("run", "Run experiments and check bounds");
    run->add_option("config", run_configs, "Experiment config file(s)")->required();
    run->add_option("--jobs", jobs, "Experiments run concurrently")
        ->check(CLI::PositiveNumber);

    std::string moduli_config;
    CLI::App* moduli = app.add_subcommand("moduli", "Estimate moduli of an objective");
    moduli->add_option("config", moduli_config, "Experiment config file")->required();

    std::string compare_config;
    std::vector<std::string> algs;
    CLI::App* compare =
        app.add_subcommand("compare", "Run several solver variants on one problem");
    compare->add_option("config", compare_config, "Experiment config file")->required();
    compare->add_option("--algs", algs, "Variants, e.g. omp \"wcga(t=0.5)\"")
        ->required();

    DemoCsOptions demo;
    CLI::App* cs = app.add_subcommand("demo-cs", "Compressed-sensing recovery demo");
    cs->add_option("--rows", demo.rows, "Measurements");
    cs->add_option("--cols", demo.cols, "Signal dimension");
    cs->add_option("--sparsity", demo.sparsity, "Nonzeros of the signal");
    cs->add_option("--seed", demo.seed, "Random seed");
    cs->add_option("--name", demo.name, "Output file prefix");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_error;
    }
    if (!output_dir.empty())
    {
        opt.output_dir = output_dir;
    }

    if (*run)
    {
        std::vector<std::filesystem::path> paths(run_configs.begin(), run_configs.end());
        return cmd_run(paths, opt, jobs);
    }
    if (*moduli)
    {
        return cmd_moduli(moduli_config, opt);
    }
    if (*compare)
    {
        return cmd_compare(compare_config, algs, opt);
    }
    return cmd_demo_cs(demo, opt);
}
