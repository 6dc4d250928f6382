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

#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "greedyco/harness.hpp"

using namespace greedyco;
using namespace greedyco::harness;
namespace fs = std::filesystem;

namespace
{

const fs::path fixtures{GREEDYCO_FIXTURE_DIR};

struct CliResult
{
    int code = -1;
    std::string output;
};

fs::path scratch(const std::string& name)
{
    const fs::path p = fs::temp_directory_path() / ("greedyco_test_harness_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

CliResult cli(const fs::path& out_dir, const std::string& args)
{
    const fs::path log = out_dir / "cli.log";
    const std::string cmd = std::string("\"") + GREEDYCO_CLI + "\" --quiet --output-dir \""
                            + out_dir.string() + "\" " + args + " > \"" + log.string()
                            + "\" 2>&1";
    const int raw = std::system(cmd.c_str());
    CliResult r;
    r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.output = slurp(log);
    return r;
}

std::string fixture(const std::string& name)
{
    return "\"" + (fixtures / name).string() + "\"";
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p)
{
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(slurp(p));
    std::string line;
    while (std::getline(in, line))
    {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ','))
        {
            cells.push_back(cell);
        }
        rows.push_back(cells);
    }
    return rows;
}

std::string report_value(const std::string& report, const std::string& key)
{
    std::istringstream in(report);
    std::string line;
    while (std::getline(in, line))
    {
        if (line.rfind(key + ": ", 0) == 0)
        {
            return line.substr(key.size() + 2);
        }
    }
    return {};
}

KeyValueConfig parse(const std::string& text)
{
    std::istringstream in(text);
    return KeyValueConfig::parse(in, "inline");
}

const std::string base_quadratic = "name = q\n"
                                   "dimension = 4\n"
                                   "objective.type = diagonal_quadratic\n"
                                   "objective.center = 3, 0, 1, 0\n"
                                   "dictionary.type = canonical\n";

std::string error_of(const std::string& text)
{
    try
    {
        build_experiment(parse(text));
    }
    catch (const std::exception& e)
    {
        return e.what();
    }
    return {};
}

}  // namespace

TEST_CASE("config grammar")
{
    const KeyValueConfig kv = parse("# comment\n\n a = 1  # trailing\nb=x, y\n");
    CHECK(kv.get_double("a") == 1.0);
    CHECK(kv.get_string("b") == "x, y");
    CHECK(kv.get_double("missing", 2.5) == 2.5);
    CHECK_THROWS_WITH(parse("a = 1\na = 2\n"), doctest::Contains("a"));
    CHECK_THROWS(parse("just text\n"));
    CHECK_THROWS_WITH(parse("a = x\n").get_double("a"), doctest::Contains("a"));
    CHECK(parse("l = 1, 2,3\n").get_doubles("l") == std::vector<double>{1, 2, 3});
}

TEST_CASE("config errors name the offending key")
{
    CHECK(error_of(base_quadratic) == "");
    CHECK(error_of(base_quadratic + "solver.max_stepz = 3\n").find("solver.max_stepz") == 0);
    CHECK(error_of(base_quadratic + "solver.weakness = 1.5\n").find("solver.weakness") == 0);
    CHECK(error_of(base_quadratic + "solver.weakness = 1.5\n").find("(0,1]")
          != std::string::npos);
    CHECK(error_of(base_quadratic + "objective.weights = 1, 2\n").find("objective.weights") == 0);
    CHECK(error_of(base_quadratic + "solver.algorithm = lasso\n").find("solver.algorithm") == 0);
    CHECK(error_of(base_quadratic + "solver.inner_tol = 1e-3\n").find("solver") == 0);
    CHECK(error_of("dimension = 4\nobjective.type = power_sum\nobjective.exponent = 1.5\n"
                   "objective.center = 0,0,0,1\ndictionary.type = canonical\nname = p\n")
              .find("objective.exponent")
          == 0);
    CHECK(error_of("name = x\ndimension = 0\n").find("dimension") == 0);
}

TEST_CASE("component seeds are independent")
{
    const std::string text = "name = s\ndimension = 12\nseed = 4\n"
                             "objective.type = diagonal_quadratic\n"
                             "objective.center = random(3)\n"
                             "dictionary.type = rotated\n";
    const ExperimentConfig a = build_experiment(parse(text));
    const ExperimentConfig b = build_experiment(parse(text + "solver.seed = 77\n"));
    CHECK(*a.minimizer_coeffs == *b.minimizer_coeffs);
    CHECK(a.dictionary->atom(0) == b.dictionary->atom(0));
    const ExperimentConfig c = build_experiment(parse(text + "dictionary.seed = 5\n"));
    CHECK(*a.minimizer_coeffs == *c.minimizer_coeffs);
    CHECK_FALSE(a.dictionary->atom(0) == c.dictionary->atom(0));
    const ExperimentConfig d =
        build_experiment(parse("name = s\ndimension = 12\nseed = 5\n"
                               "objective.type = diagonal_quadratic\n"
                               "objective.center = random(3)\n"
                               "dictionary.type = rotated\n"));
    CHECK_FALSE(*a.minimizer_coeffs == *d.minimizer_coeffs);
}

TEST_CASE("solver variant parsing")
{
    const SolverConfig base;
    CHECK(parse_variant("omp", base).algorithm == Algorithm::omp);
    const SolverConfig w = parse_variant("wcga(t=0.5,first_admissible,seed=3)", base);
    CHECK(w.algorithm == Algorithm::wcga);
    CHECK(w.weakness.at(1) == 0.5);
    CHECK(w.selection_strategy == SelectionStrategy::first_admissible);
    CHECK(w.seed == 3);
    CHECK_THROWS(parse_variant("wcga(t=2)", base));
    CHECK_THROWS(parse_variant("cosamp", base));
}

TEST_CASE("run command exit codes and outputs")
{
    const fs::path out = scratch("run");
    CliResult r = cli(out, "run " + fixture("quadratic.conf"));
    CHECK(r.code == 0);
    const std::string report = slurp(out / "quadratic.report.txt");
    CHECK(report.rfind("STATUS: OK\n", 0) == 0);
    CHECK(report_value(report, "steps") == "2");
    CHECK(report_value(report, "gamma") == "0.5");
    const auto trace = read_csv(out / "quadratic.trace.csv");
    REQUIRE(trace.size() == 4);
    CHECK(trace[0][0] == "k");
    CHECK(std::stod(trace[1][2]) == 5.0);
    CHECK(std::stod(trace[2][2]) == 0.5);
    CHECK(read_csv(out / "quadratic.bounds.csv")[0]
          == std::vector<std::string>{"k", "e_k", "bound_k", "margin"});

    r = cli(out, "run " + fixture("bad_weakness.conf"));
    CHECK(r.code == 1);
    CHECK(r.output.find("solver.weakness") != std::string::npos);
    CHECK(r.output.find("(0,1]") != std::string::npos);

    r = cli(out, "run " + fixture("p_equals_q.conf"));
    CHECK(r.code == 1);
    CHECK(r.output.find("p != q or p = q = 2") != std::string::npos);
    CHECK(slurp(out / "p_equals_q.report.txt").rfind("STATUS: ERROR", 0) == 0);

    r = cli(out, "run \"" + (out / "does_not_exist.conf").string() + "\"");
    CHECK(r.code == 1);

    for (const char* f : {"power_sum.conf", "least_squares.conf", "wcga.conf", "constant.conf"})
    {
        CAPTURE(f);
        CHECK(cli(out, std::string("run ") + fixture(f)).code == 0);
    }
    CHECK(slurp(out / "wcga.report.txt").find("negative") == std::string::npos);
}

TEST_CASE("violations yield exit code 2")
{
    const fs::path out = scratch("violation");
    // A smoothness constant far below the true one makes the certified
    // contraction too strong for the actual run.
    std::ofstream(out / "tight.conf") << "name = tight\n"
                                         "dimension = 6\n"
                                         "objective.type = diagonal_quadratic\n"
                                         "objective.center = 1, 1, 1, 1, 1, 1\n"
                                         "objective.weights = 1, 1, 1, 1, 1, 1\n"
                                         "dictionary.type = canonical\n"
                                         "params.alpha = 0.5\n"
                                         "params.beta = 1.4\n";
    const CliResult r = cli(out, "run \"" + (out / "tight.conf").string() + "\"");
    CHECK(r.code == 2);
    CHECK(slurp(out / "tight.report.txt").rfind("STATUS: VIOLATION", 0) == 0);
}

TEST_CASE("moduli command")
{
    const fs::path out = scratch("moduli");
    REQUIRE(cli(out, "moduli " + fixture("quadratic.conf")).code == 0);
    const auto rows = read_csv(out / "quadratic.moduli.csv");
    REQUIRE(rows.size() == 11);
    CHECK(rows[0] == std::vector<std::string>{"u", "rho", "rho1", "delta1"});
    for (std::size_t i = 1; i < rows.size(); ++i)
    {
        const double u = std::stod(rows[i][0]);
        for (std::size_t c = 1; c < 4; ++c)
        {
            CHECK(std::abs(std::stod(rows[i][c]) - 0.5 * u * u) <= 1e-9);
        }
    }
    REQUIRE(cli(out, "moduli " + fixture("constant.conf")).code == 0);
    const auto zero = read_csv(out / "constant.moduli.csv");
    for (std::size_t i = 1; i < zero.size(); ++i)
    {
        for (std::size_t c = 1; c < 4; ++c)
        {
            CHECK(std::stod(zero[i][c]) == 0.0);
        }
    }
    CHECK(cli(out, "moduli " + fixture("least_squares.conf")).code == 0);
    CHECK(slurp(out / "least_squares.moduli.txt").rfind("STATUS: OK", 0) == 0);
}

TEST_CASE("compare command")
{
    const fs::path out = scratch("compare");
    REQUIRE(cli(out, "compare " + fixture("power_sum.conf") + " --algs omp \"wcga(t=1)\"").code
            == 0);
    const auto rows = read_csv(out / "power_sum.compare.csv");
    REQUIRE(rows.size() > 3);
    CHECK(rows[0] == std::vector<std::string>{"k", "e_k(omp)", "e_k(wcga(t=1))"});
    for (std::size_t i = 1; i < rows.size(); ++i)
    {
        CHECK(std::abs(std::stod(rows[i][1]) - std::stod(rows[i][2])) <= 1e-10);
    }

    std::ofstream(out / "c23.conf") << "name = c23\ndimension = 3\n"
                                       "objective.type = diagonal_quadratic\n"
                                       "objective.center = 2, 3, 0\n"
                                       "dictionary.type = canonical\n";
    REQUIRE(cli(out, "compare \"" + (out / "c23.conf").string()
                         + "\" --algs omp \"wcga(t=0.5,first_admissible)\"")
                .code
            == 0);
    const std::string txt = slurp(out / "c23.compare.txt");
    CHECK(txt.find("selected: 1 0") != std::string::npos);
    CHECK(txt.find("selected: 0 1") != std::string::npos);

    REQUIRE(cli(out, "compare " + fixture("wcga.conf") + " --algs \"wcga(t=0.3)\" \"wcga(t=0.9)\"")
                .code
            == 0);
    const std::string w = slurp(out / "wcga.compare.txt");
    CHECK(w.find("bound_violations: 0") != std::string::npos);
    CHECK(w.find("bound_violations: 1") == std::string::npos);

    CHECK(cli(out, "compare " + fixture("quadratic.conf") + " --algs omp").code != 0);
}

TEST_CASE("demo-cs command")
{
    const fs::path out = scratch("demo");
    REQUIRE(cli(out, "demo-cs --rows 50 --cols 200 --sparsity 4 --seed 7").code == 0);
    const std::string rep = slurp(out / "demo_cs.report.txt");
    CHECK(report_value(rep, "support_recovered") == "yes");
    CHECK(report_value(rep, "steps") == "4");
    CHECK(std::stod(report_value(rep, "final_error_norm")) <= 1e-10);
    const double lo = std::stod(report_value(rep, "rip_ratio_min"));
    const double hi = std::stod(report_value(rep, "rip_ratio_max"));
    CHECK(lo > 0.0);
    CHECK(lo < 1.0);
    CHECK(hi > 1.0);

    REQUIRE(cli(out, "demo-cs --sparsity 0 --name zero").code == 0);
    CHECK(report_value(slurp(out / "zero.report.txt"), "steps") == "0");

    REQUIRE(cli(out, "demo-cs --rows 30 --cols 30 --sparsity 15 --name square").code == 0);
    const std::string sq = slurp(out / "square.report.txt");
    CHECK(report_value(sq, "support_recovered") == "yes");
    CHECK(std::stod(report_value(sq, "final_error_norm")) <= 1e-8);

    CHECK(cli(out, "demo-cs --rows 30 --cols 20").code == 1);
    CHECK(cli(out, "demo-cs --rows 30 --sparsity 16").code == 1);
}

TEST_CASE("runs are byte-identical across repeats and job counts")
{
    const fs::path a = scratch("det_a");
    const fs::path b = scratch("det_b");
    const std::string all = fixture("quadratic.conf") + " " + fixture("power_sum.conf") + " "
                            + fixture("least_squares.conf") + " " + fixture("wcga.conf");
    REQUIRE(cli(a, "run --jobs 1 " + all).code == 0);
    REQUIRE(cli(b, "run --jobs 3 " + all).code == 0);
    for (const char* n : {"quadratic", "power_sum", "least_squares", "wcga"})
    {
        CAPTURE(n);
        const std::string t = std::string(n) + ".trace.csv";
        CHECK(slurp(a / t) == slurp(b / t));
        CHECK(slurp(a / (std::string(n) + ".bounds.csv"))
              == slurp(b / (std::string(n) + ".bounds.csv")));
        CHECK_FALSE(slurp(a / t).empty());
    }
    REQUIRE(cli(b, "run " + fixture("power_sum.conf")).code == 0);
    CHECK(slurp(a / "power_sum.trace.csv") == slurp(b / "power_sum.trace.csv"));
}

TEST_CASE("least squares from matrix files")
{
    const fs::path dir = scratch("files");
    std::ofstream(dir / "A.csv") << "1, 0\n0, 2\n1, 1\n";
    std::ofstream(dir / "b.csv") << "1\n4\n3\n";
    std::ofstream(dir / "ls.conf") << "name = ls\ndimension = 2\n"
                                      "objective.type = least_squares\n"
                                      "objective.matrix_file = A.csv\n"
                                      "objective.b_file = b.csv\n"
                                      "dictionary.type = canonical\n";
    const ExperimentConfig cfg = load_experiment(dir / "ls.conf");
    // A^T A = [[2,1],[1,5]], A^T b = (4, 11): solution (1, 2).
    const Point m = *cfg.objective->known_minimizer();
    CHECK(m[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m[1] == doctest::Approx(2.0).epsilon(1e-12));
    std::ofstream(dir / "bad.conf") << "name = bad\ndimension = 3\n"
                                       "objective.type = least_squares\n"
                                       "objective.matrix_file = A.csv\n"
                                       "objective.b_file = b.csv\n"
                                       "dictionary.type = canonical\n";
    CHECK_THROWS_WITH(load_experiment(dir / "bad.conf"),
                      doctest::Contains("objective.matrix_file"));
}
