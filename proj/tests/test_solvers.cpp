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

#include <Eigen/Dense>
#include <cmath>
#include <memory>
#include <set>
#include <sstream>

#include "greedyco/dictionary.hpp"
#include "greedyco/objectives.hpp"
#include "greedyco/random.hpp"
#include "greedyco/solvers.hpp"

using namespace greedyco;

namespace
{

SolverConfig omp_config(std::size_t max_steps = 100)
{
    SolverConfig c;
    c.max_steps = max_steps;
    return c;
}

Point random_sparse(Rng& rng, std::size_t n, std::size_t k)
{
    std::vector<double> v(n, 0.0);
    std::set<std::size_t> used;
    while (used.size() < k)
    {
        used.insert(static_cast<std::size_t>(uniform(rng, 0, static_cast<double>(n))) % n);
    }
    for (std::size_t j : used)
    {
        v[j] = (uniform(rng, 0, 1) < 0.5 ? -1 : 1) * uniform(rng, 1, 2);
    }
    return Point(std::move(v));
}

void check_trace_invariants(const Objective& E, const Dictionary& D,
                            const IterateTrace& tr, const SolverConfig& cfg)
{
    REQUIRE_FALSE(tr.steps.empty());
    CHECK(tr.steps.front().x.is_zero());
    std::set<std::size_t> seen;
    for (std::size_t i = 1; i < tr.steps.size(); ++i)
    {
        const TraceStep& s = tr.steps[i];
        CHECK(s.k == i);
        // Monotone objective values.
        CHECK(s.E <= tr.steps[i - 1].E + 1e-12 * std::max(1.0, std::abs(s.E)));
        // Fresh atoms.
        REQUIRE(s.selected_index.has_value());
        CHECK(seen.insert(*s.selected_index).second);
        // Gradient orthogonal to the selected atoms up to inner_tol.
        const std::vector<std::size_t> js(seen.begin(), seen.end());
        const std::vector<double> g = D.analyze(E.gradient(s.x), js);
        for (double v : g)
        {
            CHECK(std::abs(v) <= cfg.inner.inner_tol * (1 + 1e-9));
        }
        // Iterate lies in the span of the selected atoms.
        const std::vector<double> c = D.analyze(s.x);
        for (std::size_t j = 0; j < c.size(); ++j)
        {
            if (!seen.count(j))
            {
                CHECK(std::abs(c[j]) <= 1e-9 * std::max(1.0, norm(s.x)));
            }
        }
    }
    CHECK(tr.steps.size() <= D.size() + 1);
}

}  // namespace

TEST_CASE("restricted minimization examples")
{
    const DiagonalQuadratic E(Point{3, 0, 1, 0});
    const CanonicalBasis D(4);
    const InnerConfig ic;
    const RestrictedResult r = restricted_minimize(E, D, SparseSupport({0}, 4), {}, ic);
    CHECK(norm(r.x - Point{3, 0, 0, 0}) <= 1e-12);
    CHECK(r.coeffs.at(0) == doctest::Approx(3.0));
    CHECK(r.residual <= ic.inner_tol);

    // A warm start that already satisfies the tolerance is kept.
    const RestrictedResult w =
        restricted_minimize(E, D, SparseSupport({0}, 4), {{0, 3.0}}, ic);
    CHECK(w.x == Point{3, 0, 0, 0});
    CHECK(w.iterations == 0);

    CHECK_THROWS(restricted_minimize(E, D, SparseSupport({0}, 4), {{1, 1.0}}, ic));
}

TEST_CASE("restricted minimization on full support matches normal equations")
{
    Rng rng = make_rng(11);
    for (int t = 0; t < 10; ++t)
    {
        Eigen::MatrixXd A(8, 5);
        for (Eigen::Index i = 0; i < A.size(); ++i)
        {
            A.data()[i] = standard_normal(rng);
        }
        Eigen::VectorXd b(8);
        for (Eigen::Index i = 0; i < 8; ++i)
        {
            b(i) = standard_normal(rng);
        }
        const LeastSquares E(A, b);
        const CanonicalBasis D(5);
        const RestrictedResult r =
            restricted_minimize(E, D, SparseSupport({0, 1, 2, 3, 4}, 5), {}, InnerConfig{});
        const Eigen::VectorXd xs = (A.transpose() * A).ldlt().solve(A.transpose() * b);
        for (std::size_t i = 0; i < 5; ++i)
        {
            CHECK(r.x[i] == doctest::Approx(xs(static_cast<Eigen::Index>(i))).epsilon(1e-8));
        }
    }
}

TEST_CASE("restricted minimization never increases the objective")
{
    Rng rng = make_rng(12);
    const PowerSum E(random_sparse(rng, 8, 4), 4.0, std::vector<double>(8, 1.0));
    const RotatedBasis D(8, 3);
    for (int t = 0; t < 20; ++t)
    {
        CoefficientMap warm{{1, standard_normal(rng)}, {5, standard_normal(rng)}};
        const double e0 = E.value(D.synthesize(warm));
        const RestrictedResult r =
            restricted_minimize(E, D, SparseSupport({1, 5}, 8), warm, InnerConfig{});
        CHECK(E.value(r.x) <= e0);
        CHECK(r.residual <= InnerConfig{}.inner_tol);
    }
}

TEST_CASE("OMP worked example")
{
    const DiagonalQuadratic E(Point{3, 0, 1, 0});
    const CanonicalBasis D(4);
    const IterateTrace tr = run_omp(E, D, omp_config(10));
    REQUIRE(tr.steps.size() == 3);
    CHECK(*tr.steps[0].e == doctest::Approx(5.0));
    CHECK(*tr.steps[1].selected_index == 0);
    CHECK(*tr.steps[1].e == doctest::Approx(0.5));
    CHECK(*tr.steps[2].selected_index == 2);
    CHECK(std::abs(*tr.steps[2].e) <= 1e-14);
    CHECK(tr.stopped());

    const DiagonalQuadratic Z(Point::zeros(4));
    const IterateTrace tz = run_omp(Z, D, omp_config(10));
    CHECK(tz.steps.size() == 1);
    CHECK(tz.stopped());
}

TEST_CASE("OMP on least squares recovers the brute-force best support")
{
    Rng rng = make_rng(13);
    for (int t = 0; t < 10; ++t)
    {
        const std::size_t n = 6;
        // Orthonormal rows: A^T A is the identity, so greedy is exact.
        const RotatedBasis R(n, 100 + static_cast<std::uint64_t>(t));
        Eigen::MatrixXd A(n, n);
        for (std::size_t j = 0; j < n; ++j)
        {
            const Point a = R.atom(j);
            for (std::size_t i = 0; i < n; ++i)
            {
                A(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = a[i];
            }
        }
        const Point xbar = random_sparse(rng, n, 2);
        Eigen::VectorXd xv(n);
        for (std::size_t i = 0; i < n; ++i)
        {
            xv(static_cast<Eigen::Index>(i)) = xbar[i];
        }
        const LeastSquares E(A, A * xv);
        const CanonicalBasis D(n);
        SolverConfig cfg = omp_config();
        cfg.max_steps = 2;
        const IterateTrace tr = run_omp(E, D, cfg);
        REQUIRE(tr.steps.size() >= 3);
        // Oracle: best 2-support by exhaustive search.
        double best = INFINITY;
        std::set<std::size_t> best_s;
        for (std::size_t i = 0; i < n; ++i)
        {
            for (std::size_t j = i + 1; j < n; ++j)
            {
                Eigen::MatrixXd As(n, 2);
                As.col(0) = A.col(static_cast<Eigen::Index>(i));
                As.col(1) = A.col(static_cast<Eigen::Index>(j));
                const Eigen::VectorXd c = As.colPivHouseholderQr().solve(A * xv);
                const double r = (As * c - A * xv).squaredNorm();
                if (r < best)
                {
                    best = r;
                    best_s = {i, j};
                }
            }
        }
        const std::set<std::size_t> got{*tr.steps[1].selected_index,
                                         *tr.steps[2].selected_index};
        CHECK(got == best_s);
        CHECK(std::abs(*tr.steps[2].e) <= 1e-9);
    }
}

TEST_CASE("WCGA with unit weakness reproduces OMP")
{
    Rng rng = make_rng(14);
    for (int t = 0; t < 5; ++t)
    {
        const PowerSum E(random_sparse(rng, 10, 4), 4.0, std::vector<double>(10, 1.0));
        const RotatedBasis D(10, 5 + static_cast<std::uint64_t>(t));
        SolverConfig a = omp_config(30);
        SolverConfig b = a;
        b.algorithm = Algorithm::wcga;
        b.weakness = WeaknessSchedule(1.0);
        const IterateTrace ta = run_solver(E, D, a);
        const IterateTrace tb = run_solver(E, D, b);
        std::ostringstream sa;
        std::ostringstream sb;
        write_trace_csv(sa, ta);
        write_trace_csv(sb, tb);
        CHECK(sa.str() == sb.str());
    }
}

TEST_CASE("WCGA weak selection examples")
{
    const DiagonalQuadratic E(Point{2, 3, 0});
    const CanonicalBasis D(3);
    SolverConfig c = omp_config(5);
    c.algorithm = Algorithm::wcga;
    c.weakness = WeaknessSchedule(0.5);
    c.selection_strategy = SelectionStrategy::first_admissible;
    const IterateTrace tr = run_wcga(E, D, c);
    CHECK(*tr.steps[1].selected_index == 0);
    CHECK(*tr.steps[2].selected_index == 1);

    c.selection_strategy = SelectionStrategy::random_admissible;
    c.seed = 99;
    std::ostringstream s1;
    std::ostringstream s2;
    write_trace_csv(s1, run_wcga(E, D, c));
    write_trace_csv(s2, run_wcga(E, D, c));
    CHECK(s1.str() == s2.str());
}

TEST_CASE("weakness schedule")
{
    const WeaknessSchedule s(std::vector<double>{0.5, 0.7});
    CHECK(s.at(1) == 0.5);
    CHECK(s.at(2) == 0.7);
    CHECK(s.at(9) == 0.7);
    CHECK(WeaknessSchedule().is_constant_one());
    CHECK_THROWS_WITH(WeaknessSchedule(1.5), doctest::Contains("(0,1]"));
    CHECK_THROWS(WeaknessSchedule(0.0));
    CHECK_THROWS(WeaknessSchedule(std::vector<double>{}));
    CHECK_THROWS(s.at(0));
}

TEST_CASE("solver configuration validation")
{
    SolverConfig c;
    c.inner.inner_tol = 1e-6;
    c.stop_tol = 1e-8;
    CHECK_THROWS(c.validate());
    SolverConfig d;
    d.stop_tol = 0.0;
    CHECK_THROWS(d.validate());
    SolverConfig ok;
    CHECK_NOTHROW(ok.validate());
}

TEST_CASE("greedy trace invariants on random problems")
{
    Rng rng = make_rng(15);
    for (int t = 0; t < 12; ++t)
    {
        const std::size_t n = 8 + static_cast<std::size_t>(t);
        const auto D = std::make_shared<RotatedBasis>(n, 30 + static_cast<std::uint64_t>(t));
        std::vector<double> w(n);
        for (double& v : w)
        {
            v = std::exp(uniform(rng, 0, 3));
        }
        ObjectivePtr E;
        if (t % 2 == 0)
        {
            E = std::make_shared<DiagonalQuadratic>(random_sparse(rng, n, 3), w);
        }
        else
        {
            E = std::make_shared<PowerSum>(random_sparse(rng, n, 3), 4.0, w);
        }
        SolverConfig cfg = omp_config(3 * n);
        if (t % 3 == 0)
        {
            cfg.algorithm = Algorithm::wcga;
            cfg.weakness = WeaknessSchedule(0.6);
            cfg.selection_strategy = SelectionStrategy::random_admissible;
            cfg.seed = static_cast<std::uint64_t>(t);
        }
        CAPTURE(t);
        const IterateTrace tr = run_solver(*E, *D, cfg);
        check_trace_invariants(*E, *D, tr, cfg);
        // Finite recovery: the trace ends by the stopping rule within n steps.
        CHECK(tr.stopped());
        CHECK(tr.last_step() <= n);
    }
}

TEST_CASE("rotation invariance of OMP")
{
    Rng rng = make_rng(16);
    const std::size_t n = 9;
    const auto base = std::make_shared<PowerSum>(random_sparse(rng, n, 3), 4.0,
                                                 std::vector<double>{1, 3, 9, 27, 2, 5, 7, 11, 13});
    const auto R = std::make_shared<RotatedBasis>(n, 8);
    const InBasis rotated(base, R);
    const CanonicalBasis C(n);
    const IterateTrace a = run_omp(*base, C, omp_config());
    const IterateTrace b = run_omp(rotated, *R, omp_config());
    REQUIRE(a.steps.size() == b.steps.size());
    for (std::size_t i = 0; i < a.steps.size(); ++i)
    {
        CHECK(a.steps[i].selected_index == b.steps[i].selected_index);
        CHECK(std::abs(*a.steps[i].e - *b.steps[i].e)
              <= 1e-8 * std::max(1.0, *a.steps[0].e));
    }
}

TEST_CASE("padding the dimension does not change the run")
{
    const DiagonalQuadratic small(Point{3, -1, 2}, {1.0, 2.0, 0.5});
    const DiagonalQuadratic big(Point{3, -1, 2, 0, 0, 0}, {1.0, 2.0, 0.5, 1.0, 1.0, 1.0});
    const IterateTrace a = run_omp(small, CanonicalBasis(3), omp_config());
    const IterateTrace b = run_omp(big, CanonicalBasis(6), omp_config());
    REQUIRE(a.steps.size() == b.steps.size());
    for (std::size_t i = 0; i < a.steps.size(); ++i)
    {
        CHECK(a.steps[i].selected_index == b.steps[i].selected_index);
        CHECK(*a.steps[i].e == doctest::Approx(*b.steps[i].e).epsilon(1e-12));
    }
}

TEST_CASE("trace CSV layout")
{
    const DiagonalQuadratic E(Point{3, 0, 1, 0});
    std::ostringstream os;
    write_trace_csv(os, run_omp(E, CanonicalBasis(4), omp_config()));
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    CHECK(line == "k,E_k,e_k,dist_to_min,selected_index,grad_coeff,grad_sup,stopped");
    std::size_t rows = 0;
    while (std::getline(is, line))
    {
        ++rows;
    }
    CHECK(rows == 3);
}
