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

#include <cmath>
#include <vector>

#include "greedyco/dictionary.hpp"
#include "greedyco/random.hpp"

using namespace greedyco;

namespace
{

Point random_point(Rng& rng, std::size_t n)
{
    std::vector<double> v(n);
    for (double& x : v)
    {
        x = standard_normal(rng);
    }
    return Point(std::move(v));
}

void check_orthonormal_dictionary(const Dictionary& D, std::uint64_t seed)
{
    const std::size_t n = D.size();
    for (std::size_t i = 0; i < n; ++i)
    {
        for (std::size_t j = 0; j < n; ++j)
        {
            CHECK(std::abs(inner(D.atom(i), D.atom(j)) - (i == j ? 1.0 : 0.0))
                  <= 1e-10);
        }
    }
    Rng rng = make_rng(seed);
    for (int t = 0; t < 20; ++t)
    {
        const Point x = random_point(rng, n);
        const std::vector<double> c = D.analyze(x);
        // Parseval against an independent norm of the coefficient vector.
        double cs = 0.0;
        for (double v : c)
        {
            cs += v * v;
        }
        CHECK(std::abs(std::sqrt(cs) - norm(x)) <= 1e-10 * norm(x));
        // Analysis coefficients are inner products with the atoms.
        for (std::size_t j = 0; j < n; ++j)
        {
            CHECK(c[j] == doctest::Approx(inner(x, D.atom(j))).epsilon(1e-12));
        }
        // Round trip through synthesis, dense and sparse.
        const Point back = D.synthesize_dense(c);
        CHECK(norm(back - x) <= 1e-10 * std::max(1.0, norm(x)));
        CoefficientMap m;
        for (std::size_t j = 0; j < n; ++j)
        {
            m[j] = c[j];
        }
        CHECK(norm(D.synthesize(m) - x) <= 1e-10 * std::max(1.0, norm(x)));
        // Subset analysis agrees with full analysis.
        const std::vector<std::size_t> js{0, n / 2, n - 1};
        const std::vector<double> sub = D.analyze(x, js);
        for (std::size_t i = 0; i < js.size(); ++i)
        {
            CHECK(sub[i] == doctest::Approx(c[js[i]]).epsilon(1e-14));
        }
    }
}

}  // namespace

TEST_CASE("canonical basis is orthonormal with trivial coefficients")
{
    const CanonicalBasis D(9);
    check_orthonormal_dictionary(D, 1);
    const Point x{1, -2, 3, 0, 0, 0, 0, 0, 4};
    CHECK(D.analyze(x) == x.to_vector());
    CHECK(D.synthesize({{2, 5.0}}) == Point{0, 0, 5, 0, 0, 0, 0, 0, 0});
}

TEST_CASE("rotated basis is orthonormal and seeded")
{
    for (std::size_t n : {1u, 2u, 7u, 32u})
    {
        const RotatedBasis D(n, 42 + n);
        check_orthonormal_dictionary(D, n);
    }
    const RotatedBasis a(10, 5);
    const RotatedBasis b(10, 5);
    const RotatedBasis c(10, 6);
    CHECK(std::vector<double>(a.matrix().begin(), a.matrix().end())
          == std::vector<double>(b.matrix().begin(), b.matrix().end()));
    CHECK(norm(a.atom(0) - c.atom(0)) > 1e-3);
}

TEST_CASE("dimension mismatches are rejected")
{
    const RotatedBasis D(4, 1);
    CHECK_THROWS_AS(D.analyze(Point{1, 2, 3}), DimensionMismatch);
    CHECK_THROWS(D.synthesize({{4, 1.0}}));
    CHECK_THROWS(D.atom(4));
}

TEST_CASE("argmax_atom examples")
{
    const std::vector<double> a{-3, 0, -1, 0};
    CHECK(argmax_atom(a).index == 0);
    CHECK(argmax_atom(a).value == -3);
    const std::vector<double> b{2, -2};
    CHECK(argmax_atom(b).index == 0);
    CHECK(argmax_atom(b).value == 2);
    const std::vector<double> c{0, 0, 5};
    CHECK(argmax_atom(c).index == 2);
    CHECK_THROWS(argmax_atom(std::vector<double>{}));
}

TEST_CASE("weak_select examples")
{
    const std::vector<double> g{-2, -3};
    CHECK(weak_select(g, 0.5, SelectionStrategy::first_admissible, 0).index == 0);
    for (auto s : {SelectionStrategy::exact, SelectionStrategy::first_admissible,
                   SelectionStrategy::random_admissible})
    {
        CHECK(weak_select(g, 1.0, s, 3).index == 1);
    }
    const std::vector<double> single{1, 0, 0};
    for (std::uint64_t seed = 0; seed < 20; ++seed)
    {
        CHECK(weak_select(single, 0.5, SelectionStrategy::random_admissible, seed)
                  .index
              == 0);
    }
    CHECK_THROWS(weak_select(std::vector<double>{}, 0.5, SelectionStrategy::exact, 0));
    CHECK_THROWS_WITH(weak_select(g, 1.5, SelectionStrategy::exact, 0),
                      doctest::Contains("(0,1]"));
    CHECK_THROWS(weak_select(g, 0.0, SelectionStrategy::exact, 0));
    CHECK(parse_selection_strategy("first_admissible")
          == SelectionStrategy::first_admissible);
    CHECK(to_string(SelectionStrategy::random_admissible) == "random_admissible");
    CHECK_THROWS(parse_selection_strategy("greedy"));
}

TEST_CASE("weak selection properties on random coefficients")
{
    Rng rng = make_rng(77);
    for (int t = 0; t < 300; ++t)
    {
        const std::size_t n = 1 + static_cast<std::size_t>(t % 11);
        std::vector<double> c(n);
        for (double& v : c)
        {
            // Small integers make exact ties common.
            v = std::round(uniform(rng, -3, 3));
        }
        const AtomChoice best = argmax_atom(c);
        CHECK(weak_select(c, 1.0, SelectionStrategy::exact, 0).index == best.index);
        CHECK(weak_select(c, 1.0, SelectionStrategy::first_admissible, 0).index
              == best.index);
        const double tt = uniform(rng, 0.05, 1.0);
        for (auto s : {SelectionStrategy::exact, SelectionStrategy::first_admissible,
                       SelectionStrategy::random_admissible})
        {
            const AtomChoice w = weak_select(c, tt, s, static_cast<std::uint64_t>(t));
            CHECK(std::abs(c[w.index]) >= tt * std::abs(best.value));
            CHECK(w.value == c[w.index]);
        }
        const auto r1 = weak_select(c, tt, SelectionStrategy::random_admissible, 9);
        const auto r2 = weak_select(c, tt, SelectionStrategy::random_admissible, 9);
        CHECK(r1.index == r2.index);
    }
}
