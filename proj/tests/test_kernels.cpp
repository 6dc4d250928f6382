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

// Equivalence of the AVX2 kernels with the scalar reference.

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <vector>

#include "greedyco/kernels.hpp"
#include "greedyco/random.hpp"

namespace k = greedyco::kernels;

namespace
{

std::vector<double> draw(greedyco::Rng& rng, std::size_t n)
{
    std::vector<double> v(n);
    for (double& x : v)
    {
        x = greedyco::standard_normal(rng) * std::exp(greedyco::uniform(rng, -3, 3));
    }
    return v;
}

bool bit_equal(const std::vector<double>& a, const std::vector<double>& b)
{
    return a.size() == b.size()
           && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("element-wise kernels agree bit for bit across variants")
{
    if (!k::isa_supported(k::Isa::avx2))
    {
        MESSAGE("CPU lacks AVX2; only the scalar path is exercised");
        return;
    }
    greedyco::Rng rng = greedyco::make_rng(11);
    for (std::size_t n = 0; n <= 67; ++n)
    {
        const auto x = draw(rng, n);
        const auto y0 = draw(rng, n);
        const double alpha = greedyco::standard_normal(rng);
        const double beta = greedyco::standard_normal(rng);

        auto ys = y0;
        auto yv = y0;
        k::scalar::axpy(alpha, x.data(), ys.data(), n);
        k::avx2::axpy(alpha, x.data(), yv.data(), n);
        CHECK(bit_equal(ys, yv));

        std::vector<double> zs(n), zv(n);
        k::scalar::axpby(alpha, x.data(), beta, y0.data(), zs.data(), n);
        k::avx2::axpby(alpha, x.data(), beta, y0.data(), zv.data(), n);
        CHECK(bit_equal(zs, zv));
    }
}

TEST_CASE("dot reductions agree up to summation order")
{
    greedyco::Rng rng = greedyco::make_rng(12);
    for (std::size_t n = 0; n <= 131; ++n)
    {
        const auto a = draw(rng, n);
        const auto b = draw(rng, n);
        // Oracle: long-double accumulation of the products.
        long double exact = 0.0L;
        double abs_sum = 0.0;
        for (std::size_t i = 0; i < n; ++i)
        {
            exact += static_cast<long double>(a[i]) * b[i];
            abs_sum += std::abs(a[i] * b[i]);
        }
        const double tol = 4.0 * static_cast<double>(n + 1) * 1.2e-16 * abs_sum;
        CHECK(std::abs(k::scalar::dot(a.data(), b.data(), n) - static_cast<double>(exact))
              <= tol);
        if (k::isa_supported(k::Isa::avx2))
        {
            CHECK(std::abs(k::avx2::dot(a.data(), b.data(), n)
                           - static_cast<double>(exact))
                  <= tol);
        }
    }
}

TEST_CASE("dispatch follows set_isa and gemv_t matches per-column dots")
{
    const k::Isa before = k::active_isa();
    greedyco::Rng rng = greedyco::make_rng(13);
    const std::size_t n = 37;
    const std::size_t cols = 5;
    const auto M = draw(rng, n * cols);
    const auto x = draw(rng, n);

    k::set_isa(k::Isa::scalar);
    CHECK(k::active_isa() == k::Isa::scalar);
    CHECK(k::isa_name(k::Isa::scalar) == "scalar");
    std::vector<double> out(cols);
    k::gemv_t(M.data(), n, cols, x.data(), out.data());
    for (std::size_t j = 0; j < cols; ++j)
    {
        CHECK(out[j] == k::scalar::dot(M.data() + j * n, x.data(), n));
    }
    if (k::isa_supported(k::Isa::avx2))
    {
        k::set_isa(k::Isa::avx2);
        CHECK(k::active_isa() == k::Isa::avx2);
        k::gemv_t(M.data(), n, cols, x.data(), out.data());
        for (std::size_t j = 0; j < cols; ++j)
        {
            CHECK(out[j] == k::avx2::dot(M.data() + j * n, x.data(), n));
        }
    }
    else
    {
        CHECK_THROWS(k::set_isa(k::Isa::avx2));
    }
    k::set_isa(before);
}
