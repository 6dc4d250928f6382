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

#include "greedyco/dictionary.hpp"

#include <cmath>
#include <string>

#include "greedyco/kernels.hpp"
#include "greedyco/random.hpp"

namespace greedyco
{
namespace
{

void require_dim(const Point& x, std::size_t n)
{
    if (x.dimension() != n)
    {
        throw DimensionMismatch(n, x.dimension());
    }
}

void require_index(std::size_t j, std::size_t n)
{
    if (j >= n)
    {
        throw InvalidArgument("atom index " + std::to_string(j)
                              + " outside dictionary of size "
                              + std::to_string(n));
    }
}

}  // namespace

std::vector<double> Dictionary::analyze(const Point& x,
                                        std::span<const std::size_t> js) const
{
    const std::vector<double> all = analyze(x);
    std::vector<double> out;
    out.reserve(js.size());
    for (std::size_t j : js)
    {
        require_index(j, all.size());
        out.push_back(all[j]);
    }
    return out;
}

Point Dictionary::synthesize_dense(std::span<const double> coeffs) const
{
    if (coeffs.size() != size())
    {
        throw DimensionMismatch(size(), coeffs.size());
    }
    CoefficientMap m;
    for (std::size_t j = 0; j < coeffs.size(); ++j)
    {
        if (coeffs[j] != 0.0)
        {
            m.emplace(j, coeffs[j]);
        }
    }
    return synthesize(m);
}

// ---------------------------------------------------------------------------

CanonicalBasis::CanonicalBasis(std::size_t n) : n_(n)
{
    if (n == 0)
    {
        throw InvalidArgument("dictionary dimension must be positive");
    }
}

Point CanonicalBasis::atom(std::size_t j) const
{
    require_index(j, n_);
    std::vector<double> v(n_, 0.0);
    v[j] = 1.0;
    return Point(std::move(v));
}

std::vector<double> CanonicalBasis::analyze(const Point& x) const
{
    require_dim(x, n_);
    return x.to_vector();
}

std::vector<double> CanonicalBasis::analyze(
    const Point& x, std::span<const std::size_t> js) const
{
    require_dim(x, n_);
    std::vector<double> out;
    out.reserve(js.size());
    for (std::size_t j : js)
    {
        require_index(j, n_);
        out.push_back(x[j]);
    }
    return out;
}

Point CanonicalBasis::synthesize(const CoefficientMap& coeffs) const
{
    std::vector<double> v(n_, 0.0);
    for (const auto& [j, c] : coeffs)
    {
        require_index(j, n_);
        v[j] = c;
    }
    return Point(std::move(v));
}

// ---------------------------------------------------------------------------

RotatedBasis::RotatedBasis(std::size_t n, std::uint64_t seed)
    : n_(n), seed_(seed), q_(n * n, 0.0)
{
    if (n == 0)
    {
        throw InvalidArgument("dictionary dimension must be positive");
    }
    for (std::size_t i = 0; i < n; ++i)
    {
        q_[i * n + i] = 1.0;
    }
    Rng rng = make_rng(seed);
    std::vector<double> v(n);
    for (std::size_t k = 0; k < n; ++k)
    {
        double vv = 0.0;
        do
        {
            for (double& x : v)
            {
                x = standard_normal(rng);
            }
            vv = kernels::dot(v.data(), v.data(), n);
        } while (vv == 0.0);
        // Q <- (I - 2 v v^T / vv) Q, one column at a time.
        for (std::size_t col = 0; col < n; ++col)
        {
            double* c = q_.data() + col * n;
            const double s = -2.0 * kernels::dot(v.data(), c, n) / vv;
            kernels::axpy(s, v.data(), c, n);
        }
    }
}

Point RotatedBasis::atom(std::size_t j) const
{
    require_index(j, n_);
    const auto first = q_.begin() + static_cast<std::ptrdiff_t>(j * n_);
    return Point(std::vector<double>(first, first + static_cast<std::ptrdiff_t>(n_)));
}

std::vector<double> RotatedBasis::analyze(const Point& x) const
{
    require_dim(x, n_);
    std::vector<double> out(n_);
    kernels::gemv_t(q_.data(), n_, n_, x.data(), out.data());
    return out;
}

std::vector<double> RotatedBasis::analyze(
    const Point& x, std::span<const std::size_t> js) const
{
    require_dim(x, n_);
    std::vector<double> out;
    out.reserve(js.size());
    for (std::size_t j : js)
    {
        require_index(j, n_);
        out.push_back(kernels::dot(q_.data() + j * n_, x.data(), n_));
    }
    return out;
}

Point RotatedBasis::synthesize(const CoefficientMap& coeffs) const
{
    std::vector<double> v(n_, 0.0);
    for (const auto& [j, c] : coeffs)
    {
        require_index(j, n_);
        kernels::axpy(c, q_.data() + j * n_, v.data(), n_);
    }
    return Point(std::move(v));
}

}  // namespace greedyco
