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

#include "greedyco/core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "greedyco/kernels.hpp"

namespace greedyco
{
namespace
{

void require_finite(const std::vector<double>& v)
{
    for (std::size_t i = 0; i < v.size(); ++i)
    {
        if (!std::isfinite(v[i]))
        {
            throw InvalidArgument("point coordinate " + std::to_string(i)
                                  + " is not finite");
        }
    }
}

void require_same_dim(const Point& a, const Point& b)
{
    if (a.dimension() != b.dimension())
    {
        throw DimensionMismatch(a.dimension(), b.dimension());
    }
}

}  // namespace

DimensionMismatch::DimensionMismatch(std::size_t expected, std::size_t actual)
    : std::invalid_argument("dimension mismatch: expected "
                            + std::to_string(expected) + ", got "
                            + std::to_string(actual))
{
}

Point::Point(std::vector<double> coords) : coords_(std::move(coords))
{
    require_finite(coords_);
}

Point::Point(std::initializer_list<double> coords) : coords_(coords)
{
    require_finite(coords_);
}

Point Point::zeros(std::size_t n) { return Point(std::vector<double>(n, 0.0)); }

bool Point::is_zero() const noexcept
{
    return std::all_of(coords_.begin(), coords_.end(),
                       [](double v) { return v == 0.0; });
}

Point operator+(const Point& a, const Point& b) { return add_scaled(a, 1.0, b); }

Point operator-(const Point& a, const Point& b)
{
    return add_scaled(a, -1.0, b);
}

Point operator*(double c, const Point& a)
{
    std::vector<double> out(a.dimension());
    kernels::axpby(c, a.data(), 0.0, a.data(), out.data(), out.size());
    return Point(std::move(out));
}

Point add_scaled(const Point& a, double c, const Point& b)
{
    require_same_dim(a, b);
    std::vector<double> out(a.dimension());
    kernels::axpby(1.0, a.data(), c, b.data(), out.data(), out.size());
    return Point(std::move(out));
}

std::string format_real(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

double inner(const Point& a, const Point& b)
{
    require_same_dim(a, b);
    return kernels::dot(a.data(), b.data(), a.dimension());
}

double norm(const Point& a)
{
    return std::sqrt(kernels::dot(a.data(), a.data(), a.dimension()));
}

SparseSupport::SparseSupport(std::vector<std::size_t> indices,
                             std::size_t dimension)
{
    for (std::size_t j : indices)
    {
        if (j >= dimension)
        {
            throw InvalidArgument("support index " + std::to_string(j)
                                  + " outside [0, "
                                  + std::to_string(dimension) + ")");
        }
        insert(j);
    }
}

bool SparseSupport::insert(std::size_t j)
{
    const auto it = std::lower_bound(indices_.begin(), indices_.end(), j);
    if (it != indices_.end() && *it == j)
    {
        return false;
    }
    indices_.insert(it, j);
    return true;
}

bool SparseSupport::contains(std::size_t j) const noexcept
{
    return std::binary_search(indices_.begin(), indices_.end(), j);
}

SparseSupport SparseSupport::of(const Point& x)
{
    SparseSupport s;
    for (std::size_t i = 0; i < x.dimension(); ++i)
    {
        if (x[i] != 0.0)
        {
            s.indices_.push_back(i);
        }
    }
    return s;
}

void SmoothnessParams::validate() const
{
    if (!(alpha > 0.0))
    {
        throw InvalidArgument("smoothness alpha must be > 0");
    }
    if (!(q > 1.0 && q <= 2.0))
    {
        throw InvalidArgument("smoothness exponent q must lie in (1,2]");
    }
    if (!(M > 0.0))
    {
        throw InvalidArgument("radius M must be > 0");
    }
    if (!(M0 > 0.0))
    {
        throw InvalidArgument("gradient bound M0 must be > 0");
    }
}

void ConvexityParams::validate() const
{
    if (!(beta > 0.0))
    {
        throw InvalidArgument("convexity beta must be > 0");
    }
    if (!(p >= 2.0) || !std::isfinite(p))
    {
        throw InvalidArgument("convexity exponent p must lie in [2,inf)");
    }
    if (!(M > 0.0))
    {
        throw InvalidArgument("radius M must be > 0");
    }
}

}  // namespace greedyco
