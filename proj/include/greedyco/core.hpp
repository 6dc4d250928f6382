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

#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace greedyco
{

/// Raised when two objects of different ambient dimension are combined.
class DimensionMismatch : public std::invalid_argument
{
public:
    DimensionMismatch(std::size_t expected, std::size_t actual);
};

/// Raised when a value violates a documented range or invariant.
class InvalidArgument : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// A point of the finite-dimensional truncation of H: dense coordinates in
/// R^n, all finite. Immutable once built.
class Point
{
public:
    Point() = default;
    explicit Point(std::vector<double> coords);
    Point(std::initializer_list<double> coords);

    static Point zeros(std::size_t n);

    std::size_t dimension() const noexcept { return coords_.size(); }
    double operator[](std::size_t i) const { return coords_[i]; }
    std::span<const double> coords() const noexcept { return coords_; }
    const double* data() const noexcept { return coords_.data(); }

    /// Copy of the coordinates, for callers that build a modified point.
    std::vector<double> to_vector() const { return coords_; }

    bool is_zero() const noexcept;

    friend Point operator+(const Point& a, const Point& b);
    friend Point operator-(const Point& a, const Point& b);
    friend Point operator*(double c, const Point& a);
    friend bool operator==(const Point& a, const Point& b) = default;

private:
    std::vector<double> coords_;
};

/// a + c*b, computed in one pass.
Point add_scaled(const Point& a, double c, const Point& b);

double inner(const Point& a, const Point& b);

/// "%g" rendering of a real for error messages, e.g. "1.5".
std::string format_real(double v);
double norm(const Point& a);

/// Ordered set of dictionary indices.
class SparseSupport
{
public:
    SparseSupport() = default;
    SparseSupport(std::vector<std::size_t> indices, std::size_t dimension);

    /// Inserts j keeping the order; returns false if j was already present.
    bool insert(std::size_t j);
    bool contains(std::size_t j) const noexcept;
    std::size_t size() const noexcept { return indices_.size(); }
    bool empty() const noexcept { return indices_.empty(); }
    const std::vector<std::size_t>& indices() const noexcept
    {
        return indices_;
    }

    /// Indices of the nonzero coordinates of x.
    static SparseSupport of(const Point& x);

private:
    std::vector<std::size_t> indices_;
};

/// Sparse coefficient vector over dictionary indices.
using CoefficientMap = std::map<std::size_t, double>;

/// Constants of the upper (smoothness) Bregman bound:
///   E(x') - E(x) - <E'(x), x' - x> <= alpha * |x' - x|^q
/// for x in the sublevel set and |x' - x| <= M, with |E'| <= M0 there.
struct SmoothnessParams
{
    double alpha = 0.0;
    double q = 2.0;
    double M = 0.0;
    double M0 = 0.0;

    void validate() const;
};

/// Constants of the lower (uniform convexity) Bregman bound:
///   E(x') - E(x) - <E'(x), x' - x> >= beta * |x' - x|^p.
struct ConvexityParams
{
    double beta = 0.0;
    double p = 2.0;
    double M = 0.0;

    void validate() const;
};

struct ConditionParams
{
    SmoothnessParams smooth;
    ConvexityParams convex;
};

/// One row of a solver run. Row k = 0 is the starting point x_0 = 0;
/// gradient data in row k refers to E'(x_{k-1}).
struct TraceStep
{
    std::size_t k = 0;
    Point x;
    double E = 0.0;
    std::optional<double> e;
    std::optional<std::size_t> selected_index;
    std::optional<double> grad_coeff;
    std::optional<double> grad_sup;
    std::optional<double> dist_to_min;
    bool stopped = false;
};

struct IterateTrace
{
    std::vector<TraceStep> steps;
    /// Sup of the gradient analysis coefficients at the last iterate.
    double final_grad_sup = 0.0;
    /// Runtime observations (e.g. a singular restricted Hessian).
    std::vector<std::string> notes;

    bool stopped() const noexcept
    {
        return !steps.empty() && steps.back().stopped;
    }
    std::size_t last_step() const noexcept
    {
        return steps.empty() ? 0 : steps.back().k;
    }
};

}  // namespace greedyco
