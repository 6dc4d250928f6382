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

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "greedyco/core.hpp"

namespace greedyco
{

/// Orthonormal basis {phi_j} of R^n. The symmetric dictionary {+-phi_j} is
/// represented by the unsigned atoms; signs live in the coefficients.
class Dictionary
{
public:
    virtual ~Dictionary() = default;

    virtual std::size_t size() const noexcept = 0;
    virtual Point atom(std::size_t j) const = 0;

    /// <x, phi_j> for every j.
    virtual std::vector<double> analyze(const Point& x) const = 0;

    /// <x, phi_j> for the listed j only, in the listed order.
    virtual std::vector<double> analyze(const Point& x,
                                        std::span<const std::size_t> js) const;

    virtual Point synthesize(const CoefficientMap& coeffs) const = 0;

    /// Dense coefficients, one per atom.
    Point synthesize_dense(std::span<const double> coeffs) const;
};

class CanonicalBasis final : public Dictionary
{
public:
    explicit CanonicalBasis(std::size_t n);

    std::size_t size() const noexcept override { return n_; }
    Point atom(std::size_t j) const override;
    std::vector<double> analyze(const Point& x) const override;
    std::vector<double> analyze(const Point& x,
                                std::span<const std::size_t> js) const override;
    Point synthesize(const CoefficientMap& coeffs) const override;

private:
    std::size_t n_;
};

/// Q = H_n ... H_1 with H_k = I - 2 v_k v_k^T / |v_k|^2 and v_k seeded
/// Gaussian vectors; atom j is column j of Q.
class RotatedBasis final : public Dictionary
{
public:
    RotatedBasis(std::size_t n, std::uint64_t seed);

    std::size_t size() const noexcept override { return n_; }
    Point atom(std::size_t j) const override;
    std::vector<double> analyze(const Point& x) const override;
    std::vector<double> analyze(const Point& x,
                                std::span<const std::size_t> js) const override;
    Point synthesize(const CoefficientMap& coeffs) const override;

    std::uint64_t seed() const noexcept { return seed_; }
    /// Column-major n x n.
    std::span<const double> matrix() const noexcept { return q_; }

private:
    std::size_t n_;
    std::uint64_t seed_;
    std::vector<double> q_;
};

struct AtomChoice
{
    std::size_t index = 0;
    double value = 0.0;
};

/// Index maximizing |coeffs_j|, lowest index on ties.
AtomChoice argmax_atom(std::span<const double> coeffs);

enum class SelectionStrategy
{
    exact,
    first_admissible,
    random_admissible,
};

std::string_view to_string(SelectionStrategy s) noexcept;
SelectionStrategy parse_selection_strategy(std::string_view name);

/// Any index with |coeffs_j| >= t * max_i |coeffs_i|, picked by strategy.
/// random_admissible draws uniformly from the admissible set using seed.
AtomChoice weak_select(std::span<const double> coeffs, double t,
                       SelectionStrategy strategy, std::uint64_t seed);

}  // namespace greedyco
