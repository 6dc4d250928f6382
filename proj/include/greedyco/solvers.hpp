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
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "greedyco/core.hpp"
#include "greedyco/dictionary.hpp"
#include "greedyco/objectives.hpp"

namespace greedyco
{

/// Weakness parameters t_k in (0,1], k = 1, 2, ... Either a constant or an
/// explicit list; past the end of a list the last value repeats.
class WeaknessSchedule
{
public:
    WeaknessSchedule() = default;
    explicit WeaknessSchedule(double t);
    explicit WeaknessSchedule(std::vector<double> ts);

    /// t_k for step k >= 1.
    double at(std::size_t k) const;
    bool is_constant_one() const noexcept;
    std::string describe() const;

private:
    std::vector<double> ts_{1.0};
};

struct InnerConfig
{
    double inner_tol = 1e-10;
    std::size_t max_inner_iters = 20000;
    double armijo_c = 1e-4;
    double backtrack_factor = 0.5;
    double initial_step = 1.0;

    void validate() const;
};

enum class Algorithm
{
    omp,
    wcga,
};

struct SolverConfig
{
    Algorithm algorithm = Algorithm::omp;
    WeaknessSchedule weakness;
    std::size_t max_steps = 100;
    double stop_tol = 1e-8;
    InnerConfig inner;
    SelectionStrategy selection_strategy = SelectionStrategy::exact;
    std::uint64_t seed = 0;

    void validate() const;
};

struct RestrictedResult
{
    Point x;
    CoefficientMap coeffs;
    /// max_{j in S} |<E'(x), phi_j>| at exit.
    double residual = 0.0;
    std::size_t iterations = 0;
    /// The restricted Hessian was singular: the minimizer may not be unique.
    bool degenerate = false;
};

/// Inner solve failed to reach inner_tol; carries the best iterate found.
class InnerSolveError : public std::runtime_error
{
public:
    InnerSolveError(const std::string& what, RestrictedResult best);
    const RestrictedResult& best() const noexcept { return best_; }

private:
    RestrictedResult best_;
};

/// A solver step failed; wraps the inner error with the step index.
class SolverError : public std::runtime_error
{
public:
    SolverError(std::size_t step, const std::string& what);
    std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

/// argmin of E over span{phi_j : j in S}, to inner_tol in the restricted
/// gradient. Quadratic objectives are solved by Newton steps on the
/// restricted system, other objectives with a Hessian by damped Newton, and
/// the rest (or a stalled Newton phase) by gradient descent with Armijo
/// backtracking.
/// The result never has a larger objective value than the warm start.
RestrictedResult restricted_minimize(const Objective& E, const Dictionary& D,
                                     const SparseSupport& S,
                                     const CoefficientMap& warm_start,
                                     const InnerConfig& cfg);

IterateTrace run_omp(const Objective& E, const Dictionary& D,
                     const SolverConfig& cfg);
IterateTrace run_wcga(const Objective& E, const Dictionary& D,
                      const SolverConfig& cfg);

/// Dispatches on cfg.algorithm.
IterateTrace run_solver(const Objective& E, const Dictionary& D,
                        const SolverConfig& cfg);

/// Header: k,E_k,e_k,dist_to_min,selected_index,grad_coeff,grad_sup,stopped
/// Absent values are written as empty fields; reals use 17 significant
/// digits.
void write_trace_csv(std::ostream& os, const IterateTrace& trace);

}  // namespace greedyco
