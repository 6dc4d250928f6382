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

// Convergence theory toolkit: moduli of smoothness and uniform convexity,
// the constants of the OMP/WCGA rate bounds, the sequence bound behind them,
// and checkers that hold solver traces against those bounds.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "greedyco/core.hpp"
#include "greedyco/objectives.hpp"
#include "greedyco/solvers.hpp"

namespace greedyco
{

// --- moduli ----------------------------------------------------------------

struct ModuliSampling
{
    double radius = 1.0;  ///< x uniform in the ball of this radius
    std::vector<double> u_grid;
    std::size_t sample_count = 200;
    /// lambda_i = i / (size + 1), i = 1..size. An odd size puts 1/2 on the
    /// grid.
    std::size_t lambda_grid_size = 9;
    std::uint64_t seed = 0;
    std::optional<Point> center;
};

/// Sampled moduli. rho and rho1 are sups (the estimate is a lower bound of
/// the true value); delta1 is an inf (the estimate is an upper bound).
/// The same (x, y) samples are used for every u.
struct ModulusEstimate
{
    std::vector<double> u_grid;
    std::vector<double> rho;
    std::vector<double> rho1;
    std::vector<double> delta1;
    std::size_t sample_count = 0;
    std::uint64_t seed = 0;
};

ModulusEstimate estimate_moduli(const Objective& E, const ModuliSampling& cfg);

struct EquivalenceRow
{
    double u = 0.0;
    double four_rho_half = 0.0;  ///< 4 rho(u/2)
    double rho1 = 0.0;
    double two_rho = 0.0;  ///< 2 rho(u)
    bool left_ok = false;  ///< 4 rho(u/2) <= slack * rho1(u) + tol
    bool right_ok = false;  ///< rho1(u) <= 2 rho(u) + tol
};

struct EquivalenceReport
{
    std::vector<EquivalenceRow> rows;
    bool all_left = true;
    bool all_right = true;
};

/// Checks 4 rho(u/2) <= rho1(u) <= 2 rho(u) on every grid u whose half is
/// also on the grid. Throws if no such u exists.
EquivalenceReport check_moduli_equivalence(const ModulusEstimate& m,
                                           double slack = 1.05,
                                           double tol = 1e-9);

/// u,rho,rho1,delta1
void write_moduli_csv(std::ostream& os, const ModulusEstimate& m);

// --- constants -------------------------------------------------------------

/// min{beta, beta L^(1-p)}: convexity constant valid on the whole sublevel
/// set when its diameter is at most L M.
double compute_beta0(double beta, double p, double L);

/// Step-gain constant of the error recursion, maximized over the free step
/// parameter mu (optimum mu = q, or the boundary value
/// M0 M^(1-q) / alpha when that is at least q).
double compute_C3(double M0, double M, double alpha, double q);

/// Thrown when 1 - C3_tilde / |S| <= 0 (no contraction can be certified).
class VacuousBound : public InvalidArgument
{
public:
    using InvalidArgument::InvalidArgument;
};

struct RateConstants
{
    double alpha = 0.0;
    double q = 2.0;
    double beta = 0.0;
    double p = 2.0;
    double M = 0.0;
    double M0 = 0.0;
    double L = 1.0;
    std::size_t support_size = 0;

    double beta0 = 0.0;
    double r = 0.0;
    double C3 = 0.0;
    double C2 = 0.0;  ///< E(0) - E(x_bar)
    std::optional<double> C3_tilde;  ///< p = q = 2 only
    std::optional<double> gamma;     ///< p = q = 2 only
    std::optional<double> C0;        ///< p > q only
    std::optional<double> C1;        ///< p > q only

    bool exponential() const noexcept { return gamma.has_value(); }
    /// e_k exponent of the polynomial regime, -p(q-1)/(p-q).
    double polynomial_slope() const noexcept;
};

/// Direct substitution of all rate constants. Requires p > q, or p = q = 2.
/// C2 = E(0) - E(x_bar) must be >= 0.
RateConstants compute_rate_constants(const ConditionParams& params, double L,
                                     std::size_t support_size, double C2);

RateConstants compute_rate_constants(const Objective& E, const Point& x_bar,
                                     std::size_t support_size,
                                     const ConditionParams& params, double L);

/// max(1, diameter / M).
double compute_L(double omega_diameter, double M);

/// Outer estimate of diam{E <= E(0)}: bisection along seeded rays from x_bar
/// to the level set boundary, twice the largest radius, inflated by 10%.
double estimate_omega_diameter(const Objective& E, const Point& x_bar,
                               std::size_t directions, std::uint64_t seed);

// --- sequence bound --------------------------------------------------------

struct SequenceBoundInput
{
    double B = 1.0;    ///< a_1 <= B
    double r = 1.0;
    double ell = 1.0;  ///< exponent l > 0
    std::vector<double> r_seq;  ///< r_2, r_3, ...
};

/// max{1, l^(-1/l)} r^(1/l) (r B^(-l) + sum_{k=2}^m r_k)^(-1/l), m >= 2.
double lmseq_bound(const SequenceBoundInput& in, std::size_t m);

// --- trace checks ----------------------------------------------------------

struct RecursionRow
{
    std::size_t k = 0;
    double e_prev = 0.0;
    double e_k = 0.0;
    double rhs = 0.0;  ///< e_{k-1} [1 - (C3/r) t_k^{q/(q-1)} e_{k-1}^{...}]
    double margin = 0.0;  ///< rhs - e_k
    bool ok = false;
};

struct RecursionReport
{
    std::vector<RecursionRow> rows;
    std::size_t violations = 0;
    std::optional<double> min_margin;
};

/// Per-step contraction check over consecutive rows k >= 2 of the trace.
/// schedule: WCGA weakness (t_k scales the gain); nullptr for OMP.
RecursionReport check_error_recursion(const IterateTrace& trace,
                                      const RateConstants& rc,
                                      const WeaknessSchedule* schedule = nullptr,
                                      double tol = 1e-9);

/// Upper bound on e_k, k >= 2. Polynomial or geometric depending on the
/// regime; with a schedule the step count is replaced by the weighted sum
/// of t_j^(q/(q-1)) (or the geometric factor by the product over t_j^2).
double theoretical_error_bound(const RateConstants& rc, std::size_t k,
                               const WeaknessSchedule* schedule = nullptr);

/// (e_k / beta0)^(1/p): bound on |x_k - x_bar|.
double distance_bound(const RateConstants& rc, double e_k);

struct BoundRow
{
    std::size_t k = 0;
    double e_k = 0.0;
    double bound = 0.0;
    double margin = 0.0;  ///< bound - e_k
    std::optional<double> dist;
    double dist_bound = 0.0;
    bool ok = false;
};

struct BoundReport
{
    std::vector<BoundRow> rows;
    std::size_t violations = 0;
    std::size_t distance_violations = 0;
    std::optional<double> min_margin;
};

/// e_k <= bound_k + tol for every k >= 1 (bound_1 = C2) and
/// dist_to_min <= distance_bound(bound_k) + dist_tol.
BoundReport check_error_bounds(const IterateTrace& trace,
                               const RateConstants& rc,
                               const WeaknessSchedule* schedule = nullptr,
                               double tol = 1e-9, double dist_tol = 1e-8);

/// k,e_k,bound_k,margin
void write_bounds_csv(std::ostream& os, const BoundReport& report);

// --- rate fitting ----------------------------------------------------------

struct RateFit
{
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;  ///< RMS of the log-log residuals
    std::size_t points = 0;
    /// Local slope steepens markedly across the window (e.g. geometric
    /// decay), so the power-law slope depends on the window.
    bool super_polynomial = false;
};

/// Least squares of log e_k on log k over the last tail_fraction of the
/// positive-error rows (k >= 1). Errors below 1e-12 times the largest one
/// count as zero. Needs >= 5 points.
RateFit fit_rate(const IterateTrace& trace, double tail_fraction);
RateFit fit_rate(std::span<const double> k, std::span<const double> e,
                 double tail_fraction);

}  // namespace greedyco
