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

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "greedyco/core.hpp"

namespace greedyco
{

class Dictionary;

/// Convex, Frechet differentiable objective on R^n.
///
/// known_params(), when present, are certified: the Bregman gap bounds hold
/// for every x in the sublevel set {E <= E(0)} and every x' within M of x.
/// M is chosen at least the sublevel-set diameter so the same constants hold
/// on the whole set.
class Objective
{
public:
    virtual ~Objective() = default;

    virtual std::string_view name() const noexcept = 0;
    virtual std::size_t dimension() const noexcept = 0;
    virtual double value(const Point& x) const = 0;
    virtual Point gradient(const Point& x) const = 0;

    virtual std::optional<ConditionParams> known_params() const
    {
        return std::nullopt;
    }
    virtual std::optional<Point> known_minimizer() const
    {
        return std::nullopt;
    }
    /// Closed-form upper bound on diam{x : E(x) <= E(0)}.
    virtual std::optional<double> omega_diameter() const
    {
        return std::nullopt;
    }

    /// Quadratic objectives expose their constant Hessian so restricted
    /// minimization can be solved exactly.
    virtual bool is_quadratic() const noexcept { return false; }
    virtual Point hessian_apply(const Point& v) const;

    /// Twice-differentiable objectives expose E''(x) v for Newton steps in
    /// restricted minimization. Quadratics forward to hessian_apply.
    virtual bool has_hessian() const noexcept { return is_quadratic(); }
    virtual Point hessian_apply_at(const Point& x, const Point& v) const;

protected:
    void require_dim(const Point& x) const;
};

using ObjectivePtr = std::shared_ptr<const Objective>;

/// E(x) = 1/2 sum_i w_i (x_i - c_i)^2
class DiagonalQuadratic final : public Objective
{
public:
    DiagonalQuadratic(Point center, std::vector<double> weights);
    /// Unit weights.
    explicit DiagonalQuadratic(Point center);

    std::string_view name() const noexcept override
    {
        return "diagonal_quadratic";
    }
    std::size_t dimension() const noexcept override
    {
        return center_.dimension();
    }
    double value(const Point& x) const override;
    Point gradient(const Point& x) const override;
    std::optional<ConditionParams> known_params() const override;
    std::optional<Point> known_minimizer() const override { return center_; }
    std::optional<double> omega_diameter() const override;
    bool is_quadratic() const noexcept override { return true; }
    Point hessian_apply(const Point& v) const override;

    const Point& center() const noexcept { return center_; }
    const std::vector<double>& weights() const noexcept { return weights_; }

private:
    Point center_;
    std::vector<double> weights_;
};

/// E(x) = |Ax - b|^2 with A of shape rows x n.
class LeastSquares final : public Objective
{
public:
    /// minimizer: a known global minimizer (e.g. the generating sparse
    /// vector when b = A x_bar). When absent and A has full column rank the
    /// normal-equation solution is used.
    LeastSquares(Eigen::MatrixXd A, Eigen::VectorXd b,
                 std::optional<Point> minimizer = std::nullopt);

    std::string_view name() const noexcept override { return "least_squares"; }
    std::size_t dimension() const noexcept override
    {
        return static_cast<std::size_t>(A_.cols());
    }
    double value(const Point& x) const override;
    Point gradient(const Point& x) const override;
    std::optional<ConditionParams> known_params() const override;
    std::optional<Point> known_minimizer() const override;
    std::optional<double> omega_diameter() const override;
    bool is_quadratic() const noexcept override { return true; }
    Point hessian_apply(const Point& v) const override;

    const Eigen::MatrixXd& matrix() const noexcept { return A_; }
    const Eigen::VectorXd& rhs() const noexcept { return b_; }

    /// Extreme eigenvalues of A^T A.
    std::pair<double, double> gram_spectrum() const;

private:
    struct Spectrum
    {
        double lambda_min = 0.0;
        double lambda_max = 0.0;
    };
    const Spectrum& spectrum() const;
    Eigen::VectorXd residual(const Point& x) const;

    Eigen::MatrixXd A_;
    Eigen::VectorXd b_;
    std::optional<Point> minimizer_;
    mutable std::once_flag spectrum_once_;
    mutable Spectrum spectrum_;
};

/// E(x) = sum_i w_i |x_i - c_i|^p, p >= 2.
///
/// Certified constants use q = 2: alpha bounds half the second derivative on
/// the sublevel set widened by M, and beta = c_p * min w * n^(1 - p/2) where
/// c_p = inf_s |s+1|^p - |s|^p - p sign(s) |s|^(p-1).
class PowerSum final : public Objective
{
public:
    PowerSum(Point center, double exponent, std::vector<double> weights);

    std::string_view name() const noexcept override { return "power_sum"; }
    std::size_t dimension() const noexcept override
    {
        return center_.dimension();
    }
    double value(const Point& x) const override;
    Point gradient(const Point& x) const override;
    std::optional<ConditionParams> known_params() const override;
    std::optional<Point> known_minimizer() const override { return center_; }
    std::optional<double> omega_diameter() const override;
    bool has_hessian() const noexcept override { return true; }
    Point hessian_apply_at(const Point& x, const Point& v) const override;

    double exponent() const noexcept { return p_; }
    const Point& center() const noexcept { return center_; }

private:
    /// Per-coordinate bound on |x_i - c_i| over the sublevel set.
    std::vector<double> coordinate_radii() const;

    Point center_;
    double p_;
    std::vector<double> weights_;
};

/// E(x) = value everywhere. Degenerate convex case (all moduli vanish).
class ConstantObjective final : public Objective
{
public:
    ConstantObjective(std::size_t n, double value);

    std::string_view name() const noexcept override { return "constant"; }
    std::size_t dimension() const noexcept override { return n_; }
    double value(const Point& x) const override;
    Point gradient(const Point& x) const override;
    std::optional<Point> known_minimizer() const override
    {
        return Point::zeros(n_);
    }
    bool is_quadratic() const noexcept override { return true; }
    Point hessian_apply(const Point& v) const override;

private:
    std::size_t n_;
    double value_;
};

/// base expressed in the coordinates of an orthonormal dictionary:
/// E(x) = base(analyze(x)). Conditions and constants are rotation invariant.
class InBasis final : public Objective
{
public:
    InBasis(ObjectivePtr base, std::shared_ptr<const Dictionary> dictionary);

    std::string_view name() const noexcept override { return "in_basis"; }
    std::size_t dimension() const noexcept override
    {
        return base_->dimension();
    }
    double value(const Point& x) const override;
    Point gradient(const Point& x) const override;
    std::optional<ConditionParams> known_params() const override
    {
        return base_->known_params();
    }
    std::optional<Point> known_minimizer() const override;
    std::optional<double> omega_diameter() const override
    {
        return base_->omega_diameter();
    }
    bool is_quadratic() const noexcept override
    {
        return base_->is_quadratic();
    }
    Point hessian_apply(const Point& v) const override;
    bool has_hessian() const noexcept override { return base_->has_hessian(); }
    Point hessian_apply_at(const Point& x, const Point& v) const override;

private:
    ObjectivePtr base_;
    std::shared_ptr<const Dictionary> dictionary_;
};

/// inf over s of |s+1|^p - |s|^p - p sign(s) |s|^(p-1), for p >= 2. Equals 1
/// at p = 2 and 1/3 at p = 4. Returned slightly below the numerical minimum
/// so that it stays a valid lower bound.
double power_gap_constant(double p);

/// E(x') - E(x) - <E'(x), x' - x>
double bregman_gap(const Objective& E, const Point& x, const Point& x_prime);

/// max_i |central difference_i - grad_i| / (1 + |grad_i|)
double check_gradient(const Objective& E, const Point& x, double h = 1e-5);

struct ConditionSampling
{
    double omega_radius = 1.0;  ///< x drawn uniformly from this ball
    double max_step = 1.0;      ///< M: |x' - x| drawn uniformly in (0, M]
    double q = 2.0;
    double p = 2.0;
    std::size_t sample_count = 1000;
    std::uint64_t seed = 0;
    /// Ball center; origin when empty.
    std::optional<Point> center;
};

struct GapSample
{
    double distance = 0.0;
    double gap = 0.0;
};

struct ConditionEstimate
{
    double alpha_hat = 0.0;  ///< max gap / |x'-x|^q
    double beta_hat = 0.0;   ///< min gap / |x'-x|^p
    std::vector<GapSample> samples;
};

/// Monte Carlo estimate of the smallest admissible alpha and the largest
/// admissible beta. alpha_hat under-estimates the true sup and beta_hat
/// over-estimates the true inf.
ConditionEstimate estimate_condition_constants(const Objective& E,
                                               const ConditionSampling& cfg);

}  // namespace greedyco
