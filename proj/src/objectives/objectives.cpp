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

#include "greedyco/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "greedyco/dictionary.hpp"

namespace greedyco
{
namespace
{

// Any positive value bounds the gradient on a single-point sublevel set.
double positive_or_one(double v) { return v > 0.0 ? v : 1.0; }

Eigen::Map<const Eigen::VectorXd> as_eigen(const Point& x)
{
    return {x.data(), static_cast<Eigen::Index>(x.dimension())};
}

Point from_eigen(const Eigen::VectorXd& v)
{
    return Point(std::vector<double>(v.data(), v.data() + v.size()));
}

void require_positive_weights(const std::vector<double>& w, std::size_t n)
{
    if (w.size() != n)
    {
        throw DimensionMismatch(n, w.size());
    }
    for (double v : w)
    {
        if (!(v > 0.0) || !std::isfinite(v))
        {
            throw InvalidArgument("objective weights must be positive and finite");
        }
    }
}

}  // namespace

Point Objective::hessian_apply(const Point&) const
{
    throw std::logic_error(std::string(name()) + " is not quadratic");
}

Point Objective::hessian_apply_at(const Point& x, const Point& v) const
{
    require_dim(x);
    return hessian_apply(v);
}

void Objective::require_dim(const Point& x) const
{
    if (x.dimension() != dimension())
    {
        throw DimensionMismatch(dimension(), x.dimension());
    }
}

// --- DiagonalQuadratic -----------------------------------------------------

DiagonalQuadratic::DiagonalQuadratic(Point center, std::vector<double> weights)
    : center_(std::move(center)), weights_(std::move(weights))
{
    if (center_.dimension() == 0)
    {
        throw InvalidArgument("objective dimension must be positive");
    }
    require_positive_weights(weights_, center_.dimension());
}

DiagonalQuadratic::DiagonalQuadratic(Point center)
    : DiagonalQuadratic(center, std::vector<double>(center.dimension(), 1.0))
{
}

double DiagonalQuadratic::value(const Point& x) const
{
    require_dim(x);
    double s = 0.0;
    for (std::size_t i = 0; i < weights_.size(); ++i)
    {
        const double d = x[i] - center_[i];
        s += weights_[i] * d * d;
    }
    return 0.5 * s;
}

Point DiagonalQuadratic::gradient(const Point& x) const
{
    require_dim(x);
    std::vector<double> g(weights_.size());
    for (std::size_t i = 0; i < g.size(); ++i)
    {
        g[i] = weights_[i] * (x[i] - center_[i]);
    }
    return Point(std::move(g));
}

Point DiagonalQuadratic::hessian_apply(const Point& v) const
{
    require_dim(v);
    std::vector<double> out(weights_.size());
    for (std::size_t i = 0; i < out.size(); ++i)
    {
        out[i] = weights_[i] * v[i];
    }
    return Point(std::move(out));
}

std::optional<double> DiagonalQuadratic::omega_diameter() const
{
    // {E <= E(0)} is the ellipsoid sum w_i h_i^2 <= R^2, R^2 = sum w_i c_i^2.
    const double r2 = 2.0 * value(Point::zeros(dimension()));
    const double wmin = *std::min_element(weights_.begin(), weights_.end());
    return 2.0 * std::sqrt(r2 / wmin);
}

std::optional<ConditionParams> DiagonalQuadratic::known_params() const
{
    const auto [wmin_it, wmax_it] =
        std::minmax_element(weights_.begin(), weights_.end());
    const double r = std::sqrt(2.0 * value(Point::zeros(dimension())));
    const double M = positive_or_one(*omega_diameter());
    ConditionParams params;
    params.smooth = {*wmax_it / 2.0, 2.0, M,
                     positive_or_one(std::sqrt(*wmax_it) * r)};
    params.convex = {*wmin_it / 2.0, 2.0, M};
    return params;
}

// --- LeastSquares ----------------------------------------------------------

LeastSquares::LeastSquares(Eigen::MatrixXd A, Eigen::VectorXd b,
                           std::optional<Point> minimizer)
    : A_(std::move(A)), b_(std::move(b)), minimizer_(std::move(minimizer))
{
    if (A_.rows() == 0 || A_.cols() == 0)
    {
        throw InvalidArgument("least-squares matrix must be non-empty");
    }
    if (b_.size() != A_.rows())
    {
        throw DimensionMismatch(static_cast<std::size_t>(A_.rows()),
                                static_cast<std::size_t>(b_.size()));
    }
    if (!A_.allFinite() || !b_.allFinite())
    {
        throw InvalidArgument("least-squares data must be finite");
    }
    if (minimizer_ && minimizer_->dimension() != dimension())
    {
        throw DimensionMismatch(dimension(), minimizer_->dimension());
    }
}

Eigen::VectorXd LeastSquares::residual(const Point& x) const
{
    require_dim(x);
    return A_ * as_eigen(x) - b_;
}

double LeastSquares::value(const Point& x) const
{
    return residual(x).squaredNorm();
}

Point LeastSquares::gradient(const Point& x) const
{
    return from_eigen(2.0 * (A_.transpose() * residual(x)));
}

Point LeastSquares::hessian_apply(const Point& v) const
{
    require_dim(v);
    return from_eigen(2.0 * (A_.transpose() * (A_ * as_eigen(v))));
}

const LeastSquares::Spectrum& LeastSquares::spectrum() const
{
    std::call_once(spectrum_once_, [this] {
        const Eigen::MatrixXd gram = A_.transpose() * A_;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
            gram, Eigen::EigenvaluesOnly);
        spectrum_.lambda_min = std::max(0.0, es.eigenvalues().minCoeff());
        spectrum_.lambda_max = es.eigenvalues().maxCoeff();
    });
    return spectrum_;
}

std::pair<double, double> LeastSquares::gram_spectrum() const
{
    const Spectrum& s = spectrum();
    return {s.lambda_min, s.lambda_max};
}

namespace
{
bool full_rank(double lmin, double lmax)
{
    return lmax > 0.0 && lmin > 1e-10 * lmax;
}
}  // namespace

std::optional<Point> LeastSquares::known_minimizer() const
{
    if (minimizer_)
    {
        return minimizer_;
    }
    const Spectrum& s = spectrum();
    if (!full_rank(s.lambda_min, s.lambda_max))
    {
        return std::nullopt;
    }
    return from_eigen(A_.colPivHouseholderQr().solve(b_));
}

std::optional<double> LeastSquares::omega_diameter() const
{
    const Spectrum& s = spectrum();
    const auto xbar = known_minimizer();
    if (!full_rank(s.lambda_min, s.lambda_max) || !xbar)
    {
        return std::nullopt;
    }
    // E(x) = E(xbar) + (x-xbar)^T G (x-xbar): an ellipsoid of "radius" R.
    const double r2 = std::max(0.0, b_.squaredNorm() - value(*xbar));
    return 2.0 * std::sqrt(r2 / s.lambda_min);
}

std::optional<ConditionParams> LeastSquares::known_params() const
{
    const Spectrum& s = spectrum();
    const auto diam = omega_diameter();
    if (!diam)
    {
        return std::nullopt;
    }
    const double r =
        std::sqrt(std::max(0.0, b_.squaredNorm() - value(*known_minimizer())));
    const double M = positive_or_one(*diam);
    ConditionParams params;
    params.smooth = {s.lambda_max, 2.0, M,
                     positive_or_one(2.0 * std::sqrt(s.lambda_max) * r)};
    params.convex = {s.lambda_min, 2.0, M};
    return params;
}

// --- PowerSum --------------------------------------------------------------

PowerSum::PowerSum(Point center, double exponent, std::vector<double> weights)
    : center_(std::move(center)), p_(exponent), weights_(std::move(weights))
{
    if (center_.dimension() == 0)
    {
        throw InvalidArgument("objective dimension must be positive");
    }
    if (!(p_ >= 2.0) || !std::isfinite(p_))
    {
        throw InvalidArgument("power_sum exponent must be >= 2");
    }
    require_positive_weights(weights_, center_.dimension());
}

double PowerSum::value(const Point& x) const
{
    require_dim(x);
    double s = 0.0;
    for (std::size_t i = 0; i < weights_.size(); ++i)
    {
        s += weights_[i] * std::pow(std::abs(x[i] - center_[i]), p_);
    }
    return s;
}

Point PowerSum::hessian_apply_at(const Point& x, const Point& v) const
{
    require_dim(x);
    require_dim(v);
    std::vector<double> out(weights_.size());
    for (std::size_t i = 0; i < out.size(); ++i)
    {
        const double d = std::abs(x[i] - center_[i]);
        out[i] = p_ * (p_ - 1.0) * weights_[i] * std::pow(d, p_ - 2.0) * v[i];
    }
    return Point(std::move(out));
}

Point PowerSum::gradient(const Point& x) const
{
    require_dim(x);
    std::vector<double> g(weights_.size());
    for (std::size_t i = 0; i < g.size(); ++i)
    {
        const double d = x[i] - center_[i];
        const double mag = p_ * weights_[i] * std::pow(std::abs(d), p_ - 1.0);
        g[i] = d < 0.0 ? -mag : mag;
    }
    return Point(std::move(g));
}

std::vector<double> PowerSum::coordinate_radii() const
{
    const double e0 = value(Point::zeros(dimension()));
    std::vector<double> t(weights_.size());
    for (std::size_t i = 0; i < t.size(); ++i)
    {
        t[i] = std::pow(e0 / weights_[i], 1.0 / p_);
    }
    return t;
}

std::optional<double> PowerSum::omega_diameter() const
{
    const std::vector<double> t = coordinate_radii();
    const double n = static_cast<double>(dimension());
    const double e0 = value(Point::zeros(dimension()));
    const double wmin = *std::min_element(weights_.begin(), weights_.end());
    const double via_box =
        std::sqrt(std::inner_product(t.begin(), t.end(), t.begin(), 0.0));
    const double via_lp =
        std::pow(n, 0.5 - 1.0 / p_) * std::pow(e0 / wmin, 1.0 / p_);
    return 2.0 * std::min(via_box, via_lp);
}

std::optional<ConditionParams> PowerSum::known_params() const
{
    const std::vector<double> t = coordinate_radii();
    const double M = positive_or_one(*omega_diameter());
    const double n = static_cast<double>(dimension());
    const double wmin = *std::min_element(weights_.begin(), weights_.end());

    double alpha = 0.0;
    double grad_sq = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i)
    {
        alpha = std::max(alpha, weights_[i] * std::pow(t[i] + M, p_ - 2.0));
        const double gi = p_ * weights_[i] * std::pow(t[i], p_ - 1.0);
        grad_sq += gi * gi;
    }
    alpha *= 0.5 * p_ * (p_ - 1.0);

    ConditionParams params;
    params.smooth = {alpha, 2.0, M, positive_or_one(std::sqrt(grad_sq))};
    params.convex = {power_gap_constant(p_) * wmin * std::pow(n, 1.0 - p_ / 2.0),
                     p_, M};
    return params;
}

double power_gap_constant(double p)
{
    if (!(p >= 2.0))
    {
        throw InvalidArgument("power_gap_constant requires p >= 2");
    }
    if (p == 2.0)
    {
        return 1.0;
    }
    const auto g = [p](double s) {
        const double a = std::abs(s);
        const double lin = p * std::pow(a, p - 1.0);
        return std::pow(std::abs(s + 1.0), p) - std::pow(a, p)
               - (s < 0.0 ? -lin : lin);
    };
    constexpr double lo = -4.0;
    constexpr double hi = 3.0;
    constexpr int grid = 7000;
    int best = 0;
    double best_val = g(lo);
    for (int i = 1; i <= grid; ++i)
    {
        const double v = g(lo + (hi - lo) * i / grid);
        if (v < best_val)
        {
            best_val = v;
            best = i;
        }
    }
    // Golden-section refinement inside the bracketing grid cells.
    const double step = (hi - lo) / grid;
    double a = lo + step * std::max(0, best - 1);
    double b = lo + step * std::min(grid, best + 1);
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    for (int it = 0; it < 200 && b - a > 1e-14; ++it)
    {
        if (g(c) < g(d))
        {
            b = d;
        }
        else
        {
            a = c;
        }
        c = b - inv_phi * (b - a);
        d = a + inv_phi * (b - a);
    }
    best_val = std::min(best_val, g(0.5 * (a + b)));
    return best_val * (1.0 - 1e-9);
}

// --- ConstantObjective -----------------------------------------------------

ConstantObjective::ConstantObjective(std::size_t n, double value)
    : n_(n), value_(value)
{
    if (n == 0)
    {
        throw InvalidArgument("objective dimension must be positive");
    }
    if (!std::isfinite(value))
    {
        throw InvalidArgument("constant objective value must be finite");
    }
}

double ConstantObjective::value(const Point& x) const
{
    require_dim(x);
    return value_;
}

Point ConstantObjective::gradient(const Point& x) const
{
    require_dim(x);
    return Point::zeros(n_);
}

Point ConstantObjective::hessian_apply(const Point& v) const
{
    require_dim(v);
    return Point::zeros(n_);
}

// --- InBasis ---------------------------------------------------------------

InBasis::InBasis(ObjectivePtr base, std::shared_ptr<const Dictionary> dictionary)
    : base_(std::move(base)), dictionary_(std::move(dictionary))
{
    if (!base_ || !dictionary_)
    {
        throw InvalidArgument("InBasis requires an objective and a dictionary");
    }
    if (dictionary_->size() != base_->dimension())
    {
        throw DimensionMismatch(base_->dimension(), dictionary_->size());
    }
}

double InBasis::value(const Point& x) const
{
    return base_->value(Point(dictionary_->analyze(x)));
}

Point InBasis::gradient(const Point& x) const
{
    const Point g = base_->gradient(Point(dictionary_->analyze(x)));
    return dictionary_->synthesize_dense(g.coords());
}

std::optional<Point> InBasis::known_minimizer() const
{
    const auto m = base_->known_minimizer();
    if (!m)
    {
        return std::nullopt;
    }
    return dictionary_->synthesize_dense(m->coords());
}

Point InBasis::hessian_apply(const Point& v) const
{
    const Point hv = base_->hessian_apply(Point(dictionary_->analyze(v)));
    return dictionary_->synthesize_dense(hv.coords());
}

Point InBasis::hessian_apply_at(const Point& x, const Point& v) const
{
    const Point hv = base_->hessian_apply_at(Point(dictionary_->analyze(x)),
                                             Point(dictionary_->analyze(v)));
    return dictionary_->synthesize_dense(hv.coords());
}

}  // namespace greedyco
