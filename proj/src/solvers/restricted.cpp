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

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "greedyco/solvers.hpp"

namespace greedyco
{
namespace
{

/// Iterate in restricted coordinates a (one entry per support index).
struct State
{
    std::vector<double> a;
    Point x;
    double value = 0.0;
    std::vector<double> grad;  // <E'(x), phi_j>, j in S
    double residual = 0.0;
};

double sup_abs(const std::vector<double>& v)
{
    double m = 0.0;
    for (double x : v)
    {
        m = std::max(m, std::abs(x));
    }
    return m;
}

CoefficientMap to_map(const std::vector<std::size_t>& idx,
                      const std::vector<double>& a)
{
    CoefficientMap m;
    for (std::size_t i = 0; i < idx.size(); ++i)
    {
        m.emplace(idx[i], a[i]);
    }
    return m;
}

State evaluate(const Objective& E, const Dictionary& D,
               const std::vector<std::size_t>& idx, std::vector<double> a)
{
    State s;
    s.x = D.synthesize(to_map(idx, a));
    s.a = std::move(a);
    s.value = E.value(s.x);
    s.grad = D.analyze(E.gradient(s.x), idx);
    s.residual = sup_abs(s.grad);
    return s;
}

RestrictedResult to_result(const State& s, const std::vector<std::size_t>& idx,
                           std::size_t iterations, bool degenerate)
{
    return {s.x, to_map(idx, s.a), s.residual, iterations, degenerate};
}

bool within_rounding(double candidate, double reference)
{
    const double scale = std::max(std::abs(reference),
                                  std::numeric_limits<double>::min());
    return candidate <= reference + 64.0 * std::numeric_limits<double>::epsilon()
                                        * scale;
}

}  // namespace

InnerSolveError::InnerSolveError(const std::string& what, RestrictedResult best)
    : std::runtime_error(what), best_(std::move(best))
{
}

SolverError::SolverError(std::size_t step, const std::string& what)
    : std::runtime_error("step " + std::to_string(step) + ": " + what),
      step_(step)
{
}

void InnerConfig::validate() const
{
    if (!(inner_tol > 0.0))
    {
        throw InvalidArgument("inner_tol must be > 0");
    }
    if (max_inner_iters == 0)
    {
        throw InvalidArgument("max_inner_iters must be >= 1");
    }
    if (!(armijo_c > 0.0 && armijo_c < 1.0))
    {
        throw InvalidArgument("armijo_c must lie in (0,1)");
    }
    if (!(backtrack_factor > 0.0 && backtrack_factor < 1.0))
    {
        throw InvalidArgument("backtrack_factor must lie in (0,1)");
    }
    if (!(initial_step > 0.0))
    {
        throw InvalidArgument("initial_step must be > 0");
    }
}

RestrictedResult restricted_minimize(const Objective& E, const Dictionary& D,
                                     const SparseSupport& S,
                                     const CoefficientMap& warm_start,
                                     const InnerConfig& cfg)
{
    cfg.validate();
    if (S.empty())
    {
        throw InvalidArgument("restricted_minimize: empty support");
    }
    if (D.size() != E.dimension())
    {
        throw DimensionMismatch(E.dimension(), D.size());
    }
    const std::vector<std::size_t>& idx = S.indices();
    std::vector<double> a0(idx.size(), 0.0);
    for (const auto& [j, c] : warm_start)
    {
        const auto it = std::lower_bound(idx.begin(), idx.end(), j);
        if (it == idx.end() || *it != j)
        {
            throw InvalidArgument("warm start has coefficient "
                                  + std::to_string(j) + " outside the support");
        }
        a0[static_cast<std::size_t>(it - idx.begin())] = c;
    }

    State cur = evaluate(E, D, idx, std::move(a0));
    std::size_t iters = 0;
    bool degenerate = false;
    if (cur.residual <= cfg.inner_tol)
    {
        return to_result(cur, idx, iters, degenerate);
    }

    const auto m = static_cast<Eigen::Index>(idx.size());

    if (E.has_hessian())
    {
        // Damped Newton on the restricted coefficients. Quadratics need the
        // restricted Hessian once; other objectives rebuild it per step.
        const bool quadratic = E.is_quadratic();
        Eigen::LDLT<Eigen::MatrixXd> ldlt;
        Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod;
        bool singular = false;
        auto factor = [&](const Point& at) {
            // G_ij = <phi_i, E''(at) phi_j>
            Eigen::MatrixXd G(m, m);
            for (Eigen::Index c = 0; c < m; ++c)
            {
                const Point hphi = E.hessian_apply_at(
                    at, D.atom(idx[static_cast<std::size_t>(c)]));
                const std::vector<double> col = D.analyze(hphi, idx);
                for (Eigen::Index r = 0; r < m; ++r)
                {
                    G(r, c) = col[static_cast<std::size_t>(r)];
                }
            }
            G = 0.5 * (G + G.transpose()).eval();
            ldlt.compute(G);
            const Eigen::VectorXd diag = ldlt.vectorD();
            const double dmax = diag.cwiseAbs().maxCoeff();
            singular = ldlt.info() != Eigen::Success || !(dmax > 0.0)
                       || diag.minCoeff() <= 1e-12 * dmax;
            if (singular)
            {
                cod.compute(G);
            }
        };

        bool factored = false;
        while (cur.residual > cfg.inner_tol && iters < cfg.max_inner_iters)
        {
            if (!quadratic || !factored)
            {
                factor(cur.x);
                factored = true;
                degenerate = quadratic && singular;
            }
            const Eigen::Map<const Eigen::VectorXd> g(cur.grad.data(), m);
            const Eigen::VectorXd delta = singular ? Eigen::VectorXd(cod.solve(-g))
                                                   : Eigen::VectorXd(ldlt.solve(-g));
            const double slope = g.dot(delta);
            if (!(slope < 0.0))
            {
                break;
            }
            double s = 1.0;
            bool accepted = false;
            State next;
            for (int bt = 0; bt < 60; ++bt)
            {
                std::vector<double> a = cur.a;
                for (Eigen::Index i = 0; i < m; ++i)
                {
                    a[static_cast<std::size_t>(i)] += s * delta(i);
                }
                next = evaluate(E, D, idx, std::move(a));
                if (next.value <= cur.value + cfg.armijo_c * s * slope
                    || (next.residual <= cfg.inner_tol
                        && within_rounding(next.value, cur.value)))
                {
                    accepted = true;
                    break;
                }
                s *= cfg.backtrack_factor;
            }
            ++iters;
            if (!accepted)
            {
                break;
            }
            const bool progressed =
                next.residual < cur.residual || next.value < cur.value;
            cur = std::move(next);
            if (!progressed)
            {
                break;
            }
        }
        if (cur.residual <= cfg.inner_tol)
        {
            return to_result(cur, idx, iters, degenerate);
        }
    }

    // Gradient descent on the restricted coefficients. The first trial step
    // is initial_step, later ones Barzilai-Borwein; Armijo backtracking keeps
    // every accepted step monotone.
    double step = cfg.initial_step;
    while (iters < cfg.max_inner_iters)
    {
        double gg = 0.0;
        for (double v : cur.grad)
        {
            gg += v * v;
        }
        double s = step;
        bool accepted = false;
        State next;
        for (int bt = 0; bt < 200; ++bt)
        {
            std::vector<double> a = cur.a;
            for (std::size_t i = 0; i < a.size(); ++i)
            {
                a[i] -= s * cur.grad[i];
            }
            next = evaluate(E, D, idx, std::move(a));
            if (next.value <= cur.value - cfg.armijo_c * s * gg)
            {
                accepted = true;
                break;
            }
            s *= cfg.backtrack_factor;
        }
        ++iters;
        if (!accepted)
        {
            // Stalled at the rounding floor of E.
            if (next.value <= cur.value && next.residual < cur.residual)
            {
                cur = std::move(next);
            }
            break;
        }
        double sy = 0.0;
        double ss = 0.0;
        for (std::size_t i = 0; i < cur.grad.size(); ++i)
        {
            const double da = -s * cur.grad[i];
            sy += da * (next.grad[i] - cur.grad[i]);
            ss += da * da;
        }
        step = sy > 0.0 ? std::clamp(ss / sy, 1e-20, 1e20) : 2.0 * s;
        cur = std::move(next);
        if (cur.residual <= cfg.inner_tol)
        {
            return to_result(cur, idx, iters, degenerate);
        }
    }

    char msg[160];
    std::snprintf(msg, sizeof msg,
                  "restricted minimization stopped at residual %.3g > inner_tol "
                  "%.3g after %zu iterations",
                  cur.residual, cfg.inner_tol, iters);
    throw InnerSolveError(msg,
                          to_result(cur, idx, iters, degenerate));
}

}  // namespace greedyco
