/*
 * Copyright 2026 The metlab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once
#ifndef METLAB_SOLVER_HPP
#define METLAB_SOLVER_HPP

// Least distortion of a finite metric (X, d) into a transform class
// omega(MET) = {(Y, omega o rho)}.
//
// Everything reduces to one fact: a metric delta with l <= delta <= u
// exists iff closure(u) >= l, because closure(u) is the largest metric below
// u. For a fixed scale lambda the identity (X,d) -> (X, omega o delta) has
// distortion <= D iff some delta sits in the box
//
//     omega^{-1}(lambda d) <= delta <= omega^{-1}(D lambda d),
//
// which is monotone in D and is decided by one closure. Snowflakes make the
// box lambda-free and give a closed form; general moduli need a 1-D search
// over lambda.

#include <metlab/distortion.hpp>
#include <metlab/errors.hpp>
#include <metlab/metric.hpp>
#include <metlab/search.hpp>
#include <metlab/transforms.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace metlab {

struct SolveResult {
    double D = 1.0;
    FiniteMetric witness_delta;  ///< lambda d <= omega(delta) <= D lambda d
    double lambda = 1.0;
    bool exact = false;
};

/// L = {d(x,y)}: sorted distinct distances, 0 included.
struct DistanceSet {
    std::vector<double> values;

    std::size_t size() const noexcept { return values.size(); }

    std::optional<std::size_t> index_of(double v) const
    {
        const auto it = std::lower_bound(values.begin(), values.end(), v);
        if (it == values.end() || *it != v) {
            return std::nullopt;
        }
        return static_cast<std::size_t>(it - values.begin());
    }
};

inline DistanceSet distances_set(const FiniteMetric& x)
{
    DistanceSet out;
    out.values.assign(x.matrix().values().begin(), x.matrix().values().end());
    std::sort(out.values.begin(), out.values.end());
    out.values.erase(std::unique(out.values.begin(), out.values.end()), out.values.end());
    return out;
}

/// Exact least distortion into the theta-snowflakes, theta in (0,1):
///
///     D = [ max_{i != j} d(i,j)^{1/theta} / closure(d^{1/theta})(i,j) ]^theta
///
/// with witness delta = r_max * closure(d^{1/theta}), lambda = 1.
inline SolveResult snowflake_distortion(const FiniteMetric& x, double theta)
{
    if (!(theta > 0.0 && theta < 1.0)) {
        throw Error(ErrorCode::ThetaOutOfRange,
                    "theta must lie in (0,1); theta = 1 is the ultrametric case (subdominant_ultrametric)");
    }
    const std::size_t n = x.size();
    if (n < 2) {
        return {1.0, x, 1.0, true};
    }
    const SquareMatrix powered = x.matrix().map_off_diagonal([&](double v) { return std::pow(v, 1.0 / theta); });
    SquareMatrix closed = detail::shortest_path_closure(powered);

    double ratio = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            ratio = std::max(ratio, powered(i, j) / closed(i, j));
        }
    }
    SquareMatrix witness = closed.map_off_diagonal([&](double v) { return ratio * v; });
    return {std::pow(ratio, theta), FiniteMetric::assume_valid(std::move(witness), x.labels()), 1.0, true};
}

struct Feasibility {
    bool feasible = false;
    std::optional<FiniteMetric> witness;                            ///< closure(u) when feasible
    std::optional<std::pair<std::size_t, std::size_t>> violated;  ///< a pair with closure(u) < l
};

/// Is there a metric delta with l <= delta <= u pointwise?
inline Feasibility modulus_feasible(const WeightMatrix& l, const WeightMatrix& u)
{
    if (l.size() != u.size()) {
        throw Error(ErrorCode::SizeMismatch, "bounds have different point counts");
    }
    const std::size_t n = l.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (l(i, j) > u(i, j)) {
                return {false, std::nullopt, std::pair{i, j}};
            }
        }
    }
    SquareMatrix closed = detail::shortest_path_closure(u.matrix());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (closed(i, j) < l(i, j)) {
                return {false, std::nullopt, std::pair{i, j}};
            }
        }
    }
    return {true, FiniteMetric::assume_valid(std::move(closed)), std::nullopt};
}

struct GeneralSolveOptions {
    std::size_t lambda_grid_size = 64;
    double lambda_range_factor = 1e3;  ///< grid spans lambda*/f .. lambda* f
    double bisect_tol = 1e-9;          ///< relative
    std::size_t refine_rounds = 40;
};

namespace detail {

inline bool feasible_at(const FiniteMetric& x, const Modulus& omega, double lambda, double D)
{
    const SquareMatrix lower = x.matrix().map_off_diagonal([&](double v) { return omega.inverse(lambda * v); });
    const SquareMatrix upper = x.matrix().map_off_diagonal([&](double v) { return omega.inverse(D * lambda * v); });
    const SquareMatrix closed = shortest_path_closure(upper);
    const std::size_t n = x.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (closed(i, j) < lower(i, j)) {
                return false;
            }
        }
    }
    return true;
}

inline FiniteMetric witness_at(const FiniteMetric& x, const Modulus& omega, double lambda, double D)
{
    return FiniteMetric::assume_valid(
        shortest_path_closure(x.matrix().map_off_diagonal([&](double v) { return omega.inverse(D * lambda * v); })),
        x.labels());
}

}  // namespace detail

/// Smallest D (to rel_tol) at which the lambda-box is nonempty. The aspect
/// ratio diam/min_distance is always feasible: every path out of the box's
/// upper bound already clears the largest lower bound.
inline double min_distortion_at_lambda(const FiniteMetric& x, const Modulus& omega, double lambda, double rel_tol)
{
    if (x.size() < 2) {
        return 1.0;
    }
    double hi = (x.diameter() / x.min_distance()) * (1.0 + 1e-12);
    for (int guard = 0; guard < 64 && !detail::feasible_at(x, omega, lambda, hi); ++guard) {
        hi *= 2.0;
    }
    return bisect_monotone([&](double D) { return detail::feasible_at(x, omega, lambda, D); }, 1.0, hi, rel_tol);
}

/// Certified (not globally optimal) least distortion into omega(MET). The
/// returned witness achieves D; the lambda search over a log grid plus
/// golden-section refinement is heuristic, hence exact = false.
inline SolveResult general_modulus_distortion(const FiniteMetric& x, const Modulus& omega,
                                              const GeneralSolveOptions& opts = {})
{
    if (opts.lambda_grid_size < 2 || !(opts.lambda_range_factor > 1.0) || !(opts.bisect_tol > 0.0)) {
        throw Error(ErrorCode::ArgumentOutOfRange, "grid size >= 2, range factor > 1 and bisect_tol > 0 required");
    }
    const std::size_t n = x.size();
    if (n < 2) {
        return {1.0, x, 1.0, false};
    }
    for (double v : x.matrix().values()) {
        const double back = omega(omega.inverse(v));
        if (!std::isfinite(omega.inverse(v)) || std::abs(back - v) > 1e-9 * std::max(1.0, v)) {
            throw Error(ErrorCode::ModulusNotInvertible, "modulus inverse is not usable on the distance range");
        }
    }

    const double diam = x.diameter();
    const double center = omega(diam) / diam;
    const double log_lo = std::log(center / opts.lambda_range_factor);
    const double log_hi = std::log(center * opts.lambda_range_factor);
    const auto at_log = [&](double log_lambda) {
        return min_distortion_at_lambda(x, omega, std::exp(log_lambda), opts.bisect_tol);
    };

    std::vector<double> grid(opts.lambda_grid_size);
    std::vector<double> values(opts.lambda_grid_size);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        grid[k] = log_lo + (log_hi - log_lo) * static_cast<double>(k) / static_cast<double>(grid.size() - 1);
        values[k] = at_log(grid[k]);
    }
    const double grid_min = *std::min_element(values.begin(), values.end());
    // Ties within bisect_tol go to the smallest lambda.
    std::size_t best = 0;
    while (values[best] > grid_min * (1.0 + opts.bisect_tol)) {
        ++best;
    }

    double best_log = grid[best];
    double best_D = values[best];
    if (best_D > 1.0 && opts.refine_rounds > 0) {
        const double a = grid[best == 0 ? 0 : best - 1];
        const double b = grid[std::min(best + 1, grid.size() - 1)];
        const auto [log_lambda, D] = golden_section_minimize(at_log, a, b, opts.refine_rounds);
        if (D < best_D * (1.0 - opts.bisect_tol)) {
            best_log = log_lambda;
            best_D = D;
        }
    }
    const double lambda = std::exp(best_log);
    return {best_D, detail::witness_at(x, omega, lambda, best_D), lambda, false};
}

/// Lifts a solution on the distance line L back to X. Given a metric rho on
/// the points of L with
///
///     lambda |s - s'| <= omega(rho(s, s')) <= D lambda |s - s'|,
///
/// delta(x, y) = max_z rho(d(x,z), d(y,z)) puts the identity
/// (X, d) -> (X, omega o delta) at distortion <= D.
inline FiniteMetric lift_line_solution(const FiniteMetric& x, const DistanceSet& line, const FiniteMetric& rho,
                                       const Modulus& omega, double lambda, double D)
{
    if (rho.size() != line.size()) {
        throw Error(ErrorCode::SizeMismatch, "rho has " + std::to_string(rho.size()) + " points, L has " +
                                                 std::to_string(line.size()));
    }
    constexpr double kSlack = 1e-9;
    for (std::size_t a = 0; a < line.size(); ++a) {
        for (std::size_t b = a + 1; b < line.size(); ++b) {
            const double gap = std::abs(line.values[a] - line.values[b]);
            const double image = omega(rho(a, b));
            if (lambda * gap > image * (1.0 + kSlack) || image > D * lambda * gap * (1.0 + kSlack)) {
                throw Error(ErrorCode::SandwichViolated,
                            "omega(rho) leaves [lambda, D lambda] * |s - s'| at L-pair " + detail::pair_str(a, b),
                            {a, b});
            }
        }
    }

    const std::size_t n = x.size();
    std::vector<std::size_t> index(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const auto k = line.index_of(x(i, j));
            if (!k) {
                throw Error(ErrorCode::DistanceNotInSet, "d" + detail::pair_str(i, j) + " is not in L", {i, j});
            }
            index[i * n + j] = *k;
        }
    }
    SquareMatrix delta(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double v = 0.0;
            for (std::size_t z = 0; z < n; ++z) {
                v = std::max(v, rho(index[i * n + z], index[j * n + z]));
            }
            delta(i, j) = v;
            delta(j, i) = v;
        }
    }
    return validate_metric(delta, x.labels());
}

}  // namespace metlab

#endif  // METLAB_SOLVER_HPP
