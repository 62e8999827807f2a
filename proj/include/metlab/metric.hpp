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
#ifndef METLAB_METRIC_HPP
#define METLAB_METRIC_HPP

#include <metlab/errors.hpp>
#include <metlab/matrix.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

namespace metlab {

/// Relative slack allowed in d(i,j) <= d(i,k) + d(k,j). Transformed metrics
/// pick up rounding that would otherwise be rejected.
inline constexpr double kTriangleRelTol = 1e-9;

namespace detail {

inline std::string pair_str(std::size_t i, std::size_t j)
{
    return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

/// Symmetry, finiteness, nonnegativity, zero diagonal, positive off-diagonal.
inline void check_weight_shape(const SquareMatrix& w)
{
    const std::size_t n = w.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (!std::isfinite(w(i, j))) {
                throw Error(ErrorCode::NonFiniteValue, "entry " + pair_str(i, j) + " is not finite", {i, j});
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (w(i, j) != w(j, i)) {
                throw Error(ErrorCode::AsymmetricInput,
                            "entries " + pair_str(i, j) + " and " + pair_str(j, i) + " differ", {i, j});
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (w(i, j) < 0.0) {
                throw Error(ErrorCode::NegativeDistance, "entry " + pair_str(i, j) + " is negative", {i, j});
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (w(i, i) != 0.0) {
            throw Error(ErrorCode::NonZeroDiagonal, "diagonal entry " + std::to_string(i) + " is nonzero", {i});
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (w(i, j) == 0.0) {
                throw Error(ErrorCode::ZeroOffDiagonal, "points " + pair_str(i, j) + " collapse", {i, j});
            }
        }
    }
}

/// All-pairs shortest paths (Floyd-Warshall). Symmetric input stays exactly
/// symmetric since both orientations see the same sums.
inline SquareMatrix shortest_path_closure(SquareMatrix c)
{
    const std::size_t n = c.size();
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            const double cik = c(i, k);
            for (std::size_t j = 0; j < n; ++j) {
                const double via = cik + c(k, j);
                if (via < c(i, j)) {
                    c(i, j) = via;
                }
            }
        }
    }
    return c;
}

}  // namespace detail

/// Symmetric matrix with zero diagonal and positive off-diagonal entries.
/// The triangle inequality is not required.
class WeightMatrix {
public:
    explicit WeightMatrix(SquareMatrix w)
        : w_(std::move(w))
    {
        detail::check_weight_shape(w_);
    }

    std::size_t size() const noexcept { return w_.size(); }
    double operator()(std::size_t i, std::size_t j) const noexcept { return w_(i, j); }
    const SquareMatrix& matrix() const noexcept { return w_; }

private:
    SquareMatrix w_;
};

/// A finite metric space (X, d). Instances always satisfy the metric axioms
/// (triangle inequality up to kTriangleRelTol).
class FiniteMetric {
public:
    /// Wraps a matrix the caller has already proven to be a metric, skipping
    /// the O(n^3) triangle check. Shape invariants are still enforced.
    static FiniteMetric assume_valid(SquareMatrix d, std::vector<std::string> labels = {})
    {
        detail::check_weight_shape(d);
        return FiniteMetric(std::move(d), std::move(labels));
    }

    std::size_t size() const noexcept { return d_.size(); }
    double operator()(std::size_t i, std::size_t j) const noexcept { return d_(i, j); }
    const SquareMatrix& matrix() const noexcept { return d_; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }

    double diameter() const noexcept
    {
        double best = 0.0;
        for (double v : d_.values()) {
            best = std::max(best, v);
        }
        return best;
    }

    /// Smallest off-diagonal distance; 0 for a single point.
    double min_distance() const noexcept
    {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < size(); ++i) {
            for (std::size_t j = i + 1; j < size(); ++j) {
                best = std::min(best, d_(i, j));
            }
        }
        return size() < 2 ? 0.0 : best;
    }

    friend bool operator==(const FiniteMetric& a, const FiniteMetric& b) { return a.d_ == b.d_; }

private:
    FiniteMetric(SquareMatrix d, std::vector<std::string> labels)
        : d_(std::move(d))
        , labels_(std::move(labels))
    {
        if (d_.size() == 0) {
            throw Error(ErrorCode::EmptyMetric, "a metric needs at least one point");
        }
        if (!labels_.empty() && labels_.size() != d_.size()) {
            throw Error(ErrorCode::SizeMismatch, std::to_string(labels_.size()) + " labels for " +
                                                     std::to_string(d_.size()) + " points");
        }
    }

    SquareMatrix d_;
    std::vector<std::string> labels_;
};

/// First (i,j,k), i<j, with d(i,j) > (d(i,k)+d(k,j))(1+tol), if any.
inline std::optional<std::vector<std::size_t>> find_triangle_violation(const SquareMatrix& d,
                                                                       double rel_tol = kTriangleRelTol)
{
    const std::size_t n = d.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                if (k == i || k == j) {
                    continue;
                }
                if (d(i, j) > (d(i, k) + d(k, j)) * (1.0 + rel_tol)) {
                    return std::vector<std::size_t>{i, j, k};
                }
            }
        }
    }
    return std::nullopt;
}

inline FiniteMetric validate_metric(const WeightMatrix& w, std::vector<std::string> labels = {})
{
    if (auto bad = find_triangle_violation(w.matrix())) {
        const auto& t = *bad;
        throw Error(ErrorCode::TriangleViolation,
                    "d" + detail::pair_str(t[0], t[1]) + " exceeds d" + detail::pair_str(t[0], t[2]) + " + d" +
                        detail::pair_str(t[2], t[1]) + " at triple (" + std::to_string(t[0]) + "," +
                        std::to_string(t[1]) + "," + std::to_string(t[2]) + ")",
                    t);
    }
    return FiniteMetric::assume_valid(w.matrix(), std::move(labels));
}

inline FiniteMetric validate_metric(const SquareMatrix& d, std::vector<std::string> labels = {})
{
    return validate_metric(WeightMatrix(d), std::move(labels));
}

/// P_n = {0,...,n} with |i-j|; n+1 points.
inline FiniteMetric path_metric(std::size_t n)
{
    return FiniteMetric::assume_valid(SquareMatrix::generate(n + 1, [](std::size_t i, std::size_t j) {
        return static_cast<double>(i > j ? i - j : j - i);
    }));
}

/// Every pair at distance `value`.
inline FiniteMetric equilateral_metric(std::size_t n, double value = 1.0)
{
    return FiniteMetric::assume_valid(
        SquareMatrix::generate(n, [value](std::size_t i, std::size_t j) { return i == j ? 0.0 : value; }));
}

/// Subset of the real line; points are sorted ascending, so index i is the
/// i-th smallest input.
inline FiniteMetric line_metric(std::vector<double> points)
{
    std::sort(points.begin(), points.end());
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        if (points[i] == points[i + 1]) {
            throw Error(ErrorCode::DuplicatePoint, "point " + std::to_string(points[i]) + " appears twice");
        }
    }
    for (double p : points) {
        if (!std::isfinite(p)) {
            throw Error(ErrorCode::NonFiniteValue, "line point is not finite");
        }
    }
    return FiniteMetric::assume_valid(SquareMatrix::generate(
        points.size(), [&](std::size_t i, std::size_t j) { return std::abs(points[i] - points[j]); }));
}

using Edge = std::pair<std::size_t, std::size_t>;

/// Shortest-path metric of an unweighted undirected graph, one BFS per vertex.
inline FiniteMetric graph_metric(std::size_t num_vertices, const std::vector<Edge>& edges)
{
    std::vector<std::vector<std::size_t>> adj(num_vertices);
    for (const auto& [u, v] : edges) {
        if (u >= num_vertices || v >= num_vertices) {
            throw Error(ErrorCode::InvalidVertex, "edge " + detail::pair_str(u, v) + " leaves 0.." +
                                                      std::to_string(num_vertices) + "-1", {u, v});
        }
        if (u == v) {
            throw Error(ErrorCode::SelfLoop, "self loop at vertex " + std::to_string(u), {u});
        }
        adj[u].push_back(v);
        adj[v].push_back(u);
    }

    constexpr std::size_t kUnseen = std::numeric_limits<std::size_t>::max();
    SquareMatrix d(num_vertices);
    std::vector<std::size_t> hops(num_vertices);
    for (std::size_t s = 0; s < num_vertices; ++s) {
        std::fill(hops.begin(), hops.end(), kUnseen);
        std::queue<std::size_t> frontier;
        hops[s] = 0;
        frontier.push(s);
        while (!frontier.empty()) {
            const std::size_t u = frontier.front();
            frontier.pop();
            for (std::size_t v : adj[u]) {
                if (hops[v] == kUnseen) {
                    hops[v] = hops[u] + 1;
                    frontier.push(v);
                }
            }
        }
        for (std::size_t t = 0; t < num_vertices; ++t) {
            if (hops[t] == kUnseen) {
                throw Error(ErrorCode::DisconnectedGraph,
                            "no path between vertices " + std::to_string(s) + " and " + std::to_string(t), {s, t});
            }
            d(s, t) = static_cast<double>(hops[t]);
        }
    }
    return FiniteMetric::assume_valid(std::move(d));
}

/// Largest metric lying pointwise below w: c(i,j) is the cheapest path
/// from i to j under weights w.
inline FiniteMetric metric_closure(const WeightMatrix& w)
{
    return FiniteMetric::assume_valid(detail::shortest_path_closure(w.matrix()));
}

/// Single-linkage (minimax path) ultrametric. u <= d <= (n-1) u pointwise.
inline FiniteMetric subdominant_ultrametric(const FiniteMetric& x)
{
    SquareMatrix u = x.matrix();
    const std::size_t n = u.size();
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                const double via = std::max(u(i, k), u(k, j));
                if (via < u(i, j)) {
                    u(i, j) = via;
                }
            }
        }
    }
    return FiniteMetric::assume_valid(std::move(u), x.labels());
}

/// Strong triangle inequality u(i,j) <= max(u(i,k),u(k,j)) up to rel_tol.
inline bool is_ultrametric(const FiniteMetric& u, double rel_tol = kTriangleRelTol)
{
    const std::size_t n = u.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                if (u(i, j) > std::max(u(i, k), u(k, j)) * (1.0 + rel_tol)) {
                    return false;
                }
            }
        }
    }
    return true;
}

/// Points p_0..p_D with d(p_i,p_j) = |i-j| exactly, D the diameter. Exists
/// for the shortest-path metric of any connected graph; other metrics may
/// have none.
inline std::optional<std::vector<std::size_t>> diametral_geodesic(const FiniteMetric& x)
{
    const std::size_t n = x.size();
    const double diam = x.diameter();
    if (diam != std::floor(diam)) {
        return std::nullopt;
    }
    const auto steps = static_cast<std::size_t>(diam);
    for (std::size_t s = 0; s < n; ++s) {
        for (std::size_t e = 0; e < n; ++e) {
            if (x(s, e) != diam) {
                continue;
            }
            std::vector<std::size_t> path{s};
            for (std::size_t k = 1; k <= steps; ++k) {
                std::optional<std::size_t> next;
                for (std::size_t v = 0; v < n; ++v) {
                    if (x(path.back(), v) == 1.0 && x(s, v) == static_cast<double>(k) &&
                        x(v, e) == static_cast<double>(steps - k)) {
                        next = v;
                        break;
                    }
                }
                if (!next) {
                    break;
                }
                path.push_back(*next);
            }
            if (path.size() != steps + 1) {
                continue;
            }
            bool isometric = true;
            for (std::size_t i = 0; i < path.size() && isometric; ++i) {
                for (std::size_t j = 0; j < path.size(); ++j) {
                    if (x(path[i], path[j]) != static_cast<double>(i > j ? i - j : j - i)) {
                        isometric = false;
                        break;
                    }
                }
            }
            if (isometric) {
                return path;
            }
        }
    }
    return std::nullopt;
}

}  // namespace metlab

#endif  // METLAB_METRIC_HPP
