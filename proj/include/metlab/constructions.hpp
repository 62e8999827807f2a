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
#ifndef METLAB_CONSTRUCTIONS_HPP
#define METLAB_CONSTRUCTIONS_HPP

#include <metlab/distortion.hpp>
#include <metlab/errors.hpp>
#include <metlab/metric.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

namespace metlab {

struct LineEmbedding {
    std::vector<double> source_points;  ///< y_0 < ... < y_n
    std::vector<double> image_points;   ///< z_0 = 0 < ... < z_n
    double theta = 0.5;
    DistortionReport report;            ///< into (R, |x - y|^{1 - theta})
};

/// Embeds a finite line subset into the snowflaked line (R, |x-y|^{1-theta})
/// by spacing images at z_{i+1} - z_i = (y_{i+1} - y_i)^{1/(1-theta)}.
/// Distortion is at most (|L|-1)^theta, with equality on arithmetic
/// progressions.
inline LineEmbedding snowflake_line_embedding(std::vector<double> points, double theta)
{
    if (!(theta > 0.0 && theta < 1.0)) {
        throw Error(ErrorCode::ThetaOutOfRange,
                    "theta must lie in (0,1); theta = 1 is the ultrametric case (subdominant_ultrametric)");
    }
    if (points.size() < 2) {
        throw Error(ErrorCode::ArgumentOutOfRange, "line embedding needs at least two points");
    }
    FiniteMetric source = line_metric(points);  // rejects duplicates
    std::sort(points.begin(), points.end());

    const double exponent = 1.0 / (1.0 - theta);
    std::vector<double> z(points.size(), 0.0);
    for (std::size_t i = 1; i < points.size(); ++i) {
        z[i] = z[i - 1] + std::pow(points[i] - points[i - 1], exponent);
    }
    SquareMatrix image = SquareMatrix::generate(
        z.size(), [&](std::size_t i, std::size_t j) { return std::pow(std::abs(z[i] - z[j]), 1.0 - theta); });
    DistortionReport report = map_distortion(PulledBackMap(std::move(source), std::move(image)));
    return {std::move(points), std::move(z), theta, report};
}

/// Arithmetic progression phi(i) = offset + i * stride, i = 0..t, inside P_n.
struct ProgressionResult {
    std::size_t offset = 0;
    std::size_t stride = 1;
    std::size_t t = 1;
    double sub_dist = 1.0;  ///< dist(f o phi)
    bool exhaustive = true;
};

/// Upper limit on n for the exhaustive progression search.
inline constexpr std::size_t kMaxBoostPath = 5000;

/// Pulled-back map of phi : P_t -> P_n itself; a rescaled isometry.
inline PulledBackMap progression_map(const ProgressionResult& p)
{
    const double stride = static_cast<double>(p.stride);
    return PulledBackMap(path_metric(p.t), SquareMatrix::generate(p.t + 1, [&](std::size_t i, std::size_t j) {
                             return stride * static_cast<double>(i > j ? i - j : j - i);
                         }));
}

/// f o phi restricted to the progression, as a map out of P_t.
inline PulledBackMap restrict_to_progression(const PulledBackMap& m, const ProgressionResult& p)
{
    return PulledBackMap(path_metric(p.t), SquareMatrix::generate(p.t + 1, [&](std::size_t i, std::size_t j) {
                             return m.image()(p.offset + i * p.stride, p.offset + j * p.stride);
                         }));
}

/// Searches every progression of t+1 points in P_n for the least distorted
/// restriction of f. Ties go to the smaller stride, then the smaller offset.
inline ProgressionResult path_boost(const PulledBackMap& m, std::size_t t)
{
    if (t < 1) {
        throw Error(ErrorCode::ArgumentOutOfRange, "sub-path length t must be at least 1");
    }
    const std::size_t points = m.size();
    const std::size_t n = points - 1;
    if (n < t) {
        throw Error(ErrorCode::PathTooShort, "P_" + std::to_string(n) + " has no sub-path P_" + std::to_string(t));
    }
    if (n > kMaxBoostPath) {
        throw Error(ErrorCode::PathTooLarge,
                    "exhaustive search is capped at n = " + std::to_string(kMaxBoostPath));
    }
    const auto& src = m.source();
    for (std::size_t i = 0; i < points; ++i) {
        for (std::size_t j = 0; j < points; ++j) {
            if (src(i, j) != static_cast<double>(i > j ? i - j : j - i)) {
                throw Error(ErrorCode::NotAPath, "source is not P_" + std::to_string(n), {i, j});
            }
        }
    }

    const auto& image = m.image();
    ProgressionResult best{0, 1, t, std::numeric_limits<double>::infinity(), true};
    for (std::size_t stride = 1; stride * t <= n; ++stride) {
        for (std::size_t offset = 0; offset + stride * t <= n; ++offset) {
            // Same arithmetic as map_distortion over P_t, so results agree bit for bit.
            double lip = 0.0;
            double colip = 0.0;
            for (std::size_t i = 0; i <= t; ++i) {
                for (std::size_t j = i + 1; j <= t; ++j) {
                    const double gap = static_cast<double>(j - i);
                    const double img = image(offset + i * stride, offset + j * stride);
                    lip = std::max(lip, img / gap);
                    colip = std::max(colip, gap / img);
                }
            }
            const double dist = std::max(1.0, lip * colip);
            if (dist < best.sub_dist) {
                best.offset = offset;
                best.stride = stride;
                best.sub_dist = dist;
            }
        }
    }
    return best;
}

/// Smallest n for which any map of P_n with distortion <= D has a
/// progression P_t with dist(f o phi) <= 1 + eps:
///
///     n >= D^{(4 t ln t) / eps}.
///
/// The logarithm is natural. That gives the smaller n of the two usual
/// readings, so passing checks at this n is the stronger statement.
inline std::uint64_t boost_guarantee_n(double D, std::size_t t, double eps)
{
    if (!(D >= 2.0) || !std::isfinite(D)) {
        throw Error(ErrorCode::ArgumentOutOfRange, "D must be at least 2");
    }
    if (t < 2) {
        throw Error(ErrorCode::ArgumentOutOfRange, "t must be at least 2 (ln 1 = 0 makes the bound vacuous)");
    }
    if (!(eps > 0.0 && eps <= 1.0)) {
        throw Error(ErrorCode::ArgumentOutOfRange, "eps must lie in (0,1]");
    }
    const double td = static_cast<double>(t);
    const double exponent = 4.0 * td * std::log(td) / eps;
    const double n = std::ceil(std::pow(D, exponent));
    if (!(n < 1.8e19)) {
        throw Error(ErrorCode::ArgumentOutOfRange, "guaranteed n overflows 64 bits");
    }
    return static_cast<std::uint64_t>(n);
}

}  // namespace metlab

#endif  // METLAB_CONSTRUCTIONS_HPP
