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
#ifndef METLAB_DISTORTION_HPP
#define METLAB_DISTORTION_HPP

#include <metlab/errors.hpp>
#include <metlab/metric.hpp>
#include <metlab/transforms.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>

namespace metlab {

/// An injective map f out of a finite metric space, stored through its
/// pulled-back distances image(i,j) = d_Y(f(i), f(j)).
class PulledBackMap {
public:
    PulledBackMap(FiniteMetric source, SquareMatrix image)
        : source_(std::move(source))
        , image_(std::move(image))
    {
        if (image_.size() != source_.size()) {
            throw Error(ErrorCode::SizeMismatch, "image matrix has " + std::to_string(image_.size()) +
                                                     " points, source has " + std::to_string(source_.size()));
        }
        try {
            detail::check_weight_shape(image_);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::ZeroOffDiagonal) {
                throw Error(ErrorCode::NonInjectiveMap,
                            "points " + detail::pair_str(e.indices()[0], e.indices()[1]) + " share an image",
                            e.indices());
            }
            throw;
        }
    }

    const FiniteMetric& source() const noexcept { return source_; }
    const SquareMatrix& image() const noexcept { return image_; }
    std::size_t size() const noexcept { return source_.size(); }

private:
    FiniteMetric source_;
    SquareMatrix image_;
};

struct DistortionReport {
    double lip = 1.0;    ///< max image/source ratio
    double colip = 1.0;  ///< max source/image ratio
    double dist = 1.0;   ///< lip * colip
    std::pair<std::size_t, std::size_t> lip_pair{0, 0};
    std::pair<std::size_t, std::size_t> colip_pair{0, 0};
};

namespace detail {

inline DistortionReport distortion_of(const SquareMatrix& source, const SquareMatrix& image)
{
    DistortionReport r;
    const std::size_t n = source.size();
    if (n < 2) {
        return r;
    }
    r.lip = 0.0;
    r.colip = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double expand = image(i, j) / source(i, j);
            const double contract = source(i, j) / image(i, j);
            if (expand > r.lip) {
                r.lip = expand;
                r.lip_pair = {i, j};
            }
            if (contract > r.colip) {
                r.colip = contract;
                r.colip_pair = {i, j};
            }
        }
    }
    // lip * colip >= ratio * (1/ratio) = 1 in exact arithmetic; the clamp
    // only absorbs the last ulp.
    r.dist = std::max(1.0, r.lip * r.colip);
    return r;
}

}  // namespace detail

inline DistortionReport map_distortion(const PulledBackMap& m)
{
    return detail::distortion_of(m.source().matrix(), m.image());
}

/// Distortion of the identity (X, d) -> (X, omega o delta).
inline DistortionReport identity_transform_distortion(const FiniteMetric& x, const FiniteMetric& delta,
                                                      const Modulus& omega)
{
    if (x.size() != delta.size()) {
        throw Error(ErrorCode::SizeMismatch, "metric has " + std::to_string(x.size()) + " points, witness has " +
                                                 std::to_string(delta.size()));
    }
    return map_distortion(
        PulledBackMap(x, delta.matrix().map_off_diagonal([&](double v) { return omega(v); })));
}

namespace detail {

/// Multiplicative coordinate search over metrics delta, re-projected onto
/// the metric cone with the shortest-path closure after every move. Step
/// exponent k anneals from 1 to 6 over the run; one extra move rescales all
/// of delta at once.
inline double local_search_distortion(const FiniteMetric& x, const Modulus& omega, SquareMatrix delta,
                                      std::size_t iterations, std::uint64_t seed)
{
    const std::size_t n = x.size();
    const auto score = [&](const SquareMatrix& cand) {
        return distortion_of(x.matrix(), cand.map_off_diagonal([&](double v) { return omega(v); })).dist;
    };
    double best = score(delta);
    if (n < 3 || best == 1.0) {
        return best;
    }

    std::mt19937_64 rng(seed);
    const std::size_t pairs = n * (n - 1) / 2;
    std::uniform_int_distribution<std::size_t> pick(0, pairs);
    std::bernoulli_distribution up(0.5);
    for (std::size_t it = 0; it < iterations; ++it) {
        const auto k = 1 + (5 * it) / std::max<std::size_t>(iterations, 1);
        const double step = std::pow(10.0, -static_cast<double>(k));

        const double factor = up(rng) ? 1.0 + step : 1.0 / (1.0 + step);
        SquareMatrix cand = delta;
        std::size_t idx = pick(rng);
        if (idx == pairs) {
            // Uniform rescale: a no-op for power laws, but it moves
            // omega o delta along omega for everything else.
            cand = cand.map_off_diagonal([factor](double v) { return v * factor; });
        } else {
            std::size_t i = 0;
            while (idx >= n - 1 - i) {
                idx -= n - 1 - i;
                ++i;
            }
            const std::size_t j = i + 1 + idx;
            cand(i, j) *= factor;
            cand(j, i) = cand(i, j);
            cand = shortest_path_closure(std::move(cand));
        }

        const double value = score(cand);
        if (value < best) {
            best = value;
            delta = std::move(cand);
        }
    }
    return best;
}

}  // namespace detail

/// Upper bound on the least distortion of X into omega(MET) by local search,
/// started from closure(omega^{-1}(lambda* d)) with lambda* = omega(diam)/diam.
/// Deterministic for a fixed seed.
inline double numerical_modulus_oracle(const FiniteMetric& x, const Modulus& omega, std::size_t iterations,
                                       std::uint64_t seed)
{
    if (x.size() < 2) {
        return 1.0;
    }
    const double diam = x.diameter();
    const double lambda = omega(diam) / diam;
    SquareMatrix start = detail::shortest_path_closure(
        x.matrix().map_off_diagonal([&](double v) { return omega.inverse(lambda * v); }));
    return detail::local_search_distortion(x, omega, std::move(start), iterations, seed);
}

/// Upper bound on the least distortion of X into the theta-snowflakes,
/// searched from closure(d^{1/theta}).
inline double numerical_snowflake_oracle(const FiniteMetric& x, double theta, std::size_t iterations,
                                         std::uint64_t seed)
{
    if (!(theta > 0.0 && theta < 1.0)) {
        throw Error(ErrorCode::ThetaOutOfRange, "theta must lie in (0,1)");
    }
    if (x.size() < 2) {
        return 1.0;
    }
    SquareMatrix start = detail::shortest_path_closure(
        x.matrix().map_off_diagonal([&](double v) { return std::pow(v, 1.0 / theta); }));
    return detail::local_search_distortion(x, Modulus::snowflake(theta), std::move(start), iterations, seed);
}

}  // namespace metlab

#endif  // METLAB_DISTORTION_HPP
