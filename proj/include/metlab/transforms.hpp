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
#ifndef METLAB_TRANSFORMS_HPP
#define METLAB_TRANSFORMS_HPP

#include <metlab/errors.hpp>
#include <metlab/metric.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <variant>
#include <vector>

namespace metlab {

/// omega(t) = a * t^b.
struct PowerLaw {
    double a = 1.0;
    double b = 1.0;
};

/// Concave piecewise-linear omega through (t_k, s_k); the last segment
/// continues past t_last with its own slope.
struct PiecewiseLinear {
    std::vector<std::pair<double, double>> breakpoints;
};

using ModulusSpec = std::variant<PowerLaw, PiecewiseLinear>;

/// A modulus omega: [0,inf) -> [0,inf), concave, strictly increasing,
/// omega(0) = 0 and onto [0,inf), so the inverse is total.
class Modulus {
public:
    explicit Modulus(ModulusSpec spec)
        : spec_(std::move(spec))
    {
        std::visit([this](const auto& s) { validate(s); }, spec_);
    }

    /// The theta-snowflake modulus t -> t^theta.
    static Modulus snowflake(double theta) { return Modulus(PowerLaw{1.0, theta}); }

    double operator()(double t) const
    {
        if (const auto* p = std::get_if<PowerLaw>(&spec_)) {
            return t == 0.0 ? 0.0 : p->a * std::pow(t, p->b);
        }
        const auto& bp = std::get<PiecewiseLinear>(spec_).breakpoints;
        const std::size_t k = segment_for(t, [](const auto& b) { return b.first; });
        return bp[k].second + slopes_[k] * (t - bp[k].first);
    }

    double inverse(double s) const
    {
        if (const auto* p = std::get_if<PowerLaw>(&spec_)) {
            return s == 0.0 ? 0.0 : std::pow(s / p->a, 1.0 / p->b);
        }
        const auto& bp = std::get<PiecewiseLinear>(spec_).breakpoints;
        const std::size_t k = segment_for(s, [](const auto& b) { return b.second; });
        return bp[k].first + (s - bp[k].second) / slopes_[k];
    }

    const ModulusSpec& spec() const noexcept { return spec_; }
    bool is_power_law() const noexcept { return std::holds_alternative<PowerLaw>(spec_); }

private:
    void validate(const PowerLaw& p)
    {
        if (!std::isfinite(p.a) || !std::isfinite(p.b)) {
            throw Error(ErrorCode::MalformedModulus, "power law parameters must be finite");
        }
        if (p.a <= 0.0 || p.b <= 0.0) {
            throw Error(ErrorCode::NotStrictlyIncreasing, "power law needs a > 0 and b > 0");
        }
        if (p.b > 1.0) {
            throw Error(ErrorCode::NotConcave, "power law exponent b = " + std::to_string(p.b) + " exceeds 1");
        }
    }

    void validate(const PiecewiseLinear& p)
    {
        const auto& bp = p.breakpoints;
        if (bp.size() < 2) {
            throw Error(ErrorCode::MalformedModulus, "piecewise-linear modulus needs at least two breakpoints");
        }
        for (const auto& [t, s] : bp) {
            if (!std::isfinite(t) || !std::isfinite(s)) {
                throw Error(ErrorCode::MalformedModulus, "breakpoints must be finite");
            }
        }
        if (bp.front().first != 0.0 || bp.front().second != 0.0) {
            throw Error(ErrorCode::BadOrigin, "first breakpoint must be (0,0)");
        }
        slopes_.clear();
        for (std::size_t k = 0; k + 1 < bp.size(); ++k) {
            const double dt = bp[k + 1].first - bp[k].first;
            if (dt <= 0.0) {
                throw Error(ErrorCode::MalformedModulus, "breakpoint abscissae must strictly increase", {k, k + 1});
            }
            const double slope = (bp[k + 1].second - bp[k].second) / dt;
            if (slope <= 0.0) {
                throw Error(ErrorCode::NotStrictlyIncreasing,
                            "segment " + std::to_string(k) + " has nonpositive slope", {k});
            }
            if (!slopes_.empty() && slope > slopes_.back()) {
                throw Error(ErrorCode::NotConcave, "slope increases at segment " + std::to_string(k), {k});
            }
            slopes_.push_back(slope);
        }
    }

    /// Index of the segment whose [key_k, key_{k+1}) holds x; the last
    /// segment absorbs everything beyond.
    template <typename Key>
    std::size_t segment_for(double x, Key key) const
    {
        const auto& bp = std::get<PiecewiseLinear>(spec_).breakpoints;
        const auto it = std::upper_bound(bp.begin(), bp.end(), x,
                                         [&](double v, const auto& b) { return v < key(b); });
        const auto idx = static_cast<std::size_t>(std::distance(bp.begin(), it));
        return std::min(idx == 0 ? 0 : idx - 1, slopes_.size() - 1);
    }

    ModulusSpec spec_;
    std::vector<double> slopes_;
};

inline Modulus build_modulus(ModulusSpec spec) { return Modulus(std::move(spec)); }
inline double eval_modulus(const Modulus& omega, double t) { return omega(t); }
inline double invert_modulus(const Modulus& omega, double s) { return omega.inverse(s); }

/// (X, omega o d), full-checked; concavity makes it a metric, so a failed
/// check is a bug here rather than bad input.
inline FiniteMetric apply_transform(const Modulus& omega, const FiniteMetric& x)
{
    SquareMatrix out = x.matrix().map_off_diagonal([&](double v) { return omega(v); });
    try {
        return validate_metric(out, x.labels());
    } catch (const Error& e) {
        throw Error(ErrorCode::InternalInvariantViolation,
                    std::string("transformed distances are not a metric: ") + e.what(), e.indices());
    }
}

struct ProbeViolation {
    double lambda;
    double t1;
    double t2;
    double gap;  ///< f(t1+t2) - f(t1) - f(t2) > 0
};

struct ProbeReport {
    std::vector<double> lambdas;
    std::vector<double> grid;
    std::vector<ProbeViolation> violations;
};

/// Checks subadditivity of f(t) = omega^{-1}(lambda * omega(t)) over every
/// pair t1 <= t2 of grid points, for each lambda. A violation means dilating
/// omega(MET) by lambda can leave the class.
inline ProbeReport dilation_closure_probe(const Modulus& omega, std::vector<double> lambdas, std::vector<double> grid)
{
    if (lambdas.empty() || grid.empty()) {
        throw Error(ErrorCode::ArgumentOutOfRange, "probe needs at least one lambda and one grid point");
    }
    for (double v : lambdas) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw Error(ErrorCode::ArgumentOutOfRange, "lambda values must be positive");
        }
    }
    for (double v : grid) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw Error(ErrorCode::ArgumentOutOfRange, "grid points must be positive");
        }
    }
    ProbeReport report{std::move(lambdas), std::move(grid), {}};
    for (double lambda : report.lambdas) {
        const auto f = [&](double t) { return omega.inverse(lambda * omega(t)); };
        for (std::size_t i = 0; i < report.grid.size(); ++i) {
            for (std::size_t j = i; j < report.grid.size(); ++j) {
                const double t1 = report.grid[i];
                const double t2 = report.grid[j];
                const double joint = f(t1 + t2);
                const double split = f(t1) + f(t2);
                const double scale = std::max(joint, split);
                if (joint > split + 1e-12 * scale) {
                    report.violations.push_back({lambda, t1, t2, joint - split});
                }
            }
        }
    }
    return report;
}

}  // namespace metlab

#endif  // METLAB_TRANSFORMS_HPP
