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
#ifndef METLAB_SEARCH_HPP
#define METLAB_SEARCH_HPP

#include <cmath>
#include <concepts>
#include <cstddef>
#include <utility>

namespace metlab {

/// Smallest x in [lo, hi] (to relative width rel_tol) with pred(x) true,
/// for pred monotone false->true and pred(hi) true. Bisects geometrically,
/// so lo must be positive. Returns an x with pred(x) == true.
template <typename Pred>
    requires std::predicate<Pred&, double>
double bisect_monotone(Pred&& pred, double lo, double hi, double rel_tol)
{
    if (pred(lo)) {
        return lo;
    }
    while (hi > lo * (1.0 + rel_tol)) {
        const double mid = std::sqrt(lo * hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        if (pred(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

/// Golden-section minimisation of f on [lo, hi]; returns (argmin, min) of
/// the best point evaluated. Exact only for unimodal f.
template <typename Fn>
    requires std::invocable<Fn&, double>
std::pair<double, double> golden_section_minimize(Fn&& f, double lo, double hi, std::size_t rounds)
{
    constexpr double kInvPhi = 0.6180339887498949;
    double a = lo;
    double b = hi;
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = f(c);
    double fd = f(d);
    std::pair<double, double> best = fc <= fd ? std::pair{c, fc} : std::pair{d, fd};
    for (std::size_t r = 0; r < rounds; ++r) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = f(c);
            if (fc < best.second) {
                best = {c, fc};
            }
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = f(d);
            if (fd < best.second) {
                best = {d, fd};
            }
        }
    }
    return best;
}

}  // namespace metlab

#endif  // METLAB_SEARCH_HPP
