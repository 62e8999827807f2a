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
#ifndef METLAB_MATRIX_HPP
#define METLAB_MATRIX_HPP

#include <metlab/errors.hpp>

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace metlab {

/// Dense row-major n x n matrix of doubles.
class SquareMatrix {
public:
    SquareMatrix() = default;

    explicit SquareMatrix(std::size_t n, double fill = 0.0)
        : n_(n)
        , data_(n * n, fill)
    {
    }

    static SquareMatrix from_rows(const std::vector<std::vector<double>>& rows)
    {
        SquareMatrix m(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != rows.size()) {
                throw Error(ErrorCode::NotSquare,
                            "row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                                " entries, expected " + std::to_string(rows.size()),
                            {i});
            }
            for (std::size_t j = 0; j < rows.size(); ++j) {
                m(i, j) = rows[i][j];
            }
        }
        return m;
    }

    /// Builds m(i,j) = fn(i,j) for all i,j.
    template <typename Fn>
    static SquareMatrix generate(std::size_t n, Fn&& fn)
    {
        SquareMatrix m(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                m(i, j) = fn(i, j);
            }
        }
        return m;
    }

    std::size_t size() const noexcept { return n_; }

    double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * n_ + j]; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * n_ + j]; }

    std::span<const double> row(std::size_t i) const noexcept
    {
        return std::span<const double>(data_).subspan(i * n_, n_);
    }

    std::span<const double> values() const noexcept { return data_; }

    std::vector<std::vector<double>> rows() const
    {
        std::vector<std::vector<double>> out(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            out[i].assign(row(i).begin(), row(i).end());
        }
        return out;
    }

    /// Applies fn to every off-diagonal entry; the diagonal stays as is.
    template <typename Fn>
    SquareMatrix map_off_diagonal(Fn&& fn) const
    {
        SquareMatrix out = *this;
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = 0; j < n_; ++j) {
                if (i != j) {
                    out(i, j) = fn((*this)(i, j));
                }
            }
        }
        return out;
    }

    friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

}  // namespace metlab

#endif  // METLAB_MATRIX_HPP
