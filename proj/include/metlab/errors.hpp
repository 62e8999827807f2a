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
#ifndef METLAB_ERRORS_HPP
#define METLAB_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace metlab {

enum class ErrorCode {
    // metric-core
    NotSquare,
    AsymmetricInput,
    NegativeDistance,
    NonFiniteValue,
    NonZeroDiagonal,
    ZeroOffDiagonal,
    TriangleViolation,
    DuplicatePoint,
    DisconnectedGraph,
    SelfLoop,
    InvalidVertex,
    EmptyMetric,
    // transforms
    NotConcave,
    NotStrictlyIncreasing,
    BadOrigin,
    MalformedModulus,
    InternalInvariantViolation,
    // distortion / solver / constructions
    NonInjectiveMap,
    SizeMismatch,
    ThetaOutOfRange,
    ModulusNotInvertible,
    SandwichViolated,
    DistanceNotInSet,
    PathTooShort,
    PathTooLarge,
    NotAPath,
    ArgumentOutOfRange,
    // io
    FileNotFound,
    ParseError,
};

constexpr std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::AsymmetricInput: return "AsymmetricInput";
    case ErrorCode::NegativeDistance: return "NegativeDistance";
    case ErrorCode::NonFiniteValue: return "NonFiniteValue";
    case ErrorCode::NonZeroDiagonal: return "NonZeroDiagonal";
    case ErrorCode::ZeroOffDiagonal: return "ZeroOffDiagonal";
    case ErrorCode::TriangleViolation: return "TriangleViolation";
    case ErrorCode::DuplicatePoint: return "DuplicatePoint";
    case ErrorCode::DisconnectedGraph: return "DisconnectedGraph";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::InvalidVertex: return "InvalidVertex";
    case ErrorCode::EmptyMetric: return "EmptyMetric";
    case ErrorCode::NotConcave: return "NotConcave";
    case ErrorCode::NotStrictlyIncreasing: return "NotStrictlyIncreasing";
    case ErrorCode::BadOrigin: return "BadOrigin";
    case ErrorCode::MalformedModulus: return "MalformedModulus";
    case ErrorCode::InternalInvariantViolation: return "InternalInvariantViolation";
    case ErrorCode::NonInjectiveMap: return "NonInjectiveMap";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::ThetaOutOfRange: return "ThetaOutOfRange";
    case ErrorCode::ModulusNotInvertible: return "ModulusNotInvertible";
    case ErrorCode::SandwichViolated: return "SandwichViolated";
    case ErrorCode::DistanceNotInSet: return "DistanceNotInSet";
    case ErrorCode::PathTooShort: return "PathTooShort";
    case ErrorCode::PathTooLarge: return "PathTooLarge";
    case ErrorCode::NotAPath: return "NotAPath";
    case ErrorCode::ArgumentOutOfRange: return "ArgumentOutOfRange";
    case ErrorCode::FileNotFound: return "FileNotFound";
    case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

/// Every failure raised by the library. `indices()` carries the offending
/// pair or triple when the error is about specific points.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message, std::vector<std::size_t> indices = {})
        : std::runtime_error(std::string(to_string(code)) + ": " + message)
        , code_(code)
        , indices_(std::move(indices))
    {
    }

    ErrorCode code() const noexcept { return code_; }
    const std::vector<std::size_t>& indices() const noexcept { return indices_; }

private:
    ErrorCode code_;
    std::vector<std::size_t> indices_;
};

}  // namespace metlab

#endif  // METLAB_ERRORS_HPP
