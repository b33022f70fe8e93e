// Copyright 2026 The supermap-forge Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace smf {

/// Failure categories raised by the library. Every thrown smf::Error
/// carries exactly one of these.
enum class Errc {
    AlgebraMismatch,
    ShapeMismatch,
    NotPsd,
    NotCp,
    NotTp,
    StructureMissing,
    VerifyRequired,
    NotDeterministic,
    NotUnital,
    NotMinimal,
    ResidualTooLarge,
    BoundViolated,
    IsometryDefect,
    SingularMarginal,
    InvalidArgument,
    Parse,
};

constexpr std::string_view to_string(Errc code) noexcept {
    switch (code) {
    case Errc::AlgebraMismatch: return "ALGEBRA_MISMATCH";
    case Errc::ShapeMismatch: return "SHAPE_MISMATCH";
    case Errc::NotPsd: return "NOT_PSD";
    case Errc::NotCp: return "NOT_CP";
    case Errc::NotTp: return "NOT_TP";
    case Errc::StructureMissing: return "STRUCTURE_MISSING";
    case Errc::VerifyRequired: return "VERIFY_REQUIRED";
    case Errc::NotDeterministic: return "NOT_DETERMINISTIC";
    case Errc::NotUnital: return "NOT_UNITAL";
    case Errc::NotMinimal: return "NOT_MINIMAL";
    case Errc::ResidualTooLarge: return "RESIDUAL_TOO_LARGE";
    case Errc::BoundViolated: return "BOUND_VIOLATED";
    case Errc::IsometryDefect: return "ISOMETRY_DEFECT";
    case Errc::SingularMarginal: return "SINGULAR_MARGINAL";
    case Errc::InvalidArgument: return "INVALID_ARGUMENT";
    case Errc::Parse: return "PARSE_ERROR";
    }
    return "UNKNOWN";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace smf
