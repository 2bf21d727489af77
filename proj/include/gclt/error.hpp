// SPDX-License-Identifier: MIT
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gclt {

enum class ErrorCode {
    InvalidArgument,
    NonUnitMass,
    NonZeroMean,
    DuplicateSupport,
    EmptyFamily,
    BadN,
    ModeMismatch,
    GridTooSmall,
    OutOfHull,
    CFLViolated,
    DegenerateGrid,
    NotConvex,
    ReferenceTooCoarse,
    TooFewPoints,
    ResolutionTooCoarse,
    DomainTooSmall,
    HypothesisViolated,
    ConfigInvalid,
    OutputBusy,
    IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above; the CLI
/// prints the code verbatim so scripts can match on it.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace gclt
