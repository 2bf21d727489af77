// SPDX-License-Identifier: MIT
#include "gclt/error.hpp"

namespace gclt {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::NonUnitMass: return "NonUnitMass";
        case ErrorCode::NonZeroMean: return "NonZeroMean";
        case ErrorCode::DuplicateSupport: return "DuplicateSupport";
        case ErrorCode::EmptyFamily: return "EmptyFamily";
        case ErrorCode::BadN: return "BadN";
        case ErrorCode::ModeMismatch: return "ModeMismatch";
        case ErrorCode::GridTooSmall: return "GridTooSmall";
        case ErrorCode::OutOfHull: return "OutOfHull";
        case ErrorCode::CFLViolated: return "CFLViolated";
        case ErrorCode::DegenerateGrid: return "DegenerateGrid";
        case ErrorCode::NotConvex: return "NotConvex";
        case ErrorCode::ReferenceTooCoarse: return "ReferenceTooCoarse";
        case ErrorCode::TooFewPoints: return "TooFewPoints";
        case ErrorCode::ResolutionTooCoarse: return "ResolutionTooCoarse";
        case ErrorCode::DomainTooSmall: return "DomainTooSmall";
        case ErrorCode::HypothesisViolated: return "HypothesisViolated";
        case ErrorCode::ConfigInvalid: return "ConfigInvalid";
        case ErrorCode::OutputBusy: return "OutputBusy";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

}  // namespace gclt
