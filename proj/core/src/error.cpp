#include "manifold_align/error.hpp"

namespace manifold_align {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::MalformedRow: return "malformed-row";
        case ErrorCode::NonFiniteValue: return "non-finite-value";
        case ErrorCode::EmptyFile: return "empty-file";
        case ErrorCode::IoFailure: return "io-failure";
        case ErrorCode::BadFormat: return "bad-format";
        case ErrorCode::KOutOfRange: return "k-out-of-range";
        case ErrorCode::ZeroMedian: return "zero-median";
        case ErrorCode::DimensionMismatch: return "dimension-mismatch";
        case ErrorCode::MismatchedK: return "mismatched-k";
        case ErrorCode::DegenerateKernel: return "degenerate-kernel";
        case ErrorCode::GuardExceeded: return "guard-exceeded";
        case ErrorCode::LengthMismatch: return "length-mismatch";
        case ErrorCode::AllTies: return "all-ties";
        case ErrorCode::InvalidParameter: return "invalid-parameter";
    }
    return "unknown";
}

}  // namespace manifold_align
