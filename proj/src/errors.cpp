#include "tailprice/errors.hpp"

namespace tailprice {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::Parameter: return "parameter";
        case ErrorKind::Domain: return "domain";
        case ErrorKind::Consistency: return "consistency";
        case ErrorKind::OutOfBand: return "out-of-band";
        case ErrorKind::NoConvergence: return "no-convergence";
        case ErrorKind::Parse: return "parse";
        case ErrorKind::Validation: return "validation";
        case ErrorKind::NoCandidate: return "no-candidate";
        case ErrorKind::InsufficientPoints: return "insufficient-points";
        case ErrorKind::Matching: return "matching";
        case ErrorKind::Unbounded: return "unbounded";
        case ErrorKind::Io: return "io";
    }
    return "unknown";
}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace tailprice
