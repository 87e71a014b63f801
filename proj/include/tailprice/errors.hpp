#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tailprice {

/// Failure categories shared by every module. The C API maps each one onto a
/// distinct status code, and the CLI onto a distinct exit diagnostic.
enum class ErrorKind {
    Parameter,          // invalid scalar input (alpha <= 1, nonpositive vol, ...)
    Domain,             // strike or price outside the region a formula covers
    Consistency,        // calibration lands the anchor inside the Karamata zone
    OutOfBand,          // option price outside the static no-arbitrage band
    NoConvergence,      // iterative solver exhausted its budget
    Parse,              // malformed input row or document
    Validation,         // well-formed input that violates a data invariant
    NoCandidate,        // anchor selection found nothing usable
    InsufficientPoints, // too few quotes for a regression
    Matching,           // BS value at the anchor does not match the tail model
    Unbounded,          // alpha bound has no finite value for the input
    Io,                 // file could not be opened or written
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace tailprice
