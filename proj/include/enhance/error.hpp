#pragma once

#include <stdexcept>
#include <string>

namespace enhance {

enum class ErrorCode {
    MalformedHeader,
    UnsupportedMaxval,
    TruncatedData,
    NonFinite,
    EmptyImage,
    DegenerateRange,
    ShiftedSpectrum,
    BadCutoff,
    BadOrder,
    DimensionMismatch,
    EvenKernel,
    BadSigma,
    InvalidArgument,
    Io,
};

const char* to_string(ErrorCode code);

/// Library error carrying a machine-checkable code. what() is a single-line
/// diagnostic suitable for printing as-is.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace enhance
