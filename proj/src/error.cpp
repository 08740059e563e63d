#include "enhance/error.hpp"

namespace enhance {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::MalformedHeader: return "MalformedHeader";
        case ErrorCode::UnsupportedMaxval: return "UnsupportedMaxval";
        case ErrorCode::TruncatedData: return "TruncatedData";
        case ErrorCode::NonFinite: return "NonFinite";
        case ErrorCode::EmptyImage: return "EmptyImage";
        case ErrorCode::DegenerateRange: return "DegenerateRange";
        case ErrorCode::ShiftedSpectrum: return "ShiftedSpectrum";
        case ErrorCode::BadCutoff: return "BadCutoff";
        case ErrorCode::BadOrder: return "BadOrder";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::EvenKernel: return "EvenKernel";
        case ErrorCode::BadSigma: return "BadSigma";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

}  // namespace enhance
