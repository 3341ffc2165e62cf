#include "hullwalk/error.hpp"

namespace hullwalk {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::EmptyInput: return "EmptyInput";
        case ErrorCode::NonFinite: return "NonFinite";
        case ErrorCode::NonUnitDirection: return "NonUnitDirection";
        case ErrorCode::OriginOutside: return "OriginOutside";
        case ErrorCode::NotPSD: return "NotPSD";
        case ErrorCode::ZeroDrift: return "ZeroDrift";
        case ErrorCode::ZeroPerpVariance: return "ZeroPerpVariance";
        case ErrorCode::ScheduleOutOfRange: return "ScheduleOutOfRange";
        case ErrorCode::InvalidSchedule: return "InvalidSchedule";
        case ErrorCode::InvalidReplicates: return "InvalidReplicates";
        case ErrorCode::TooFewSamples: return "TooFewSamples";
        case ErrorCode::DegenerateDrift: return "DegenerateDrift";
        case ErrorCode::SupportTooLarge: return "SupportTooLarge";
        case ErrorCode::NotFiniteSupport: return "NotFiniteSupport";
        case ErrorCode::InfiniteVariance: return "InfiniteVariance";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::MismatchedQuantities: return "MismatchedQuantities";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

}  // namespace hullwalk
