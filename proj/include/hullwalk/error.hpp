#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hullwalk {

enum class ErrorCode {
    EmptyInput,
    NonFinite,
    NonUnitDirection,
    OriginOutside,
    NotPSD,
    ZeroDrift,
    ZeroPerpVariance,
    ScheduleOutOfRange,
    InvalidSchedule,
    InvalidReplicates,
    TooFewSamples,
    DegenerateDrift,
    SupportTooLarge,
    NotFiniteSupport,
    InfiniteVariance,
    NoConvergence,
    MismatchedQuantities,
    InvalidArgument,
    ParseError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Exception type thrown by every library operation. The code identifies the
/// failed precondition so callers (the CLI in particular) can map it to an
/// exit status without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace hullwalk
