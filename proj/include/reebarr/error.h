#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace reebarr {

enum class ErrorCode {
    IdenticalCircles,
    PointNotOnCircle,
    EndpointsNotOnCircle,
    DegenerateSegment,
    NotDisjoint,
    NoCommonBoundaryComponent,
    NoIntersection,
    TangencyDetected,
    TriplePoint,
    CircleDetached,
    RegionEmpty,
    RegionDisconnected,
    DegenerateEvents,
    TooLarge,
    NotOnBoundary,
    NotDoublePoint,
    ProbeTooLarge,
    ChordInvalid,
    AmbiguousAtTolerance,
    CoincidesWithHost,
    RegionTouchesOtherCircles,
    PreconditionUnmet,
    LabelingInvalid,
    ParseError,
    Internal,
};

std::string_view error_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code), detail_(what) {}

    ErrorCode code() const noexcept { return code_; }
    /// The message without the code name.
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorCode code_;
    std::string detail_;
};

}  // namespace reebarr
