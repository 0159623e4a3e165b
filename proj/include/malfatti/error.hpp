#pragma once

#include <stdexcept>
#include <string>

namespace malfatti {

enum class ErrorCode {
    // parse
    SyntaxError,
    SemanticError,
    // precondition
    PointAtCenter,
    IdenticalCircles,
    OverlappingInteriors,
    CollinearCenters,
    LineThroughCenter,
    PointIsCenter,
    InadmissibleSigns,
    DegenerateCenters,
    CoincidentObjects,
    PointOutsideModel,
    CarrierOutsideModel,
    PointInsideCircle,
    NestedCircles,
    OverlappingCircles,
    ViolatedTriangleInequality,
    NoBoundedRegion,
    DegenerateConfiguration,
    NotApplicable,
    // numerical
    ArgumentOutOfRange,
    NoRealSolution,
    AmbiguousBranch,
    NoConvergence,
    NoSuchTangentCircle,
    NoSolutionForConstraints,
    ConcurrencyFailure,
    SelectionExhausted,
};

const char* to_string(ErrorCode code);

// Process exit status for a failure of this kind: 2 parse, 3 precondition, 4 numerical.
int exit_status(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

}  // namespace malfatti
