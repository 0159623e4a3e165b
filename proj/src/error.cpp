#include "malfatti/error.hpp"

namespace malfatti {

const char* to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::SemanticError: return "SemanticError";
    case ErrorCode::PointAtCenter: return "PointAtCenter";
    case ErrorCode::IdenticalCircles: return "IdenticalCircles";
    case ErrorCode::OverlappingInteriors: return "OverlappingInteriors";
    case ErrorCode::CollinearCenters: return "CollinearCenters";
    case ErrorCode::LineThroughCenter: return "LineThroughCenter";
    case ErrorCode::PointIsCenter: return "PointIsCenter";
    case ErrorCode::InadmissibleSigns: return "InadmissibleSigns";
    case ErrorCode::DegenerateCenters: return "DegenerateCenters";
    case ErrorCode::CoincidentObjects: return "CoincidentObjects";
    case ErrorCode::PointOutsideModel: return "PointOutsideModel";
    case ErrorCode::CarrierOutsideModel: return "CarrierOutsideModel";
    case ErrorCode::PointInsideCircle: return "PointInsideCircle";
    case ErrorCode::NestedCircles: return "NestedCircles";
    case ErrorCode::OverlappingCircles: return "OverlappingCircles";
    case ErrorCode::ViolatedTriangleInequality: return "ViolatedTriangleInequality";
    case ErrorCode::NoBoundedRegion: return "NoBoundedRegion";
    case ErrorCode::DegenerateConfiguration: return "DegenerateConfiguration";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::ArgumentOutOfRange: return "ArgumentOutOfRange";
    case ErrorCode::NoRealSolution: return "NoRealSolution";
    case ErrorCode::AmbiguousBranch: return "AmbiguousBranch";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NoSuchTangentCircle: return "NoSuchTangentCircle";
    case ErrorCode::NoSolutionForConstraints: return "NoSolutionForConstraints";
    case ErrorCode::ConcurrencyFailure: return "ConcurrencyFailure";
    case ErrorCode::SelectionExhausted: return "SelectionExhausted";
    }
    return "Unknown";
}

int exit_status(ErrorCode code) {
    switch (code) {
    case ErrorCode::SyntaxError:
    case ErrorCode::SemanticError:
        return 2;
    case ErrorCode::ArgumentOutOfRange:
    case ErrorCode::NoRealSolution:
    case ErrorCode::AmbiguousBranch:
    case ErrorCode::NoConvergence:
    case ErrorCode::NoSuchTangentCircle:
    case ErrorCode::NoSolutionForConstraints:
    case ErrorCode::ConcurrencyFailure:
    case ErrorCode::SelectionExhausted:
        return 4;
    default:
        return 3;
    }
}

}  // namespace malfatti
