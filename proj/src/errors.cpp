#include "ultraplanar/errors.hpp"

namespace ultraplanar {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidInput: return "InvalidInput";
        case ErrorKind::EulerViolation: return "EulerViolation";
        case ErrorKind::Disconnected: return "Disconnected";
        case ErrorKind::BridgeDetected: return "BridgeDetected";
        case ErrorKind::LengthMismatch: return "LengthMismatch";
        case ErrorKind::NoPerfectMatching: return "NoPerfectMatching";
        case ErrorKind::NotTriangulated: return "NotTriangulated";
        case ErrorKind::ParityError: return "ParityError";
        case ErrorKind::NonIncreasingSchedule: return "NonIncreasingSchedule";
        case ErrorKind::InvalidHierarchy: return "InvalidHierarchy";
        case ErrorKind::Infeasible: return "Infeasible";
        case ErrorKind::Unbounded: return "Unbounded";
        case ErrorKind::IterationLimit: return "IterationLimit";
        case ErrorKind::PoolColumnInvalid: return "PoolColumnInvalid";
        case ErrorKind::TooLarge: return "TooLarge";
        case ErrorKind::BadDimensions: return "BadDimensions";
        case ErrorKind::Internal: return "Internal";
    }
    return "Unknown";
}

bool is_input_error(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NotTriangulated:
        case ErrorKind::ParityError:
        case ErrorKind::Internal:
        case ErrorKind::IterationLimit:
            return false;
        default:
            return true;
    }
}

}  // namespace ultraplanar
