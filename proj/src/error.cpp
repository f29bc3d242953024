#include "plumb/error.hpp"

namespace plumb {

const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::SyntaxError: return "SyntaxError";
        case ErrorKind::DuplicateId: return "DuplicateId";
        case ErrorKind::DanglingReference: return "DanglingReference";
        case ErrorKind::MixedContexts: return "MixedContexts";
        case ErrorKind::SingularInconsistent: return "SingularInconsistent";
        case ErrorKind::PositiveGenus: return "PositiveGenus";
        case ErrorKind::MissingLocus: return "MissingLocus";
        case ErrorKind::NotBlowdownable: return "NotBlowdownable";
        case ErrorKind::InvalidSequence: return "InvalidSequence";
        case ErrorKind::NotNegativeDefinite: return "NotNegativeDefinite";
        case ErrorKind::Disconnected: return "Disconnected";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::BudgetExceeded: return "BudgetExceeded";
        case ErrorKind::UnverifiedEmbedding: return "UnverifiedEmbedding";
        case ErrorKind::NotInLipmanCone: return "NotInLipmanCone";
        case ErrorKind::NonIntegral: return "NonIntegral";
        case ErrorKind::NonPositive: return "NonPositive";
        case ErrorKind::InconsistentArrows: return "InconsistentArrows";
        case ErrorKind::NotCoprime: return "NotCoprime";
        case ErrorKind::MissingArrow: return "MissingArrow";
        case ErrorKind::Inadmissible: return "Inadmissible";
        case ErrorKind::Internal: return "Internal";
    }
    return "Unknown";
}

}  // namespace plumb
