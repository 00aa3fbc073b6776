#include "pqm/error.hpp"

namespace pqm {

std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::CycleError: return "CycleError";
    case ErrorCode::DuplicateElement: return "DuplicateElement";
    case ErrorCode::UnknownElement: return "UnknownElement";
    case ErrorCode::NotMonotone: return "NotMonotone";
    case ErrorCode::NonMonotoneStructureMap: return "NonMonotoneStructureMap";
    case ErrorCode::EmptyAfterNonempty: return "EmptyAfterNonempty";
    case ErrorCode::PartialStructureMap: return "PartialStructureMap";
    case ErrorCode::NotNatural: return "NotNatural";
    case ErrorCode::NotASubposet: return "NotASubposet";
    case ErrorCode::NotClosed: return "NotClosed";
    case ErrorCode::InvalidRemoval: return "InvalidRemoval";
    case ErrorCode::InconsistentTransfer: return "InconsistentTransfer";
    case ErrorCode::UnknownVertex: return "UnknownVertex";
    case ErrorCode::VertexCollision: return "VertexCollision";
    case ErrorCode::NotSimplicial: return "NotSimplicial";
    case ErrorCode::NegativeMultiplicity: return "NegativeMultiplicity";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NotACycle: return "NotACycle";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::HypothesisUnmet: return "HypothesisUnmet";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::NotNested: return "NotNested";
    }
    return "UnknownError";
}

} // namespace pqm
