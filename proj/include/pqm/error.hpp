#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pqm {

enum class ErrorCode {
    CycleError,
    DuplicateElement,
    UnknownElement,
    NotMonotone,
    NonMonotoneStructureMap,
    EmptyAfterNonempty,
    PartialStructureMap,
    NotNatural,
    NotASubposet,
    NotClosed,
    InvalidRemoval,
    InconsistentTransfer,
    UnknownVertex,
    VertexCollision,
    NotSimplicial,
    NegativeMultiplicity,
    ShapeMismatch,
    NotACycle,
    TooLarge,
    HypothesisUnmet,
    NotPrime,
    SchemaError,
    ValidationError,
    NotNested,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace pqm
