#pragma once

#include <stdexcept>
#include <string>

namespace coverforge {

/// Base for failures caused by the *data* handed to an operation (bad files,
/// inconsistent data, unsupported inputs). Distinct from std::logic_error,
/// which we reserve for broken internal invariants.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : DomainError {
    using DomainError::DomainError;
};

struct UnsupportedGroupKind : DomainError {
    using DomainError::DomainError;
};

struct NonNormalSubgroup : DomainError {
    using DomainError::DomainError;
};

struct NonIntegerMultiplicity : DomainError {
    using DomainError::DomainError;
};

struct NonIntegerCount : DomainError {
    using DomainError::DomainError;
};

struct NonIntegralGenus : DomainError {
    using DomainError::DomainError;
};

struct NegativeGenus : DomainError {
    using DomainError::DomainError;
};

struct InvalidDatum : DomainError {
    using DomainError::DomainError;
};

struct NonAdjacentMerge : DomainError {
    using DomainError::DomainError;
};

struct EmptyCollision : DomainError {
    using DomainError::DomainError;
};

struct BranchDropped : DomainError {
    using DomainError::DomainError;
};

struct BaseNotRational : DomainError {
    using DomainError::DomainError;
};

struct NotDihedral : DomainError {
    using DomainError::DomainError;
};

struct HOutOfRange : DomainError {
    using DomainError::DomainError;
};

struct MismatchWithGenericCW : DomainError {
    using DomainError::DomainError;
};

struct AssumptionViolated : DomainError {
    using DomainError::DomainError;
};

struct ShapeViolation : DomainError {
    using DomainError::DomainError;
};

/// Guard for invariants that exact arithmetic is supposed to make unbreakable.
inline void internal_check(bool ok, const std::string& what) {
    if (!ok) throw std::logic_error("internal invariant violated: " + what);
}

}  // namespace coverforge
