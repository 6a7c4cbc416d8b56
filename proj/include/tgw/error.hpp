#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tgw {

enum class ErrorKind {
    InvolutionNotIdempotent,
    RootInvolutionIncompatible,
    RootNotIdempotent,
    MarkingNotBijective,
    NonpositiveWeight,
    UnknownFlag,
    SubgraphHasCycle,
    SubgraphHasLegs,
    GenusTooSmall,
    IrrationalSupport,
    SubdivisionTooLarge,
    NotHarmonic,
    RHNonzero,
    FiberDegreeMismatch,
    MapContractsEdge,
    NonpositiveLength,
    ProfileSumMismatch,
    WrongProfile,
    NonIntegralMultiplicity,
    NotTrivalent,
    GenusCapExceeded,
    NonTrivalentModel,
    SingularSystem,
    GenericityViolation,
    InconsistentClassMultiplicity,
    UsageError,
    ParseError,
};

std::string_view error_name(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(error_name(kind)) + ": " + what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace tgw
