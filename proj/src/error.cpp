#include "tgw/error.hpp"

namespace tgw {

std::string_view error_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::InvolutionNotIdempotent: return "InvolutionNotIdempotent";
        case ErrorKind::RootInvolutionIncompatible: return "RootInvolutionIncompatible";
        case ErrorKind::RootNotIdempotent: return "RootNotIdempotent";
        case ErrorKind::MarkingNotBijective: return "MarkingNotBijective";
        case ErrorKind::NonpositiveWeight: return "NonpositiveWeight";
        case ErrorKind::UnknownFlag: return "UnknownFlag";
        case ErrorKind::SubgraphHasCycle: return "SubgraphHasCycle";
        case ErrorKind::SubgraphHasLegs: return "SubgraphHasLegs";
        case ErrorKind::GenusTooSmall: return "GenusTooSmall";
        case ErrorKind::IrrationalSupport: return "IrrationalSupport";
        case ErrorKind::SubdivisionTooLarge: return "SubdivisionTooLarge";
        case ErrorKind::NotHarmonic: return "NotHarmonic";
        case ErrorKind::RHNonzero: return "RHNonzero";
        case ErrorKind::FiberDegreeMismatch: return "FiberDegreeMismatch";
        case ErrorKind::MapContractsEdge: return "MapContractsEdge";
        case ErrorKind::NonpositiveLength: return "NonpositiveLength";
        case ErrorKind::ProfileSumMismatch: return "ProfileSumMismatch";
        case ErrorKind::WrongProfile: return "WrongProfile";
        case ErrorKind::NonIntegralMultiplicity: return "NonIntegralMultiplicity";
        case ErrorKind::NotTrivalent: return "NotTrivalent";
        case ErrorKind::GenusCapExceeded: return "GenusCapExceeded";
        case ErrorKind::NonTrivalentModel: return "NonTrivalentModel";
        case ErrorKind::SingularSystem: return "SingularSystem";
        case ErrorKind::GenericityViolation: return "GenericityViolation";
        case ErrorKind::InconsistentClassMultiplicity: return "InconsistentClassMultiplicity";
        case ErrorKind::UsageError: return "UsageError";
        case ErrorKind::ParseError: return "ParseError";
    }
    return "Error";
}

}  // namespace tgw
