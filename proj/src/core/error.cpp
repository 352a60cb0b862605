#include "splinemod/error.hpp"

namespace splinemod {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidModulus: return "InvalidModulus";
    case ErrorCode::UnknownVertex: return "UnknownVertex";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NotAnExtension: return "NotAnExtension";
    case ErrorCode::NotADivisor: return "NotADivisor";
    case ErrorCode::NotSingleLabel: return "NotSingleLabel";
    case ErrorCode::NotConnected: return "NotConnected";
    case ErrorCode::NotPowerFamily: return "NotPowerFamily";
    case ErrorCode::RotationRequired: return "RotationRequired";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::InfeasibleParameters: return "InfeasibleParameters";
    case ErrorCode::NotACycle: return "NotACycle";
    case ErrorCode::NoTheoremApplies: return "NoTheoremApplies";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::NotAGroup: return "NotAGroup";
    case ErrorCode::NonCoprimeModuli: return "NonCoprimeModuli";
    case ErrorCode::IntegerMode: return "IntegerMode";
    case ErrorCode::InternalInconsistency: return "InternalInconsistency";
  }
  return "Unknown";
}

}  // namespace splinemod
