#include "lipcap/errors.hpp"

namespace lipcap {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DepthTooLarge: return "DepthTooLarge";
    case ErrorCode::ShapeOutsideRoot: return "ShapeOutsideRoot";
    case ErrorCode::BetaOutOfRange: return "BetaOutOfRange";
    case ErrorCode::GaugeInvalid: return "GaugeInvalid";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::NonpositiveT: return "NonpositiveT";
    case ErrorCode::GridInvalid: return "GridInvalid";
    case ErrorCode::TooCloseToSupport: return "TooCloseToSupport";
    case ErrorCode::ChiMismatchOnSupport: return "ChiMismatchOnSupport";
    case ErrorCode::BInSupport: return "BInSupport";
    case ErrorCode::PhiDomainMismatch: return "PhiDomainMismatch";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::NotACover: return "NotACover";
    case ErrorCode::SquareTooLarge: return "SquareTooLarge";
    case ErrorCode::DepthInsufficient: return "DepthInsufficient";
    case ErrorCode::NotDivergent: return "NotDivergent";
    case ErrorCode::InvalidDomain: return "InvalidDomain";
    case ErrorCode::BadInput: return "BadInput";
  }
  return "Unknown";
}

void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace lipcap
