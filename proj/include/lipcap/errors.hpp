#pragma once

#include <stdexcept>
#include <string>

namespace lipcap {

enum class ErrorCode {
  DepthTooLarge,
  ShapeOutsideRoot,
  BetaOutOfRange,
  GaugeInvalid,
  EmptySet,
  NonpositiveT,
  GridInvalid,
  TooCloseToSupport,
  ChiMismatchOnSupport,
  BInSupport,
  PhiDomainMismatch,
  GridTooCoarse,
  NotACover,
  SquareTooLarge,
  DepthInsufficient,
  NotDivergent,
  InvalidDomain,
  BadInput,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace lipcap
