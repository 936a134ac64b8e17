#pragma once

#include <stdexcept>
#include <string>

namespace wignerlab {

enum class ErrorCode {
  DuplicateLabel,
  InvalidLabel,
  DimTooSmall,
  TooLarge,
  ZeroVector,
  LengthMismatch,
  LabelClash,
  NotUnitary,
  NotHermitian,
  UnknownTarget,
  NothingKept,
  NothingDiscarded,
  ProbabilitySumInvalid,
  RegisterMismatch,
  BasisMismatch,
  PolicyHasNoOutcomes,
  InvalidScenario,
  MissingAgent,
  IoError,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace wignerlab
