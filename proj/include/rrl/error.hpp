#pragma once

#include <stdexcept>
#include <string>

namespace rrl {

enum class ErrorCode {
  InvalidArgument = 1,
  PoleCollision,
  NonConvergent,
  DuplicatePole,
  DuplicateRoot,
  NotARoot,
  CapExceeded,
  ResonantGamma,
  InsufficientDepth,
  EvalFailure,
  UnknownRecipe,
  Parse,
  Io,
};

const char* error_name(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above; the C
// API maps them one-to-one onto rrl_status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool cond, const std::string& what) {
  if (!cond) fail(ErrorCode::InvalidArgument, what);
}

}  // namespace rrl
