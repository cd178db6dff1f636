#pragma once

#include <stdexcept>
#include <string>

namespace onoff {

enum class ErrorCode {
  InvalidArgument,
  DegenerateInput,
  Precondition,
  DimensionMismatch,
  ContractViolation,
  MustReduce,
  ComplexityGuard,
  ImproperTransform,
  InfiniteMean,
  PrecisionFloor,
  TailSum,
  CertificateUnavailable,
  Undecidable,
  Parse,
};

const char* to_string(ErrorCode code);

/// Base exception for every failure raised by the library. The code lets
/// callers (the CLI in particular) map failures onto exit statuses.
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

inline void require(bool ok, ErrorCode code, const std::string& what) {
  if (!ok) fail(code, what);
}

}  // namespace onoff
