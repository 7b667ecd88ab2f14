#pragma once

#include <stdexcept>
#include <string>

namespace evc {

enum class ErrorCode {
  InvalidFocal,
  InvalidWeight,
  InvalidMass,
  FrameMismatch,
  TotalConflict,
  EmptyInput,
  DegenerateMass,
  InvalidFrame,
  InvalidParams,
  Shape,
  InvalidEvidence,
  Numeric,
  UnsupportedScale,
  EmptyResponse,
  InvalidKappa,
  IdOutOfRange,
  DegenerateLabels,
  Io,
  BadMagic,
  BadVersion,
  Truncated,
  TrailingData,
  NonFinite,
  InvalidTag,
  InvalidConfig,
  Parse,
  Internal,
};

/// Stable kebab-case name used in CLI diagnostics, e.g. "bad-magic".
const char* error_name(ErrorCode code);

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

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace evc
