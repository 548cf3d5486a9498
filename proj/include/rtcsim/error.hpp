#pragma once

#include <stdexcept>
#include <string>

namespace rtcsim {

enum class ErrorCode {
  kIllegalCommand = 1,
  kOutOfRange,
  kAmbiguousConfigRequest,
  kZeroRefreshRows,
  kPositionOutOfProgram,
  kFootprintExceedsCapacity,
  kNotAffineRepresentable,
  kUnknownKind,
  kConfigInvalid,
  kWorkloadInfeasible,
  kAxisMismatch,
  kTraceMismatch,
  kIo,
};

const char* error_code_name(ErrorCode code);

// Every recoverable failure in the library surfaces as this exception; the C
// API maps `code()` onto its integer status codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace rtcsim
