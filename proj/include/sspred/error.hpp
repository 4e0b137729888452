#pragma once

#include <stdexcept>
#include <string>

namespace sspred {

// Stable error categories; the CLI prints the token so scripts can match on it.
enum class ErrorCode {
  dim_mismatch,
  not_spd,
  nonfinite_value,
  degenerate_variance,
  insufficient_data,
  nonstationary_ar,
  invalid_argument,
  parse_error,
  io_error,
};

const char* error_code_token(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  const char* token() const noexcept { return error_code_token(code_); }

 private:
  ErrorCode code_;
};

}  // namespace sspred
