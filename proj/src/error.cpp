#include "sspred/error.hpp"

namespace sspred {

const char* error_code_token(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::dim_mismatch:        return "E_DIM_MISMATCH";
    case ErrorCode::not_spd:             return "E_NOT_SPD";
    case ErrorCode::nonfinite_value:     return "E_NONFINITE";
    case ErrorCode::degenerate_variance: return "E_DEGENERATE_VARIANCE";
    case ErrorCode::insufficient_data:   return "E_INSUFFICIENT_DATA";
    case ErrorCode::nonstationary_ar:    return "E_NONSTATIONARY_AR";
    case ErrorCode::invalid_argument:    return "E_INVALID_ARGUMENT";
    case ErrorCode::parse_error:         return "E_PARSE";
    case ErrorCode::io_error:            return "E_IO";
  }
  return "E_UNKNOWN";
}

}  // namespace sspred
