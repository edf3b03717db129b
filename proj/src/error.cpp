#include "simpute/error.hpp"

namespace simpute {

const char* errc_name(errc code) noexcept {
  switch (code) {
    case errc::ok: return "ok";
    case errc::invalid_argument: return "invalid_argument";
    case errc::degenerate_input: return "degenerate_input";
    case errc::negative_value: return "negative_value";
    case errc::dimension_mismatch: return "dimension_mismatch";
    case errc::zero_in_log_ratio: return "zero_in_log_ratio";
    case errc::insufficient_donors: return "insufficient_donors";
    case errc::no_donors: return "no_donors";
    case errc::degenerate_row: return "degenerate_row";
    case errc::missing_set_empty: return "missing_set_empty";
    case errc::inconsistent_row: return "inconsistent_row";
    case errc::alpha_zero_conflict: return "alpha_zero_conflict";
    case errc::empty_input: return "empty_input";
    case errc::cv_infeasible: return "cv_infeasible";
    case errc::metric_zero_conflict: return "metric_zero_conflict";
    case errc::parse_error: return "parse_error";
    case errc::io_error: return "io_error";
    case errc::invalid_resolution: return "invalid_resolution";
    case errc::too_few_rows: return "too_few_rows";
    case errc::degenerate_spec: return "degenerate_spec";
    case errc::internal: return "internal";
  }
  return "unknown";
}

}  // namespace simpute
