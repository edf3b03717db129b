#pragma once
// Error codes and the exception type shared by the core library and the C API.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace simpute {

enum class errc {
  ok = 0,
  invalid_argument,
  degenerate_input,
  negative_value,
  dimension_mismatch,
  zero_in_log_ratio,
  insufficient_donors,
  no_donors,
  degenerate_row,
  missing_set_empty,
  inconsistent_row,
  alpha_zero_conflict,
  empty_input,
  cv_infeasible,
  metric_zero_conflict,
  parse_error,
  io_error,
  invalid_resolution,
  too_few_rows,
  degenerate_spec,
  internal,
};

const char* errc_name(errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(errc code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}
  Error(errc code, std::string message, std::size_t row)
      : std::runtime_error(std::move(message)), code_(code), row_(row) {}

  errc code() const noexcept { return code_; }
  const std::optional<std::size_t>& row() const noexcept { return row_; }

 private:
  errc code_;
  std::optional<std::size_t> row_;
};

[[noreturn]] inline void fail(errc code, std::string message) {
  throw Error(code, std::move(message));
}

[[noreturn]] inline void fail(errc code, std::string message, std::size_t row) {
  throw Error(code, std::move(message), row);
}

}  // namespace simpute
