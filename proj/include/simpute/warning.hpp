#pragma once
// Structured warning records. Operations that make a policy decision (donor
// exclusion, fallback, re-closure of a noisy row) append one record here so
// callers can surface them in logs and reports.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace simpute {

struct Warning {
  std::string code;  // stable machine-readable tag, e.g. "donor_excluded"
  std::optional<std::size_t> row;
  std::optional<std::size_t> column;
  std::string message;
};

using WarningLog = std::vector<Warning>;

inline void warn(WarningLog* log, std::string code, std::string message,
                 std::optional<std::size_t> row = std::nullopt,
                 std::optional<std::size_t> column = std::nullopt) {
  if (log == nullptr) return;
  log->push_back(Warning{std::move(code), row, column, std::move(message)});
}

}  // namespace simpute
