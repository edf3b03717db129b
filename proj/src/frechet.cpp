#include "simpute/frechet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "simpute/composition.hpp"

namespace simpute {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// closure(exp(l)) computed without leaving log space; -inf entries map to 0.
std::vector<double> closed_exp(const std::vector<double>& l) {
  const double hi = *std::max_element(l.begin(), l.end());
  if (hi == kNegInf)
    fail(errc::degenerate_input, "all parts vanished in the power mean");
  double norm = 0.0;
  for (double v : l) norm += std::exp(v - hi);
  norm = hi + std::log(norm);
  std::vector<double> out(l.size());
  for (std::size_t j = 0; j < l.size(); ++j)
    out[j] = l[j] == kNegInf ? 0.0 : std::exp(l[j] - norm);
  return out;
}

void check_rows(std::span<const std::vector<double>> rows, bool* zeros_present) {
  if (rows.empty()) fail(errc::empty_input, "mean of an empty set of rows");
  const std::size_t d = rows.front().size();
  if (d == 0) fail(errc::degenerate_input, "zero-length rows");
  *zeros_present = false;
  for (const auto& row : rows) {
    if (row.size() != d)
      fail(errc::dimension_mismatch, "rows of unequal length");
    for (double v : row) {
      if (!(v >= 0.0))
        fail(errc::negative_value, "negative part in a composition row");
      if (v == 0.0) *zeros_present = true;
    }
  }
}

std::vector<double> closed_geometric_mean(
    std::span<const std::vector<double>> rows, bool zeros_present,
    WarningLog* warnings) {
  const std::size_t d = rows.front().size();
  const double n = static_cast<double>(rows.size());
  if (zeros_present)
    warn(warnings, "geometric_undefined",
         "geometric mean with zero parts: affected parts set to zero");
  std::vector<double> log_mean(d, 0.0);
  for (const auto& row : rows)
    for (std::size_t j = 0; j < d; ++j) {
      if (log_mean[j] == kNegInf) continue;
      log_mean[j] = row[j] > 0.0 ? log_mean[j] + std::log(row[j]) / n : kNegInf;
    }
  return closed_exp(log_mean);
}

}  // namespace

std::vector<double> frechet_mean(std::span<const std::vector<double>> rows,
                                 Alpha alpha, WarningLog* warnings) {
  bool zeros_present = false;
  check_rows(rows, &zeros_present);
  const double a = alpha.value();
  const std::size_t d = rows.front().size();
  const double n = static_cast<double>(rows.size());

  if (a < 0.0 && zeros_present)
    fail(errc::alpha_zero_conflict,
         "negative alpha requires strictly positive parts");
  if (a == 0.0)
    return closed_geometric_mean(rows, zeros_present, warnings);
  if (a == 1.0) {
    // Arithmetic-mean special case, kept free of log round-trips.
    std::vector<double> mean(d, 0.0);
    for (const auto& row : rows)
      for (std::size_t j = 0; j < d; ++j) mean[j] += row[j] / n;
    return closure(mean);
  }

  // Power-close each row in log space, average, then the 1/alpha power and
  // the final closure again in log space. This keeps tiny alphas (where the
  // linear-domain 1/alpha power underflows) and negative alphas stable.
  std::vector<double> mean(d, 0.0);
  std::vector<double> log_pow(d);
  for (const auto& row : rows) {
    for (std::size_t j = 0; j < d; ++j)
      log_pow[j] = row[j] > 0.0 ? a * std::log(row[j]) : kNegInf;
    const std::vector<double> t = closed_exp(log_pow);
    for (std::size_t j = 0; j < d; ++j) mean[j] += t[j] / n;
  }
  std::vector<double> log_mean(d);
  for (std::size_t j = 0; j < d; ++j)
    log_mean[j] = mean[j] > 0.0 ? std::log(mean[j]) / a : kNegInf;
  return closed_exp(log_mean);
}

std::vector<std::vector<double>> frechet_trajectory(
    std::span<const std::vector<double>> rows,
    std::span<const double> alpha_grid, WarningLog* warnings) {
  if (alpha_grid.empty())
    fail(errc::empty_input, "empty alpha grid for the trajectory");
  std::vector<std::vector<double>> path;
  path.reserve(alpha_grid.size());
  for (std::size_t g = 0; g < alpha_grid.size(); ++g) {
    try {
      path.push_back(frechet_mean(rows, Alpha(alpha_grid[g]), warnings));
    } catch (const Error& e) {
      fail(e.code(), std::string(e.what()) + " (alpha grid index " +
                         std::to_string(g) + ")");
    }
  }
  return path;
}

}  // namespace simpute
