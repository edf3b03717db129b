#pragma once
// Power-transform Frechet mean on the simplex. alpha = 1 is the arithmetic
// mean, alpha -> 0 the closed geometric mean; negative alpha requires
// strictly positive data.

#include <span>
#include <vector>

#include "simpute/error.hpp"
#include "simpute/warning.hpp"

namespace simpute {

// Hyper-parameter of the power mean; valid range [-1, 1], and restricted to
// [0, 1] whenever the data contain zero parts (enforced at evaluation).
class Alpha {
 public:
  explicit Alpha(double value) : value_(value) {
    if (!(value >= -1.0 && value <= 1.0))
      fail(errc::invalid_argument, "alpha must lie in [-1, 1]");
  }
  double value() const noexcept { return value_; }

 private:
  double value_;
};

// Frechet mean of closed rows. For alpha != 0 each row is power-closed,
// the transformed rows averaged, and the average taken back through the
// 1/alpha power (in log space) and re-closed. alpha == 0 dispatches to the
// closed geometric mean; with zero parts present that mean zeroes the
// affected parts and records a "geometric_undefined" warning.
std::vector<double> frechet_mean(std::span<const std::vector<double>> rows,
                                 Alpha alpha, WarningLog* warnings = nullptr);

// One mean per grid value, order preserved. Errors gain the grid index.
std::vector<std::vector<double>> frechet_trajectory(
    std::span<const std::vector<double>> rows, std::span<const double> alpha_grid,
    WarningLog* warnings = nullptr);

}  // namespace simpute
