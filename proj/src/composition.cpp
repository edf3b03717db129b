#include "simpute/composition.hpp"

#include <cmath>

namespace simpute {

double checked_non_negative_sum(std::span<const double> v) {
  double sum = 0.0;
  for (double x : v) {
    if (std::isnan(x))
      fail(errc::invalid_argument, "NaN entry in composition");
    if (x < 0.0) fail(errc::negative_value, "negative entry in composition");
    sum += x;
  }
  return sum;
}

std::vector<double> closure(std::span<const double> raw) {
  if (raw.empty()) fail(errc::degenerate_input, "closure of an empty vector");
  const double sum = checked_non_negative_sum(raw);
  if (!(sum > 0.0))
    fail(errc::degenerate_input, "closure of an all-zero vector");
  std::vector<double> out(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) out[i] = raw[i] / sum;
  return out;
}

}  // namespace simpute
