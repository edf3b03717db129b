#pragma once
// Points on the simplex: vectors of non-negative parts summing to one.

#include <span>
#include <vector>

#include "simpute/error.hpp"

namespace simpute {

inline constexpr double kClosureTol = 1e-9;

// Normalizes `raw` by its sum. Throws negative_value on any negative entry,
// degenerate_input when the sum is not positive.
std::vector<double> closure(std::span<const double> raw);

// Sum of a vector that must be non-negative throughout; shared validation
// for closure and the table ingestion policy.
double checked_non_negative_sum(std::span<const double> v);

class Composition {
 public:
  // Closes `raw` onto the simplex.
  static Composition close(std::span<const double> raw) {
    return Composition(closure(raw));
  }
  static Composition close(std::initializer_list<double> raw) {
    return close(std::span<const double>(raw.begin(), raw.size()));
  }

  std::size_t size() const noexcept { return parts_.size(); }
  double operator[](std::size_t i) const { return parts_[i]; }
  std::span<const double> parts() const noexcept { return parts_; }
  const std::vector<double>& values() const noexcept { return parts_; }

  friend bool operator==(const Composition& a, const Composition& b) {
    return a.parts_ == b.parts_;
  }

 private:
  explicit Composition(std::vector<double> parts) : parts_(std::move(parts)) {}
  std::vector<double> parts_;
};

}  // namespace simpute
