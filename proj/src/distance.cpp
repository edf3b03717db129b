#include "simpute/distance.hpp"

#include <cmath>
#include <string>

namespace simpute {

const char* distance_kind_name(DistanceKind kind) noexcept {
  return kind == DistanceKind::aitchison ? "aitchison" : "jsd";
}

double aitchison_distance(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    fail(errc::dimension_mismatch, "compositions of unequal length");
  if (x.empty()) fail(errc::degenerate_input, "empty composition");
  const std::size_t d = x.size();
  double mean_lx = 0.0, mean_ly = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    if (!(x[j] > 0.0) || !(y[j] > 0.0))
      fail(errc::zero_in_log_ratio,
           "log-ratio distance needs strictly positive parts (component " +
               std::to_string(j) + ")");
    mean_lx += std::log(x[j]);
    mean_ly += std::log(y[j]);
  }
  mean_lx /= static_cast<double>(d);
  mean_ly /= static_cast<double>(d);
  double acc = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    const double t = (std::log(x[j]) - mean_lx) - (std::log(y[j]) - mean_ly);
    acc += t * t;
  }
  return std::sqrt(acc);
}

double jsd(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    fail(errc::dimension_mismatch, "compositions of unequal length");
  double acc = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double a = x[j], b = y[j];
    const double s = a + b;
    // 0*log(0) = 0 by explicit branch; a shared zero contributes nothing.
    if (a > 0.0) acc += a * std::log(2.0 * a / s);
    if (b > 0.0) acc += b * std::log(2.0 * b / s);
  }
  return acc < 0.0 ? 0.0 : acc;
}

double jsd_via_kld(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    fail(errc::dimension_mismatch, "compositions of unequal length");
  double acc = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double m = 0.5 * (x[j] + y[j]);
    if (x[j] > 0.0) acc += x[j] * std::log(x[j] / m);
    if (y[j] > 0.0) acc += y[j] * std::log(y[j] / m);
  }
  return acc < 0.0 ? 0.0 : acc;
}

double distance(DistanceKind kind, std::span<const double> x,
                std::span<const double> y) {
  return kind == DistanceKind::aitchison ? aitchison_distance(x, y) : jsd(x, y);
}

std::vector<double> distances_to_set(std::span<const double> target,
                                     std::span<const std::vector<double>> donors,
                                     DistanceKind kind) {
  std::vector<double> out;
  out.reserve(donors.size());
  for (std::size_t i = 0; i < donors.size(); ++i) {
    try {
      out.push_back(distance(kind, target, donors[i]));
    } catch (const Error& e) {
      fail(e.code(),
           std::string(e.what()) + " (donor " + std::to_string(i) + ")", i);
    }
  }
  return out;
}

std::vector<ContourPoint> contour_grid(const Composition& center,
                                       int resolution, DistanceKind kind) {
  if (center.size() != 3)
    fail(errc::invalid_argument, "contour grid is defined on the 2-simplex");
  if (resolution < 2)
    fail(errc::invalid_resolution, "contour resolution must be at least 2");

  const auto c = center.parts();
  std::vector<ContourPoint> grid;
  grid.reserve(static_cast<std::size_t>(resolution + 1) * (resolution + 2) / 2 +
               1);

  const double r = static_cast<double>(resolution);
  bool center_on_lattice = false;
  for (int i = 0; i <= resolution; ++i) {
    for (int j = 0; j + i <= resolution; ++j) {
      const int k = resolution - i - j;
      const double p[3] = {i / r, j / r, k / r};
      if (kind == DistanceKind::aitchison && (i == 0 || j == 0 || k == 0))
        continue;  // boundary points have zero parts
      const double dist = distance(kind, p, c);
      if (p[0] == c[0] && p[1] == c[1] && p[2] == c[2])
        center_on_lattice = true;
      grid.push_back({p[0], p[1], p[2], dist});
    }
  }
  if (!center_on_lattice)
    grid.insert(grid.begin(), {c[0], c[1], c[2], 0.0});
  return grid;
}

}  // namespace simpute
