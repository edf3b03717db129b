#pragma once
// Distance kernels on the simplex: Aitchison's log-ratio distance and the
// Jensen-Shannon divergence (scaled by 2), plus one-against-many evaluation
// and the ternary contour-grid emitter.

#include <numbers>
#include <span>
#include <vector>

#include "simpute/composition.hpp"

namespace simpute {

enum class DistanceKind { aitchison, jsd };

const char* distance_kind_name(DistanceKind kind) noexcept;

// Upper bound of the doubled Jensen-Shannon divergence, attained on
// disjoint supports.
inline constexpr double kJsdUpperBound = 2.0 * std::numbers::ln2;

// Euclidean distance between the clr images of x and y. Natural logs.
// Requires strictly positive parts (zero_in_log_ratio otherwise).
double aitchison_distance(std::span<const double> x, std::span<const double> y);

// Doubled Jensen-Shannon divergence; zeros are handled by the 0*log(0) = 0
// convention. Symmetric, zero iff x == y, bounded by kJsdUpperBound.
double jsd(std::span<const double> x, std::span<const double> y);

// Same quantity through the symmetrized Kullback-Leibler route
// KL(x, M) + KL(y, M) with M = (x + y) / 2; kept as an independent
// cross-check of jsd().
double jsd_via_kld(std::span<const double> x, std::span<const double> y);

double distance(DistanceKind kind, std::span<const double> x,
                std::span<const double> y);

// Distances from `target` to each donor, order preserved. Kernel errors are
// rethrown with the donor position attached.
std::vector<double> distances_to_set(std::span<const double> target,
                                     std::span<const std::vector<double>> donors,
                                     DistanceKind kind);

struct ContourPoint {
  double a, b, c;   // barycentric coordinates on the 2-simplex
  double distance;  // distance from the grid center
};

// Uniform barycentric lattice of (resolution+1)(resolution+2)/2 points with
// the distance of each point from `center`. When the center itself is not a
// lattice point it is prepended as an extra row so the zero-distance
// reference is always present. Aitchison grids skip boundary points.
std::vector<ContourPoint> contour_grid(const Composition& center,
                                       int resolution, DistanceKind kind);

}  // namespace simpute
