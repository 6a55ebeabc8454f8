#pragma once

#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "operator.hpp"

namespace ulab {

inline constexpr double kCollisionRelativeTolerance = 1e-6;
inline constexpr double kTargetClearance = 1e-8;
inline constexpr double kClosureTolerance = 1e-10;

struct SampleCloud {
    std::vector<std::pair<Complex, Complex>> points;  // (z, F(z))
    double radius = 0.0;
    std::size_t skipped = 0;  // flagged values left out
};

struct Collision {
    std::size_t i = 0, j = 0;  // i < j, lexicographically first
    Complex z1, z2, w1, w2;
};

/// F on radii r_max*j/n_radii (j = 1..n_radii) times n_angles angles, ray by ray.
/// Branch-flagged values are dropped and counted.
SampleCloud operator_cloud(const ParameterSet& p, const Functions& fns, const QuadratureConfig& q,
                           std::size_t n_radii, std::size_t n_angles, double r_max);

/// 1e-6 times the diameter of the value bounding box (at least 1e-300).
double default_collision_tolerance(const SampleCloud& cloud);

/// First pair (in index order) with |w_i - w_j| < tol and |z_i - z_j| > 10 tol.
/// Grid hashing on the values; identical to the exhaustive O(n^2) answer.
std::optional<Collision> injectivity_scan(const SampleCloud& cloud, double tol);

/// Winding number of the closed polyline (last point joined to the first)
/// by summed principal argument increments. Throws UndersampledPath when an
/// increment is too close to +-pi to pick a sheet, and Inconclusive when the
/// target lies within `clearance` of the curve.
int winding_number(std::span<const Complex> curve, Complex target, double clearance = kTargetClearance);

/// Winding numbers for each target; the curve must be closed within 1e-10.
std::vector<int> argument_principle_windings(std::span<const Complex> curve, std::span<const Complex> targets,
                                             double clearance = kTargetClearance);

/// True iff every target has winding number exactly 1.
bool argument_principle_check(std::span<const Complex> curve, std::span<const Complex> targets,
                              double clearance = kTargetClearance);

/// Samples theta -> curve(theta) on [0, 2pi] (closed: first point repeated at
/// the end), doubling from `initial` points until every argument increment
/// seen from every target is below pi/2, up to `max_points`.
std::vector<Complex> sample_closed_curve(const std::function<Complex(double)>& curve,
                                         std::span<const Complex> targets, std::size_t initial = 256,
                                         std::size_t max_points = 1 << 16);

}  // namespace ulab
