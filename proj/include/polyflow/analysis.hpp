#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "polyflow/flows.hpp"
#include "polyflow/simulate.hpp"

namespace polyflow {

/// Per-step slack for the monotonicity checks, relative to the quantity's
/// current value. A step must shrink the quantity by more than this.
inline constexpr double kMonotoneSlack = 1e-12;

struct CheckReport {
  std::string check_name;
  bool passed = true;
  /// Time of the first sample at which the property fails; set iff !passed.
  std::optional<double> first_violation_time;
  /// Smallest observed margin; negative or zero where the property failed.
  double worst_margin = 0.0;
  std::size_t samples_checked = 0;

  friend bool operator==(const CheckReport&, const CheckReport&) = default;
};

/// dP/dt = -sum_i Re< unit(z_{i-1} - z_i) + unit(z_{i+1} - z_i), u_i >.
/// Throws Error(CoincidentVertices) on a zero-length edge.
double perimeter_rate(std::span<const Point> z, std::span<const Point> vel);
inline double perimeter_rate(const Polygon& p, std::span<const Point> vel) {
  return perimeter_rate(p.vertices(), vel);
}

/// Perimeter must drop by more than the slack between consecutive samples;
/// a COLLAPSED run must also end below 1e-3 of the initial perimeter.
/// Margin: relative per-sample decrease (P_k - P_{k+1}) / P_k.
CheckReport check_perimeter_monotone(const Trajectory& traj);

/// Every sample keeps the initial star class (CCW or CW). Margin: the
/// worst sign-corrected F_i over diameter^2. Throws
/// Error(PreconditionNotStar) if the initial state is not a star formation.
CheckReport check_star_preservation(const Trajectory& traj);

/// Every sample at t > 0 is strictly convex. Margin: worst H_i over
/// diameter^2 on the counterclockwise orientation. Throws
/// Error(PreconditionNotConvex) if the initial state is not convex.
CheckReport check_convexity_preservation(const Trajectory& traj);

/// |area| must drop by more than the slack between consecutive samples.
/// Throws Error(NotSimple) if any sample is self-intersecting.
CheckReport check_area_monotone(const Trajectory& traj);

/// (t, residual) per sample: the normalized shape against the limit ellipse
/// of the initial state. Throws Error(DegenerateLeadingMode).
std::vector<std::pair<double, double>> ellipse_convergence_series(const Trajectory& traj);

/// Normalized time tau = |lambda_2| t, in units of the slowest time constant.
double normalized_time(std::size_t n, double t);

/// Residual series must not grow (beyond 1e-12) between samples with
/// tau >= 1, and the first sample with tau >= 6, if any, must be below 1e-3.
/// Margin: smallest residual drop between consecutive samples with tau >= 1.
CheckReport check_ellipse_convergence(const Trajectory& traj);

/// Column table: name, status, first violation, worst margin, samples.
std::string format_report_table(std::span<const CheckReport> reports);
/// JSON array of {check_name, passed, first_violation_time, worst_margin,
/// samples_checked}; first_violation_time is null when the check passed.
std::string reports_to_json(std::span<const CheckReport> reports);

}  // namespace polyflow
