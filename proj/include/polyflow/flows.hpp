#pragma once

#include <optional>
#include <span>
#include <vector>

#include "polyflow/geometry.hpp"

namespace polyflow {

enum class FlowKind { Linear, MengerMelnikov, Bisector };

enum class BisectorSpeedMode {
  Unit,         // |u_i| = speed wherever the bisector is defined
  NormMatched,  // u_i = d_i / 2, comparable in size to the linear scheme
};

struct BisectorParams {
  BisectorSpeedMode mode = BisectorSpeedMode::Unit;
  double speed = 1.0;
  friend bool operator==(const BisectorParams&, const BisectorParams&) = default;
};

/// Which velocity field drives the polygon. Bisector parameters exist only
/// for the bisector flow.
class FlowSpec {
 public:
  static FlowSpec linear() { return FlowSpec(FlowKind::Linear, std::nullopt); }
  static FlowSpec menger_melnikov() { return FlowSpec(FlowKind::MengerMelnikov, std::nullopt); }
  /// Throws Error(InvalidArgument) unless speed > 0.
  static FlowSpec bisector(BisectorSpeedMode mode = BisectorSpeedMode::Unit, double speed = 1.0);

  FlowKind kind() const noexcept { return kind_; }
  const std::optional<BisectorParams>& bisector_params() const noexcept { return bisector_; }

  friend bool operator==(const FlowSpec&, const FlowSpec&) = default;

 private:
  FlowSpec(FlowKind kind, std::optional<BisectorParams> params) : kind_(kind), bisector_(params) {}

  FlowKind kind_;
  std::optional<BisectorParams> bisector_;
};

/// One velocity per vertex, aligned with the vertex order.
using VelocityField = std::vector<Point>;

/// zdot_i = (z_{i+1} + z_{i-1}) / 2 - z_i, i.e. A z with A = circ(-1, 1/2, 0, ..., 0, 1/2).
VelocityField linear_velocity(std::span<const Point> z);

/// zdot_i = (C_i - z_i) / R_i^2 for the circumcircle of (z_{i-1}, z_i, z_{i+1});
/// zero where the triple is collinear. Throws Error(DegenerateTriple) when
/// two points of a triple coincide exactly.
VelocityField menger_melnikov_velocity(std::span<const Point> z);

/// Steepest perimeter descent direction: the sum of the two unit edge
/// vectors leaving each vertex, scaled per the bisector parameters. Throws
/// Error(CoincidentVertices) on a zero-length edge.
VelocityField bisector_velocity(std::span<const Point> z, const FlowSpec& spec);

/// The unscaled bisector direction d_i (sum of unit edge vectors).
VelocityField bisector_direction(std::span<const Point> z);

/// Dispatch on spec.kind().
VelocityField velocity(std::span<const Point> z, const FlowSpec& spec);

inline VelocityField linear_velocity(const Polygon& p) { return linear_velocity(p.vertices()); }
inline VelocityField menger_melnikov_velocity(const Polygon& p) {
  return menger_melnikov_velocity(p.vertices());
}
inline VelocityField bisector_velocity(const Polygon& p, const FlowSpec& spec) {
  return bisector_velocity(p.vertices(), spec);
}
inline VelocityField velocity(const Polygon& p, const FlowSpec& spec) {
  return velocity(p.vertices(), spec);
}

}  // namespace polyflow
