#include "polyflow/flows.hpp"

#include <cmath>
#include <string>

#include "polyflow/error.hpp"

namespace polyflow {

namespace {

// Anti-parallel edges make the bisector sum cancel; below this magnitude the
// direction is treated as undefined and the velocity is zero.
constexpr double kBisectorCancelTol = 1e-12;

Point unit_edge(Point from, Point to, std::size_t index) {
  const Point e = to - from;
  const double len = std::abs(e);
  if (len == 0.0) {
    throw Error(ErrorCode::CoincidentVertices,
                "zero-length edge at vertex " + std::to_string(index));
  }
  return e / len;
}

}  // namespace

FlowSpec FlowSpec::bisector(BisectorSpeedMode mode, double speed) {
  if (!(speed > 0.0) || !std::isfinite(speed)) {
    throw Error(ErrorCode::InvalidArgument, "bisector speed must be positive and finite");
  }
  return FlowSpec(FlowKind::Bisector, BisectorParams{mode, speed});
}

VelocityField linear_velocity(std::span<const Point> z) {
  const std::size_t n = z.size();
  VelocityField v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = 0.5 * (z[(i + 1) % n] - z[i]) + 0.5 * (z[(i + n - 1) % n] - z[i]);
  }
  return v;
}

VelocityField menger_melnikov_velocity(std::span<const Point> z) {
  const std::size_t n = z.size();
  VelocityField v(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Point prev = z[(i + n - 1) % n];
    const Point next = z[(i + 1) % n];
    if (prev == z[i] || next == z[i] || prev == next) {
      throw Error(ErrorCode::DegenerateTriple,
                  "coincident points in the triple at vertex " + std::to_string(i));
    }
    const auto circle = circumcircle(prev, z[i], next);
    if (!circle) {
      v[i] = Point{0.0, 0.0};
      continue;
    }
    v[i] = (circle->center - z[i]) / (circle->radius * circle->radius);
  }
  return v;
}

VelocityField bisector_direction(std::span<const Point> z) {
  const std::size_t n = z.size();
  VelocityField d(n);
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = unit_edge(z[i], z[(i + n - 1) % n], i) + unit_edge(z[i], z[(i + 1) % n], i);
  }
  return d;
}

VelocityField bisector_velocity(std::span<const Point> z, const FlowSpec& spec) {
  if (spec.kind() != FlowKind::Bisector) {
    throw Error(ErrorCode::InvalidArgument, "bisector_velocity needs a bisector flow spec");
  }
  const BisectorParams params = *spec.bisector_params();
  VelocityField u = bisector_direction(z);
  for (auto& ui : u) {
    if (params.mode == BisectorSpeedMode::NormMatched) {
      ui *= 0.5;
      continue;
    }
    const double mag = std::abs(ui);
    ui = mag <= kBisectorCancelTol ? Point{0.0, 0.0} : ui * (params.speed / mag);
  }
  return u;
}

VelocityField velocity(std::span<const Point> z, const FlowSpec& spec) {
  switch (spec.kind()) {
    case FlowKind::Linear: return linear_velocity(z);
    case FlowKind::MengerMelnikov: return menger_melnikov_velocity(z);
    case FlowKind::Bisector: return bisector_velocity(z, spec);
  }
  return {};
}

}  // namespace polyflow
