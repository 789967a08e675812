#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "polyflow/flows.hpp"
#include "polyflow/geometry.hpp"

namespace polyflow {

struct SimConfig {
  double dt = 1e-3;
  double t_end = 10.0;
  double stop_diameter = 1e-6;
  std::size_t record_every = 1;
  /// Cap the step so that max|v| * dt <= 0.05 * min edge length. Applies to
  /// the Menger-Melnikov and bisector flows; the linear flow is always
  /// integrated with the fixed step.
  bool adaptive = false;
  /// Bisector flow halts once an edge is shorter than this. Ignored for
  /// the other flows.
  double min_edge_capture = 0.0;

  /// Throws Error(InvalidArgument) on dt <= 0, t_end <= 0, negative
  /// thresholds or record_every == 0.
  void validate() const;
};

/// Defaults for a flow on a polygon of the given diameter; the capture
/// threshold scales with the diameter for the bisector flow.
SimConfig default_config(FlowKind kind, double initial_diameter);

enum class Termination { TEnd, Collapsed, Capture, Degenerate };

std::string_view to_string(Termination t);
std::optional<Termination> termination_from_string(std::string_view s);

struct SampleDiagnostics {
  double perimeter = 0.0;
  double signed_area = 0.0;
  double min_f = 0.0;  // min_i F_i about the centroid
  double min_h = 0.0;  // min_i H_i, raw numbering
  double min_edge = 0.0;

  friend bool operator==(const SampleDiagnostics&, const SampleDiagnostics&) = default;
};

SampleDiagnostics diagnose(const Polygon& poly);

struct Trajectory {
  std::vector<double> times;
  std::vector<Polygon> states;
  std::vector<SampleDiagnostics> diagnostics;
  Termination termination = Termination::TEnd;

  std::size_t size() const noexcept { return times.size(); }
  bool empty() const noexcept { return times.empty(); }
  /// Appends a sample and its diagnostics.
  void push(double t, Polygon state);

  friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

/// One classical fourth-order Runge-Kutta step of the flow. Propagates flow
/// errors (DegenerateTriple, CoincidentVertices) from any stage.
std::vector<Point> step_rk4(std::span<const Point> z, const FlowSpec& flow, double dt);
inline std::vector<Point> step_rk4(const Polygon& p, const FlowSpec& flow, double dt) {
  return step_rk4(p.vertices(), flow, dt);
}

/// Integrates until t_end, collapse below stop_diameter, capture (bisector
/// only) or a degeneracy. The initial state, every record_every-th accepted
/// step and the final state are recorded.
Trajectory run(const Polygon& initial, const FlowSpec& flow, const SimConfig& cfg);

enum class EventKind { BecomesStrictlyConvex, LosesSimplicity, AreaIncreasing };

/// First recorded time at which the event holds, at sample resolution.
/// AreaIncreasing compares |area| at consecutive samples and reports the
/// earlier time of the first increasing pair. Throws for fewer than 2 samples.
std::optional<double> detect_first(const Trajectory& traj, EventKind event);

}  // namespace polyflow
