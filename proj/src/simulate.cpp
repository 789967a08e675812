#include "polyflow/simulate.hpp"

#include <algorithm>
#include <cmath>

#include "polyflow/error.hpp"

namespace polyflow {

namespace {

constexpr double kStepCapFraction = 0.05;

std::vector<Point> axpy(std::span<const Point> z, double h, const VelocityField& k) {
  std::vector<Point> out(z.begin(), z.end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += h * k[i];
  return out;
}

double max_speed(const VelocityField& v) {
  double best = 0.0;
  for (const auto& vi : v) best = std::max(best, std::abs(vi));
  return best;
}

}  // namespace

void SimConfig::validate() const {
  if (!(dt > 0.0)) throw Error(ErrorCode::InvalidArgument, "dt must be positive");
  if (!(t_end > 0.0)) throw Error(ErrorCode::InvalidArgument, "t_end must be positive");
  if (!(stop_diameter >= 0.0)) throw Error(ErrorCode::InvalidArgument, "stop_diameter must be >= 0");
  if (!(min_edge_capture >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "min_edge_capture must be >= 0");
  }
  if (record_every == 0) throw Error(ErrorCode::InvalidArgument, "record_every must be >= 1");
}

SimConfig default_config(FlowKind kind, double initial_diameter) {
  SimConfig cfg;
  cfg.dt = 1e-3;
  cfg.stop_diameter = 1e-6;
  cfg.adaptive = kind != FlowKind::Linear;
  cfg.min_edge_capture = kind == FlowKind::Bisector ? 1e-6 * initial_diameter : 0.0;
  return cfg;
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::TEnd: return "T_END";
    case Termination::Collapsed: return "COLLAPSED";
    case Termination::Capture: return "CAPTURE";
    case Termination::Degenerate: return "DEGENERATE";
  }
  return "UNKNOWN";
}

std::optional<Termination> termination_from_string(std::string_view s) {
  for (auto t : {Termination::TEnd, Termination::Collapsed, Termination::Capture,
                 Termination::Degenerate}) {
    if (to_string(t) == s) return t;
  }
  return std::nullopt;
}

SampleDiagnostics diagnose(const Polygon& poly) {
  const auto z = poly.vertices();
  const auto f = star_values(z);
  const auto h = convex_values(z);
  return SampleDiagnostics{perimeter(z), signed_area(z), *std::min_element(f.begin(), f.end()),
                           *std::min_element(h.begin(), h.end()), min_edge_length(z)};
}

void Trajectory::push(double t, Polygon state) {
  diagnostics.push_back(diagnose(state));
  times.push_back(t);
  states.push_back(std::move(state));
}

std::vector<Point> step_rk4(std::span<const Point> z, const FlowSpec& flow, double dt) {
  const VelocityField k1 = velocity(z, flow);
  const auto s2 = axpy(z, 0.5 * dt, k1);
  const VelocityField k2 = velocity(s2, flow);
  const auto s3 = axpy(z, 0.5 * dt, k2);
  const VelocityField k3 = velocity(s3, flow);
  const auto s4 = axpy(z, dt, k3);
  const VelocityField k4 = velocity(s4, flow);

  std::vector<Point> out(z.begin(), z.end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] += (dt / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return out;
}

Trajectory run(const Polygon& initial, const FlowSpec& flow, const SimConfig& cfg) {
  cfg.validate();
  const bool capped = cfg.adaptive && flow.kind() != FlowKind::Linear;
  const bool watch_capture = flow.kind() == FlowKind::Bisector && cfg.min_edge_capture > 0.0;

  Trajectory traj;
  traj.push(0.0, initial);

  auto halted = [&](const Polygon& p, double t) -> std::optional<Termination> {
    if (diameter(p) < cfg.stop_diameter) return Termination::Collapsed;
    if (watch_capture && min_edge_length(p) < cfg.min_edge_capture) return Termination::Capture;
    if (t >= cfg.t_end) return Termination::TEnd;
    return std::nullopt;
  };

  if (auto reason = halted(initial, 0.0)) {
    traj.termination = *reason;
    return traj;
  }

  Polygon state = initial;
  double t = 0.0;
  std::size_t steps = 0;
  while (true) {
    double t_next = 0.0;
    if (capped) {
      double h = cfg.dt;
      try {
        const double vmax = max_speed(velocity(state, flow));
        if (vmax > 0.0) h = std::min(h, kStepCapFraction * min_edge_length(state) / vmax);
      } catch (const Error&) {
        traj.termination = Termination::Degenerate;
        break;
      }
      t_next = std::min(t + h, cfg.t_end);
    } else {
      t_next = std::min(static_cast<double>(steps + 1) * cfg.dt, cfg.t_end);
    }
    if (!(t_next > t)) {
      traj.termination = Termination::Degenerate;
      break;
    }

    std::optional<Polygon> next;
    try {
      next.emplace(step_rk4(state, flow, t_next - t));
    } catch (const Error&) {
      traj.termination = Termination::Degenerate;
      break;
    }
    state = std::move(*next);
    t = t_next;
    ++steps;

    const auto reason = halted(state, t);
    if (reason || steps % cfg.record_every == 0) traj.push(t, state);
    if (reason) {
      traj.termination = *reason;
      return traj;
    }
  }

  // Degenerate exit: make sure the last good state is on record.
  if (traj.times.back() != t) traj.push(t, state);
  return traj;
}

std::optional<double> detect_first(const Trajectory& traj, EventKind event) {
  if (traj.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "event detection needs at least two samples");
  }
  switch (event) {
    case EventKind::BecomesStrictlyConvex:
      for (std::size_t k = 1; k < traj.size(); ++k) {
        if (classify_convexity(traj.states[k]).tag == ConvexityTag::StrictlyConvex) {
          return traj.times[k];
        }
      }
      return std::nullopt;
    case EventKind::LosesSimplicity:
      for (std::size_t k = 0; k < traj.size(); ++k) {
        if (!is_simple(traj.states[k])) return traj.times[k];
      }
      return std::nullopt;
    case EventKind::AreaIncreasing:
      for (std::size_t k = 0; k + 1 < traj.size(); ++k) {
        if (std::abs(traj.diagnostics[k + 1].signed_area) > std::abs(traj.diagnostics[k].signed_area)) {
          return traj.times[k];
        }
      }
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace polyflow
