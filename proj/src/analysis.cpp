#include "polyflow/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "json.hpp"

#include "polyflow/error.hpp"
#include "polyflow/spectral.hpp"

namespace polyflow {

namespace {

constexpr double kCollapsedPerimeterRatio = 1e-3;
constexpr double kEllipseSettleTau = 1.0;
constexpr double kEllipseTargetTau = 6.0;
constexpr double kEllipseTargetResidual = 1e-3;
constexpr double kEllipseNoiseFloor = 1e-12;

// tau = |lambda_2| t rounds, so a run ending at t = 6 / |lambda_2| can land a
// hair below 6.
bool reached_tau(std::size_t n, double t, double tau) {
  return normalized_time(n, t) >= tau * (1.0 - 1e-12);
}

// Records a per-sample margin and the first failing sample.
class ReportBuilder {
 public:
  explicit ReportBuilder(std::string name) {
    report_.check_name = std::move(name);
    report_.worst_margin = std::numeric_limits<double>::infinity();
  }

  void observe(double t, double margin, bool ok) {
    ++report_.samples_checked;
    report_.worst_margin = std::min(report_.worst_margin, margin);
    if (!ok && report_.passed) {
      report_.passed = false;
      report_.first_violation_time = t;
    }
  }

  CheckReport finish() {
    if (report_.samples_checked == 0) report_.worst_margin = 0.0;
    return std::move(report_);
  }

 private:
  CheckReport report_;
};

void require_samples(const Trajectory& traj) {
  if (traj.empty()) throw Error(ErrorCode::InvalidArgument, "empty trajectory");
}

// Strictly decreasing with a relative noise floor; the pair (k, k+1) is
// charged to time t_k.
CheckReport check_decreasing(const Trajectory& traj, std::string name,
                             double (*quantity)(const SampleDiagnostics&)) {
  ReportBuilder builder(std::move(name));
  for (std::size_t k = 0; k + 1 < traj.size(); ++k) {
    const double q0 = quantity(traj.diagnostics[k]);
    const double q1 = quantity(traj.diagnostics[k + 1]);
    const double margin = q0 > 0.0 ? (q0 - q1) / q0 : q0 - q1;
    builder.observe(traj.times[k], margin, q1 < q0 - kMonotoneSlack * q0);
  }
  return builder.finish();
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

double perimeter_rate(std::span<const Point> z, std::span<const Point> vel) {
  if (vel.size() != z.size()) {
    throw Error(ErrorCode::InvalidArgument, "velocity field size does not match the polygon");
  }
  const VelocityField d = bisector_direction(z);
  double rate = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    rate -= d[i].real() * vel[i].real() + d[i].imag() * vel[i].imag();
  }
  return rate;
}

CheckReport check_perimeter_monotone(const Trajectory& traj) {
  require_samples(traj);
  CheckReport report = check_decreasing(traj, "perimeter_monotone",
                                        [](const SampleDiagnostics& d) { return d.perimeter; });
  if (traj.termination == Termination::Collapsed &&
      !(traj.diagnostics.back().perimeter <
        kCollapsedPerimeterRatio * traj.diagnostics.front().perimeter)) {
    if (report.passed) {
      report.passed = false;
      report.first_violation_time = traj.times.back();
    }
  }
  return report;
}

CheckReport check_star_preservation(const Trajectory& traj) {
  require_samples(traj);
  const StarTag initial = classify_star(traj.states.front()).tag;
  if (initial == StarTag::NotStar) {
    throw Error(ErrorCode::PreconditionNotStar, "initial state is not a star formation");
  }
  const double orientation = initial == StarTag::CcwStar ? 1.0 : -1.0;
  ReportBuilder builder("star_preservation");
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const auto& poly = traj.states[k];
    const auto f = star_values(poly.vertices());
    const double d = diameter(poly);
    double margin = std::numeric_limits<double>::infinity();
    for (double fi : f) margin = std::min(margin, orientation * fi / (d * d));
    builder.observe(traj.times[k], margin, classify_star(poly).tag == initial);
  }
  return builder.finish();
}

CheckReport check_convexity_preservation(const Trajectory& traj) {
  require_samples(traj);
  const ConvexityTag initial = classify_convexity(traj.states.front()).tag;
  if (initial == ConvexityTag::NotConvex) {
    throw Error(ErrorCode::PreconditionNotConvex, "initial state is not convex");
  }
  ReportBuilder builder("convexity_preservation");
  for (std::size_t k = 0; k < traj.size(); ++k) {
    if (traj.times[k] <= 0.0) continue;
    const auto cls = classify_convexity(traj.states[k]);
    const double d = diameter(traj.states[k]);
    const double margin = *std::min_element(cls.h_values.begin(), cls.h_values.end()) / (d * d);
    builder.observe(traj.times[k], margin, cls.tag == ConvexityTag::StrictlyConvex);
  }
  return builder.finish();
}

CheckReport check_area_monotone(const Trajectory& traj) {
  require_samples(traj);
  for (std::size_t k = 0; k < traj.size(); ++k) {
    if (!is_simple(traj.states[k])) {
      throw Error(ErrorCode::NotSimple,
                  "sample at t=" + format_double(traj.times[k]) + " is self-intersecting");
    }
  }
  return check_decreasing(traj, "area_monotone",
                          [](const SampleDiagnostics& d) { return std::abs(d.signed_area); });
}

std::vector<std::pair<double, double>> ellipse_convergence_series(const Trajectory& traj) {
  require_samples(traj);
  const EllipseParams ellipse = limit_ellipse(decompose(traj.states.front()));
  std::vector<std::pair<double, double>> out;
  out.reserve(traj.size());
  for (std::size_t k = 0; k < traj.size(); ++k) {
    out.emplace_back(traj.times[k], ellipse_residual(traj.states[k], ellipse));
  }
  return out;
}

double normalized_time(std::size_t n, double t) {
  return std::abs(eigenvalues(n)[1]) * t;
}

CheckReport check_ellipse_convergence(const Trajectory& traj) {
  const auto series = ellipse_convergence_series(traj);
  const std::size_t n = traj.states.front().size();
  ReportBuilder builder("ellipse_convergence");
  bool checked_final = false;
  for (std::size_t k = 0; k + 1 < series.size(); ++k) {
    if (!reached_tau(n, series[k].first, kEllipseSettleTau)) continue;
    const double drop = series[k].second - series[k + 1].second;
    builder.observe(series[k + 1].first, drop, drop >= -kEllipseNoiseFloor);
  }
  for (const auto& [t, residual] : series) {
    if (checked_final || !reached_tau(n, t, kEllipseTargetTau)) continue;
    checked_final = true;
    if (!(residual < kEllipseTargetResidual)) builder.observe(t, residual, false);
  }
  return builder.finish();
}

std::string format_report_table(std::span<const CheckReport> reports) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%-32s %-6s %-14s %-14s %s\n", "check", "status",
                "first_violation", "worst_margin", "samples");
  out += line;
  for (const auto& r : reports) {
    const std::string when =
        r.first_violation_time ? format_double(*r.first_violation_time) : std::string("-");
    std::snprintf(line, sizeof line, "%-32s %-6s %-14s %-14s %zu\n", r.check_name.c_str(),
                  r.passed ? "PASS" : "FAIL", when.c_str(), format_double(r.worst_margin).c_str(),
                  r.samples_checked);
    out += line;
  }
  return out;
}

std::string reports_to_json(std::span<const CheckReport> reports) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    nlohmann::ordered_json entry;
    entry["check_name"] = r.check_name;
    entry["passed"] = r.passed;
    entry["first_violation_time"] =
        r.first_violation_time ? nlohmann::ordered_json(*r.first_violation_time) : nullptr;
    entry["worst_margin"] = std::isfinite(r.worst_margin) ? nlohmann::ordered_json(r.worst_margin)
                                                          : nlohmann::ordered_json(nullptr);
    entry["samples_checked"] = r.samples_checked;
    doc.push_back(std::move(entry));
  }
  return doc.dump(2) + "\n";
}

}  // namespace polyflow
