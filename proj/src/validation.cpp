#include "polyflow/validation.hpp"

#include <cmath>
#include <limits>

#include "polyflow/error.hpp"
#include "polyflow/reproduce.hpp"
#include "polyflow/spectral.hpp"

namespace polyflow {

namespace {

enum Tag : std::uint64_t {
  kTagStar = 1,
  kTagConvex,
  kTagFlat,
  kTagEllipse,
  kTagOptimality,
  kTagCollinear,
  kTagOracle,
};

constexpr double kCollapseDiameter = 1e-4;
constexpr double kLongHorizon = 1e5;
constexpr double kOracleTolerance = 1e-6;
constexpr double kCollinearTolerance = 1e-9;
constexpr double kCentroidTolerance = 1e-9;
constexpr double kOptimalitySlack = 1e-12;
constexpr std::size_t kFieldsPerPolygon = 20;
constexpr double kBoomerangWindow = 0.05;

struct Member {
  CheckReport check;
  std::optional<CheckReport> perimeter;
  double drift = 0.0;
};

CheckReport failed(std::string name, double t = 0.0) {
  CheckReport r;
  r.check_name = std::move(name);
  r.passed = false;
  r.first_violation_time = t;
  r.worst_margin = 0.0;
  return r;
}

SimConfig linear_config(double t_end, double stop_diameter, std::size_t record_every) {
  SimConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = t_end;
  cfg.stop_diameter = stop_diameter;
  cfg.record_every = record_every;
  return cfg;
}

std::size_t draw_size(SplitMix64& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(rng.next() % (hi - lo + 1));
}

EnsembleResult combine(std::string name, std::vector<Member> members, bool with_perimeter) {
  std::vector<CheckReport> checks;
  std::vector<CheckReport> perims;
  EnsembleResult out;
  for (auto& m : members) {
    checks.push_back(std::move(m.check));
    if (m.perimeter) perims.push_back(std::move(*m.perimeter));
    out.max_centroid_drift = std::max(out.max_centroid_drift, m.drift);
  }
  out.check = aggregate(std::move(name), checks);
  if (with_perimeter) out.perimeter = aggregate("perimeter_monotone", perims);
  return out;
}

// Runs the linear flow and applies `check`; preconditions that fail on
// the generated polygon count as a failed member.
template <class Check>
Member linear_member(const Polygon& start, const SimConfig& cfg, const std::string& name,
                     Check check, bool with_perimeter) {
  Member m;
  const Trajectory traj = run(start, FlowSpec::linear(), cfg);
  try {
    m.check = check(traj);
  } catch (const Error&) {
    m.check = failed(name);
  }
  if (with_perimeter) m.perimeter = check_perimeter_monotone(traj);
  m.drift = centroid_drift(traj);
  return m;
}

}  // namespace

std::uint64_t member_seed(std::uint64_t suite_seed, std::uint64_t tag, std::size_t index) {
  SplitMix64 a(suite_seed);
  SplitMix64 b(a.next() ^ (tag * 0xD1B54A32D192ED03ull));
  SplitMix64 c(b.next() ^ (static_cast<std::uint64_t>(index) * 0xA0761D6478BD642Full));
  return c.next();
}

CheckReport aggregate(std::string name, const std::vector<CheckReport>& members) {
  CheckReport out;
  out.check_name = std::move(name);
  out.worst_margin = members.empty() ? 0.0 : std::numeric_limits<double>::infinity();
  for (const auto& m : members) {
    out.samples_checked += m.samples_checked;
    out.worst_margin = std::min(out.worst_margin, m.worst_margin);
    if (!m.passed && out.passed) {
      out.passed = false;
      out.first_violation_time = m.first_violation_time;
    }
  }
  return out;
}

double centroid_drift(const Trajectory& traj) {
  if (traj.empty()) return 0.0;
  const Point c0 = centroid(traj.states.front());
  const double d0 = diameter(traj.states.front());
  double worst = 0.0;
  for (const auto& s : traj.states) worst = std::max(worst, std::abs(centroid(s) - c0));
  return worst / d0;
}

EnsembleSizes ensemble_sizes(std::size_t n) {
  const auto at_least_one = [](std::size_t v) { return std::max<std::size_t>(v, 1); };
  return {at_least_one(n),     at_least_one(n),      at_least_one(n / 5),  at_least_one(n / 5),
          at_least_one(n / 2), at_least_one(n / 10), at_least_one(n / 5)};
}

EnsembleResult oracle_ensemble(std::size_t count, std::uint64_t seed, unsigned threads) {
  auto members = parallel_map<Member>(count, threads, [&](std::size_t i) {
    SplitMix64 rng(member_seed(seed, kTagOracle, i));
    const Polygon start =
        normalized_to_unit_diameter(generate({GeneratorKind::RandomPoints, 12}, rng.next()));
    const SpectralDecomposition decomp = decompose(start);
    const Trajectory traj = run(start, FlowSpec::linear(), linear_config(5.0, 0.0, 1));
    Member m;
    m.check.check_name = "oracle_equivalence";
    m.check.worst_margin = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < traj.size(); ++k) {
      const auto exact = closed_form_state(decomp, traj.times[k]);
      double err = 0.0;
      for (std::size_t j = 0; j < exact.size(); ++j) {
        const Point diff = traj.states[k][static_cast<std::ptrdiff_t>(j)] - exact[j];
        err = std::max({err, std::abs(diff.real()), std::abs(diff.imag())});
      }
      const double margin = kOracleTolerance - err;
      ++m.check.samples_checked;
      m.check.worst_margin = std::min(m.check.worst_margin, margin);
      if (margin < 0.0 && m.check.passed) {
        m.check.passed = false;
        m.check.first_violation_time = traj.times[k];
      }
    }
    if (traj.termination != Termination::TEnd && m.check.passed) {
      m.check.passed = false;
      m.check.first_violation_time = traj.times.back();
    }
    m.perimeter = check_perimeter_monotone(traj);
    m.drift = centroid_drift(traj);
    return m;
  });
  return combine("oracle_equivalence", std::move(members), true);
}

EnsembleResult star_ensemble(std::size_t count, std::uint64_t seed, unsigned threads) {
  auto members = parallel_map<Member>(count, threads, [&](std::size_t i) {
    SplitMix64 rng(member_seed(seed, kTagStar, i));
    const std::size_t n = draw_size(rng, 4, 12);
    const Polygon start = generate({GeneratorKind::RandomStar, n, 0.5, 1.5}, rng.next());
    return linear_member(start, linear_config(kLongHorizon, kCollapseDiameter, 100), "star_preservation",
                         check_star_preservation, true);
  });
  return combine("star_preservation", std::move(members), true);
}

EnsembleResult convex_ensemble(std::size_t count, std::uint64_t seed, unsigned threads) {
  auto members = parallel_map<Member>(count, threads, [&](std::size_t i) {
    SplitMix64 rng(member_seed(seed, kTagConvex, i));
    const std::size_t n = draw_size(rng, 4, 12);
    const Polygon start = generate({GeneratorKind::RandomConvex, n}, rng.next());
    return linear_member(start, linear_config(kLongHorizon, kCollapseDiameter, 100),
                         "convexity_preservation", check_convexity_preservation, true);
  });
  return combine("convexity_preservation", std::move(members), true);
}

EnsembleResult flat_convex_ensemble(std::size_t count, std::uint64_t seed, unsigned threads) {
  auto members = parallel_map<Member>(count, threads, [&](std::size_t i) {
    SplitMix64 rng(member_seed(seed, kTagFlat, i));
    const std::size_t n = draw_size(rng, 3, 11);
    const Polygon base = generate({GeneratorKind::RandomConvex, n}, rng.next());
    const std::size_t edge = static_cast<std::size_t>(rng.next() % n);
    const Polygon start = with_flat_vertex(base, edge, rng.uniform(0.2, 0.8));
    // Record densely at first so the earliest t > 0 sample is close to 0.
    SimConfig cfg = linear_config(kLongHorizon, kCollapseDiameter, 1);
    Trajectory early = run(start, FlowSpec::linear(), linear_config(0.01, kCollapseDiameter, 1));
    Member m;
    if (classify_convexity(start).tag != ConvexityTag::Convex) {
      m.check = failed("flat_vertex_becomes_strict");
      return m;
    }
    CheckReport first = check_convexity_preservation(early);
    const Trajectory traj = run(start, FlowSpec::linear(), (cfg.record_every = 100, cfg));
    CheckReport rest = check_convexity_preservation(traj);
    m.check = aggregate("flat_vertex_becomes_strict", {first, rest});
    m.perimeter = check_perimeter_monotone(traj);
    m.drift = centroid_drift(traj);
    return m;
  });
  return combine("flat_vertex_becomes_strict", std::move(members), true);
}

EnsembleResult ellipse_ensemble(std::size_t count, std::uint64_t seed, unsigned threads) {
  constexpr std::size_t n = 8;
  const double t_end = 6.0 / std::abs(eigenvalues(n)[1]);
  auto members = parallel_map<Member>(count, threads, [&](std::size_t i) {
    SplitMix64 rng(member_seed(seed, kTagEllipse, i));
    const Polygon start = generate({GeneratorKind::RandomPoints, n}, rng.next());
    return linear_member(start, linear_config(t_end, 0.0, 100), "ellipse_convergence",
                         check_ellipse_convergence, true);
  });
  return combine("ellipse_convergence", std::move(members), true);
}

EnsembleResult collinear_ensemble(std::size_t count, std::uint64_t seed, unsigned threads) {
  auto members = parallel_map<Member>(count, threads, [&](std::size_t i) {
    SplitMix64 rng(member_seed(seed, kTagCollinear, i));
    const std::size_t n = draw_size(rng, 3, 12);
    const Polygon start = generate({GeneratorKind::Collinear, n}, rng.next());
    // The line through the two farthest initial vertices.
    const auto v = start.vertices();
    Point a = v[0], b = v[1];
    for (std::size_t p = 0; p < v.size(); ++p) {
      for (std::size_t q = p + 1; q < v.size(); ++q) {
        if (std::abs(v[p] - v[q]) > std::abs(a - b)) a = v[p], b = v[q];
      }
    }
    const Point dir = (b - a) / std::abs(b - a);
    const double d0 = diameter(start);
    const Trajectory traj = run(start, FlowSpec::linear(), linear_config(5.0, 0.0, 10));
    Member m;
    m.check.check_name = "collinearity_invariance";
    m.check.worst_margin = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < traj.size(); ++k) {
      double dev = 0.0;
      for (const Point& z : traj.states[k].vertices()) {
        dev = std::max(dev, std::abs((std::conj(dir) * (z - a)).imag()));
      }
      const double margin = kCollinearTolerance - dev / d0;
      ++m.check.samples_checked;
      m.check.worst_margin = std::min(m.check.worst_margin, margin);
      if (margin < 0.0 && m.check.passed) {
        m.check.passed = false;
        m.check.first_violation_time = traj.times[k];
      }
    }
    m.drift = centroid_drift(traj);
    return m;
  });
  return combine("collinearity_invariance", std::move(members), false);
}

CheckReport optimality_ensemble(std::size_t count, std::uint64_t seed, unsigned threads) {
  auto members = parallel_map<CheckReport>(count, threads, [&](std::size_t i) {
    SplitMix64 rng(member_seed(seed, kTagOptimality, i));
    const std::size_t n = draw_size(rng, 3, 12);
    const Polygon poly = generate({GeneratorKind::RandomPoints, n}, rng.next());
    const VelocityField u = bisector_velocity(poly, FlowSpec::bisector());
    const double rate_u = perimeter_rate(poly, u);
    CheckReport r;
    r.check_name = "bisector_optimality";
    r.worst_margin = std::numeric_limits<double>::infinity();
    for (std::size_t f = 0; f < kFieldsPerPolygon; ++f) {
      VelocityField v(n);
      for (std::size_t j = 0; j < n; ++j) {
        const double mag = std::abs(u[j]);
        v[j] = std::polar(mag, rng.uniform(0.0, 2.0 * std::numbers::pi));
      }
      const double margin = perimeter_rate(poly, v) + kOptimalitySlack - rate_u;
      ++r.samples_checked;
      r.worst_margin = std::min(r.worst_margin, margin);
      if (margin < 0.0 && r.passed) {
        r.passed = false;
        r.first_violation_time = 0.0;
      }
    }
    return r;
  });
  return aggregate("bisector_optimality", members);
}

CheckReport boomerang_area_check() {
  const Scenario sc = figure_scenarios("fig8").front();
  const Polygon start = initial_polygon(sc);
  CheckReport r;
  r.check_name = "boomerang_area_increases";
  r.samples_checked = 1;
  if (!is_simple(start)) return failed(r.check_name);
  const Trajectory traj = run(start, sc.flow, sc.sim);
  CheckReport area;
  try {
    area = check_area_monotone(traj);
  } catch (const Error&) {
    return failed(r.check_name);
  }
  r.samples_checked = area.samples_checked;
  if (area.passed || !area.first_violation_time || *area.first_violation_time > kBoomerangWindow) {
    return failed(r.check_name, area.first_violation_time.value_or(0.0));
  }
  r.worst_margin = kBoomerangWindow - *area.first_violation_time;
  return r;
}

CheckReport embedded_loss_check() {
  const Scenario sc = figure_scenarios("fig10").front();
  const Polygon start = initial_polygon(sc);
  CheckReport r;
  r.check_name = "embedded_loss_self_intersects";
  if (!is_simple(start)) return failed(r.check_name);
  const Trajectory traj = run(start, sc.flow, sc.sim);
  r.samples_checked = traj.size();
  const auto when = detect_first(traj, EventKind::LosesSimplicity);
  if (!when) return failed(r.check_name, traj.times.back());
  r.worst_margin = sc.sim.t_end - *when;
  return r;
}

CheckReport centroid_report(const std::vector<double>& drifts) {
  CheckReport r;
  r.check_name = "centroid_conservation";
  r.worst_margin = drifts.empty() ? 0.0 : std::numeric_limits<double>::infinity();
  for (double d : drifts) {
    ++r.samples_checked;
    r.worst_margin = std::min(r.worst_margin, kCentroidTolerance - d);
    if (!(d <= kCentroidTolerance) && r.passed) {
      r.passed = false;
      r.first_violation_time = 0.0;
    }
  }
  return r;
}

std::vector<CheckReport> run_validation(const ValidationConfig& cfg) {
  if (cfg.ensemble_size == 0) throw Error(ErrorCode::InvalidArgument, "ensemble size must be positive");
  const EnsembleSizes sizes = ensemble_sizes(cfg.ensemble_size);
  const auto oracle = oracle_ensemble(sizes.oracle, cfg.seed, cfg.threads);
  const auto stars = star_ensemble(sizes.stars, cfg.seed, cfg.threads);
  const auto convex = convex_ensemble(sizes.convex, cfg.seed, cfg.threads);
  const auto flat = flat_convex_ensemble(sizes.flat_convex, cfg.seed, cfg.threads);
  const auto ellipse = ellipse_ensemble(sizes.ellipse, cfg.seed, cfg.threads);
  const auto collinear = collinear_ensemble(sizes.collinear, cfg.seed, cfg.threads);

  const CheckReport perimeter = aggregate(
      "perimeter_monotone",
      {*oracle.perimeter, *stars.perimeter, *convex.perimeter, *flat.perimeter, *ellipse.perimeter});
  const CheckReport centroid =
      centroid_report({oracle.max_centroid_drift, stars.max_centroid_drift, convex.max_centroid_drift,
                       flat.max_centroid_drift, ellipse.max_centroid_drift, collinear.max_centroid_drift});

  return {oracle.check,
          stars.check,
          convex.check,
          flat.check,
          perimeter,
          ellipse.check,
          optimality_ensemble(sizes.optimality, cfg.seed, cfg.threads),
          centroid,
          collinear.check,
          boomerang_area_check(),
          embedded_loss_check()};
}

}  // namespace polyflow
