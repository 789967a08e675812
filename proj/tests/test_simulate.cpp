#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "polyflow/error.hpp"
#include "polyflow/generators.hpp"
#include "polyflow/simulate.hpp"

using namespace polyflow;
using Catch::Approx;

namespace {

const double pi = std::numbers::pi;

Polygon regular(std::size_t n, double radius = 1.0) {
  std::vector<Point> z;
  for (std::size_t k = 0; k < n; ++k) z.push_back(std::polar(radius, 2 * pi * k / n));
  return Polygon(z);
}

std::vector<Point> as_vec(const Polygon& p) { return {p.vertices().begin(), p.vertices().end()}; }

double max_abs_diff(std::span<const Point> a, std::span<const Point> b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    m = std::max({m, std::abs(a[i].real() - b[i].real()), std::abs(a[i].imag() - b[i].imag())});
  }
  return m;
}

SimConfig config(double dt, double t_end, std::size_t record_every = 1, double stop = 0.0) {
  SimConfig cfg;
  cfg.dt = dt;
  cfg.t_end = t_end;
  cfg.record_every = record_every;
  cfg.stop_diameter = stop;
  return cfg;
}

}  // namespace

TEST_CASE("sim config validation", "[simulate]") {
  CHECK_NOTHROW(SimConfig{}.validate());
  CHECK_THROWS_AS(config(0.0, 1.0).validate(), Error);
  CHECK_THROWS_AS(config(1e-3, -1.0).validate(), Error);
  CHECK_THROWS_AS(config(1e-3, 1.0, 0).validate(), Error);
  CHECK_THROWS_AS(config(1e-3, 1.0, 1, -1.0).validate(), Error);

  const SimConfig lin = default_config(FlowKind::Linear, 2.0);
  CHECK(lin.min_edge_capture == 0.0);
  CHECK_FALSE(lin.adaptive);
  const SimConfig bis = default_config(FlowKind::Bisector, 2.0);
  CHECK(bis.min_edge_capture == Approx(2e-6));
  CHECK(default_config(FlowKind::MengerMelnikov, 1.0).adaptive);
}

TEST_CASE("termination names round-trip", "[simulate]") {
  for (Termination t : {Termination::TEnd, Termination::Collapsed, Termination::Capture, Termination::Degenerate}) {
    CHECK(termination_from_string(to_string(t)) == t);
  }
  CHECK(to_string(Termination::TEnd) == "T_END");
  CHECK_FALSE(termination_from_string("DONE"));
}

TEST_CASE("one RK4 step of a regular polygon is a uniform scaling", "[simulate]") {
  for (std::size_t n : {3u, 5u, 8u}) {
    const Polygon p = regular(n);
    const double lambda2 = std::cos(2 * pi / n) - 1;
    for (double dt : {0.1, 0.05}) {
      const auto next = step_rk4(p, FlowSpec::linear(), dt);
      const double err_bound = std::pow(std::abs(lambda2) * dt, 5) / 120 + 1e-15;
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(std::abs(next[i] - std::exp(lambda2 * dt) * p[static_cast<std::ptrdiff_t>(i)]) <= err_bound);
      }
    }
  }
}

TEST_CASE("a zero velocity field leaves the state unchanged", "[simulate]") {
  // Every curvature vanishes on a line, so the Menger-Melnikov field is zero.
  SplitMix64 rng(40);
  for (int trial = 0; trial < 10; ++trial) {
    const Polygon p = generate({GeneratorKind::Collinear, 4 + rng.next() % 8}, rng.next());
    const auto next = step_rk4(p, FlowSpec::menger_melnikov(), 0.1);
    CHECK(std::equal(next.begin(), next.end(), p.vertices().begin()));
  }
}

TEST_CASE("RK4 matches the closed form", "[simulate][property]") {
  SplitMix64 rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    const Polygon p = normalized_to_unit_diameter(generate({GeneratorKind::RandomPoints, 8}, rng.next()));
    const auto next = step_rk4(p, FlowSpec::linear(), 0.01);
    const auto exact = oracle::linear_solution(as_vec(p), 0.01L);
    CHECK(max_abs_diff(next, exact) <= 1e-9);
  }
}

TEST_CASE("RK4 is fourth order", "[simulate][property]") {
  SplitMix64 rng(42);
  for (int trial = 0; trial < 5; ++trial) {
    const Polygon p = generate({GeneratorKind::RandomPoints, 8}, rng.next());
    const auto exact = oracle::linear_solution(as_vec(p), 1.0L);
    const auto err = [&](double dt) {
      const Trajectory t = run(p, FlowSpec::linear(), config(dt, 1.0));
      REQUIRE(t.times.back() == Approx(1.0));
      return max_abs_diff(t.states.back().vertices(), exact);
    };
    const double coarse = err(0.2), fine = err(0.1);
    CHECK(coarse / fine >= 14.0);
  }
}

TEST_CASE("linear run of the unit square", "[simulate]") {
  const Polygon sq({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  const Trajectory t = run(sq, FlowSpec::linear(), config(1e-3, 5.0, 100));
  CHECK(t.termination == Termination::TEnd);
  CHECK(t.times.front() == 0.0);
  CHECK(t.times.back() == Approx(5.0));
  CHECK(t.size() == 51);
  CHECK(diameter(t.states.back()) == Approx(std::sqrt(2.0) * std::exp(-5.0)).epsilon(1e-4));
  for (std::size_t k = 1; k < t.size(); ++k) CHECK(t.times[k] > t.times[k - 1]);
  for (const auto& d : t.diagnostics) CHECK(d.min_edge > 0);
}

TEST_CASE("linear flow keeps the centroid fixed", "[simulate][property]") {
  SplitMix64 rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    const Polygon p = generate({GeneratorKind::RandomPoints, 3 + rng.next() % 12}, rng.next());
    const Trajectory t = run(p, FlowSpec::linear(), config(1e-3, 8.0, 50));
    const Point c0 = centroid(p);
    for (const auto& s : t.states) CHECK(std::abs(centroid(s) - c0) <= 1e-9 * diameter(p));
  }
}

TEST_CASE("linear run stops on collapse", "[simulate]") {
  const Trajectory t = run(regular(5), FlowSpec::linear(), config(1e-3, 1e4, 1000, 1e-3));
  CHECK(t.termination == Termination::Collapsed);
  CHECK(diameter(t.states.back()) < 1e-3);
  // Diameter of a regular pentagon shrinks like e^{lambda_2 t}.
  const double lambda2 = std::cos(2 * pi / 5) - 1;
  const double d0 = diameter(regular(5));
  CHECK(t.times.back() == Approx(std::log(1e-3 / d0) / lambda2).margin(2e-3));
}

TEST_CASE("Menger-Melnikov flow shrinks a regular polygon in finite time", "[simulate]") {
  // Every vertex moves toward the centre at speed 1/R: R(t)^2 = R0^2 - 2t.
  SimConfig cfg = default_config(FlowKind::MengerMelnikov, 2.0);
  cfg.t_end = 2.0;
  cfg.stop_diameter = 1e-3;
  const Trajectory t = run(regular(6), FlowSpec::menger_melnikov(), cfg);
  CHECK(t.termination == Termination::Collapsed);
  const double r_end = diameter(t.states.back()) / 2;
  CHECK(t.times.back() == Approx((1.0 - r_end * r_end) / 2).epsilon(1e-6));
}

TEST_CASE("unit bisector flow captures on the elongated fixture", "[simulate]") {
  const Polygon p = generate({GeneratorKind::Elongated}, 0);
  SimConfig cfg = default_config(FlowKind::Bisector, diameter(p));
  cfg.t_end = 5.0;
  const Trajectory t = run(p, FlowSpec::bisector(), cfg);
  CHECK(t.termination == Termination::Capture);
  CHECK(t.diagnostics.back().min_edge < cfg.min_edge_capture);
  CHECK(t.times.back() < 5.0);
}

TEST_CASE("recording cadence", "[simulate]") {
  const Trajectory t = run(regular(4), FlowSpec::linear(), config(0.1, 1.05, 3));
  // Steps end at 0.1, ..., 1.0, 1.05; every third plus the final one.
  REQUIRE(t.size() == 5);
  CHECK(t.times[1] == Approx(0.3));
  CHECK(t.times[3] == Approx(0.9));
  CHECK(t.times[4] == Approx(1.05));
}

TEST_CASE("event detection", "[simulate]") {
  SplitMix64 rng(44);
  const Polygon convex = generate({GeneratorKind::RandomConvex, 7}, rng.next());
  const Polygon flat = with_flat_vertex(convex, 2, 0.4);
  REQUIRE(classify_convexity(flat).tag == ConvexityTag::Convex);
  const Trajectory tf = run(flat, FlowSpec::linear(), config(1e-3, 2.0, 10));
  CHECK(detect_first(tf, EventKind::BecomesStrictlyConvex) == tf.times[1]);
  CHECK_FALSE(detect_first(tf, EventKind::LosesSimplicity));
  CHECK_FALSE(detect_first(tf, EventKind::AreaIncreasing));

  // A nonconvex star eventually turns strictly convex.
  Polygon star = generate({GeneratorKind::RandomStar, 10}, 42);
  int tries = 0;
  while (classify_convexity(star).tag != ConvexityTag::NotConvex && tries++ < 50) {
    star = generate({GeneratorKind::RandomStar, 10}, rng.next());
  }
  REQUIRE(classify_convexity(star).tag == ConvexityTag::NotConvex);
  const Trajectory ts = run(star, FlowSpec::linear(), config(1e-3, 30.0, 100));
  const auto when = detect_first(ts, EventKind::BecomesStrictlyConvex);
  REQUIRE(when);
  CHECK(*when > 0.0);

  Trajectory single;
  single.push(0.0, convex);
  CHECK_THROWS_AS(detect_first(single, EventKind::LosesSimplicity), Error);
}

TEST_CASE("linear flow from convex starts", "[simulate][property]") {
  SplitMix64 rng(45);
  for (int trial = 0; trial < 20; ++trial) {
    const Polygon p = generate({GeneratorKind::RandomConvex, 4 + rng.next() % 9}, rng.next());
    const Trajectory t = run(p, FlowSpec::linear(), config(1e-3, 1e4, 100, 1e-4));
    CHECK(t.termination == Termination::Collapsed);
    for (std::size_t k = 1; k < t.size(); ++k) {
      CHECK(classify_convexity(t.states[k]).tag == ConvexityTag::StrictlyConvex);
      CHECK(t.diagnostics[k].perimeter < t.diagnostics[k - 1].perimeter * (1 - 1e-12));
      CHECK(std::abs(t.diagnostics[k].signed_area) < std::abs(t.diagnostics[k - 1].signed_area));
    }
  }
}

TEST_CASE("linear flow keeps star formations", "[simulate][property]") {
  SplitMix64 rng(46);
  for (int trial = 0; trial < 20; ++trial) {
    const Polygon p = generate({GeneratorKind::RandomStar, 4 + rng.next() % 9}, rng.next());
    const Trajectory t = run(p, FlowSpec::linear(), config(1e-3, 1e4, 100, 1e-4));
    for (const auto& s : t.states) CHECK(classify_star(s).tag == StarTag::CcwStar);
  }
}
