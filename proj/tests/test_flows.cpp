#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "polyflow/analysis.hpp"
#include "polyflow/error.hpp"
#include "polyflow/flows.hpp"
#include "polyflow/generators.hpp"

using namespace polyflow;
using Catch::Approx;
using Catch::Matchers::WithinAbs;

namespace {

const double pi = std::numbers::pi;

Polygon regular(std::size_t n, double radius = 1.0) {
  std::vector<Point> z;
  for (std::size_t k = 0; k < n; ++k) z.push_back(std::polar(radius, 2 * pi * k / n));
  return Polygon(z);
}

double dot(Point a, Point b) { return a.real() * b.real() + a.imag() * b.imag(); }

}  // namespace

TEST_CASE("flow spec construction", "[flows]") {
  CHECK(FlowSpec::linear().kind() == FlowKind::Linear);
  CHECK_FALSE(FlowSpec::linear().bisector_params());
  CHECK_FALSE(FlowSpec::menger_melnikov().bisector_params());
  const FlowSpec b = FlowSpec::bisector(BisectorSpeedMode::NormMatched, 2.0);
  REQUIRE(b.bisector_params());
  CHECK(b.bisector_params()->mode == BisectorSpeedMode::NormMatched);
  CHECK_THROWS_AS(FlowSpec::bisector(BisectorSpeedMode::Unit, 0.0), Error);
  CHECK_THROWS_AS(FlowSpec::bisector(BisectorSpeedMode::Unit, -1.0), Error);
  CHECK_THROWS_AS(FlowSpec::bisector(BisectorSpeedMode::Unit, NAN), Error);
}

TEST_CASE("linear velocity", "[flows]") {
  const Polygon sq({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  const auto v = linear_velocity(sq);
  CHECK(v[0] == Point(0.5, 0.5));

  for (std::size_t n : {3u, 4u, 7u, 12u}) {
    const Polygon p = regular(n);
    const double lambda2 = std::cos(2 * pi / n) - 1;
    const auto u = linear_velocity(p);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK_THAT(std::abs(u[i] - lambda2 * p[i]), WithinAbs(0.0, 1e-15));
    }
  }

  const Polygon line({{0, 0}, {3, 0}, {-1, 0}, {2, 0}, {0.5, 0}});
  for (Point u : linear_velocity(line)) CHECK(u.imag() == 0.0);
}

TEST_CASE("linear velocity sums to zero and is linear", "[flows][property]") {
  SplitMix64 rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 3 + rng.next() % 15;
    const Polygon p = generate({GeneratorKind::RandomPoints, n}, rng.next());
    const Polygon q = generate({GeneratorKind::RandomPoints, n}, rng.next());
    const auto up = linear_velocity(p);
    Point sum = 0;
    for (Point u : up) sum += u;
    CHECK(std::abs(sum) <= 1e-12 * n * diameter(p));

    const double a = rng.uniform(-3, 3), b = rng.uniform(-3, 3);
    std::vector<Point> mix(n);
    for (std::size_t i = 0; i < n; ++i) mix[i] = a * p[i] + b * q[i];
    const auto um = linear_velocity(std::span<const Point>(mix));
    const auto uq = linear_velocity(q);
    for (std::size_t i = 0; i < n; ++i) {
      const Point expected = a * up[i] + b * uq[i];
      CHECK(std::abs(um[i] - expected) <= 1e-12 * (std::abs(a) + std::abs(b)) * 2);
    }
  }
}

TEST_CASE("collinear configurations move along their line", "[flows][property]") {
  SplitMix64 rng(22);
  for (int trial = 0; trial < 50; ++trial) {
    const Polygon p = generate({GeneratorKind::Collinear, 3 + rng.next() % 10}, rng.next());
    const Point dir = (p[1] - p[0]) / std::abs(p[1] - p[0]);
    for (Point u : linear_velocity(p)) {
      CHECK_THAT((std::conj(dir) * u).imag(), WithinAbs(0.0, 1e-12));
    }
  }
}

TEST_CASE("Menger-Melnikov velocity", "[flows]") {
  const Polygon diamond({{1, 0}, {0, 1}, {-1, 0}, {0, -1}});
  const auto v = menger_melnikov_velocity(diamond);
  for (std::size_t i = 0; i < 4; ++i) CHECK_THAT(std::abs(v[i] + diamond[i]), WithinAbs(0.0, 1e-15));

  for (double R : {0.5, 1.0, 3.0}) {
    const auto tri = menger_melnikov_velocity(regular(3, R));
    for (Point u : tri) CHECK(std::abs(u) == Approx(1.0 / R).epsilon(1e-12));
  }

  // Vertex 1 sits on the segment from vertex 0 to vertex 2.
  const Polygon flat({{0, 0}, {1, 0}, {2, 0}, {1, 1}});
  CHECK(menger_melnikov_velocity(flat)[1] == Point(0, 0));

  const std::vector<Point> repeated{{0, 0}, {1, 0}, {1, 0}, {0, 1}};
  CHECK_THROWS_AS(menger_melnikov_velocity(std::span<const Point>(repeated)), Error);
}

TEST_CASE("Menger-Melnikov velocity points toward the circumcenter", "[flows][property]") {
  SplitMix64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const Polygon p = generate({GeneratorKind::RandomPoints, 3 + rng.next() % 10}, rng.next());
    const auto v = menger_melnikov_velocity(p);
    for (std::size_t i = 0; i < p.size(); ++i) {
      const auto k = static_cast<std::ptrdiff_t>(i);
      const auto cc = circumcircle(p[k - 1], p[k], p[k + 1]);
      if (!cc) {
        CHECK(v[i] == Point(0, 0));
        continue;
      }
      CHECK(dot(v[i], cc->center - p[k]) >= 0.0);
      CHECK(std::abs(v[i]) == Approx(1.0 / cc->radius).epsilon(1e-9));
    }
  }
}

TEST_CASE("bisector velocity", "[flows]") {
  const Polygon sq({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  const auto v = bisector_velocity(sq, FlowSpec::bisector());
  CHECK_THAT(v[0].real(), WithinAbs(std::sqrt(0.5), 1e-15));
  CHECK_THAT(v[0].imag(), WithinAbs(std::sqrt(0.5), 1e-15));
  const auto fast = bisector_velocity(sq, FlowSpec::bisector(BisectorSpeedMode::Unit, 3.0));
  CHECK(std::abs(fast[2]) == Approx(3.0));

  const Polygon straight({{0, 0}, {1, 0}, {2, 0}, {1, 1}});
  CHECK(bisector_velocity(straight, FlowSpec::bisector())[1] == Point(0, 0));
  CHECK(bisector_velocity(straight, FlowSpec::bisector(BisectorSpeedMode::NormMatched))[1] == Point(0, 0));

  const Polygon hex = regular(6);
  const auto h = bisector_velocity(hex, FlowSpec::bisector(BisectorSpeedMode::NormMatched));
  for (std::size_t i = 0; i < 6; ++i) {
    // Unit edge vectors 120 degrees apart sum to a unit vector along -z_i.
    CHECK_THAT((std::conj(hex[i]) * h[i]).imag(), WithinAbs(0.0, 1e-15));
    CHECK((std::conj(hex[i]) * h[i]).real() < 0.0);
    CHECK(std::abs(h[i]) == Approx(0.5).epsilon(1e-12));
  }

  const std::vector<Point> repeated{{0, 0}, {1, 0}, {1, 0}, {0, 1}};
  try {
    bisector_direction(std::span<const Point>(repeated));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CoincidentVertices);
  }
}

TEST_CASE("velocity dispatches on the flow kind", "[flows]") {
  const Polygon p = generate({GeneratorKind::RandomPoints, 7}, 3);
  CHECK(velocity(p, FlowSpec::linear()) == linear_velocity(p));
  CHECK(velocity(p, FlowSpec::menger_melnikov()) == menger_melnikov_velocity(p));
  const FlowSpec b = FlowSpec::bisector(BisectorSpeedMode::NormMatched);
  CHECK(velocity(p, b) == bisector_velocity(p, b));
}

TEST_CASE("bisector directions minimize the perimeter rate among magnitude-matched fields",
          "[flows][property]") {
  SplitMix64 rng(24);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 3 + rng.next() % 10;
    const Polygon p = generate({GeneratorKind::RandomPoints, n}, rng.next());
    for (const FlowSpec& flow : {FlowSpec::bisector(), FlowSpec::bisector(BisectorSpeedMode::NormMatched)}) {
      const auto u = bisector_velocity(p, flow);
      const double best = perimeter_rate(p, u);
      for (int f = 0; f < 20; ++f) {
        std::vector<Point> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = std::polar(std::abs(u[i]), rng.uniform(0, 2 * pi));
        CHECK(best <= perimeter_rate(p, v) + 1e-12);
      }
    }
  }
}
