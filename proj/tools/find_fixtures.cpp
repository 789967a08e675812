// Randomized search for the fixed polygons behind the counterexample
// figures. Prints a replacement for include/polyflow/fixtures.hpp.
//
//   boomerang      simple for the whole linear run, |area| grows at t = 0
//   embedded_loss  simple at t = 0, self-intersects under the linear flow
//   elongated      thin convex polygon captured by the unit bisector flow

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "polyflow/error.hpp"
#include "polyflow/generators.hpp"
#include "polyflow/simulate.hpp"

using namespace polyflow;

namespace {

SimConfig figure_config(double t_end, std::size_t record_every) {
  SimConfig cfg = default_config(FlowKind::Linear, 1.0);
  cfg.t_end = t_end;
  cfg.record_every = record_every;
  return cfg;
}

std::optional<Polygon> make_polygon(std::vector<Point> pts) {
  try {
    Polygon p(std::move(pts));
    if (signed_area(p) < 0.0) p = p.reversed();
    return p;
  } catch (const Error&) {
    return std::nullopt;
  }
}

// Jittered chevron: two arms of length L meeting at an outer apex.
std::optional<Polygon> chevron(SplitMix64& rng) {
  const double theta = rng.uniform(0.35, 1.2);
  const double len = rng.uniform(1.0, 2.0);
  const double w = rng.uniform(0.1, 0.4);
  const double notch = rng.uniform(1.0, 3.0) * w;
  const Point up = std::polar(len, theta);
  const Point down = std::conj(up);
  std::vector<Point> pts{{0.0, 0.0}, down, down + Point(w, 0.0), {notch, 0.0}, up + Point(w, 0.0), up};
  for (auto& p : pts) p += Point(rng.uniform(-0.05, 0.05), rng.uniform(-0.05, 0.05)) * len;
  auto poly = make_polygon(std::move(pts));
  if (!poly || !is_simple(*poly)) return std::nullopt;
  return poly;
}

// Uniform points sorted by angle about a random point of the unit square.
std::optional<Polygon> off_centre_star(SplitMix64& rng) {
  const std::size_t n = 7 + static_cast<std::size_t>(rng.next() % 6);
  const Point pivot(rng.uniform(), rng.uniform());
  std::vector<Point> pts(n);
  for (auto& p : pts) p = Point(rng.uniform(), rng.uniform());
  std::sort(pts.begin(), pts.end(),
            [&](Point a, Point b) { return std::arg(a - pivot) < std::arg(b - pivot); });
  auto poly = make_polygon(std::move(pts));
  if (!poly || !is_simple(*poly) || classify_star(*poly).tag != StarTag::NotStar) return std::nullopt;
  return poly;
}

bool simple_throughout(const Trajectory& traj) {
  for (const auto& s : traj.states) {
    if (!is_simple(s)) return false;
  }
  return true;
}

std::optional<Polygon> find_boomerang(std::uint64_t seed, std::size_t attempts) {
  SplitMix64 rng(seed);
  for (std::size_t i = 0; i < attempts; ++i) {
    const auto poly = chevron(rng);
    if (!poly) continue;
    const Trajectory traj = run(*poly, FlowSpec::linear(), figure_config(3.0, 10));
    if (!simple_throughout(traj)) continue;
    const auto grows = detect_first(traj, EventKind::AreaIncreasing);
    if (grows && *grows == 0.0) return poly;
  }
  return std::nullopt;
}

std::optional<Polygon> find_embedded_loss(std::uint64_t seed, std::size_t attempts) {
  SplitMix64 rng(seed);
  for (std::size_t i = 0; i < attempts; ++i) {
    // Star formations about the centroid stay simple, so draw polygons that
    // are star-shaped only about some other point.
    const auto candidate = off_centre_star(rng);
    if (!candidate) continue;
    const Polygon& poly = *candidate;
    const Trajectory traj = run(poly, FlowSpec::linear(), figure_config(3.0, 10));
    // Require the crossing to persist for a few samples so it is not a
    // grazing contact at sample resolution.
    std::size_t crossed = 0;
    for (const auto& s : traj.states) crossed += is_simple(s) ? 0 : 1;
    if (crossed >= 5) return poly;
  }
  return std::nullopt;
}

std::optional<Polygon> find_elongated(std::uint64_t seed, std::size_t attempts) {
  SplitMix64 rng(seed);
  for (std::size_t i = 0; i < attempts; ++i) {
    const std::size_t n = 5 + static_cast<std::size_t>(rng.next() % 4);
    const Polygon base = generate({GeneratorKind::RandomConvex, n}, rng.next());
    std::vector<Point> pts;
    for (const Point& z : base.vertices()) pts.emplace_back(z.real(), 0.1 * z.imag());
    const auto poly = make_polygon(std::move(pts));
    if (!poly) continue;
    SimConfig cfg = default_config(FlowKind::Bisector, diameter(*poly));
    cfg.t_end = 5.0;
    const Trajectory traj = run(*poly, FlowSpec::bisector(), cfg);
    if (traj.termination == Termination::Capture) return poly;
  }
  return std::nullopt;
}

void print_array(const char* name, const Polygon& poly) {
  std::printf("inline constexpr std::array<std::array<double, 2>, %zu> %s{{\n", poly.size(), name);
  for (const Point& z : poly.vertices()) std::printf("    {%.17g, %.17g},\n", z.real(), z.imag());
  std::printf("}};\n\n");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Search for the counterexample fixture polygons"};
  std::uint64_t seed = 2024;
  std::size_t attempts = 20000;
  app.add_option("--seed", seed, "Search seed");
  app.add_option("--attempts", attempts, "Candidates per fixture");
  CLI11_PARSE(app, argc, argv);

  const auto boomerang = find_boomerang(seed, attempts);
  const auto embedded = find_embedded_loss(seed + 1, attempts);
  const auto elongated = find_elongated(seed + 2, attempts);
  if (!boomerang || !embedded || !elongated) {
    std::fprintf(stderr, "search failed:%s%s%s\n", boomerang ? "" : " boomerang", embedded ? "" : " embedded_loss",
                 elongated ? "" : " elongated");
    return 1;
  }

  std::printf("#pragma once\n\n#include <array>\n\n");
  std::printf("// Fixture polygons for the counterexample scenarios. Produced by\n");
  std::printf("// tools/find_fixtures.cpp; regenerate with `find_fixtures --seed %llu`.\n\n",
              static_cast<unsigned long long>(seed));
  std::printf("namespace polyflow::fixtures {\n\n");
  print_array("kBoomerang", *boomerang);
  print_array("kEmbeddedLoss", *embedded);
  print_array("kElongated", *elongated);
  std::printf("}  // namespace polyflow::fixtures\n");
  return 0;
}
