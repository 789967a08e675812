#include "polyflow/generators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "polyflow/error.hpp"
#include "polyflow/fixtures.hpp"

namespace polyflow {

namespace {

constexpr int kMaxAttempts = 1000;
constexpr std::size_t kMaxVertices = 1000;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

constexpr std::array<std::pair<GeneratorKind, std::string_view>, 8> kNames{{
    {GeneratorKind::Regular, "regular"},
    {GeneratorKind::RandomStar, "random_star"},
    {GeneratorKind::RandomConvex, "random_convex"},
    {GeneratorKind::Collinear, "collinear"},
    {GeneratorKind::RandomPoints, "random_points"},
    {GeneratorKind::Boomerang, "boomerang"},
    {GeneratorKind::EmbeddedLoss, "embedded_loss"},
    {GeneratorKind::Elongated, "elongated"},
}};

std::vector<Point> regular(std::size_t n) {
  std::vector<Point> z(n);
  for (std::size_t i = 0; i < n; ++i) {
    z[i] = std::polar(1.0, kTwoPi * static_cast<double>(i) / static_cast<double>(n));
  }
  return z;
}

// Angle increments from the positive simplex scaled to 2 pi, each kept
// below pi; radii uniform in [r_min, r_max].
std::optional<Polygon> try_star(const GeneratorSpec& spec, SplitMix64& rng) {
  const std::size_t n = spec.n;
  std::vector<double> weights(n);
  double total = 0.0;
  for (auto& w : weights) {
    w = -std::log(1.0 - rng.uniform());
    total += w;
  }
  double theta = rng.uniform(0.0, kTwoPi);
  std::vector<Point> z(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double alpha = kTwoPi * weights[i] / total;
    if (alpha >= 0.98 * std::numbers::pi || alpha <= 1e-3 * kTwoPi / static_cast<double>(n)) {
      return std::nullopt;
    }
    z[i] = std::polar(rng.uniform(spec.r_min, spec.r_max), theta);
    theta += alpha;
  }
  Polygon poly(std::move(z));
  if (classify_star(poly).tag != StarTag::CcwStar) return std::nullopt;
  return poly;
}

// Points on the unit circle with bounded angle increments, then each
// radius pulled inward by a random amount that keeps the three affected
// vertices strictly convex.
std::optional<Polygon> try_convex(std::size_t n, SplitMix64& rng) {
  std::vector<double> weights(n);
  double total = 0.0;
  for (auto& w : weights) total += (w = rng.uniform(0.5, 1.5));
  std::vector<Point> z(n);
  double theta = rng.uniform(0.0, kTwoPi);
  for (std::size_t i = 0; i < n; ++i) {
    z[i] = std::polar(1.0, theta);
    theta += kTwoPi * weights[i] / total;
  }
  const double amplitude = 0.15 * std::min(1.0, 64.0 / static_cast<double>(n * n));
  const double floor = 1e-9 / static_cast<double>(n * n);
  const auto h = [&](std::size_t i) { return convex_function(z[(i + n - 1) % n], z[i], z[(i + 1) % n]); };
  for (std::size_t i = 0; i < n; ++i) {
    const Point before = z[i];
    z[i] *= 1.0 - amplitude * rng.uniform();
    if (h((i + n - 1) % n) <= floor || h(i) <= floor || h((i + 1) % n) <= floor) z[i] = before;
  }
  Polygon poly(std::move(z));
  if (classify_convexity(poly).tag != ConvexityTag::StrictlyConvex) return std::nullopt;
  return poly;
}

std::optional<Polygon> try_collinear(std::size_t n, SplitMix64& rng) {
  const Point origin{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
  const Point direction = std::polar(1.0, rng.uniform(0.0, std::numbers::pi));
  std::vector<Point> z(n);
  for (auto& p : z) p = origin + rng.uniform(-1.0, 1.0) * direction;
  std::optional<Polygon> poly;
  try {
    poly.emplace(std::move(z));
  } catch (const Error&) {
    return std::nullopt;
  }
  const double d = diameter(*poly);
  for (std::size_t i = 0; i < n; ++i) {
    const double off = std::abs(star_function((*poly)[0], (*poly)[1], (*poly)[i]));
    if (off > 1e-9 * d * d) return std::nullopt;
  }
  return poly;
}

std::optional<Polygon> try_points(std::size_t n, SplitMix64& rng) {
  std::vector<Point> z(n);
  for (auto& p : z) p = Point{rng.uniform(), rng.uniform()};
  try {
    return Polygon(std::move(z));
  } catch (const Error&) {
    return std::nullopt;
  }
}

Polygon from_fixture(std::span<const std::array<double, 2>> coords) {
  std::vector<Point> z;
  z.reserve(coords.size());
  for (const auto& c : coords) z.emplace_back(c[0], c[1]);
  return Polygon(std::move(z));
}

}  // namespace

std::string_view to_string(GeneratorKind kind) {
  for (const auto& [k, name] : kNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::optional<GeneratorKind> generator_kind_from_string(std::string_view s) {
  for (const auto& [k, name] : kNames) {
    if (name == s) return k;
  }
  return std::nullopt;
}

Polygon generate(const GeneratorSpec& spec, std::uint64_t seed) {
  switch (spec.kind) {
    case GeneratorKind::Boomerang: return from_fixture(fixtures::kBoomerang);
    case GeneratorKind::EmbeddedLoss: return from_fixture(fixtures::kEmbeddedLoss);
    case GeneratorKind::Elongated: return from_fixture(fixtures::kElongated);
    default: break;
  }

  if (spec.n < 3 || spec.n > kMaxVertices) {
    throw Error(ErrorCode::InvalidArgument,
                "generator vertex count must be in [3, 1000], got " + std::to_string(spec.n));
  }
  if (spec.kind == GeneratorKind::Regular) return Polygon(regular(spec.n));
  if (spec.kind == GeneratorKind::RandomStar &&
      !(spec.r_min > 0.0 && spec.r_min <= spec.r_max && std::isfinite(spec.r_max))) {
    throw Error(ErrorCode::InvalidArgument, "star radius range must satisfy 0 < r_min <= r_max");
  }

  SplitMix64 rng(seed);
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::optional<Polygon> poly;
    switch (spec.kind) {
      case GeneratorKind::RandomStar: poly = try_star(spec, rng); break;
      case GeneratorKind::RandomConvex: poly = try_convex(spec.n, rng); break;
      case GeneratorKind::Collinear: poly = try_collinear(spec.n, rng); break;
      case GeneratorKind::RandomPoints: poly = try_points(spec.n, rng); break;
      default: break;
    }
    if (poly) return *poly;
  }
  throw Error(ErrorCode::GenerationFailed, std::string(to_string(spec.kind)) + " generator gave up after " +
                                               std::to_string(kMaxAttempts) + " attempts");
}

Polygon with_flat_vertex(const Polygon& poly, std::size_t edge, double fraction) {
  if (edge >= poly.size() || !(fraction > 0.0 && fraction < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "flat vertex needs a valid edge and a fraction in (0, 1)");
  }
  std::vector<Point> z(poly.vertices().begin(), poly.vertices().end());
  const Point a = poly[static_cast<std::ptrdiff_t>(edge)];
  const Point b = poly[static_cast<std::ptrdiff_t>(edge) + 1];
  z.insert(z.begin() + static_cast<std::ptrdiff_t>(edge) + 1, a + fraction * (b - a));
  return Polygon(std::move(z));
}

Polygon normalized_to_unit_diameter(const Polygon& poly) {
  const Point c = centroid(poly);
  const double d = diameter(poly);
  std::vector<Point> z(poly.vertices().begin(), poly.vertices().end());
  for (auto& p : z) p = (p - c) / d + c;
  return Polygon(std::move(z));
}

}  // namespace polyflow
