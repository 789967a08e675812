#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "polyflow/geometry.hpp"

namespace polyflow {

/// SplitMix64 (Steele, Lea & Flood): a 64-bit Weyl counter followed by a
/// fixed bit mixer. Fully specified here so generated polygons are identical
/// on every platform and standard library.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

 private:
  std::uint64_t state_;
};

enum class GeneratorKind {
  Regular,       // n vertices on the unit circle, counterclockwise
  RandomStar,    // counterclockwise star formation about the centroid
  RandomConvex,  // strictly convex, counterclockwise
  Collinear,     // n distinct points on a random line, random order
  RandomPoints,  // n uniform points in the unit square (may self-intersect)
  Boomerang,     // fixed simple polygon whose area initially grows
  EmbeddedLoss,  // fixed simple polygon that self-intersects under the linear flow
  Elongated,     // fixed thin polygon on which the bisector flow captures
};

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::Regular;
  std::size_t n = 0;  // ignored by the fixed fixtures
  double r_min = 0.5;  // RandomStar radius range
  double r_max = 1.5;
};

std::string_view to_string(GeneratorKind kind);
std::optional<GeneratorKind> generator_kind_from_string(std::string_view s);

/// Deterministic in (spec, seed). Each advertised shape property is checked
/// on the output; candidates failing it are redrawn, and after 1000 failed
/// attempts Error(GenerationFailed) is thrown. Error(InvalidArgument) for n
/// outside [3, 1000] or a bad radius range.
Polygon generate(const GeneratorSpec& spec, std::uint64_t seed);

/// Inserts a vertex on edge (z_edge, z_edge+1) at the given fraction in
/// (0, 1), producing a flat (beta = pi) vertex.
Polygon with_flat_vertex(const Polygon& poly, std::size_t edge, double fraction);

/// Uniformly rescales about the centroid so the diameter becomes 1.
Polygon normalized_to_unit_diameter(const Polygon& poly);

}  // namespace polyflow
