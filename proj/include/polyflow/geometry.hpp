#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

namespace polyflow {

/// A point (or a planar vector) in the complex plane.
using Point = std::complex<double>;

/// Relative tolerance of the degeneracy tests. Quantities that scale with
/// squared length (F, H, orientation) are compared against
/// kRelTol * scale^2.
inline constexpr double kRelTol = 1e-12;

/// An n-gon: a closed circuit through n >= 3 pairwise distinct, finite
/// vertices. Indices are cyclic.
class Polygon {
 public:
  /// Throws Error(InvalidPolygon) for n < 3, non-finite coordinates or
  /// exactly repeated vertices.
  explicit Polygon(std::vector<Point> vertices);

  std::size_t size() const noexcept { return vertices_.size(); }
  std::span<const Point> vertices() const noexcept { return vertices_; }

  /// Cyclic access: any integer index is reduced modulo n.
  const Point& operator[](std::ptrdiff_t i) const noexcept;

  Polygon reversed() const;
  Polygon translated(Point offset) const;

  friend bool operator==(const Polygon&, const Polygon&) = default;

 private:
  std::vector<Point> vertices_;
};

struct Circumcircle {
  Point center;
  double radius;
};

enum class StarTag { CcwStar, CwStar, NotStar };

struct StarClass {
  StarTag tag;
  std::vector<double> angles;  // alpha_i in (-pi, pi], from z_i to z_{i+1} about the centroid
  std::vector<double> radii;   // r_i = |z_i - centroid|
};

enum class ConvexityTag { StrictlyConvex, Convex, NotConvex };

struct ConvexityClass {
  ConvexityTag tag;
  /// beta_i in [0, 2pi), measured on the counterclockwise-oriented polygon
  /// but indexed by the caller's vertex numbering.
  std::vector<double> internal_angles;
  /// H_i on the counterclockwise-oriented polygon, caller's indexing.
  std::vector<double> h_values;
};

// Vertex-set measures. These accept raw spans so they also apply to
// intermediate states that are not valid polygons.
Point centroid(std::span<const Point> z);
double perimeter(std::span<const Point> z);
double signed_area(std::span<const Point> z);
double diameter(std::span<const Point> z);
double min_edge_length(std::span<const Point> z);

inline Point centroid(const Polygon& p) { return centroid(p.vertices()); }
inline double perimeter(const Polygon& p) { return perimeter(p.vertices()); }
inline double signed_area(const Polygon& p) { return signed_area(p.vertices()); }
inline double diameter(const Polygon& p) { return diameter(p.vertices()); }
inline double min_edge_length(const Polygon& p) { return min_edge_length(p.vertices()); }

/// F = Im{ conj(a - b) (c - b) } = r1 r2 sin(alpha), alpha the counterclockwise
/// angle at b from ray b->a to ray b->c.
double star_function(Point a, Point b, Point c);

/// H = Im{ (prev - v) conj(next - v) } = rho1 rho2 sin(beta), beta the internal
/// angle at v of a counterclockwise-numbered polygon.
double convex_function(Point prev, Point v, Point next);

/// Internal angle beta at v in [0, 2pi), assuming counterclockwise numbering.
double internal_angle(Point prev, Point v, Point next);

/// F_i about the centroid for consecutive vertex pairs (z_i, z_{i+1}).
std::vector<double> star_values(std::span<const Point> z);
/// H_i for consecutive triples (z_{i-1}, z_i, z_{i+1}), raw numbering.
std::vector<double> convex_values(std::span<const Point> z);

StarClass classify_star(const Polygon& poly);
ConvexityClass classify_convexity(const Polygon& poly);
bool is_simple(const Polygon& poly);

/// Circle through three points; std::nullopt when they are collinear
/// (|F| <= kRelTol * scale^2 with scale the largest pairwise distance).
std::optional<Circumcircle> circumcircle(Point a, Point b, Point c);

}  // namespace polyflow
