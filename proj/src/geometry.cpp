#include "polyflow/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "polyflow/error.hpp"

namespace polyflow {

namespace {

double cross(Point u, Point v) { return u.real() * v.imag() - u.imag() * v.real(); }
double dot(Point u, Point v) { return u.real() * v.real() + u.imag() * v.imag(); }

int sign_with_tol(double x, double tol) {
  if (x > tol) return 1;
  if (x < -tol) return -1;
  return 0;
}

// p lies (within tol) in the bounding box of segment ab; only called when p
// is already known to be on the supporting line.
bool within_box(Point a, Point b, Point p, double tol) {
  return p.real() <= std::max(a.real(), b.real()) + tol &&
         p.real() >= std::min(a.real(), b.real()) - tol &&
         p.imag() <= std::max(a.imag(), b.imag()) + tol &&
         p.imag() >= std::min(a.imag(), b.imag()) - tol;
}

bool segments_touch(Point p1, Point p2, Point p3, Point p4, double area_tol, double len_tol) {
  const int d1 = sign_with_tol(cross(p4 - p3, p1 - p3), area_tol);
  const int d2 = sign_with_tol(cross(p4 - p3, p2 - p3), area_tol);
  const int d3 = sign_with_tol(cross(p2 - p1, p3 - p1), area_tol);
  const int d4 = sign_with_tol(cross(p2 - p1, p4 - p1), area_tol);
  if (d1 * d2 < 0 && d3 * d4 < 0) return true;
  if (d1 == 0 && within_box(p3, p4, p1, len_tol)) return true;
  if (d2 == 0 && within_box(p3, p4, p2, len_tol)) return true;
  if (d3 == 0 && within_box(p1, p2, p3, len_tol)) return true;
  if (d4 == 0 && within_box(p1, p2, p4, len_tol)) return true;
  return false;
}

}  // namespace

Polygon::Polygon(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.size() < 3) {
    throw Error(ErrorCode::InvalidPolygon, "a polygon needs at least 3 vertices, got " +
                                               std::to_string(vertices_.size()));
  }
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (!std::isfinite(vertices_[i].real()) || !std::isfinite(vertices_[i].imag())) {
      throw Error(ErrorCode::InvalidPolygon, "vertex " + std::to_string(i) + " is not finite");
    }
  }
  std::vector<Point> sorted = vertices_;
  auto lex = [](Point a, Point b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  };
  std::sort(sorted.begin(), sorted.end(), lex);
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(ErrorCode::InvalidPolygon, "vertices must be pairwise distinct");
  }
}

const Point& Polygon::operator[](std::ptrdiff_t i) const noexcept {
  const auto n = static_cast<std::ptrdiff_t>(vertices_.size());
  return vertices_[static_cast<std::size_t>(((i % n) + n) % n)];
}

Polygon Polygon::reversed() const {
  return Polygon(std::vector<Point>(vertices_.rbegin(), vertices_.rend()));
}

Polygon Polygon::translated(Point offset) const {
  std::vector<Point> out = vertices_;
  for (auto& z : out) z += offset;
  return Polygon(std::move(out));
}

Point centroid(std::span<const Point> z) {
  Point sum{0.0, 0.0};
  for (const auto& p : z) sum += p;
  return sum / static_cast<double>(z.size());
}

double perimeter(std::span<const Point> z) {
  const std::size_t n = z.size();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) total += std::abs(z[(i + 1) % n] - z[i]);
  return total;
}

double signed_area(std::span<const Point> z) {
  // Positive and negative terms are summed separately in order of magnitude,
  // so relabelling or reversing the vertices gives the same (negated) value.
  const std::size_t n = z.size();
  std::vector<double> pos, neg;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = cross(z[i], z[(i + 1) % n]);
    (t >= 0.0 ? pos : neg).push_back(std::abs(t));
  }
  std::sort(pos.begin(), pos.end());
  std::sort(neg.begin(), neg.end());
  double p = 0.0, q = 0.0;
  for (double t : pos) p += t;
  for (double t : neg) q += t;
  return 0.5 * (p - q);
}

double diameter(std::span<const Point> z) {
  double best = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    for (std::size_t j = i + 1; j < z.size(); ++j) best = std::max(best, std::abs(z[i] - z[j]));
  }
  return best;
}

double min_edge_length(std::span<const Point> z) {
  const std::size_t n = z.size();
  double best = std::abs(z[1 % n] - z[0]);
  for (std::size_t i = 1; i < n; ++i) best = std::min(best, std::abs(z[(i + 1) % n] - z[i]));
  return best;
}

double star_function(Point a, Point b, Point c) { return cross(a - b, c - b); }

double convex_function(Point prev, Point v, Point next) {
  const Point u = prev - v;
  const Point w = next - v;
  return u.imag() * w.real() - u.real() * w.imag();
}

double internal_angle(Point prev, Point v, Point next) {
  const Point u = prev - v;
  const Point w = next - v;
  // arg of u * conj(w)
  double beta = std::atan2(convex_function(prev, v, next), dot(u, w));
  if (beta < 0.0) beta += 2.0 * std::numbers::pi;
  return beta;
}

std::vector<double> star_values(std::span<const Point> z) {
  const std::size_t n = z.size();
  const Point c = centroid(z);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = cross(z[i] - c, z[(i + 1) % n] - c);
  return out;
}

std::vector<double> convex_values(std::span<const Point> z) {
  const std::size_t n = z.size();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = convex_function(z[(i + n - 1) % n], z[i], z[(i + 1) % n]);
  }
  return out;
}

StarClass classify_star(const Polygon& poly) {
  const auto z = poly.vertices();
  const std::size_t n = z.size();
  const Point c = centroid(z);
  StarClass out{StarTag::NotStar, std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) out.radii[i] = std::abs(z[i] - c);

  const double r_tol = kRelTol * diameter(z);
  bool degenerate = false;
  for (double r : out.radii) degenerate = degenerate || r <= r_tol;
  if (degenerate) return out;

  bool all_pos = true;
  bool all_neg = true;
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = z[i] - c;
    const Point b = z[(i + 1) % n] - c;
    const double alpha = std::atan2(cross(a, b), dot(a, b));
    out.angles[i] = alpha;
    sum += alpha;
    all_pos = all_pos && alpha > 0.0;
    all_neg = all_neg && alpha < 0.0;
  }
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  if (all_pos && std::abs(sum - kTwoPi) <= 1e-9) out.tag = StarTag::CcwStar;
  if (all_neg && std::abs(sum + kTwoPi) <= 1e-9) out.tag = StarTag::CwStar;
  return out;
}

ConvexityClass classify_convexity(const Polygon& poly) {
  const auto z = poly.vertices();
  const std::size_t n = z.size();
  const bool ccw = signed_area(z) >= 0.0;
  ConvexityClass out{ConvexityTag::NotConvex, std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    Point prev = z[(i + n - 1) % n];
    Point next = z[(i + 1) % n];
    if (!ccw) std::swap(prev, next);
    out.h_values[i] = convex_function(prev, z[i], next);
    out.internal_angles[i] = internal_angle(prev, z[i], next);
  }

  const double d = diameter(z);
  const double tol = kRelTol * d * d;
  bool all_strict = true;
  bool all_nonneg = true;
  bool any_strict = false;
  for (double h : out.h_values) {
    all_strict = all_strict && h > tol;
    all_nonneg = all_nonneg && h >= -tol;
    any_strict = any_strict || h > tol;
  }
  if (!(all_nonneg && any_strict) || !is_simple(poly)) return out;
  out.tag = all_strict ? ConvexityTag::StrictlyConvex : ConvexityTag::Convex;
  return out;
}

bool is_simple(const Polygon& poly) {
  const auto z = poly.vertices();
  const std::size_t n = z.size();
  const double scale = diameter(z);
  const double area_tol = kRelTol * scale * scale;
  const double len_tol = kRelTol * scale;

  for (std::size_t i = 0; i < n; ++i) {
    const Point a = z[i];
    const Point b = z[(i + 1) % n];
    for (std::size_t j = i + 1; j < n; ++j) {
      const Point c = z[j];
      const Point d = z[(j + 1) % n];
      const bool next_adjacent = j == i + 1;
      const bool wrap_adjacent = i == 0 && j == n - 1;
      if (next_adjacent || wrap_adjacent) {
        // Shared vertex s; the far endpoints p and q must not fold back onto
        // the same ray.
        const Point s = next_adjacent ? b : a;
        const Point p = next_adjacent ? a : b;
        const Point q = next_adjacent ? d : c;
        if (sign_with_tol(cross(p - s, q - s), area_tol) == 0 && dot(p - s, q - s) > 0.0) {
          return false;
        }
        continue;
      }
      if (segments_touch(a, b, c, d, area_tol, len_tol)) return false;
    }
  }
  return true;
}

std::optional<Circumcircle> circumcircle(Point a, Point b, Point c) {
  const double scale = std::max({std::abs(a - b), std::abs(b - c), std::abs(a - c)});
  const double f = star_function(a, b, c);
  if (std::abs(f) <= kRelTol * scale * scale) return std::nullopt;
  const Point u = a - b;
  const Point v = c - b;
  const double uu = std::norm(u);
  const double vv = std::norm(v);
  const double denom = 2.0 * f;
  const Point offset{(v.imag() * uu - u.imag() * vv) / denom, (u.real() * vv - v.real() * uu) / denom};
  return Circumcircle{b + offset, std::abs(offset)};
}

}  // namespace polyflow
