#pragma once

#include <complex>
#include <span>
#include <vector>

#include "polyflow/geometry.hpp"

namespace polyflow {

// Modal analysis of the linear scheme zdot = A z, A = circ(-1, 1/2, 0, ..., 0, 1/2).
//
// A is circulant, so the Fourier vectors (omega^{(i-1)(k-1)})_i with
// omega = exp(2 pi j / n) are its eigenvectors and
//   lambda_k = q_A(omega^{k-1}) = cos(2 pi (k-1) / n) - 1.
// Writing z_i = sum_k c_k omega^{(i-1)(k-1)}, every mode evolves independently:
//   z_i(t) = sum_k c_k exp(lambda_k t) omega^{(i-1)(k-1)}.
// Modes k = 2 and k = n share the slowest nonzero rate; together they trace an
// ellipse, which is the shape the polygon tends to as it collapses onto the
// stationary centroid c_1.
//
// Indices in this header are zero-based: eigenvalues[0] is lambda_1 and
// modal_coeffs[0] is c_1.

struct SpectralDecomposition {
  std::size_t n = 0;
  std::vector<double> eigenvalues;
  std::vector<std::complex<double>> modal_coeffs;
};

struct EllipseParams {
  Point center{0.0, 0.0};
  double semi_major = 0.0;
  double semi_minor = 0.0;
  double orientation = 0.0;  // radians in [0, pi)
};

/// lambda_k = cos(2 pi k / n) - 1 for k = 0..n-1. Throws for n < 3.
std::vector<double> eigenvalues(std::size_t n);

/// Direct O(n^2) DFT: c_k = (1/n) sum_i z_i omega^{-ik}.
SpectralDecomposition decompose(std::span<const Point> z);
inline SpectralDecomposition decompose(const Polygon& p) { return decompose(p.vertices()); }

/// Inverse transform of the modal coefficients.
std::vector<Point> reconstruct(const SpectralDecomposition& decomp);

/// Exact solution of the linear scheme at time t >= 0. Returned as raw
/// vertices: for large t they coincide numerically with the centroid.
std::vector<Point> closed_form_state(const SpectralDecomposition& decomp, double t);

/// Limit shape spanned by the slowest modes, normalized to semi_major = 1
/// and centered at the origin. Throws Error(DegenerateLeadingMode) when
/// |c_2| + |c_n| is negligible next to the other non-constant modes.
EllipseParams limit_ellipse(const SpectralDecomposition& decomp);

/// |c_2| + |c_n|: the amplitude of the slowest modes.
double leading_mode_magnitude(const SpectralDecomposition& decomp);

/// RMS mismatch of the normalized polygon shape (centroid removed, scaled
/// so that |c_2| + |c_n| = 1) against the ellipse. Uses the algebraic
/// distance |(x/a)^2 + (y/b)^2 - 1| in the ellipse frame; for a flat
/// ellipse (b = 0) the perpendicular distance to the major axis.
double ellipse_residual(std::span<const Point> z, const EllipseParams& ellipse);
inline double ellipse_residual(const Polygon& p, const EllipseParams& e) {
  return ellipse_residual(p.vertices(), e);
}

}  // namespace polyflow
