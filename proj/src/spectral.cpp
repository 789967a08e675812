#include "polyflow/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "polyflow/error.hpp"

namespace polyflow {

namespace {

// Flat-ellipse snap: the conjugate modes of collinear data agree to
// round-off, so |c_2| and |c_n| differ only at this relative level.
constexpr double kFlatEllipseTol = 1e-10;

// omega^{power}, with the exponent reduced modulo n so large products
// (i * k) do not lose accuracy in the angle.
std::complex<double> root_of_unity(std::size_t n, std::ptrdiff_t power) {
  const auto nn = static_cast<std::ptrdiff_t>(n);
  const std::ptrdiff_t r = ((power % nn) + nn) % nn;
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(n);
  return std::polar(1.0, angle);
}

}  // namespace

std::vector<double> eigenvalues(std::size_t n) {
  if (n < 3) throw Error(ErrorCode::InvalidArgument, "eigenvalues need n >= 3");
  std::vector<double> out(n);
  // cos(2 pi k / n) - 1 = -2 sin^2(pi m / n) with m = min(k, n - k): no
  // cancellation for slow modes, and conjugate pairs are bit-identical.
  for (std::size_t k = 0; k < n; ++k) {
    const double s = std::sin(std::numbers::pi * static_cast<double>(std::min(k, n - k)) / static_cast<double>(n));
    out[k] = -2.0 * s * s;
  }
  out[0] = 0.0;  // not -0.0
  return out;
}

SpectralDecomposition decompose(std::span<const Point> z) {
  const std::size_t n = z.size();
  SpectralDecomposition out{n, eigenvalues(n), std::vector<std::complex<double>>(n)};
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> sum{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
      sum += z[i] * root_of_unity(n, -static_cast<std::ptrdiff_t>(i * k));
    }
    out.modal_coeffs[k] = sum / static_cast<double>(n);
  }
  return out;
}

std::vector<Point> reconstruct(const SpectralDecomposition& decomp) {
  return closed_form_state(decomp, 0.0);
}

std::vector<Point> closed_form_state(const SpectralDecomposition& decomp, double t) {
  if (!(t >= 0.0)) throw Error(ErrorCode::InvalidArgument, "closed_form_state needs t >= 0");
  const std::size_t n = decomp.n;
  std::vector<std::complex<double>> decayed(n);
  for (std::size_t k = 0; k < n; ++k) {
    decayed[k] = decomp.modal_coeffs[k] * std::exp(decomp.eigenvalues[k] * t);
  }
  std::vector<Point> z(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::complex<double> sum{0.0, 0.0};
    for (std::size_t k = 0; k < n; ++k) {
      sum += decayed[k] * root_of_unity(n, static_cast<std::ptrdiff_t>(i * k));
    }
    z[i] = sum;
  }
  return z;
}

double leading_mode_magnitude(const SpectralDecomposition& decomp) {
  return std::abs(decomp.modal_coeffs[1]) + std::abs(decomp.modal_coeffs[decomp.n - 1]);
}

EllipseParams limit_ellipse(const SpectralDecomposition& decomp) {
  const auto c2 = decomp.modal_coeffs[1];
  const auto cn = decomp.modal_coeffs[decomp.n - 1];
  const double a = std::abs(c2);
  const double b = std::abs(cn);

  double shape_scale = 0.0;
  for (std::size_t k = 1; k < decomp.n; ++k) shape_scale += std::abs(decomp.modal_coeffs[k]);
  if (a + b <= kRelTol * shape_scale || a + b == 0.0) {
    throw Error(ErrorCode::DegenerateLeadingMode,
                "the slowest modes vanish; the limit shape is set by faster modes");
  }

  EllipseParams out;
  out.semi_major = 1.0;
  const double minor = std::abs(a - b) / (a + b);
  out.semi_minor = minor <= kFlatEllipseTol ? 0.0 : minor;
  double theta = 0.5 * (std::arg(c2) + std::arg(cn));
  theta = std::fmod(theta, std::numbers::pi);
  if (theta < 0.0) theta += std::numbers::pi;
  if (theta >= std::numbers::pi) theta = 0.0;
  out.orientation = theta;
  return out;
}

double ellipse_residual(std::span<const Point> z, const EllipseParams& ellipse) {
  const auto decomp = decompose(z);
  const double scale = leading_mode_magnitude(decomp);
  const Point c = decomp.modal_coeffs[0];
  const std::complex<double> unrotate = std::polar(1.0, -ellipse.orientation);

  double sum_sq = 0.0;
  for (const auto& zi : z) {
    const Point w = ((zi - c) / scale - ellipse.center) * unrotate;
    double dist = 0.0;
    if (ellipse.semi_minor == 0.0) {
      dist = std::abs(w.imag());
    } else {
      const double x = w.real() / ellipse.semi_major;
      const double y = w.imag() / ellipse.semi_minor;
      dist = std::abs(x * x + y * y - 1.0);
    }
    sum_sq += dist * dist;
  }
  return std::sqrt(sum_sq / static_cast<double>(z.size()));
}

}  // namespace polyflow
