#include "dirint/sh.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "dirint/error.hpp"

namespace dirint {

namespace {

constexpr double kPi = std::numbers::pi;

void check_order(int order) {
  if (order < 0 || order > kMaxOrder) {
    throw Error(ErrorKind::OrderOverflow,
                "SH order " + std::to_string(order) + " outside [0, " +
                    std::to_string(kMaxOrder) + "]");
  }
}

double wrap_azimuth(double phi) {
  double wrapped = std::fmod(phi + kPi, 2.0 * kPi);
  if (wrapped < 0.0) wrapped += 2.0 * kPi;
  wrapped -= kPi;
  // fmod can land exactly on +pi after rounding
  if (wrapped >= kPi) wrapped -= 2.0 * kPi;
  return wrapped;
}

// Normalized associated Legendre values
//   y_n^m(x) = sqrt((2n+1)/(4pi) (n-m)!/(n+m)!) P_n^m(x),  0 <= m <= n <= order,
// Condon-Shortley phase included, stored at index q(n, m).
void normalized_legendre(int order, double x, double s, std::span<double> y) {
  y[0] = 1.0 / std::sqrt(4.0 * kPi);
  double ymm = y[0];
  for (int m = 0; m <= order; ++m) {
    if (m > 0) {
      ymm = -std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * s * ymm;
      y[m * (m + 1) + m] = ymm;
    }
    if (m + 1 > order) break;
    double prev2 = ymm;
    double prev1 = std::sqrt(2.0 * m + 3.0) * x * ymm;
    y[(m + 1) * (m + 2) + m] = prev1;
    for (int n = m + 2; n <= order; ++n) {
      const double nn = n, mm = m;
      const double a = std::sqrt((4.0 * nn * nn - 1.0) / (nn * nn - mm * mm));
      const double b = std::sqrt(((nn - 1.0) * (nn - 1.0) - mm * mm) /
                                 (4.0 * (nn - 1.0) * (nn - 1.0) - 1.0));
      const double cur = a * (x * prev1 - b * prev2);
      y[n * (n + 1) + m] = cur;
      prev2 = prev1;
      prev1 = cur;
    }
  }
}

}  // namespace

SphericalDirection::SphericalDirection(double theta, double phi) {
  constexpr double slack = 1e-12;
  if (!std::isfinite(theta) || !std::isfinite(phi) || theta < -slack ||
      theta > kPi + slack) {
    throw Error(ErrorKind::Validation,
                "inclination must lie in [0, pi], got " + std::to_string(theta));
  }
  theta_ = std::clamp(theta, 0.0, kPi);
  phi_ = wrap_azimuth(phi);
}

SphericalDirection SphericalDirection::from_vector(const Vec3& v) {
  const double r = std::hypot(v[0], v[1], v[2]);
  if (!(r > 0.0)) {
    throw Error(ErrorKind::UndefinedDoa, "direction of a zero vector");
  }
  const double z = std::clamp(v[2] / r, -1.0, 1.0);
  return SphericalDirection(std::acos(z), std::atan2(v[1], v[0]));
}

Vec3 SphericalDirection::unit_vector() const noexcept {
  const double s = std::sin(theta_);
  return {s * std::cos(phi_), s * std::sin(phi_), std::cos(theta_)};
}

double angle_between(const Vec3& a, const Vec3& b) {
  const Vec3 cross{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
                   a[0] * b[1] - a[1] * b[0]};
  const double dot = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
  return std::atan2(std::hypot(cross[0], cross[1], cross[2]), dot);
}

double angle_between(const SphericalDirection& a, const SphericalDirection& b) {
  return angle_between(a.unit_vector(), b.unit_vector());
}

int sh_index(int n, int m) {
  if (n < 0 || m < -n || m > n) {
    throw Error(ErrorKind::InvalidDegree, "invalid SH index (n=" +
                                              std::to_string(n) + ", m=" +
                                              std::to_string(m) + ")");
  }
  return n * (n + 1) + m;
}

DegreeOrder sh_degree_order(int q) {
  if (q < 0) {
    throw Error(ErrorKind::InvalidDegree,
                "negative SH linear index " + std::to_string(q));
  }
  int n = static_cast<int>(std::sqrt(static_cast<double>(q)));
  while (n * n > q) --n;
  while ((n + 1) * (n + 1) <= q) ++n;
  return {n, q - n * (n + 1)};
}

ShVector::ShVector(int order) : order_(order) {
  check_order(order);
  coeffs_.assign(static_cast<std::size_t>(sh_count(order)), cplx{});
}

ShVector::ShVector(int order, std::vector<cplx> coeffs)
    : order_(order), coeffs_(std::move(coeffs)) {
  check_order(order);
  if (coeffs_.size() != static_cast<std::size_t>(sh_count(order))) {
    throw Error(ErrorKind::Validation,
                "order-" + std::to_string(order) + " SH vector needs " +
                    std::to_string(sh_count(order)) + " coefficients, got " +
                    std::to_string(coeffs_.size()));
  }
}

cplx& ShVector::at(int n, int m) {
  const int q = sh_index(n, m);
  if (n > order_) {
    throw Error(ErrorKind::InvalidDegree, "degree above vector order");
  }
  return coeffs_[static_cast<std::size_t>(q)];
}

const cplx& ShVector::at(int n, int m) const {
  return const_cast<ShVector*>(this)->at(n, m);
}

ShVector ShVector::zero_padded(int order) const {
  if (order < order_) {
    throw Error(ErrorKind::OrderMismatch, "cannot zero-pad to a lower order");
  }
  ShVector out(order);
  std::copy(coeffs_.begin(), coeffs_.end(), out.coeffs_.begin());
  return out;
}

bool ShVector::is_conjugate_symmetric(double tol) const {
  for (int n = 0; n <= order_; ++n) {
    for (int m = 0; m <= n; ++m) {
      const cplx pos = coeffs_[static_cast<std::size_t>(n * (n + 1) + m)];
      const cplx neg = coeffs_[static_cast<std::size_t>(n * (n + 1) - m)];
      const double sign = (m % 2 == 0) ? 1.0 : -1.0;
      if (std::abs(neg - sign * std::conj(pos)) > tol) return false;
    }
  }
  return true;
}

void eval_sh_all(int order, const SphericalDirection& dir, std::span<cplx> out) {
  check_order(order);
  const std::size_t count = static_cast<std::size_t>(sh_count(order));
  if (out.size() < count) {
    throw Error(ErrorKind::Validation, "output span too small for SH values");
  }
  std::array<double, sh_count(kMaxOrder)> legendre{};
  normalized_legendre(order, std::cos(dir.theta()), std::sin(dir.theta()),
                      legendre);
  for (int m = 0; m <= order; ++m) {
    const cplx phase = std::polar(1.0, m * dir.phi());
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    for (int n = m; n <= order; ++n) {
      const cplx y = legendre[static_cast<std::size_t>(n * (n + 1) + m)] * phase;
      out[static_cast<std::size_t>(n * (n + 1) + m)] = y;
      if (m > 0) out[static_cast<std::size_t>(n * (n + 1) - m)] = sign * std::conj(y);
    }
  }
}

std::vector<cplx> eval_sh_all(int order, const SphericalDirection& dir) {
  check_order(order);
  std::vector<cplx> out(static_cast<std::size_t>(sh_count(order)));
  eval_sh_all(order, dir, out);
  return out;
}

cplx eval_sh(int n, int m, const SphericalDirection& dir) {
  const int q = sh_index(n, m);
  check_order(n);
  std::array<cplx, sh_count(kMaxOrder)> values{};
  eval_sh_all(n, dir, values);
  return values[static_cast<std::size_t>(q)];
}

cplx synthesize_at(const ShVector& f, const SphericalDirection& dir) {
  std::array<cplx, sh_count(kMaxOrder)> values{};
  eval_sh_all(f.order(), dir, values);
  cplx sum{};
  for (std::size_t q = 0; q < f.size(); ++q) sum += f[q] * values[q];
  return sum;
}

cplx inner_product(const ShVector& f, const ShVector& g) {
  const std::size_t common = std::min(f.size(), g.size());
  cplx sum{};
  for (std::size_t q = 0; q < common; ++q) sum += std::conj(g[q]) * f[q];
  return sum;
}

ShVector plane_wave_coefficients(int order, const SphericalDirection& dir) {
  ShVector a(order);
  eval_sh_all(order, dir, a.coeffs());
  for (auto& c : a.coeffs()) c = std::conj(c);
  return a;
}

}  // namespace dirint
