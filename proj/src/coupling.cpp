#include "dirint/coupling.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

#include "dirint/error.hpp"

namespace dirint {

namespace {

// Degrees up to this bound use the exact factorial table (all arguments of the
// Racah sum stay <= 3*6+1 = 19, exactly representable in double).
constexpr int kExactFactorialDegree = 6;

constexpr std::array<double, 23> make_factorials() {
  std::array<double, 23> f{};
  f[0] = 1.0;
  for (std::size_t i = 1; i < f.size(); ++i) f[i] = f[i - 1] * static_cast<double>(i);
  return f;
}
constexpr auto kFactorial = make_factorials();

double log_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

double racah_exact(int j1, int j2, int j3, int m1, int m2, int m3, int kmin, int kmax) {
  const auto F = [](int n) { return kFactorial[static_cast<std::size_t>(n)]; };
  const double triangle = F(j1 + j2 - j3) * F(j1 - j2 + j3) * F(-j1 + j2 + j3) /
                          F(j1 + j2 + j3 + 1);
  const double orders = F(j1 + m1) * F(j1 - m1) * F(j2 + m2) * F(j2 - m2) *
                        F(j3 + m3) * F(j3 - m3);
  double sum = 0.0;
  for (int k = kmin; k <= kmax; ++k) {
    const double denom = F(k) * F(j3 - j2 + k + m1) * F(j3 - j1 + k - m2) *
                         F(j1 + j2 - j3 - k) * F(j1 - k - m1) * F(j2 - k + m2);
    sum += ((k % 2 == 0) ? 1.0 : -1.0) / denom;
  }
  return std::sqrt(triangle * orders) * sum;
}

double racah_log(int j1, int j2, int j3, int m1, int m2, int m3, int kmin, int kmax) {
  const double log_prefactor =
      0.5 * (log_factorial(j1 + j2 - j3) + log_factorial(j1 - j2 + j3) +
             log_factorial(-j1 + j2 + j3) - log_factorial(j1 + j2 + j3 + 1) +
             log_factorial(j1 + m1) + log_factorial(j1 - m1) + log_factorial(j2 + m2) +
             log_factorial(j2 - m2) + log_factorial(j3 + m3) + log_factorial(j3 - m3));
  double sum = 0.0;
  for (int k = kmin; k <= kmax; ++k) {
    const double log_denom = log_factorial(k) + log_factorial(j3 - j2 + k + m1) +
                             log_factorial(j3 - j1 + k - m2) +
                             log_factorial(j1 + j2 - j3 - k) + log_factorial(j1 - k - m1) +
                             log_factorial(j2 - k + m2);
    sum += ((k % 2 == 0) ? 1.0 : -1.0) * std::exp(log_prefactor - log_denom);
  }
  return sum;
}

}  // namespace

double wigner3j(int j1, int j2, int j3, int m1, int m2, int m3) {
  if (j1 < 0 || j2 < 0 || j3 < 0) return 0.0;
  if (m1 + m2 + m3 != 0) return 0.0;
  if (std::abs(m1) > j1 || std::abs(m2) > j2 || std::abs(m3) > j3) return 0.0;
  if (j3 < std::abs(j1 - j2) || j3 > j1 + j2) return 0.0;
  // (j1 j2 j3; 0 0 0) vanishes for odd j1+j2+j3
  if (m1 == 0 && m2 == 0 && (j1 + j2 + j3) % 2 != 0) return 0.0;

  const int kmin = std::max({0, j2 - j3 - m1, j1 - j3 + m2});
  const int kmax = std::min({j1 + j2 - j3, j1 - m1, j2 + m2});
  if (kmin > kmax) return 0.0;

  const double sign = ((j1 - j2 - m3) % 2 == 0) ? 1.0 : -1.0;
  const bool exact = std::max({j1, j2, j3}) <= kExactFactorialDegree;
  return sign * (exact ? racah_exact(j1, j2, j3, m1, m2, m3, kmin, kmax)
                       : racah_log(j1, j2, j3, m1, m2, m3, kmin, kmax));
}

double gaunt(int q1, int q2, int q) {
  if (q2 < q1) std::swap(q1, q2);
  const auto [n1, m1] = sh_degree_order(q1);
  const auto [n2, m2] = sh_degree_order(q2);
  const auto [n, m] = sh_degree_order(q);
  if (m != m1 + m2) return 0.0;
  if ((n + n1 + n2) % 2 != 0) return 0.0;
  if (n < std::abs(n1 - n2) || n > n1 + n2) return 0.0;

  const double norm = std::sqrt((2.0 * n + 1.0) * (2.0 * n1 + 1.0) * (2.0 * n2 + 1.0) /
                                (4.0 * std::numbers::pi));
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;
  return sign * norm * wigner3j(n, n1, n2, -m, m1, m2) * wigner3j(n, n1, n2, 0, 0, 0);
}

ShVector product_expand(const ShVector& f, const ShVector& g) {
  const int order = f.order() + g.order();
  if (order > kMaxOrder) {
    throw Error(ErrorKind::OrderOverflow,
                "product order " + std::to_string(order) + " exceeds cap " +
                    std::to_string(kMaxOrder));
  }
  ShVector d(order);
  for (int q1 = 0; q1 < static_cast<int>(f.size()); ++q1) {
    const cplx fq = f[static_cast<std::size_t>(q1)];
    if (fq == cplx{}) continue;
    const auto [n1, m1] = sh_degree_order(q1);
    for (int q2 = 0; q2 < static_cast<int>(g.size()); ++q2) {
      const cplx gq = g[static_cast<std::size_t>(q2)];
      if (gq == cplx{}) continue;
      const auto [n2, m2] = sh_degree_order(q2);
      const int m = m1 + m2;
      for (int n = std::abs(n1 - n2); n <= n1 + n2; n += 2) {
        if (std::abs(m) > n) continue;
        const int q = n * (n + 1) + m;
        d[static_cast<std::size_t>(q)] += gaunt(q1, q2, q) * fq * gq;
      }
    }
  }
  return d;
}

DipoleCoefficients DipoleCoefficients::standard() {
  const double r = std::sqrt(2.0 * std::numbers::pi / 3.0);
  return {cplx{r, 0.0}, cplx{-r, 0.0}, cplx{0.0, r}, cplx{0.0, r},
          cplx{std::sqrt(4.0 * std::numbers::pi / 3.0), 0.0}};
}

ShVector dipole_vector(int axis) {
  const auto d = DipoleCoefficients::standard();
  ShVector v(1);
  switch (axis) {
    case 0: v[1] = d.x1; v[3] = d.x3; break;
    case 1: v[1] = d.y1; v[3] = d.y3; break;
    case 2: v[2] = d.z2; break;
    default: throw Error(ErrorKind::Validation, "axis must be 0, 1 or 2");
  }
  return v;
}

const ComplexMatrix& CouplingMatrices::axis(int a) const {
  switch (a) {
    case 0: return ax;
    case 1: return ay;
    case 2: return az;
    default: throw Error(ErrorKind::Validation, "axis must be 0, 1 or 2");
  }
}

ShVector CouplingMatrices::apply(int a, const ShVector& w) const {
  if (w.order() != order) {
    throw Error(ErrorKind::OrderMismatch,
                "pattern order " + std::to_string(w.order()) +
                    " does not match coupling order " + std::to_string(order));
  }
  const ComplexMatrix& mat = axis(a);
  ShVector out(order + 1);
  for (std::size_t i = 0; i < mat.rows(); ++i) {
    cplx sum{};
    for (std::size_t j = 0; j < mat.cols(); ++j) sum += mat(i, j) * w[j];
    out[i] = sum;
  }
  return out;
}

CouplingMatrices velocity_coupling_matrices(int order) {
  if (order < 0 || order + 1 > kMaxOrder) {
    throw Error(ErrorKind::OrderOverflow,
                "coupling order must lie in [0, " + std::to_string(kMaxOrder - 1) +
                    "], got " + std::to_string(order));
  }
  const auto d = DipoleCoefficients::standard();
  const std::size_t rows = static_cast<std::size_t>(sh_count(order + 1));
  const std::size_t cols = static_cast<std::size_t>(sh_count(order));
  CouplingMatrices out{order, ComplexMatrix(rows, cols), ComplexMatrix(rows, cols),
                       ComplexMatrix(rows, cols)};
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const int qi = static_cast<int>(i), qj = static_cast<int>(j);
      const double g1 = gaunt(qj, 1, qi);
      const double g2 = gaunt(qj, 2, qi);
      const double g3 = gaunt(qj, 3, qi);
      out.ax(i, j) = d.x1 * g1 + d.x3 * g3;
      out.ay(i, j) = d.y1 * g1 + d.y3 * g3;
      out.az(i, j) = d.z2 * g2;
    }
  }
  return out;
}

}  // namespace dirint
