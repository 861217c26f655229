#pragma once

#include <complex>
#include <vector>

#include "dirint/sh.hpp"

namespace dirint {

/// Wigner-3j symbol (n n' n''; m m' m'') by the Racah sum. Selection-rule
/// failures (orders not summing to zero, triangle violation, |m| > n) return 0.
double wigner3j(int n1, int n2, int n3, int m1, int m2, int m3);

/// Gaunt coefficient G_{q'q''}^q = integral of Y_q' Y_q'' conj(Y_q).
/// Exactly symmetric in (q', q'').
double gaunt(int q1, int q2, int q);

/// Coefficients of the pointwise product f*g, of order f.order()+g.order().
ShVector product_expand(const ShVector& f, const ShVector& g);

/// Order-1 SH coefficients of the dipoles x, y, z of n(Omega); the x and y
/// dipoles live on q = 1, 3, the z dipole on q = 2.
struct DipoleCoefficients {
  cplx x1, x3, y1, y3, z2;
  static DipoleCoefficients standard();
};

/// Dipole component of n(Omega) as an order-1 SH vector (axis 0, 1, 2).
ShVector dipole_vector(int axis);

/// Dense row-major complex matrix.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  std::span<const cplx> data() const noexcept { return data_; }

  bool operator==(const ComplexMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

/// A_x, A_y, A_z mapping order-N pattern coefficients to the order-(N+1)
/// coefficients of the velocity patterns w(Omega) n(Omega). Shape of each is
/// (N+2)^2 x (N+1)^2; they depend on N only.
struct CouplingMatrices {
  int order = 0;
  ComplexMatrix ax, ay, az;

  const ComplexMatrix& axis(int a) const;
  /// A_axis w; w.order() must equal `order`.
  ShVector apply(int axis, const ShVector& w) const;

  bool operator==(const CouplingMatrices&) const = default;
};

/// Throws ErrorKind::OrderOverflow when N + 1 exceeds kMaxOrder.
CouplingMatrices velocity_coupling_matrices(int order);

}  // namespace dirint
