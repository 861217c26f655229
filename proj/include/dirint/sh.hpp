#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace dirint {

using cplx = std::complex<double>;
using Vec3 = std::array<double, 3>;

/// Highest spherical-harmonic order any coefficient vector may carry.
inline constexpr int kMaxOrder = 10;

constexpr int sh_count(int order) { return (order + 1) * (order + 1); }

/// Direction on the unit sphere: inclination theta from the north pole in
/// [0, pi], azimuth phi wrapped into [-pi, pi).
class SphericalDirection {
 public:
  SphericalDirection() = default;
  SphericalDirection(double theta, double phi);

  /// Direction of a non-zero cartesian vector.
  static SphericalDirection from_vector(const Vec3& v);

  double theta() const noexcept { return theta_; }
  double phi() const noexcept { return phi_; }

  /// n = [sin(theta)cos(phi), sin(theta)sin(phi), cos(theta)].
  Vec3 unit_vector() const noexcept;

 private:
  double theta_ = 0.0;
  double phi_ = 0.0;
};

/// Great-circle angle between two directions, radians in [0, pi].
double angle_between(const SphericalDirection& a, const SphericalDirection& b);
double angle_between(const Vec3& a, const Vec3& b);

struct DegreeOrder {
  int n;
  int m;
  bool operator==(const DegreeOrder&) const = default;
};

/// q = n(n+1)+m. Throws ErrorKind::InvalidDegree when |m| > n or n < 0.
int sh_index(int n, int m);
/// Inverse of sh_index: n = floor(sqrt(q)), m = q - n(n+1).
DegreeOrder sh_degree_order(int q);

/// Complex SH coefficients of a band-limited spherical function, linearly
/// indexed by q = n(n+1)+m. Length is always (order+1)^2.
class ShVector {
 public:
  ShVector() : ShVector(0) {}
  explicit ShVector(int order);
  ShVector(int order, std::vector<cplx> coeffs);

  int order() const noexcept { return order_; }
  std::size_t size() const noexcept { return coeffs_.size(); }

  cplx& operator[](std::size_t q) { return coeffs_[q]; }
  const cplx& operator[](std::size_t q) const { return coeffs_[q]; }
  cplx& at(int n, int m);
  const cplx& at(int n, int m) const;

  std::span<cplx> coeffs() noexcept { return coeffs_; }
  std::span<const cplx> coeffs() const noexcept { return coeffs_; }

  /// Copy extended with zeros up to `order` (>= this->order()).
  ShVector zero_padded(int order) const;

  /// coeff(n,-m) == (-1)^m conj(coeff(n,m)) within tol: the coefficients of
  /// a real-valued function.
  bool is_conjugate_symmetric(double tol) const;

  bool operator==(const ShVector&) const = default;

 private:
  int order_;
  std::vector<cplx> coeffs_;
};

/// Y_nm(dir) with the Condon-Shortley phase inside P_n^m.
cplx eval_sh(int n, int m, const SphericalDirection& dir);

/// All Y_q(dir) for q < (order+1)^2, written to `out`.
void eval_sh_all(int order, const SphericalDirection& dir, std::span<cplx> out);
std::vector<cplx> eval_sh_all(int order, const SphericalDirection& dir);

/// f(dir) = sum_q f_q Y_q(dir).
cplx synthesize_at(const ShVector& f, const SphericalDirection& dir);

/// g^H f, the SH-domain form of the integral of f conj(g). The shorter vector
/// is zero-padded.
cplx inner_product(const ShVector& f, const ShVector& g);

/// Coefficients of a unit plane wave from `dir`: a_q = conj(Y_q(dir)).
ShVector plane_wave_coefficients(int order, const SphericalDirection& dir);

}  // namespace dirint
