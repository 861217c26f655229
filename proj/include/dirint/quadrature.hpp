#pragma once

#include <functional>
#include <span>
#include <vector>

#include "dirint/sh.hpp"

namespace dirint {

/// Gauss-Legendre nodes in cos(theta) crossed with uniform azimuths. A grid of
/// degree D integrates every spherical polynomial of total degree <= D exactly.
class QuadratureGrid {
 public:
  explicit QuadratureGrid(int degree);

  /// Smallest grid that transforms order-N functions exactly (degree 2N+1).
  static QuadratureGrid for_order(int order) { return QuadratureGrid(2 * order + 1); }

  int degree() const noexcept { return degree_; }
  std::size_t size() const noexcept { return directions_.size(); }
  std::span<const SphericalDirection> directions() const noexcept { return directions_; }
  std::span<const double> weights() const noexcept { return weights_; }

  /// Sum of w_j f(dir_j).
  cplx integrate(std::span<const cplx> samples) const;
  double integrate(std::span<const double> samples) const;

  std::vector<cplx> sample(const std::function<cplx(const SphericalDirection&)>& f) const;

 private:
  int degree_;
  std::vector<SphericalDirection> directions_;
  std::vector<double> weights_;
};

/// a_q = integral of f conj(Y_q). Requires grid.degree() >= 2*order.
ShVector forward_sht(const QuadratureGrid& grid, std::span<const cplx> samples, int order);

/// Values of f at every grid direction.
std::vector<cplx> synthesize_on_grid(const ShVector& f, const QuadratureGrid& grid);

}  // namespace dirint
