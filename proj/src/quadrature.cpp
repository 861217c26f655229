#include "dirint/quadrature.hpp"

#include <gsl/gsl_integration.h>

#include <cmath>
#include <memory>
#include <numbers>
#include <string>

#include "dirint/error.hpp"

namespace dirint {

namespace {

struct GlTableDeleter {
  void operator()(gsl_integration_glfixed_table* t) const {
    gsl_integration_glfixed_table_free(t);
  }
};

}  // namespace

QuadratureGrid::QuadratureGrid(int degree) : degree_(degree) {
  if (degree < 0) {
    throw Error(ErrorKind::DegreeMismatch, "grid degree must be non-negative");
  }
  // n Gauss-Legendre nodes are exact for polynomials of degree 2n-1 in
  // cos(theta); degree+1 azimuths resolve e^{i m phi} for |m| <= degree.
  const std::size_t n_theta = static_cast<std::size_t>(degree / 2 + 1);
  const std::size_t n_phi = static_cast<std::size_t>(degree + 1);

  std::unique_ptr<gsl_integration_glfixed_table, GlTableDeleter> table(
      gsl_integration_glfixed_table_alloc(n_theta));
  if (!table) throw Error(ErrorKind::Design, "GSL Gauss-Legendre allocation failed");

  directions_.reserve(n_theta * n_phi);
  weights_.reserve(n_theta * n_phi);
  const double dphi = 2.0 * std::numbers::pi / static_cast<double>(n_phi);
  for (std::size_t i = 0; i < n_theta; ++i) {
    double x = 0.0, wx = 0.0;
    gsl_integration_glfixed_point(-1.0, 1.0, i, &x, &wx, table.get());
    const double theta = std::acos(x);
    for (std::size_t j = 0; j < n_phi; ++j) {
      directions_.emplace_back(theta, -std::numbers::pi + dphi * static_cast<double>(j));
      weights_.push_back(wx * dphi);
    }
  }
}

cplx QuadratureGrid::integrate(std::span<const cplx> samples) const {
  if (samples.size() != size()) {
    throw Error(ErrorKind::Validation, "sample count does not match grid size");
  }
  cplx sum{};
  for (std::size_t j = 0; j < samples.size(); ++j) sum += weights_[j] * samples[j];
  return sum;
}

double QuadratureGrid::integrate(std::span<const double> samples) const {
  if (samples.size() != size()) {
    throw Error(ErrorKind::Validation, "sample count does not match grid size");
  }
  double sum = 0.0;
  for (std::size_t j = 0; j < samples.size(); ++j) sum += weights_[j] * samples[j];
  return sum;
}

std::vector<cplx> QuadratureGrid::sample(
    const std::function<cplx(const SphericalDirection&)>& f) const {
  std::vector<cplx> out;
  out.reserve(size());
  for (const auto& dir : directions_) out.push_back(f(dir));
  return out;
}

ShVector forward_sht(const QuadratureGrid& grid, std::span<const cplx> samples, int order) {
  if (grid.degree() < 2 * order) {
    throw Error(ErrorKind::DegreeMismatch,
                "grid degree " + std::to_string(grid.degree()) +
                    " cannot transform order " + std::to_string(order) +
                    " (needs >= " + std::to_string(2 * order) + ")");
  }
  if (samples.size() != grid.size()) {
    throw Error(ErrorKind::Validation, "sample count does not match grid size");
  }
  ShVector out(order);
  std::vector<cplx> y(out.size());
  const auto dirs = grid.directions();
  const auto weights = grid.weights();
  for (std::size_t j = 0; j < grid.size(); ++j) {
    eval_sh_all(order, dirs[j], y);
    const cplx wf = weights[j] * samples[j];
    for (std::size_t q = 0; q < y.size(); ++q) out[q] += wf * std::conj(y[q]);
  }
  return out;
}

std::vector<cplx> synthesize_on_grid(const ShVector& f, const QuadratureGrid& grid) {
  std::vector<cplx> out;
  out.reserve(grid.size());
  for (const auto& dir : grid.directions()) out.push_back(synthesize_at(f, dir));
  return out;
}

}  // namespace dirint
