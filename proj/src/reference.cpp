#include "dirint/reference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "dirint/error.hpp"

namespace dirint {

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

double norm3(const Vec3& v) { return std::hypot(v[0], v[1], v[2]); }

std::optional<double> bias_between(const Vec3& intensity, const SphericalDirection& doa) {
  if (!(norm3(intensity) > 0.0)) return std::nullopt;
  const Vec3 towards{-intensity[0], -intensity[1], -intensity[2]};
  return angle_between(towards, doa.unit_vector());
}

// Gains below this fraction of the pattern's largest possible value are nulls.
constexpr double kNullTol = 1e-12;

double gain_at(const Beam& beam, const SphericalDirection& doa) {
  const double bound = std::sqrt(inner_product(beam.w(), beam.w()).real() *
                                 sh_count(beam.order()) / kFourPi);
  const double g = beam.gain(doa);
  return std::abs(g) <= kNullTol * bound ? 0.0 : g;
}

double profile_value(const AxisymmetricProfile& profile, double alpha) {
  double bound = 0.0;
  const auto c = profile.coeffs();
  for (std::size_t n = 0; n < c.size(); ++n) {
    bound += std::abs(c[n]) * std::sqrt((2.0 * static_cast<double>(n) + 1.0) / kFourPi);
  }
  const double v = profile.value(alpha);
  return std::abs(v) <= kNullTol * bound ? 0.0 : v;
}

void require_positive(double p, const char* what) {
  if (!(std::isfinite(p) && p > 0.0)) {
    throw Error(ErrorKind::Validation, std::string(what) + " must be positive");
  }
}

}  // namespace

MixtureParams MixtureParams::make(double p_pw, double p_df, const SphericalDirection& doa) {
  if (!(p_pw >= 0.0) || !(p_df >= 0.0) || !std::isfinite(p_pw) || !std::isfinite(p_df)) {
    throw Error(ErrorKind::Validation, "mixture powers must be finite and non-negative");
  }
  if (p_pw == 0.0 && p_df == 0.0) {
    throw Error(ErrorKind::Validation, "mixture needs a non-zero plane-wave or diffuse power");
  }
  return MixtureParams{p_pw, p_df, doa};
}

double MixtureParams::ddr() const noexcept {
  if (p_df == 0.0) return std::numeric_limits<double>::infinity();
  return p_pw / p_df;
}

ReferencePrediction predict_plane_wave(double p_pw, const SphericalDirection& doa,
                                       const Beam& beam, const PhysicalConstants& consts) {
  require_positive(p_pw, "plane-wave power");
  const double g = gain_at(beam, doa);
  const double g2p = g * g * p_pw;
  const Vec3 n = doa.unit_vector();
  ReferencePrediction out;
  for (std::size_t a = 0; a < 3; ++a) out.intensity[a] = -g2p * n[a] / (2.0 * consts.z0());
  out.energy = g2p / (2.0 * consts.rho0 * consts.c * consts.c);
  out.diffuseness = 0.0;
  if (g2p > 0.0) {
    out.bias = 0.0;
  } else {
    out.degenerate = true;
  }
  return out;
}

ReferencePrediction predict_diffuse(double p_df, const Beam& beam,
                                    const PhysicalConstants& consts) {
  require_positive(p_df, "diffuse power");
  const double q = directivity_factor(beam.w());
  const Vec3 k = k_vector(beam.w());
  ReferencePrediction out;
  for (std::size_t a = 0; a < 3; ++a) {
    out.intensity[a] = -p_df / (8.0 * std::numbers::pi * consts.z0()) * k[a];
  }
  out.energy = p_df / (2.0 * consts.rho0 * consts.c * consts.c * q);
  out.diffuseness = 1.0 - q / kFourPi * norm3(k);
  return out;
}

SpectralMoments mixture_moments(const MixtureParams& params, const Beam& beam) {
  const double g = gain_at(beam, params.doa);
  const double q = directivity_factor(beam.w());
  const Vec3 k = k_vector(beam.w());
  const Vec3 n = params.doa.unit_vector();
  SpectralMoments m;
  m.s_pp = g * g * params.p_pw + params.p_df / q;
  m.s_vv = m.s_pp;
  for (std::size_t a = 0; a < 3; ++a) {
    m.s_pv[a] = g * g * params.p_pw * n[a] + params.p_df / kFourPi * k[a];
  }
  m.frames = 1;
  return m;
}

MixturePrediction predict_mixture(const MixtureParams& params, const Beam& beam,
                                  const PhysicalConstants& consts) {
  const double g = gain_at(beam, params.doa);
  const double direct = g * g * params.p_pw;
  const Vec3 n = params.doa.unit_vector();
  const double energy_scale = 1.0 / (2.0 * consts.rho0 * consts.c * consts.c);

  MixturePrediction out;
  ReferencePrediction& w = out.weighted;
  Vec3 flow{};
  double q = std::numeric_limits<double>::infinity();
  if (params.p_df > 0.0) q = directivity_factor(beam.w());
  const Vec3 k = params.p_df > 0.0 ? k_vector(beam.w()) : Vec3{};
  for (std::size_t a = 0; a < 3; ++a) flow[a] = direct * n[a] + params.p_df * k[a] / kFourPi;
  for (std::size_t a = 0; a < 3; ++a) w.intensity[a] = -flow[a] / (2.0 * consts.z0());
  const double denom = direct + params.p_df / q;
  w.energy = energy_scale * denom;
  if (denom > 0.0) {
    w.diffuseness = 1.0 - norm3(flow) / denom;
    if (params.p_pw > 0.0) w.bias = bias_between(w.intensity, params.doa);
  } else {
    w.degenerate = true;
  }

  ReferencePrediction& u = out.unweighted;
  for (std::size_t a = 0; a < 3; ++a) u.intensity[a] = -params.p_pw * n[a] / (2.0 * consts.z0());
  u.energy = energy_scale * (params.p_pw + params.p_df);
  u.diffuseness = params.p_df / (params.p_pw + params.p_df);
  if (params.p_pw > 0.0) u.bias = bias_between(u.intensity, params.doa);
  return out;
}

double surface_delta(double gamma, double alpha, const AxisymmetricProfile& profile) {
  const double c2 = profile_value(profile, alpha) * profile_value(profile, alpha);
  const double kk = k_magnitude_axisym(profile) / kFourPi;
  const double sq = gamma * gamma * c2 * c2 + kk * kk + 2.0 * gamma * kk * c2 * std::cos(alpha);
  return std::sqrt(std::max(sq, 0.0));
}

double diffuseness_surface(double gamma, double alpha, const AxisymmetricProfile& profile) {
  if (!(gamma >= 0.0)) throw Error(ErrorKind::Validation, "DDR must be non-negative");
  const double c2 = profile_value(profile, alpha) * profile_value(profile, alpha);
  if (std::isinf(gamma)) {
    // no diffuse part: a plane wave alone has zero diffuseness (or is the
    // degenerate null case, also reported as 0)
    return 0.0;
  }
  const double inv_q = 1.0 / directivity_factor(profile.as_sh_vector());
  return 1.0 - surface_delta(gamma, alpha, profile) / (gamma * c2 + inv_q);
}

double doa_bias(double gamma, double alpha, const AxisymmetricProfile& profile) {
  if (!(gamma >= 0.0)) throw Error(ErrorKind::Validation, "DDR must be non-negative");
  if (std::isinf(gamma)) {
    if (profile_value(profile, alpha) != 0.0) return 0.0;
    throw Error(ErrorKind::UndefinedBias, "bias undefined for a plane wave in a null");
  }
  const double delta = surface_delta(gamma, alpha, profile);
  if (!(delta > 0.0)) {
    throw Error(ErrorKind::UndefinedBias, "bias undefined where Delta(Gamma, alpha) = 0");
  }
  const double k = k_magnitude_axisym(profile);
  const double ratio = k * std::sin(alpha) / (kFourPi * delta);
  return std::asin(std::clamp(ratio, -1.0, 1.0));
}

bool on_axis_identity_holds(const AxisymmetricProfile& profile, double tol) {
  const double q = directivity_factor(profile.as_sh_vector());
  const double psi_df = 1.0 - q * k_magnitude_axisym(profile) / kFourPi;
  for (double gamma : {0.0, 0.25, 1.0, 4.0, 16.0}) {
    const double lhs = diffuseness_surface(gamma, 0.0, profile);
    const double rhs = psi_df / (q * gamma + 1.0);
    if (std::abs(lhs - rhs) > tol) return false;
  }
  return true;
}

}  // namespace dirint
