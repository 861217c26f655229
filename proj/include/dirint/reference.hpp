#pragma once

#include <optional>

#include "dirint/beams.hpp"
#include "dirint/energetics.hpp"

namespace dirint {

/// One plane wave plus an isotropic diffuse field, uncorrelated.
struct MixtureParams {
  double p_pw = 0.0;
  double p_df = 0.0;
  SphericalDirection doa;

  /// Throws ErrorKind::Validation for negative powers or both zero.
  static MixtureParams make(double p_pw, double p_df, const SphericalDirection& doa);

  /// Direct-to-diffuse ratio; +inf when p_df == 0.
  double ddr() const noexcept;
};

struct ReferencePrediction {
  Vec3 intensity{};
  double energy = 0.0;
  double diffuseness = 0.0;
  /// Angle between the intensity-based DOA and the plane-wave DOA, radians;
  /// empty without a plane wave or without intensity.
  std::optional<double> bias;
  /// Zero field (plane wave in a null, no diffuse part): diffuseness set to 0.
  bool degenerate = false;
};

struct MixturePrediction {
  ReferencePrediction weighted;
  ReferencePrediction unweighted;
};

ReferencePrediction predict_plane_wave(double p_pw, const SphericalDirection& doa,
                                       const Beam& beam, const PhysicalConstants& consts);

ReferencePrediction predict_diffuse(double p_df, const Beam& beam,
                                    const PhysicalConstants& consts);

MixturePrediction predict_mixture(const MixtureParams& params, const Beam& beam,
                                  const PhysicalConstants& consts);

/// Exact expected PSDs/CSD of the weighted mixture field.
SpectralMoments mixture_moments(const MixtureParams& params, const Beam& beam);

/// Delta(Gamma, alpha) = |Gamma c^2(alpha) n_l + (K/4pi) n_0| by the law of cosines.
double surface_delta(double gamma, double alpha, const AxisymmetricProfile& profile);

/// psi(Gamma, alpha) = 1 - Delta / (Gamma c^2(alpha) + 1/Q) for a plane wave at
/// angle alpha from the beam axis. gamma may be +inf.
double diffuseness_surface(double gamma, double alpha, const AxisymmetricProfile& profile);

/// beta = asin(K sin(alpha) / (4pi Delta)). Throws ErrorKind::UndefinedBias when
/// Delta == 0.
double doa_bias(double gamma, double alpha, const AxisymmetricProfile& profile);

/// Whether psi(Gamma, 0) == psi_df / (Q Gamma + 1) holds for this profile
/// (true for profiles normalized to unity on axis).
bool on_axis_identity_holds(const AxisymmetricProfile& profile, double tol = 1e-12);

}  // namespace dirint
