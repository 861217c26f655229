#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "dirint/coupling.hpp"
#include "dirint/sh.hpp"

namespace dirint {

/// Real rotationally symmetric pattern c(theta) about +z, stored as its m = 0
/// SH coefficients c_n (n = 0..N).
class AxisymmetricProfile {
 public:
  explicit AxisymmetricProfile(std::vector<double> coeffs);

  int order() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const double> coeffs() const noexcept { return coeffs_; }

  /// c(alpha) = sum_n c_n sqrt((2n+1)/4pi) P_n(cos alpha).
  double value(double alpha) const;

  /// c(0) == 1 within tol, i.e. the pattern peaks at unity on its axis
  /// (for the presets, which are maximal at alpha = 0).
  bool is_unity_on_axis(double tol = 1e-12) const;

  /// Unsteered coefficients as a full SH vector (w_n0 = c_n).
  ShVector as_sh_vector() const;

 private:
  std::vector<double> coeffs_;
};

enum class PresetKind { Omni, Cardioid, Hypercardioid };

std::optional<PresetKind> parse_preset_kind(std::string_view name);
std::string_view preset_name(PresetKind kind);

/// omni (N = 0), cardioid (N = 1) or the max-directivity hypercardioid
/// (N >= 1), all unity at alpha = 0. Throws ErrorKind::Design otherwise.
AxisymmetricProfile preset_profile(PresetKind kind, int order);

/// w_nm = sqrt(4pi/(2n+1)) c_n conj(Y_nm(dir)).
ShVector steer(const AxisymmetricProfile& profile, const SphericalDirection& dir);

/// Coefficients of w(Omega) x, y, z, each of order w.order()+1.
std::array<ShVector, 3> velocity_patterns(const ShVector& w);

/// Q = 4pi / (w^H w). Throws ErrorKind::DivisionByZero for a zero pattern.
double directivity_factor(const ShVector& w);

/// k = integral of w^2 n over the sphere, from the velocity patterns.
Vec3 k_vector(const ShVector& w);

/// K = c^T c^z using the z velocity profile only. Equals |k| of any steering
/// of the profile whenever the pattern leans towards its axis (K >= 0).
double k_magnitude_axisym(const AxisymmetricProfile& profile);

/// Spatial filter ready for estimation: pattern coefficients and the derived
/// velocity-pattern coefficients W_n.
class Beam {
 public:
  /// Axisymmetric profile steered to `dir` (north pole when omitted).
  static Beam from_profile(const AxisymmetricProfile& profile,
                           std::optional<SphericalDirection> dir = std::nullopt);
  /// Arbitrary real pattern; rejected unless conjugate-symmetric.
  static Beam from_coefficients(ShVector w);

  int order() const noexcept { return w_.order(); }
  const ShVector& w() const noexcept { return w_; }
  const std::array<ShVector, 3>& wn() const noexcept { return wn_; }
  const std::optional<AxisymmetricProfile>& profile() const noexcept { return profile_; }
  const std::optional<SphericalDirection>& steer_dir() const noexcept { return steer_dir_; }

  /// Real pattern value w(dir).
  double gain(const SphericalDirection& dir) const;

 private:
  explicit Beam(ShVector w);

  ShVector w_;
  std::array<ShVector, 3> wn_;
  std::optional<AxisymmetricProfile> profile_;
  std::optional<SphericalDirection> steer_dir_;
};

}  // namespace dirint
