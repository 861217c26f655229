#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>

#include "dirint/beams.hpp"
#include "dirint/sh.hpp"

namespace dirint {

struct PhysicalConstants {
  double c = 343.0;     ///< speed of sound, m/s
  double rho0 = 1.2041; ///< air density, kg/m^3 (20 degC)

  /// Throws ErrorKind::Validation unless both are finite and positive.
  static PhysicalConstants make(double c, double rho0);

  double z0() const noexcept { return c * rho0; }
};

/// Pressure and the three (unnormalized, sign-flipped) velocity signals.
struct BFormatSample {
  cplx p{};
  std::array<cplx, 3> v{};
};

/// PSD / CSD means over a set of frames.
struct SpectralMoments {
  double s_pp = 0.0;
  double s_vv = 0.0;
  std::array<cplx, 3> s_pv{};
  std::size_t frames = 0;

  /// Frame-weighted mean of two partial averages.
  static SpectralMoments combine(const SpectralMoments& a, const SpectralMoments& b);
};

struct EnergeticEstimate {
  Vec3 intensity{};
  double energy = 0.0;
  double diffuseness = 0.0;
  /// Direction of -intensity; empty when the intensity is exactly zero.
  std::optional<SphericalDirection> doa;
  std::size_t frames = 0;
  /// Zero total energy: quantities are zero and diffuseness is reported as 0.
  bool degenerate = false;
};

enum class DegeneratePolicy { Throw, Flag };

/// [p_w; v_w] = [w, w^x, w^y, w^z]^H a for an input one order above the beam.
BFormatSample weighted_signals(const ShVector& a, const Beam& beam);

EnergeticEstimate instantaneous_energetics(const BFormatSample& s, const PhysicalConstants& consts,
                                           DegeneratePolicy policy = DegeneratePolicy::Throw);

/// Arithmetic means of |p|^2, v^H v and p* v. Parallel over fixed-size blocks;
/// the result does not depend on the thread count.
SpectralMoments accumulate_moments(std::span<const BFormatSample> frames);
/// Single running sum; reference for the blocked kernel.
SpectralMoments accumulate_moments_serial(std::span<const BFormatSample> frames);

/// Fused projection + accumulation over SH frames (order beam.order()+1).
SpectralMoments accumulate_weighted_moments(std::span<const ShVector> frames, const Beam& beam);
SpectralMoments accumulate_weighted_moments_serial(std::span<const ShVector> frames,
                                                   const Beam& beam);

EnergeticEstimate statistical_energetics(const SpectralMoments& m, const PhysicalConstants& consts,
                                         DegeneratePolicy policy = DegeneratePolicy::Throw);

/// Unit vector -i / |i| as a direction. Throws ErrorKind::UndefinedDoa for i = 0.
SphericalDirection doa_from_intensity(const Vec3& intensity);

/// Frames summed per block in the parallel kernels.
inline constexpr std::size_t kMomentBlock = 1024;

}  // namespace dirint
