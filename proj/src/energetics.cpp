#include "dirint/energetics.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "dirint/error.hpp"
#include "moment_kernel.hpp"

namespace dirint {

using detail::MomentSums;
using detail::blocked_sums;

namespace {

EnergeticEstimate energetics_from(double pp, double vv, const std::array<cplx, 3>& pv,
                                  const PhysicalConstants& consts, DegeneratePolicy policy) {
  const double total = pp + vv;
  EnergeticEstimate est;
  if (!(total > 0.0)) {
    if (policy == DegeneratePolicy::Throw) {
      throw Error(ErrorKind::UndefinedDiffuseness,
                  "diffuseness undefined for a field with zero energy");
    }
    est.degenerate = true;
    return est;
  }
  const Vec3 re_pv{pv[0].real(), pv[1].real(), pv[2].real()};
  const double flow = std::hypot(re_pv[0], re_pv[1], re_pv[2]);
  for (std::size_t a = 0; a < 3; ++a) est.intensity[a] = -re_pv[a] / (2.0 * consts.z0());
  est.energy = total / (4.0 * consts.rho0 * consts.c * consts.c);
  // Cauchy-Schwarz bounds this to [0, 1]; clamp rounding only.
  est.diffuseness = std::clamp(1.0 - 2.0 * flow / total, 0.0, 1.0);
  if (flow > 0.0) est.doa = doa_from_intensity(est.intensity);
  return est;
}

}  // namespace

PhysicalConstants PhysicalConstants::make(double c, double rho0) {
  if (!(std::isfinite(c) && c > 0.0) || !(std::isfinite(rho0) && rho0 > 0.0)) {
    throw Error(ErrorKind::Validation, "speed of sound and air density must be positive");
  }
  return PhysicalConstants{c, rho0};
}

SpectralMoments SpectralMoments::combine(const SpectralMoments& a, const SpectralMoments& b) {
  const std::size_t total = a.frames + b.frames;
  if (total == 0) throw Error(ErrorKind::EmptyInput, "combining two empty averages");
  const double wa = static_cast<double>(a.frames) / static_cast<double>(total);
  const double wb = static_cast<double>(b.frames) / static_cast<double>(total);
  SpectralMoments m;
  m.s_pp = wa * a.s_pp + wb * b.s_pp;
  m.s_vv = wa * a.s_vv + wb * b.s_vv;
  for (std::size_t i = 0; i < 3; ++i) m.s_pv[i] = wa * a.s_pv[i] + wb * b.s_pv[i];
  m.frames = total;
  return m;
}

BFormatSample weighted_signals(const ShVector& a, const Beam& beam) {
  if (a.order() != beam.order() + 1) {
    throw Error(ErrorKind::OrderMismatch,
                "input order " + std::to_string(a.order()) + " must be beam order + 1 (" +
                    std::to_string(beam.order() + 1) + ")");
  }
  BFormatSample s;
  const ShVector& w = beam.w();
  for (std::size_t q = 0; q < w.size(); ++q) s.p += std::conj(w[q]) * a[q];
  for (std::size_t axis = 0; axis < 3; ++axis) {
    const ShVector& wa = beam.wn()[axis];
    cplx sum{};
    for (std::size_t q = 0; q < wa.size(); ++q) sum += std::conj(wa[q]) * a[q];
    s.v[axis] = sum;
  }
  return s;
}

EnergeticEstimate instantaneous_energetics(const BFormatSample& s, const PhysicalConstants& consts,
                                           DegeneratePolicy policy) {
  const double pp = std::norm(s.p);
  const double vv = std::norm(s.v[0]) + std::norm(s.v[1]) + std::norm(s.v[2]);
  const cplx pc = std::conj(s.p);
  auto est = energetics_from(pp, vv, {pc * s.v[0], pc * s.v[1], pc * s.v[2]}, consts, policy);
  est.frames = 1;
  return est;
}

SpectralMoments accumulate_moments(std::span<const BFormatSample> frames) {
  if (frames.empty()) throw Error(ErrorKind::EmptyInput, "no frames to average");
  return blocked_sums(frames.size(), [&](std::size_t i) { return frames[i]; })
      .mean(frames.size());
}

SpectralMoments accumulate_moments_serial(std::span<const BFormatSample> frames) {
  MomentSums sums;
  for (const auto& s : frames) sums.add(s);
  return sums.mean(frames.size());
}

SpectralMoments accumulate_weighted_moments(std::span<const ShVector> frames, const Beam& beam) {
  if (frames.empty()) throw Error(ErrorKind::EmptyInput, "no frames to average");
  for (const auto& f : frames) {
    if (f.order() != beam.order() + 1) weighted_signals(f, beam);  // throws
  }
  return blocked_sums(frames.size(),
                      [&](std::size_t i) { return weighted_signals(frames[i], beam); })
      .mean(frames.size());
}

SpectralMoments accumulate_weighted_moments_serial(std::span<const ShVector> frames,
                                                   const Beam& beam) {
  MomentSums sums;
  for (const auto& f : frames) sums.add(weighted_signals(f, beam));
  return sums.mean(frames.size());
}

EnergeticEstimate statistical_energetics(const SpectralMoments& m, const PhysicalConstants& consts,
                                         DegeneratePolicy policy) {
  auto est = energetics_from(m.s_pp, m.s_vv, m.s_pv, consts, policy);
  est.frames = m.frames;
  return est;
}

SphericalDirection doa_from_intensity(const Vec3& intensity) {
  if (!(std::hypot(intensity[0], intensity[1], intensity[2]) > 0.0)) {
    throw Error(ErrorKind::UndefinedDoa, "direction of arrival undefined for zero intensity");
  }
  return SphericalDirection::from_vector({-intensity[0], -intensity[1], -intensity[2]});
}

}  // namespace dirint
