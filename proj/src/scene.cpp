#include "dirint/scene.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "dirint/error.hpp"
#include "dirint/rng.hpp"
#include "moment_kernel.hpp"

namespace dirint {

void SceneSpec::validate() const {
  if (order < 0 || order > kMaxOrder) {
    throw Error(ErrorKind::OrderOverflow,
                "scene order " + std::to_string(order) + " outside [0, " +
                    std::to_string(kMaxOrder) + "]");
  }
  if (frames < 1) throw Error(ErrorKind::Validation, "scene needs at least one frame");
  if (!(diffuse_psd >= 0.0) || !std::isfinite(diffuse_psd)) {
    throw Error(ErrorKind::Validation, "diffuse_psd must be finite and non-negative");
  }
  bool any_power = diffuse_psd > 0.0;
  for (const auto& w : waves) {
    if (!(w.psd >= 0.0) || !std::isfinite(w.psd)) {
      throw Error(ErrorKind::Validation, "plane-wave psd must be finite and non-negative");
    }
    any_power = any_power || w.psd > 0.0;
  }
  if (!any_power) throw Error(ErrorKind::Validation, "scene carries no power");
}

FrameSynthesizer::FrameSynthesizer(SceneSpec spec) : spec_(std::move(spec)) {
  spec_.validate();
  steering_.reserve(spec_.waves.size());
  for (const auto& w : spec_.waves) {
    const ShVector a = plane_wave_coefficients(spec_.order, w.doa);
    steering_.emplace_back(a.coeffs().begin(), a.coeffs().end());
  }
}

void FrameSynthesizer::frame(std::size_t index, std::span<cplx> out) const {
  const std::size_t count = static_cast<std::size_t>(sh_count(spec_.order));
  if (out.size() != count) throw Error(ErrorKind::Validation, "frame buffer has wrong length");
  FrameRng rng(spec_.seed, index);
  std::fill(out.begin(), out.end(), cplx{});
  for (std::size_t l = 0; l < spec_.waves.size(); ++l) {
    const cplx s = rng.complex_gaussian(spec_.waves[l].psd);
    const auto& y = steering_[l];
    for (std::size_t q = 0; q < count; ++q) out[q] += s * y[q];
  }
  if (spec_.diffuse_psd > 0.0) {
    // isotropic field: E{a_q conj(a_q')} = P_df / 4pi delta_qq'
    const double variance = spec_.diffuse_psd / (4.0 * std::numbers::pi);
    for (std::size_t q = 0; q < count; ++q) out[q] += rng.complex_gaussian(variance);
  }
}

ShVector FrameSynthesizer::frame(std::size_t index) const {
  ShVector a(spec_.order);
  frame(index, a.coeffs());
  return a;
}

namespace {

FrameSet empty_set(const SceneSpec& spec) {
  FrameSet set;
  set.order = spec.order;
  set.seed = spec.seed;
  set.generator = std::string(kGeneratorName);
  set.scene = spec;
  set.frames.assign(spec.frames, ShVector(spec.order));
  return set;
}

}  // namespace

FrameSet synthesize(const SceneSpec& spec) {
  const FrameSynthesizer synth(spec);
  FrameSet set = empty_set(spec);
  const auto count = static_cast<long long>(spec.frames);
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < count; ++i) {
    synth.frame(static_cast<std::size_t>(i), set.frames[static_cast<std::size_t>(i)].coeffs());
  }
  return set;
}

FrameSet synthesize_serial(const SceneSpec& spec) {
  const FrameSynthesizer synth(spec);
  FrameSet set = empty_set(spec);
  for (std::size_t i = 0; i < spec.frames; ++i) synth.frame(i, set.frames[i].coeffs());
  return set;
}

SpectralMoments experiment_moments(const SceneSpec& spec, const Beam& beam) {
  if (spec.order != beam.order() + 1) {
    throw Error(ErrorKind::OrderMismatch,
                "scene order " + std::to_string(spec.order) + " must be beam order + 1 (" +
                    std::to_string(beam.order() + 1) + ")");
  }
  const FrameSynthesizer synth(spec);
  const auto sums = detail::blocked_sums(spec.frames, [&](std::size_t i) {
    // thread-local scratch; frame() overwrites every coefficient
    thread_local ShVector scratch;
    if (scratch.order() != spec.order) scratch = ShVector(spec.order);
    synth.frame(i, scratch.coeffs());
    return weighted_signals(scratch, beam);
  });
  return sums.mean(spec.frames);
}

EnergeticEstimate run_experiment(const SceneSpec& spec, const Beam& beam,
                                 const PhysicalConstants& consts, DegeneratePolicy policy) {
  return statistical_energetics(experiment_moments(spec, beam), consts, policy);
}

}  // namespace dirint
