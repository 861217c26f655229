#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dirint/beams.hpp"
#include "dirint/energetics.hpp"
#include "dirint/sh.hpp"

namespace dirint {

struct PlaneWaveSource {
  SphericalDirection doa;
  double psd = 0.0;
};

/// Statistical scene: uncorrelated plane waves plus an isotropic diffuse field,
/// realized as `frames` i.i.d. SH coefficient vectors of order `order`.
struct SceneSpec {
  int order = 1;
  std::vector<PlaneWaveSource> waves;
  double diffuse_psd = 0.0;
  std::size_t frames = 1;
  std::uint64_t seed = 0;

  /// Throws ErrorKind::Validation / OrderOverflow on a malformed scene.
  void validate() const;
};

struct FrameSet {
  int order = 0;
  std::vector<ShVector> frames;
  std::uint64_t seed = 0;
  std::string generator;
  /// Present when the set was synthesized in this process.
  std::optional<SceneSpec> scene;
};

/// Produces frame i of a scene as a pure function of (scene, i):
///   a = sum_l s_l conj(Y(doa_l)) + d,
/// s_l ~ CN(0, psd_l), d_q ~ CN(0, diffuse_psd / 4pi) independently per q.
class FrameSynthesizer {
 public:
  explicit FrameSynthesizer(SceneSpec spec);

  const SceneSpec& spec() const noexcept { return spec_; }
  void frame(std::size_t index, std::span<cplx> out) const;
  ShVector frame(std::size_t index) const;

 private:
  SceneSpec spec_;
  std::vector<std::vector<cplx>> steering_;  // conj(Y_q(doa_l)) per wave
};

/// All frames of a scene, generated in parallel over frame indices.
FrameSet synthesize(const SceneSpec& spec);
/// Sequential reference for `synthesize`; bit-identical output.
FrameSet synthesize_serial(const SceneSpec& spec);

/// Moments of a scene observed through a beam without materializing frames.
SpectralMoments experiment_moments(const SceneSpec& spec, const Beam& beam);

/// synthesize -> weighted_signals -> accumulate_moments -> statistical_energetics.
/// Throws ErrorKind::OrderMismatch unless spec.order == beam.order() + 1.
EnergeticEstimate run_experiment(const SceneSpec& spec, const Beam& beam,
                                 const PhysicalConstants& consts,
                                 DegeneratePolicy policy = DegeneratePolicy::Throw);

}  // namespace dirint
