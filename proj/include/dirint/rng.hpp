#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <string_view>

namespace dirint {

/// Name recorded in every simulation output so other implementations can
/// compare at the statistics level.
inline constexpr std::string_view kGeneratorName = "splitmix64-frame-keyed/box-muller";

/// SplitMix64 stream whose starting state is a hash of (seed, frame). Each
/// frame draws from its own stream, so frames can be produced in any order or
/// on any thread with identical results.
class FrameRng {
 public:
  FrameRng(std::uint64_t seed, std::uint64_t frame)
      : state_(mix(seed + kGamma) ^ mix(frame ^ kFrameSalt)) {}

  std::uint64_t next() noexcept {
    state_ += kGamma;
    return mix(state_);
  }

  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform() noexcept {
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Circular complex Gaussian with E|z|^2 = variance (Box-Muller).
  std::complex<double> complex_gaussian(double variance) noexcept {
    const double radius = std::sqrt(-variance * std::log(uniform()));
    const double angle = 2.0 * std::numbers::pi * uniform();
    return std::polar(radius, angle);
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
  static constexpr std::uint64_t kFrameSalt = 0xD1B54A32D192ED03ULL;

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace dirint
