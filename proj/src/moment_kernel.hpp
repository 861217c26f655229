#pragma once

// Blocked moment accumulation shared by the frame-set and streaming kernels.

#include <algorithm>
#include <array>
#include <cstddef>
#include <vector>

#include "dirint/energetics.hpp"
#include "dirint/error.hpp"

namespace dirint::detail {

// Raw (unnormalized) sums; divided by the frame count once at the end.
struct MomentSums {
  double pp = 0.0;
  double vv = 0.0;
  std::array<cplx, 3> pv{};

  void add(const BFormatSample& s) {
    pp += std::norm(s.p);
    vv += std::norm(s.v[0]) + std::norm(s.v[1]) + std::norm(s.v[2]);
    const cplx pc = std::conj(s.p);
    for (std::size_t a = 0; a < 3; ++a) pv[a] += pc * s.v[a];
  }

  void add(const MomentSums& o) {
    pp += o.pp;
    vv += o.vv;
    for (std::size_t a = 0; a < 3; ++a) pv[a] += o.pv[a];
  }

  SpectralMoments mean(std::size_t frames) const {
    if (frames == 0) throw Error(ErrorKind::EmptyInput, "no frames to average");
    const double inv = 1.0 / static_cast<double>(frames);
    SpectralMoments m;
    m.s_pp = pp * inv;
    m.s_vv = vv * inv;
    for (std::size_t a = 0; a < 3; ++a) m.s_pv[a] = pv[a] * inv;
    m.frames = frames;
    return m;
  }
};

// Block partial sums in parallel, then an ordered serial reduction over blocks.
template <typename SampleAt>
MomentSums blocked_sums(std::size_t count, SampleAt&& sample_at) {
  const std::size_t blocks = (count + kMomentBlock - 1) / kMomentBlock;
  std::vector<MomentSums> partial(blocks);
  const auto nblocks = static_cast<long long>(blocks);
#pragma omp parallel for schedule(static)
  for (long long b = 0; b < nblocks; ++b) {
    const std::size_t begin = static_cast<std::size_t>(b) * kMomentBlock;
    const std::size_t end = std::min(count, begin + kMomentBlock);
    MomentSums local;
    for (std::size_t i = begin; i < end; ++i) local.add(sample_at(i));
    partial[static_cast<std::size_t>(b)] = local;
  }
  MomentSums total;
  for (const auto& p : partial) total.add(p);
  return total;
}

}  // namespace dirint::detail
