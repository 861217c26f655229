#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <omp.h>

#include <cmath>

#include "dirint/beams.hpp"
#include "dirint/error.hpp"
#include "dirint/reference.hpp"
#include "dirint/scene.hpp"
#include "test_support.hpp"

using namespace dirint;
using dirint::testing::kPi;

namespace {

const PhysicalConstants kAir{};

double norm3(const Vec3& v) { return std::hypot(v[0], v[1], v[2]); }

Beam preset_beam(PresetKind kind, int order, const SphericalDirection& dir = {}) {
  return Beam::from_profile(preset_profile(kind, order), dir);
}

SceneSpec make_scene(int order, std::vector<PlaneWaveSource> waves, double diffuse,
                     std::size_t frames, std::uint64_t seed) {
  SceneSpec s;
  s.order = order;
  s.waves = std::move(waves);
  s.diffuse_psd = diffuse;
  s.frames = frames;
  s.seed = seed;
  return s;
}

// Near-uniform point set on the sphere.
std::vector<SphericalDirection> fibonacci_sphere(int count) {
  std::vector<SphericalDirection> out;
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < count; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / count;
    out.emplace_back(std::acos(z), std::remainder(golden * i, 2.0 * kPi));
  }
  return out;
}

bool bit_identical(const FrameSet& a, const FrameSet& b) {
  if (a.frames.size() != b.frames.size()) return false;
  for (std::size_t i = 0; i < a.frames.size(); ++i) {
    if (!(a.frames[i] == b.frames[i])) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("scene validation") {
  CHECK_NOTHROW(make_scene(2, {}, 1.0, 1, 0).validate());
  CHECK_THROWS_AS(make_scene(2, {}, 0.0, 10, 0).validate(), Error);
  CHECK_THROWS_AS(make_scene(2, {{SphericalDirection{}, -1.0}}, 1.0, 10, 0).validate(), Error);
  CHECK_THROWS_AS(make_scene(2, {}, 1.0, 0, 0).validate(), Error);
  try {
    make_scene(11, {}, 1.0, 1, 0).validate();
    FAIL("expected order overflow");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OrderOverflow);
  }
}

TEST_CASE("synthesize examples") {
  const Beam omni = preset_beam(PresetKind::Omni, 0);
  SUBCASE("unit plane wave: mean |p|^2 is 1") {
    const auto set = synthesize(make_scene(1, {{SphericalDirection(0.4, 1.0), 1.0}}, 0.0, 10000, 5));
    CHECK(set.frames.size() == 10000);
    CHECK(set.generator == "splitmix64-frame-keyed/box-muller");
    const auto m = accumulate_weighted_moments(set.frames, omni);
    CHECK(m.s_pp == doctest::Approx(1.0).epsilon(0.05));
  }
  SUBCASE("unit diffuse: S_pp and S_vv are 1") {
    const auto set = synthesize(make_scene(1, {}, 1.0, 10000, 6));
    const auto m = accumulate_weighted_moments(set.frames, omni);
    CHECK(m.s_pp == doctest::Approx(1.0).epsilon(0.05));
    CHECK(m.s_vv == doctest::Approx(1.0).epsilon(0.05));
  }
  SUBCASE("diffuse coefficients are uncorrelated") {
    const auto set = synthesize(make_scene(2, {}, 4.0 * kPi, 10000, 7));
    const std::size_t count = set.frames[0].size();
    for (std::size_t q = 0; q < count; ++q) {
      for (std::size_t r = q; r < count; ++r) {
        cplx cov{};
        for (const auto& f : set.frames) cov += f[q] * std::conj(f[r]);
        cov /= static_cast<double>(set.frames.size());
        if (q == r) CHECK(std::abs(cov - 1.0) < 0.05);
        else CHECK(std::abs(cov) < 0.05);
      }
    }
  }
}

TEST_CASE("determinism") {
  const auto spec = make_scene(3, {{SphericalDirection(1.0, 2.0), 2.0}, {SphericalDirection(2.5, -1.0), 0.5}},
                               0.3, 3000, 42);
  const auto a = synthesize(spec);
  const auto b = synthesize(spec);
  CHECK(bit_identical(a, b));
  CHECK(bit_identical(a, synthesize_serial(spec)));
  auto other = spec;
  other.seed = 43;
  CHECK_FALSE(bit_identical(a, synthesize(other)));

  const int saved = omp_get_max_threads();
  omp_set_num_threads(4);
  const auto four = synthesize(spec);
  const Beam beam = preset_beam(PresetKind::Hypercardioid, 2, SphericalDirection(0.5, 0.5));
  const auto m4 = experiment_moments(spec, beam);
  omp_set_num_threads(1);
  const auto m1 = experiment_moments(spec, beam);
  omp_set_num_threads(saved);
  CHECK(bit_identical(a, four));
  CHECK(m1.s_pp == m4.s_pp);
  CHECK(m1.s_vv == m4.s_vv);
  for (std::size_t i = 0; i < 3; ++i) CHECK(m1.s_pv[i] == m4.s_pv[i]);

  // frame i is a pure function of (scene, i)
  const FrameSynthesizer synth(spec);
  CHECK(synth.frame(1234) == a.frames[1234]);
}

TEST_CASE("streaming moments equal the materialized path") {
  const auto spec = make_scene(2, {{SphericalDirection(0.7, 0.1), 1.0}}, 0.5, 5000, 9);
  const Beam beam = preset_beam(PresetKind::Cardioid, 1, SphericalDirection(1.2, 0.4));
  const auto streamed = experiment_moments(spec, beam);
  const auto set = synthesize(spec);
  const auto direct = accumulate_weighted_moments(set.frames, beam);
  CHECK(streamed.s_pp == direct.s_pp);
  CHECK(streamed.s_vv == direct.s_vv);
  for (std::size_t i = 0; i < 3; ++i) CHECK(streamed.s_pv[i] == direct.s_pv[i]);
  CHECK_THROWS_AS(experiment_moments(make_scene(3, {}, 1.0, 10, 0), beam), Error);
}

TEST_CASE("run_experiment examples") {
  SUBCASE("single plane wave is exact for any beam with gain at the DOA") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 10; ++t) {
      const auto l = dirint::testing::random_direction(rng);
      const int order = 1 + t % 4;
      const Beam beam = preset_beam(PresetKind::Hypercardioid, order, dirint::testing::random_direction(rng));
      if (std::abs(beam.gain(l)) < 1e-3) continue;
      const auto e = run_experiment(make_scene(order + 1, {{l, 1.0}}, 0.0, 200, 11 + t), beam, kAir);
      CHECK(e.diffuseness < 1e-10);
      CHECK(angle_between(*e.doa, l) < 1e-6);
    }
  }
  SUBCASE("diffuse field through a cardioid") {
    const SphericalDirection look(1.0, -2.0);
    const auto e = run_experiment(make_scene(2, {}, 1.0, 100000, 12),
                                  preset_beam(PresetKind::Cardioid, 1, look), kAir);
    CHECK(std::abs(e.diffuseness - 0.5) < 0.02);
    const Vec3 s = look.unit_vector();
    CHECK(angle_between(e.intensity, Vec3{-s[0], -s[1], -s[2]}) < 3.0 * kPi / 180.0);
  }
  SUBCASE("diffuse field through a first-order hypercardioid") {
    const Beam beam = preset_beam(PresetKind::Hypercardioid, 1, SphericalDirection(2.0, 0.2));
    const auto e = run_experiment(make_scene(2, {}, 1.0, 100000, 14), beam, kAir);
    CHECK(std::abs(e.diffuseness - predict_diffuse(1.0, beam, kAir).diffuseness) < 0.02);
  }
  SUBCASE("cardioid mixture, unit DDR, pi/4 off axis") {
    const auto profile = preset_profile(PresetKind::Cardioid, 1);
    const SphericalDirection l(kPi / 4, 0.3);
    const auto e = run_experiment(make_scene(2, {{l, 1.0}}, 1.0, 100000, 13), Beam::from_profile(profile), kAir);
    CHECK(std::abs(e.diffuseness - diffuseness_surface(1.0, kPi / 4, profile)) < 0.02);
    CHECK(std::abs(angle_between(*e.doa, l) - doa_bias(1.0, kPi / 4, profile)) < kPi / 180.0);
  }
  SUBCASE("order mismatch") {
    try {
      run_experiment(make_scene(1, {}, 1.0, 10, 0), preset_beam(PresetKind::Cardioid, 1), kAir);
      FAIL("expected order mismatch");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::OrderMismatch);
    }
  }
}

TEST_CASE("coefficient-space diffuse field matches a plane-wave cloud") {
  const Beam beam = preset_beam(PresetKind::Cardioid, 1, SphericalDirection(0.9, 2.0));
  const double q = directivity_factor(beam.w());
  SUBCASE("expected S_pp of a random-DOA cloud") {
    std::mt19937_64 rng(77);
    const int count = 20000;
    double s_pp = 0.0;
    for (int i = 0; i < count; ++i) {
      const double g = beam.gain(dirint::testing::random_direction(rng));
      s_pp += g * g / count;
    }
    CHECK(std::abs(s_pp - 1.0 / q) < 0.02 / q);
  }
  SUBCASE("Monte-Carlo through a 600-wave cloud") {
    std::vector<PlaneWaveSource> cloud;
    for (const auto& d : fibonacci_sphere(600)) cloud.push_back({d, 1.0 / 600.0});
    const auto via_cloud = experiment_moments(make_scene(2, cloud, 0.0, 20000, 21), beam);
    const auto via_coeffs = experiment_moments(make_scene(2, {}, 1.0, 20000, 22), beam);
    CHECK(std::abs(via_cloud.s_pp - via_coeffs.s_pp) < 0.02 * via_coeffs.s_pp);
    CHECK(std::abs(via_cloud.s_vv - via_coeffs.s_vv) < 0.02 * via_coeffs.s_vv);
    CHECK(std::abs(via_cloud.s_pp - 1.0 / q) < 0.02 / q);
    CHECK(std::abs(via_coeffs.s_pp - 1.0 / q) < 0.02 / q);
  }
}

TEST_CASE("isotropy of the omni diffuse intensity") {
  const Beam omni = preset_beam(PresetKind::Omni, 0);
  for (std::size_t frames : {1000u, 10000u, 100000u}) {
    const auto e = run_experiment(make_scene(1, {}, 2.0, frames, 100 + frames), omni, kAir);
    CHECK(norm3(e.intensity) < 5.0 / std::sqrt(static_cast<double>(frames)) * 2.0 / (2.0 * kAir.z0()));
  }
}

TEST_CASE("intensity error scales as 1/sqrt(M)") {
  const auto profile = preset_profile(PresetKind::Cardioid, 1);
  const Beam beam = Beam::from_profile(profile);
  const SphericalDirection l(kPi / 4, 0.0);
  struct Case {
    const char* name;
    std::vector<PlaneWaveSource> waves;
    double diffuse;
  };
  const std::vector<Case> cases{{"plane wave", {{l, 1.0}}, 0.0},
                                {"diffuse", {}, 1.0},
                                {"mixture", {{l, 1.0}}, 1.0}};
  constexpr int kReplicates = 32;
  for (const auto& c : cases) {
    CAPTURE(c.name);
    const double p_pw = c.waves.empty() ? 0.0 : c.waves[0].psd;
    const auto expected = predict_mixture(MixtureParams::make(p_pw, c.diffuse, l), beam, kAir).weighted;
    std::vector<double> rms;
    for (std::size_t frames : {1000u, 10000u, 100000u}) {
      double sum_sq = 0.0;
      for (int r = 0; r < kReplicates; ++r) {
        const auto spec = make_scene(2, c.waves, c.diffuse, frames, 1000 * frames + static_cast<std::size_t>(r));
        const auto e = run_experiment(spec, beam, kAir);
        Vec3 d{};
        for (std::size_t i = 0; i < 3; ++i) d[i] = e.intensity[i] - expected.intensity[i];
        sum_sq += d[0] * d[0] + d[1] * d[1] + d[2] * d[2];
      }
      rms.push_back(std::sqrt(sum_sq / kReplicates));
    }
    for (std::size_t k = 0; k + 1 < rms.size(); ++k) {
      const double ratio = rms[k] / rms[k + 1];
      CAPTURE(ratio);
      CHECK(ratio > std::sqrt(10.0) / 2.0);
      CHECK(ratio < std::sqrt(10.0) * 2.0);
    }
  }
}
