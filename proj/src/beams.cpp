#include "dirint/beams.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include "dirint/error.hpp"

namespace dirint {

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

// Coupling matrices depend on the order only; build each once per process.
const CouplingMatrices& cached_coupling(int order) {
  if (order < 0 || order + 1 > kMaxOrder) {
    throw Error(ErrorKind::OrderOverflow,
                "pattern order " + std::to_string(order) +
                    " leaves no room for velocity patterns under the order cap");
  }
  static std::array<std::once_flag, kMaxOrder> flags;
  static std::array<std::unique_ptr<CouplingMatrices>, kMaxOrder> table;
  const auto idx = static_cast<std::size_t>(order);
  std::call_once(flags[idx], [&] {
    table[idx] = std::make_unique<CouplingMatrices>(velocity_coupling_matrices(order));
  });
  return *table[idx];
}

}  // namespace

AxisymmetricProfile::AxisymmetricProfile(std::vector<double> coeffs)
    : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) {
    throw Error(ErrorKind::Design, "axisymmetric profile needs at least one coefficient");
  }
  if (order() > kMaxOrder - 1) {
    throw Error(ErrorKind::OrderOverflow,
                "profile order " + std::to_string(order()) + " leaves no room for "
                "velocity patterns under the order cap");
  }
  for (double c : coeffs_) {
    if (!std::isfinite(c)) throw Error(ErrorKind::Design, "non-finite profile coefficient");
  }
}

double AxisymmetricProfile::value(double alpha) const {
  const double x = std::cos(alpha);
  double p_prev = 1.0;  // P_0
  double p = x;         // P_1
  double sum = coeffs_[0] * std::sqrt(1.0 / kFourPi);
  for (int n = 1; n <= order(); ++n) {
    if (n > 1) {
      const double next = ((2.0 * n - 1.0) * x * p - (n - 1.0) * p_prev) / n;
      p_prev = p;
      p = next;
    }
    sum += coeffs_[static_cast<std::size_t>(n)] * std::sqrt((2.0 * n + 1.0) / kFourPi) * p;
  }
  return sum;
}

bool AxisymmetricProfile::is_unity_on_axis(double tol) const {
  return std::abs(value(0.0) - 1.0) <= tol;
}

ShVector AxisymmetricProfile::as_sh_vector() const {
  ShVector w(order());
  for (int n = 0; n <= order(); ++n) w.at(n, 0) = coeffs_[static_cast<std::size_t>(n)];
  return w;
}

std::optional<PresetKind> parse_preset_kind(std::string_view name) {
  if (name == "omni") return PresetKind::Omni;
  if (name == "cardioid") return PresetKind::Cardioid;
  if (name == "hypercardioid") return PresetKind::Hypercardioid;
  return std::nullopt;
}

std::string_view preset_name(PresetKind kind) {
  switch (kind) {
    case PresetKind::Omni: return "omni";
    case PresetKind::Cardioid: return "cardioid";
    case PresetKind::Hypercardioid: return "hypercardioid";
  }
  return "unknown";
}

AxisymmetricProfile preset_profile(PresetKind kind, int order) {
  const auto fail = [&] {
    return Error(ErrorKind::Design, std::string(preset_name(kind)) +
                                        " preset is not defined for order " +
                                        std::to_string(order));
  };
  switch (kind) {
    case PresetKind::Omni:
      if (order != 0) throw fail();
      return AxisymmetricProfile({std::sqrt(kFourPi)});
    case PresetKind::Cardioid:
      if (order != 1) throw fail();
      // (1 + cos theta) / 2
      return AxisymmetricProfile(
          {std::sqrt(std::numbers::pi), std::sqrt(std::numbers::pi / 3.0)});
    case PresetKind::Hypercardioid: {
      if (order < 1 || order > kMaxOrder - 1) throw fail();
      // Legendre weights proportional to 2n+1, scaled so c(0) = 1.
      std::vector<double> c;
      const double scale = 1.0 / ((order + 1.0) * (order + 1.0));
      for (int n = 0; n <= order; ++n) {
        const double legendre_weight = (2.0 * n + 1.0) * scale;
        c.push_back(legendre_weight * std::sqrt(kFourPi / (2.0 * n + 1.0)));
      }
      return AxisymmetricProfile(std::move(c));
    }
  }
  throw fail();
}

ShVector steer(const AxisymmetricProfile& profile, const SphericalDirection& dir) {
  const int order = profile.order();
  const auto y = eval_sh_all(order, dir);
  ShVector w(order);
  for (int n = 0; n <= order; ++n) {
    const double scale =
        std::sqrt(kFourPi / (2.0 * n + 1.0)) * profile.coeffs()[static_cast<std::size_t>(n)];
    for (int m = -n; m <= n; ++m) {
      const auto q = static_cast<std::size_t>(n * (n + 1) + m);
      w[q] = scale * std::conj(y[q]);
    }
  }
  return w;
}

std::array<ShVector, 3> velocity_patterns(const ShVector& w) {
  const CouplingMatrices& a = cached_coupling(w.order());
  return {a.apply(0, w), a.apply(1, w), a.apply(2, w)};
}

double directivity_factor(const ShVector& w) {
  const double energy = inner_product(w, w).real();
  if (!(energy > 0.0)) {
    throw Error(ErrorKind::DivisionByZero, "directivity factor of a zero pattern");
  }
  return kFourPi / energy;
}

Vec3 k_vector(const ShVector& w) {
  const auto wn = velocity_patterns(w);
  const ShVector padded = w.zero_padded(w.order() + 1);
  Vec3 k{};
  for (int axis = 0; axis < 3; ++axis) {
    // W_n^H w: imaginary part vanishes for real patterns
    k[static_cast<std::size_t>(axis)] = inner_product(padded, wn[static_cast<std::size_t>(axis)]).real();
  }
  return k;
}

double k_magnitude_axisym(const AxisymmetricProfile& profile) {
  const ShVector cz = cached_coupling(profile.order()).apply(2, profile.as_sh_vector());
  double k = 0.0;
  for (int n = 0; n <= profile.order(); ++n) {
    k += profile.coeffs()[static_cast<std::size_t>(n)] * cz.at(n, 0).real();
  }
  return k;
}

Beam::Beam(ShVector w) : w_(std::move(w)), wn_(velocity_patterns(w_)) {}

Beam Beam::from_profile(const AxisymmetricProfile& profile,
                        std::optional<SphericalDirection> dir) {
  Beam beam(dir ? steer(profile, *dir) : profile.as_sh_vector());
  beam.profile_ = profile;
  beam.steer_dir_ = dir.value_or(SphericalDirection{});
  return beam;
}

Beam Beam::from_coefficients(ShVector w) {
  double scale = 1.0;
  for (const auto& c : w.coeffs()) scale = std::max(scale, std::abs(c));
  if (!w.is_conjugate_symmetric(1e-10 * scale)) {
    throw Error(ErrorKind::Validation,
                "beam coefficients do not describe a real-valued pattern");
  }
  if (w.order() + 1 > kMaxOrder) {
    throw Error(ErrorKind::OrderOverflow, "beam order leaves no room for velocity patterns");
  }
  return Beam(std::move(w));
}

double Beam::gain(const SphericalDirection& dir) const {
  return synthesize_at(w_, dir).real();
}

}  // namespace dirint
