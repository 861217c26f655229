#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dirint/beams.hpp"
#include "dirint/energetics.hpp"
#include "dirint/json_io.hpp"
#include "dirint/scene.hpp"

namespace dirint::cli {

/// Runs one invocation; args excludes the program name. Returns the exit code
/// (0 success, 2 validation, 3 numeric, 4 I/O).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// {axisymmetric, Q, k, K, pattern: [{alpha_deg, value}]}.
ordered_json beam_report(const Beam& beam, int samples);

struct PredictRow {
  double gamma = 0.0;
  double alpha_deg = 0.0;
  double diffuseness = 0.0;
  /// NaN where the bias is undefined.
  double bias_deg = 0.0;
};

std::vector<PredictRow> predict_sweep(const AxisymmetricProfile& profile,
                                      const std::vector<double>& gammas,
                                      const std::vector<double>& alphas_deg);

std::string predict_csv(const std::vector<PredictRow>& rows);

/// Estimate plus generator metadata and, for scenes with at most one plane
/// wave, the closed-form prediction.
ordered_json simulate_report(const SceneSpec& scene, const Beam& beam,
                             const PhysicalConstants& consts);

/// Parses a DDR token: a non-negative number or "inf".
double parse_gamma(const std::string& token);

}  // namespace dirint::cli
