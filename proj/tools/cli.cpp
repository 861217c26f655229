#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <numbers>
#include <ostream>

#include "dirint/coupling.hpp"
#include "dirint/error.hpp"
#include "dirint/reference.hpp"
#include "dirint/rng.hpp"

namespace dirint::cli {

namespace {

constexpr double kDeg = 180.0 / std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorKind::Validation, what); }

std::string number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ordered_json gamma_json(double g) { return std::isinf(g) ? ordered_json("inf") : ordered_json(g); }

ordered_json vec_json(const Vec3& v) { return {v[0], v[1], v[2]}; }

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    write_text_file(path, text);
  }
}

PhysicalConstants load_constants(const std::string& path) {
  if (path.empty()) return PhysicalConstants{};
  return constants_from_json(load_json_file(path));
}

const AxisymmetricProfile& require_profile(const Beam& beam, const char* command) {
  if (!beam.profile()) invalid(std::string(command) + " needs an axisymmetric beam (preset or coeffs)");
  return *beam.profile();
}

void warn_on_axis_identity(const Beam& beam, std::ostream& err) {
  if (beam.profile() && !on_axis_identity_holds(*beam.profile())) {
    err << "warning: psi(Gamma, 0) != psi_df / (Q Gamma + 1) for this profile; "
           "it is probably not normalized to unity on axis\n";
  }
}

ordered_json prediction_json(const ReferencePrediction& p) {
  ordered_json j;
  j["intensity"] = vec_json(p.intensity);
  j["energy"] = p.energy;
  j["diffuseness"] = p.diffuseness;
  j["bias_deg"] = p.bias ? ordered_json(*p.bias * kDeg) : ordered_json(nullptr);
  j["degenerate"] = p.degenerate;
  return j;
}

struct Sweep {
  std::vector<double> gammas;
  std::vector<double> alphas_deg;
};

Sweep load_sweep(const std::string& path) {
  const auto j = load_json_file(path);
  if (!j.is_object()) invalid("sweep: expected a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (key != "gamma" && key != "alpha_deg") invalid("sweep: unknown field \"" + key + "\"");
  }
  Sweep s;
  for (const char* key : {"gamma", "alpha_deg"}) {
    if (!j.contains(key) || !j[key].is_array() || j[key].empty()) {
      invalid(std::string("sweep: \"") + key + "\" must be a non-empty array");
    }
  }
  for (const auto& g : j["gamma"]) {
    if (g.is_string()) s.gammas.push_back(parse_gamma(g.get<std::string>()));
    else if (g.is_number() && g.get<double>() >= 0.0) s.gammas.push_back(g.get<double>());
    else invalid("sweep: gamma entries must be non-negative numbers or \"inf\"");
  }
  for (const auto& a : j["alpha_deg"]) {
    if (!a.is_number()) invalid("sweep: alpha_deg entries must be numbers");
    s.alphas_deg.push_back(a.get<double>());
  }
  return s;
}

int cmd_matrices(int order, const std::string& out_path, std::ostream& out) {
  emit(out_path, dump_json(matrices_to_json(velocity_coupling_matrices(order))), out);
  return 0;
}

int cmd_beam(const std::string& beam_arg, int samples, const std::string& format,
             const std::string& out_path, std::ostream& out, std::ostream& err) {
  const Beam beam = beam_from_argument(beam_arg);
  warn_on_axis_identity(beam, err);
  const auto report = beam_report(beam, samples);
  if (format == "csv") {
    std::string text = "alpha_deg,value\n";
    for (const auto& row : report["pattern"]) {
      text += number(row["alpha_deg"].get<double>()) + "," + number(row["value"].get<double>()) + "\n";
    }
    emit(out_path, text, out);
  } else {
    emit(out_path, dump_json(report), out);
  }
  return 0;
}

int cmd_simulate(const std::string& scene_path, const std::string& beam_arg,
                 std::optional<std::size_t> frames, std::optional<std::uint64_t> seed,
                 const std::string& constants_path, const std::string& dump_path,
                 const std::string& format, const std::string& out_path, std::ostream& out) {
  SceneSpec scene = scene_from_json(load_json_file(scene_path));
  if (frames) scene.frames = *frames;
  if (seed) scene.seed = *seed;
  scene.validate();
  const Beam beam = beam_from_argument(beam_arg);
  const auto consts = load_constants(constants_path);
  const auto report = simulate_report(scene, beam, consts);
  if (!dump_path.empty()) write_frames(dump_path, synthesize(scene));
  if (format == "csv") {
    const auto& e = report["estimate"];
    std::string text = "diffuseness,energy,intensity_x,intensity_y,intensity_z,doa_theta,doa_phi,frames\n";
    text += number(e["diffuseness"].get<double>()) + "," + number(e["energy"].get<double>());
    for (const auto& c : e["intensity"]) text += "," + number(c.get<double>());
    if (e["doa"].is_null()) {
      text += ",nan,nan";
    } else {
      text += "," + number(e["doa"]["theta"].get<double>()) + "," + number(e["doa"]["phi"].get<double>());
    }
    text += "," + std::to_string(e["frames"].get<std::size_t>()) + "\n";
    emit(out_path, text, out);
  } else {
    emit(out_path, dump_json(report), out);
  }
  return 0;
}

int cmd_predict(const std::string& beam_arg, const std::vector<std::string>& gamma_tokens,
                const std::vector<double>& alphas_deg, const std::string& sweep_path,
                const std::string& format, const std::string& out_path, std::ostream& out,
                std::ostream& err) {
  const Beam beam = beam_from_argument(beam_arg);
  const auto& profile = require_profile(beam, "predict");
  warn_on_axis_identity(beam, err);
  Sweep sweep;
  if (!sweep_path.empty()) {
    if (!gamma_tokens.empty() || !alphas_deg.empty()) {
      invalid("predict: use either --sweep or --gamma/--alpha-deg, not both");
    }
    sweep = load_sweep(sweep_path);
  } else {
    if (gamma_tokens.empty() || alphas_deg.empty()) {
      invalid("predict: --gamma and --alpha-deg (or --sweep) are required");
    }
    for (const auto& t : gamma_tokens) sweep.gammas.push_back(parse_gamma(t));
    sweep.alphas_deg = alphas_deg;
  }
  const auto rows = predict_sweep(profile, sweep.gammas, sweep.alphas_deg);
  if (format == "json") {
    const double q = directivity_factor(beam.w());
    const double k = k_magnitude_axisym(profile);
    ordered_json j;
    j["beam"] = beam_to_json(beam);
    j["Q"] = q;
    j["K"] = k;
    j["diffuse_diffuseness"] = 1.0 - q * k / (4.0 * std::numbers::pi);
    j["rows"] = ordered_json::array();
    for (const auto& r : rows) {
      ordered_json row;
      row["gamma"] = gamma_json(r.gamma);
      row["alpha_deg"] = r.alpha_deg;
      row["diffuseness"] = r.diffuseness;
      row["bias_deg"] = std::isnan(r.bias_deg) ? ordered_json(nullptr) : ordered_json(r.bias_deg);
      j["rows"].push_back(std::move(row));
    }
    emit(out_path, dump_json(j), out);
  } else {
    emit(out_path, predict_csv(rows), out);
  }
  return 0;
}

int cmd_estimate(const std::string& input_path, const std::string& beam_arg,
                 const std::string& constants_path, const std::string& out_path, std::ostream& out) {
  const FrameSet set = read_frames(input_path);
  const Beam beam = beam_from_argument(beam_arg);
  const auto consts = load_constants(constants_path);
  ordered_json j;
  j["generator"] = set.generator;
  j["seed"] = set.seed;
  j["beam"] = beam_to_json(beam);
  j["estimate"] = estimate_to_json(statistical_energetics(accumulate_weighted_moments(set.frames, beam), consts));
  emit(out_path, dump_json(j), out);
  return 0;
}

}  // namespace

double parse_gamma(const std::string& token) {
  if (token == "inf" || token == "Inf" || token == "INF") return kInf;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(token, &used);
  } catch (const std::exception&) {
    invalid("cannot parse DDR value \"" + token + "\"");
  }
  if (used != token.size()) invalid("cannot parse DDR value \"" + token + "\"");
  if (!(v >= 0.0)) invalid("DDR values must be non-negative");
  return v;
}

ordered_json beam_report(const Beam& beam, int samples) {
  if (samples < 2) invalid("beam: --samples must be at least 2");
  const Vec3 k = k_vector(beam.w());
  ordered_json j;
  j["axisymmetric"] = beam.profile().has_value();
  j["order"] = beam.order();
  j["Q"] = directivity_factor(beam.w());
  j["k"] = vec_json(k);
  j["K"] = beam.profile() ? k_magnitude_axisym(*beam.profile()) : std::hypot(k[0], k[1], k[2]);
  j["pattern"] = ordered_json::array();
  for (int i = 0; i < samples; ++i) {
    const double alpha_deg = 180.0 * i / (samples - 1);
    const double alpha = alpha_deg / kDeg;
    // profiles are tabulated against the angle from their axis; general
    // patterns along the phi = 0 meridian
    const double value =
        beam.profile() ? beam.profile()->value(alpha) : beam.gain(SphericalDirection(alpha, 0.0));
    ordered_json row;
    row["alpha_deg"] = alpha_deg;
    row["value"] = value;
    j["pattern"].push_back(std::move(row));
  }
  return j;
}

std::vector<PredictRow> predict_sweep(const AxisymmetricProfile& profile,
                                      const std::vector<double>& gammas,
                                      const std::vector<double>& alphas_deg) {
  std::vector<PredictRow> rows;
  for (double g : gammas) {
    for (double a : alphas_deg) {
      if (!(a >= 0.0 && a <= 180.0)) invalid("alpha_deg values must lie in [0, 180]");
      PredictRow r{g, a, diffuseness_surface(g, a / kDeg, profile), std::nan("")};
      try {
        r.bias_deg = doa_bias(g, a / kDeg, profile) * kDeg;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::UndefinedBias) throw;
      }
      rows.push_back(r);
    }
  }
  return rows;
}

std::string predict_csv(const std::vector<PredictRow>& rows) {
  std::string text = "gamma,alpha_deg,diffuseness,bias_deg\n";
  for (const auto& r : rows) {
    text += number(r.gamma) + "," + number(r.alpha_deg) + "," + number(r.diffuseness) + "," +
            number(r.bias_deg) + "\n";
  }
  return text;
}

ordered_json simulate_report(const SceneSpec& scene, const Beam& beam,
                             const PhysicalConstants& consts) {
  const auto estimate = run_experiment(scene, beam, consts);
  ordered_json j;
  j["generator"] = std::string(kGeneratorName);
  j["seed"] = scene.seed;
  j["frames"] = scene.frames;
  j["scene"] = scene_to_json(scene);
  j["beam"] = beam_to_json(beam);
  j["constants"] = {{"c", consts.c}, {"rho0", consts.rho0}};
  j["estimate"] = estimate_to_json(estimate);
  if (scene.waves.size() <= 1) {
    const double p_pw = scene.waves.empty() ? 0.0 : scene.waves[0].psd;
    const auto doa = scene.waves.empty() ? SphericalDirection{} : scene.waves[0].doa;
    const auto pred = predict_mixture(MixtureParams::make(p_pw, scene.diffuse_psd, doa), beam, consts);
    j["prediction"] = prediction_json(pred.weighted);
    if (p_pw > 0.0 && estimate.doa) j["doa_offset_deg"] = angle_between(*estimate.doa, doa) * kDeg;
  }
  return j;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Beam-weighted acoustic energetics in the spherical harmonic domain"};
  app.name("dirint");
  app.require_subcommand(1);

  std::string out_path, beam_arg, format = "json", constants_path;
  const auto add_out = [&](CLI::App* sub) {
    sub->add_option("--out", out_path, "Output file (stdout when omitted)");
  };
  const auto add_beam = [&](CLI::App* sub) {
    sub->add_option("--beam", beam_arg, "Beam JSON file or preset:NAME[:ORDER][@THETA,PHI]")
        ->required();
  };
  const auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  };

  int order = 0;
  auto* matrices = app.add_subcommand("matrices", "Write the velocity coupling matrices of a beam order");
  matrices->add_option("--order", order, "Beam order N (0..9)")->required();
  add_out(matrices);

  int samples = 37;
  auto* beam = app.add_subcommand("beam", "Report Q, k, K and a pattern table for a beam");
  add_beam(beam);
  beam->add_option("--samples", samples, "Pattern samples over [0, 180] degrees");
  add_format(beam);
  add_out(beam);

  std::string scene_path, dump_path;
  std::optional<std::size_t> frames;
  std::optional<std::uint64_t> seed;
  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo estimate for a scene seen through a beam");
  simulate->add_option("--scene", scene_path, "Scene JSON file")->required();
  add_beam(simulate);
  simulate->add_option("--frames", frames, "Override the scene frame count");
  simulate->add_option("--seed", seed, "Override the scene seed");
  simulate->add_option("--constants", constants_path, "Physical constants JSON file");
  simulate->add_option("--dump", dump_path, "Also write the frames (.json or .shf)");
  add_format(simulate);
  add_out(simulate);

  std::vector<std::string> gamma_tokens;
  std::vector<double> alphas_deg;
  std::string sweep_path;
  auto* predict = app.add_subcommand("predict", "Closed-form diffuseness and DOA bias over a (DDR, angle) grid");
  add_beam(predict);
  predict->add_option("--gamma", gamma_tokens, "DDR values, comma separated; 'inf' allowed")->delimiter(',');
  predict->add_option("--alpha-deg", alphas_deg, "Angles from the beam axis in degrees")->delimiter(',');
  predict->add_option("--sweep", sweep_path, "Sweep JSON file {gamma, alpha_deg}");
  std::string predict_format = "csv";
  predict->add_option("--format", predict_format, "Output format (default csv)")
      ->check(CLI::IsMember({"json", "csv"}));
  add_out(predict);

  std::string input_path;
  auto* estimate = app.add_subcommand("estimate", "Estimate energetics from a frame file");
  estimate->add_option("--input", input_path, "Frame file (.json or .shf)")->required();
  add_beam(estimate);
  estimate->add_option("--constants", constants_path, "Physical constants JSON file");
  add_out(estimate);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  try {
    if (matrices->parsed()) return cmd_matrices(order, out_path, out);
    if (beam->parsed()) return cmd_beam(beam_arg, samples, format, out_path, out, err);
    if (simulate->parsed()) {
      return cmd_simulate(scene_path, beam_arg, frames, seed, constants_path, dump_path, format,
                          out_path, out);
    }
    if (predict->parsed()) {
      return cmd_predict(beam_arg, gamma_tokens, alphas_deg, sweep_path, predict_format, out_path,
                         out, err);
    }
    return cmd_estimate(input_path, beam_arg, constants_path, out_path, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return 4;
  }
}

}  // namespace dirint::cli
