#include "dirint/json_io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "dirint/error.hpp"

namespace dirint {

namespace {

using nlohmann::json;

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorKind::Validation, what); }

void check_keys(const json& j, std::initializer_list<std::string_view> allowed,
                std::string_view context) {
  if (!j.is_object()) invalid(std::string(context) + ": expected a JSON object");
  for (const auto& [key, _] : j.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) invalid(std::string(context) + ": unknown field \"" + key + "\"");
  }
}

double get_number(const json& j, std::string_view key, std::string_view context) {
  const auto it = j.find(key);
  if (it == j.end()) invalid(std::string(context) + ": missing field \"" + std::string(key) + "\"");
  if (!it->is_number()) {
    invalid(std::string(context) + ": field \"" + std::string(key) + "\" must be a number");
  }
  return it->get<double>();
}

template <typename Int>
Int get_integer(const json& j, std::string_view key, std::string_view context) {
  const auto it = j.find(key);
  if (it == j.end()) invalid(std::string(context) + ": missing field \"" + std::string(key) + "\"");
  if (!it->is_number_integer()) {
    invalid(std::string(context) + ": field \"" + std::string(key) + "\" must be an integer");
  }
  if constexpr (std::is_unsigned_v<Int>) {
    if (it->is_number_integer() && !it->is_number_unsigned() && it->get<long long>() < 0) {
      invalid(std::string(context) + ": field \"" + std::string(key) + "\" must be non-negative");
    }
  }
  return it->get<Int>();
}

cplx complex_from_json(const json& j, std::string_view context) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  invalid(std::string(context) + ": expected a number or an [re, im] pair");
}

json complex_to_json(const cplx& c) { return json::array({c.real(), c.imag()}); }

SphericalDirection direction_from_json(const json& j, std::string_view context) {
  check_keys(j, {"theta", "phi"}, context);
  return SphericalDirection(get_number(j, "theta", context), get_number(j, "phi", context));
}

void write_number(std::string& out, double v) {
  if (!std::isfinite(v)) {
    out += "null";
    return;
  }
  char buf[32];
  const int len = std::snprintf(buf, sizeof buf, "%.17g", v);
  out.append(buf, static_cast<std::size_t>(len));
}

bool has_nested_object(const ordered_json& j) {
  if (j.is_object()) return true;
  if (j.is_array()) {
    for (const auto& e : j) {
      if (has_nested_object(e)) return true;
    }
  }
  return false;
}

void emit(std::string& out, const ordered_json& j, int indent, int depth) {
  const auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case ordered_json::value_t::number_float:
      write_number(out, j.get<double>());
      break;
    case ordered_json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        break;
      }
      out += '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += ordered_json(key).dump();
        out += indent < 0 ? ":" : ": ";
        emit(out, value, indent, depth + 1);
      }
      newline(depth);
      out += '}';
      break;
    }
    case ordered_json::value_t::array: {
      const bool pretty = has_nested_object(j);
      out += '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += pretty ? "," : ", ";
        first = false;
        if (pretty) newline(depth + 1);
        emit(out, e, pretty ? indent : -1, depth + 1);
      }
      if (pretty && !j.empty()) newline(depth);
      out += ']';
      break;
    }
    default:
      out += j.dump();
  }
}

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const json& j, std::size_t rows, std::size_t cols,
                               std::string_view name) {
  const std::string context = "matrix " + std::string(name);
  if (!j.is_array() || j.size() != rows) {
    invalid(context + ": expected " + std::to_string(rows) + " rows");
  }
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) {
      invalid(context + ": expected " + std::to_string(cols) + " columns");
    }
    for (std::size_t k = 0; k < cols; ++k) {
      const json& e = j[i][k];
      if (!e.is_array() || e.size() != 2) invalid(context + ": entries must be [re, im]");
      m(i, k) = complex_from_json(e, context);
    }
  }
  return m;
}

Beam steer_if_requested(const AxisymmetricProfile& profile, const json& j) {
  if (const auto it = j.find("steer"); it != j.end()) {
    return Beam::from_profile(profile, direction_from_json(*it, "beam.steer"));
  }
  return Beam::from_profile(profile);
}

// little-endian helpers for the .shf format
template <typename T>
void put_le(std::ostream& os, T value) {
  if constexpr (std::endian::native == std::endian::big) {
    auto bytes = std::bit_cast<std::array<unsigned char, sizeof(T)>>(value);
    std::reverse(bytes.begin(), bytes.end());
    value = std::bit_cast<T>(bytes);
  }
  os.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T get_le(std::istream& is) {
  T value{};
  if (!is.read(reinterpret_cast<char*>(&value), sizeof(T))) {
    throw Error(ErrorKind::Io, "truncated .shf frame file");
  }
  if constexpr (std::endian::native == std::endian::big) {
    auto bytes = std::bit_cast<std::array<unsigned char, sizeof(T)>>(value);
    std::reverse(bytes.begin(), bytes.end());
    value = std::bit_cast<T>(bytes);
  }
  return value;
}

constexpr char kShfMagic[4] = {'S', 'H', 'F', '1'};

bool is_binary_frames(const std::filesystem::path& path) { return path.extension() == ".shf"; }

}  // namespace

std::string dump_json(const ordered_json& value, int indent) {
  std::string out;
  emit(out, value, indent, 0);
  out += '\n';
  return out;
}

nlohmann::json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    invalid(path.string() + ": malformed JSON (" + e.what() + ")");
  }
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error(ErrorKind::Io, "write failed for " + path.string());
}

ordered_json matrices_to_json(const CouplingMatrices& m) {
  ordered_json j;
  j["order"] = m.order;
  j["ax"] = matrix_to_json(m.ax);
  j["ay"] = matrix_to_json(m.ay);
  j["az"] = matrix_to_json(m.az);
  return j;
}

CouplingMatrices matrices_from_json(const nlohmann::json& j) {
  check_keys(j, {"order", "ax", "ay", "az"}, "matrices");
  const int order = get_integer<int>(j, "order", "matrices");
  if (order < 0 || order + 1 > kMaxOrder) {
    throw Error(ErrorKind::OrderOverflow, "matrices: order out of range");
  }
  const auto rows = static_cast<std::size_t>(sh_count(order + 1));
  const auto cols = static_cast<std::size_t>(sh_count(order));
  for (const char* key : {"ax", "ay", "az"}) {
    if (!j.contains(key)) invalid(std::string("matrices: missing field \"") + key + "\"");
  }
  return CouplingMatrices{order, matrix_from_json(j.at("ax"), rows, cols, "ax"),
                          matrix_from_json(j.at("ay"), rows, cols, "ay"),
                          matrix_from_json(j.at("az"), rows, cols, "az")};
}

Beam beam_from_json(const nlohmann::json& j) {
  check_keys(j, {"kind", "order", "steer", "coeffs", "sh_coeffs"}, "beam");
  const int forms = static_cast<int>(j.contains("kind")) + static_cast<int>(j.contains("coeffs")) +
                    static_cast<int>(j.contains("sh_coeffs"));
  if (forms != 1) invalid("beam: exactly one of \"kind\", \"coeffs\", \"sh_coeffs\" is required");

  if (j.contains("kind")) {
    if (!j["kind"].is_string()) invalid("beam: \"kind\" must be a string");
    const auto kind = parse_preset_kind(j["kind"].get<std::string>());
    if (!kind) invalid("beam: unknown preset \"" + j["kind"].get<std::string>() + "\"");
    int order = 0;
    if (j.contains("order")) {
      order = get_integer<int>(j, "order", "beam");
    } else if (*kind == PresetKind::Omni) {
      order = 0;
    } else if (*kind == PresetKind::Cardioid) {
      order = 1;
    } else {
      invalid("beam: hypercardioid preset needs an \"order\"");
    }
    return steer_if_requested(preset_profile(*kind, order), j);
  }

  if (j.contains("coeffs")) {
    const json& c = j["coeffs"];
    if (!c.is_array() || c.empty()) invalid("beam: \"coeffs\" must be a non-empty array");
    std::vector<double> coeffs;
    for (const auto& e : c) {
      const cplx v = complex_from_json(e, "beam.coeffs");
      if (v.imag() != 0.0) {
        invalid("beam: axisymmetric profile coefficients must be real");
      }
      coeffs.push_back(v.real());
    }
    if (j.contains("order") && get_integer<int>(j, "order", "beam") + 1 != static_cast<int>(coeffs.size())) {
      invalid("beam: \"order\" does not match the number of coefficients");
    }
    return steer_if_requested(AxisymmetricProfile(std::move(coeffs)), j);
  }

  if (j.contains("steer")) invalid("beam: \"steer\" applies to axisymmetric profiles only");
  const json& c = j["sh_coeffs"];
  if (!c.is_array() || c.empty()) invalid("beam: \"sh_coeffs\" must be a non-empty array");
  const int order = static_cast<int>(std::lround(std::sqrt(static_cast<double>(c.size())))) - 1;
  if (order < 0 || static_cast<std::size_t>(sh_count(order)) != c.size()) {
    invalid("beam: \"sh_coeffs\" length must be a perfect square (order+1)^2");
  }
  if (j.contains("order") && get_integer<int>(j, "order", "beam") != order) {
    invalid("beam: \"order\" does not match the number of coefficients");
  }
  std::vector<cplx> coeffs;
  for (const auto& e : c) coeffs.push_back(complex_from_json(e, "beam.sh_coeffs"));
  return Beam::from_coefficients(ShVector(order, std::move(coeffs)));
}

ordered_json beam_to_json(const Beam& beam) {
  ordered_json j;
  if (beam.profile()) {
    j["coeffs"] = ordered_json::array();
    for (double c : beam.profile()->coeffs()) j["coeffs"].push_back(c);
    if (beam.steer_dir()) j["steer"] = direction_to_json(*beam.steer_dir());
    return j;
  }
  j["sh_coeffs"] = ordered_json::array();
  for (const auto& c : beam.w().coeffs()) j["sh_coeffs"].push_back({c.real(), c.imag()});
  return j;
}

Beam beam_from_argument(std::string_view arg) {
  constexpr std::string_view prefix = "preset:";
  if (!arg.starts_with(prefix)) return beam_from_json(load_json_file(std::filesystem::path(arg)));

  std::string_view rest = arg.substr(prefix.size());
  json j;
  if (const auto at = rest.find('@'); at != std::string_view::npos) {
    const std::string_view dir = rest.substr(at + 1);
    rest = rest.substr(0, at);
    const auto comma = dir.find(',');
    if (comma == std::string_view::npos) invalid("beam preset: steering must be THETA,PHI");
    const auto parse = [&](std::string_view s) {
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc{} || ptr != s.data() + s.size()) {
        invalid("beam preset: cannot parse angle \"" + std::string(s) + "\"");
      }
      return v;
    };
    j["steer"] = {{"theta", parse(dir.substr(0, comma))}, {"phi", parse(dir.substr(comma + 1))}};
  }
  if (const auto colon = rest.find(':'); colon != std::string_view::npos) {
    const std::string_view order = rest.substr(colon + 1);
    int n = 0;
    const auto [ptr, ec] = std::from_chars(order.data(), order.data() + order.size(), n);
    if (ec != std::errc{} || ptr != order.data() + order.size()) {
      invalid("beam preset: cannot parse order \"" + std::string(order) + "\"");
    }
    j["order"] = n;
    rest = rest.substr(0, colon);
  }
  j["kind"] = std::string(rest);
  return beam_from_json(j);
}

SceneSpec scene_from_json(const nlohmann::json& j) {
  check_keys(j, {"order", "waves", "diffuse_psd", "frames", "seed"}, "scene");
  SceneSpec s;
  s.order = get_integer<int>(j, "order", "scene");
  if (j.contains("waves")) {
    if (!j["waves"].is_array()) invalid("scene: \"waves\" must be an array");
    for (const auto& w : j["waves"]) {
      check_keys(w, {"doa", "psd"}, "scene.waves[]");
      if (!w.contains("doa")) invalid("scene.waves[]: missing field \"doa\"");
      s.waves.push_back({direction_from_json(w["doa"], "scene.waves[].doa"),
                         get_number(w, "psd", "scene.waves[]")});
    }
  }
  if (j.contains("diffuse_psd")) s.diffuse_psd = get_number(j, "diffuse_psd", "scene");
  if (j.contains("frames")) s.frames = get_integer<std::size_t>(j, "frames", "scene");
  if (j.contains("seed")) s.seed = get_integer<std::uint64_t>(j, "seed", "scene");
  s.validate();
  return s;
}

ordered_json scene_to_json(const SceneSpec& s) {
  ordered_json j;
  j["order"] = s.order;
  ordered_json waves = ordered_json::array();
  for (const auto& w : s.waves) {
    ordered_json wj;
    wj["doa"] = direction_to_json(w.doa);
    wj["psd"] = w.psd;
    waves.push_back(std::move(wj));
  }
  j["waves"] = std::move(waves);
  j["diffuse_psd"] = s.diffuse_psd;
  j["frames"] = s.frames;
  j["seed"] = s.seed;
  return j;
}

PhysicalConstants constants_from_json(const nlohmann::json& j) {
  check_keys(j, {"c", "rho0"}, "constants");
  PhysicalConstants defaults;
  return PhysicalConstants::make(j.contains("c") ? get_number(j, "c", "constants") : defaults.c,
                                 j.contains("rho0") ? get_number(j, "rho0", "constants")
                                                    : defaults.rho0);
}

ordered_json direction_to_json(const SphericalDirection& d) {
  ordered_json j;
  j["theta"] = d.theta();
  j["phi"] = d.phi();
  return j;
}

ordered_json estimate_to_json(const EnergeticEstimate& e) {
  ordered_json j;
  j["intensity"] = {e.intensity[0], e.intensity[1], e.intensity[2]};
  j["energy"] = e.energy;
  j["diffuseness"] = e.diffuseness;
  j["doa"] = e.doa ? direction_to_json(*e.doa) : ordered_json(nullptr);
  j["frames"] = e.frames;
  j["degenerate"] = e.degenerate;
  return j;
}

void write_frames(const std::filesystem::path& path, const FrameSet& set) {
  if (is_binary_frames(path)) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
    out.write(kShfMagic, sizeof kShfMagic);
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(set.order));
    put_le<std::uint64_t>(out, set.frames.size());
    put_le<std::uint64_t>(out, set.seed);
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(set.generator.size()));
    out.write(set.generator.data(), static_cast<std::streamsize>(set.generator.size()));
    for (const auto& f : set.frames) {
      for (const auto& c : f.coeffs()) {
        put_le<double>(out, c.real());
        put_le<double>(out, c.imag());
      }
    }
    if (!out) throw Error(ErrorKind::Io, "write failed for " + path.string());
    return;
  }
  ordered_json j;
  j["order"] = set.order;
  j["frames"] = set.frames.size();
  j["seed"] = set.seed;
  j["generator"] = set.generator;
  ordered_json data = ordered_json::array();
  for (const auto& f : set.frames) {
    ordered_json frame = ordered_json::array();
    for (const auto& c : f.coeffs()) frame.push_back({c.real(), c.imag()});
    data.push_back(std::move(frame));
  }
  j["data"] = std::move(data);
  write_text_file(path, dump_json(j, -1));
}

FrameSet read_frames(const std::filesystem::path& path) {
  FrameSet set;
  if (is_binary_frames(path)) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
    char magic[4];
    if (!in.read(magic, sizeof magic) || std::memcmp(magic, kShfMagic, sizeof magic) != 0) {
      invalid(path.string() + ": not an SHF1 frame file");
    }
    const auto order = get_le<std::uint32_t>(in);
    const auto count = get_le<std::uint64_t>(in);
    set.seed = get_le<std::uint64_t>(in);
    const auto name_len = get_le<std::uint32_t>(in);
    if (order > static_cast<std::uint32_t>(kMaxOrder) || name_len > 4096) {
      invalid(path.string() + ": corrupt header");
    }
    set.order = static_cast<int>(order);
    set.generator.resize(name_len);
    if (!in.read(set.generator.data(), name_len)) throw Error(ErrorKind::Io, "truncated header");
    set.frames.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
      ShVector f(set.order);
      for (auto& c : f.coeffs()) {
        const double re = get_le<double>(in);
        const double im = get_le<double>(in);
        c = {re, im};
      }
      set.frames.push_back(std::move(f));
    }
    return set;
  }
  const json j = load_json_file(path);
  check_keys(j, {"order", "frames", "seed", "generator", "data"}, "frames");
  set.order = get_integer<int>(j, "order", "frames");
  const auto count = get_integer<std::size_t>(j, "frames", "frames");
  if (j.contains("seed")) set.seed = get_integer<std::uint64_t>(j, "seed", "frames");
  if (j.contains("generator")) {
    if (!j["generator"].is_string()) invalid("frames: \"generator\" must be a string");
    set.generator = j["generator"].get<std::string>();
  }
  if (!j.contains("data") || !j["data"].is_array() || j["data"].size() != count) {
    invalid("frames: \"data\" must hold exactly \"frames\" coefficient vectors");
  }
  for (const auto& frame : j["data"]) {
    if (!frame.is_array() || frame.size() != static_cast<std::size_t>(sh_count(set.order))) {
      invalid("frames: every frame needs (order+1)^2 coefficients");
    }
    std::vector<cplx> coeffs;
    for (const auto& c : frame) coeffs.push_back(complex_from_json(c, "frames.data"));
    set.frames.emplace_back(set.order, std::move(coeffs));
  }
  return set;
}

}  // namespace dirint
