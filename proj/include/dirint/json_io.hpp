#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "dirint/beams.hpp"
#include "dirint/coupling.hpp"
#include "dirint/energetics.hpp"
#include "dirint/scene.hpp"

namespace dirint {

using ordered_json = nlohmann::ordered_json;

/// Serializes with fixed key order and every double at 17 significant digits.
/// Arrays without nested objects are written on one line.
std::string dump_json(const ordered_json& value, int indent = 2);

/// Reads and parses a JSON file. ErrorKind::Io when unreadable,
/// ErrorKind::Validation when malformed.
nlohmann::json load_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

// {order, ax, ay, az}, matrices as row-major arrays of [re, im] pairs.
ordered_json matrices_to_json(const CouplingMatrices& m);
CouplingMatrices matrices_from_json(const nlohmann::json& j);

// {kind, order?, steer?} | {coeffs, steer?} | {sh_coeffs}
Beam beam_from_json(const nlohmann::json& j);
/// Inverse of beam_from_json: {coeffs, steer} for profiles, {sh_coeffs} otherwise.
ordered_json beam_to_json(const Beam& beam);
/// "preset:NAME[:ORDER][@THETA,PHI]" (radians) or a path to a beam JSON file.
Beam beam_from_argument(std::string_view arg);

SceneSpec scene_from_json(const nlohmann::json& j);
ordered_json scene_to_json(const SceneSpec& s);

PhysicalConstants constants_from_json(const nlohmann::json& j);

ordered_json direction_to_json(const SphericalDirection& d);
ordered_json estimate_to_json(const EnergeticEstimate& e);

/// Frame files: JSON, or packed little-endian binary for the ".shf" extension.
void write_frames(const std::filesystem::path& path, const FrameSet& set);
FrameSet read_frames(const std::filesystem::path& path);

}  // namespace dirint
