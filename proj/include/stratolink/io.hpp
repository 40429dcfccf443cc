#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "stratolink/errors.hpp"

namespace stratolink {

/// Shortest text form that parses back to the identical double.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

/// Write via a temp file in the same directory, then rename: either the
/// complete file appears or nothing does.
inline void atomic_write_file(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + tmp.string());
    out << content;
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

/// Minimal CSV split for the simulator's own comma-separated outputs.
inline std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ',')) fields.push_back(field);
    rows.push_back(std::move(fields));
  }
  return rows;
}

/// Reproducibility record emitted next to every set of outputs.
struct RunManifest {
  int spec_version = 1;
  std::string scenario_hash;
  std::uint64_t seed = 0;
  std::string command_line;
  std::vector<std::string> outputs;
  double duration_seconds = 0.0;
};

inline nlohmann::json to_json(const RunManifest& m) {
  return {{"spec_version", m.spec_version}, {"scenario_hash", m.scenario_hash},
          {"seed", m.seed},                 {"command_line", m.command_line},
          {"outputs", m.outputs},           {"duration_seconds", m.duration_seconds}};
}

inline void write_manifest(const std::filesystem::path& out_dir, const RunManifest& m) {
  atomic_write_file(out_dir / "manifest.json", to_json(m).dump(2) + "\n");
}

}  // namespace stratolink
