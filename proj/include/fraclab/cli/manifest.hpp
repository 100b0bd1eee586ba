#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace fraclab::cli {

std::string sha256_file(const std::string& path);
std::string iso8601_now();

/// One per run: what was asked, what was written, and the hashes needed to
/// check a replay.
struct RunManifest {
  std::string subcommand;
  std::vector<std::string> argv;
  nlohmann::ordered_json parameters = nlohmann::ordered_json::object();
  nlohmann::ordered_json results = nlohmann::ordered_json::object();
  long long seed = -1;  // -1: no randomness
  std::string version;
  std::string timestamp;
  std::vector<std::string> outputs;

  nlohmann::ordered_json to_json() const;  // hashes the outputs now
  void write(const std::string& path) const;
};

}  // namespace fraclab::cli
