#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace spinorlat::cli {

std::string sha256_file(const std::filesystem::path& path);

// One per command invocation, written to <out-dir>/<command>.manifest.json.
struct RunManifest {
  std::string command;
  nlohmann::json parameters = nlohmann::json::object();
  std::vector<std::filesystem::path> inputs;
  std::vector<std::filesystem::path> outputs;
  int exit_code = 0;
  double wall_time_s = 0;

  nlohmann::json to_json() const;
  std::filesystem::path write(const std::filesystem::path& out_dir) const;
};

}  // namespace spinorlat::cli
