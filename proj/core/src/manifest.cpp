#include "tielab/manifest.hpp"

#include <chrono>
#include <cstdio>

#include "tielab/version.hpp"

namespace tielab {

RunManifest::RunManifest(std::string subcommand, std::uint64_t master_seed)
    : subcommand_(std::move(subcommand)), master_seed_(master_seed) {}

void RunManifest::add_input(const std::filesystem::path& path) {
  inputs_.emplace_back(path.string(), fnv1a_digest(path));
}

nlohmann::json RunManifest::to_json() const {
  nlohmann::json doc;
  doc["artifact"] = kArtifactName;
  doc["version"] = kArtifactVersion;
  doc["subcommand"] = subcommand_;
  doc["seed"] = master_seed_;
  doc["config"] = config_;
  auto& inputs = doc["inputs"] = nlohmann::json::array();
  for (const auto& [path, digest] : inputs_) {
    char hex[20];
    std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(digest));
    inputs.push_back({{"path", path}, {"fnv1a64", hex}});
  }
  doc["outputs"] = outputs_;
  const auto now = std::chrono::system_clock::now();
  doc["timestamp_unix_ms"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count();
  return doc;
}

void RunManifest::write(const std::filesystem::path& path) const {
  atomic_write(path, to_json().dump(2) + "\n");
}

}  // namespace tielab
