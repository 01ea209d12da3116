#ifndef TIELAB_MANIFEST_HPP
#define TIELAB_MANIFEST_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tielab/io.hpp"

namespace tielab {

// Reproducibility sidecar written next to every result set: the resolved
// configuration plus input digests. Feeding the manifest back through
// `--config` reruns the exact same invocation.
class RunManifest {
 public:
  RunManifest(std::string subcommand, std::uint64_t master_seed);

  void set_config(nlohmann::json config) { config_ = std::move(config); }
  void add_input(const std::filesystem::path& path);
  void add_output(const std::string& filename) { outputs_.push_back(filename); }

  nlohmann::json to_json() const;
  void write(const std::filesystem::path& path) const;

 private:
  std::string subcommand_;
  std::uint64_t master_seed_;
  nlohmann::json config_;
  std::vector<std::pair<std::string, std::uint64_t>> inputs_;
  std::vector<std::string> outputs_;
};

}  // namespace tielab

#endif  // TIELAB_MANIFEST_HPP
