#ifndef TIELAB_APP_HPP
#define TIELAB_APP_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tielab/bdsi.hpp"
#include "tielab/percolation.hpp"
#include "tielab/stats.hpp"
#include "tielab/synth.hpp"

// Subcommand drivers. The CLI executable only parses flags into these
// configs; tests drive the same code in-process. Every config serializes to
// the JSON echoed into the run manifest, and `apply_json` patches a config
// from a (possibly partial) JSON object, so a manifest can be replayed with
// `--config` and flags still override file values.
namespace tielab::app {

struct CommonConfig {
  std::filesystem::path out_dir = "out";
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

struct StatsConfig {
  CommonConfig common;
  std::filesystem::path graph;  // survey CSV
  int threshold = kDefaultThreshold;
  std::string closeness_convention = "directed";  // or "edge_mean"
  std::string t_test_kind = "welch";              // or "pooled"
  std::uint32_t kde_points = 256;
};

struct SimulateConfig {
  CommonConfig common;
  std::filesystem::path graph;
  int threshold = kDefaultThreshold;
  double p_rec = 0.10;
  double p_plus = 0.05;
  double p_minus = 0.02;
  std::uint32_t seed_count = 1;
  std::vector<std::string> seed_nodes;  // explicit seeding when non-empty
  std::uint32_t runs = 100;
  std::uint32_t horizon = 15;
  std::optional<double> stop_at_coverage;
  bool write_traces = false;
};

struct PercolateConfig {
  CommonConfig common;
  std::filesystem::path graph;
  int threshold = kDefaultThreshold;
  double p_rec = 0.10;
  double p_plus = 0.05;
  double p_minus = 0.02;
  std::uint32_t seed_count = 1;
  std::vector<std::string> seed_nodes;
  std::vector<double> fractions = {0.0, 0.1, 0.2, 0.3, 0.4};
  std::string matching = "by_count";  // or "by_fraction"
  std::string reference_class = "reciprocal";
  std::string arm = "both";  // "reciprocal", "unilateral", or "both"
  std::uint32_t runs_per_point = 100;
  std::uint32_t horizon = 15;
  double coverage_target = 0.5;
  bool independent_removals = false;
  std::uint32_t window_lo = 5;
  std::uint32_t window_hi = 10;
};

struct RegressConfig {
  CommonConfig common;
  std::filesystem::path edges;  // classified-edge CSV
  std::filesystem::path nodes;  // node-index CSV
  std::filesystem::path records;
  std::vector<std::string> covariates = kCovariateNames;
  bool intercept = true;
  bool log_ratio = false;
};

struct SynthConfig {
  CommonConfig common;
  std::uint32_t n_nodes = 120;
  std::uint32_t n_communities = 4;
  double intra_edge_prob = 0.22;
  double inter_edge_prob = 0.02;
  double reciprocity_intra = 0.55;
  double reciprocity_inter = 0.10;
  double beta_reciprocal = 0.50;
  double beta_incoming = 0.30;
  double beta_outgoing = 0.0;
  double beta_tie_strength = 0.01;
  double intercept = 1.0;
  double noise_sd = 0.10;
};

nlohmann::json to_json(const StatsConfig&);
nlohmann::json to_json(const SimulateConfig&);
nlohmann::json to_json(const PercolateConfig&);
nlohmann::json to_json(const RegressConfig&);
nlohmann::json to_json(const SynthConfig&);

void apply_json(StatsConfig&, const nlohmann::json&);
void apply_json(SimulateConfig&, const nlohmann::json&);
void apply_json(PercolateConfig&, const nlohmann::json&);
void apply_json(RegressConfig&, const nlohmann::json&);
void apply_json(SynthConfig&, const nlohmann::json&);

// Each driver writes its result files plus manifest.json into out_dir and
// returns the list of result filenames (manifest excluded).
std::vector<std::string> run_stats(const StatsConfig&);
std::vector<std::string> run_simulate(const SimulateConfig&);
std::vector<std::string> run_percolate(const PercolateConfig&);
std::vector<std::string> run_regress(const RegressConfig&);
std::vector<std::string> run_synth(const SynthConfig&);

// Reads a config file; if it is a manifest (has a "config" key), unwraps it.
nlohmann::json load_config_file(const std::filesystem::path& path);

}  // namespace tielab::app

#endif  // TIELAB_APP_HPP
