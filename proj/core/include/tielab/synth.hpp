#ifndef TIELAB_SYNTH_HPP
#define TIELAB_SYNTH_HPP

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tielab/graph.hpp"
#include "tielab/regression.hpp"
#include "tielab/rng.hpp"

namespace tielab {

// Discrete distribution over closeness scores 3..7 (all explicit under the
// default threshold of 2).
struct ClosenessDist {
  std::array<double, 5> weights;  // scores 3,4,5,6,7

  int sample(Rng& rng) const;
  double mean() const;
  void validate() const;
};

// Mean 4.7, mirroring the observed reciprocal-tie average.
ClosenessDist reciprocal_closeness_default();
// Mean 3.9, mirroring the observed unilateral-tie average.
ClosenessDist unilateral_closeness_default();

// Planted-partition digraph generator. Unordered node pairs receive a
// logical edge with the intra- or inter-community probability; the edge is
// made reciprocal (two arcs) with the class's reciprocity target, otherwise
// unilateral with a uniformly chosen direction.
struct GraphGenSpec {
  std::uint32_t n_nodes = 120;
  std::uint32_t n_communities = 4;
  double intra_edge_prob = 0.22;
  double inter_edge_prob = 0.02;
  double reciprocity_intra = 0.55;
  double reciprocity_inter = 0.10;
  ClosenessDist reciprocal_scores = reciprocal_closeness_default();
  ClosenessDist unilateral_scores = unilateral_closeness_default();
  int threshold = kDefaultThreshold;
  std::uint64_t seed = 0;

  void validate() const;
};

// The preset used by the experiments: 120 nodes in 4 communities, tuned so
// roughly 45% of logical edges come out reciprocal, concentrated within
// communities, with mostly unilateral edges between communities.
GraphGenSpec paper_like_preset(std::uint64_t seed);

struct SynthGraph {
  FriendshipGraph graph;
  std::vector<std::uint32_t> community;  // per node index
};

SynthGraph gen_graph(const GraphGenSpec& spec);

// Pairs every ego with two distinct buddies drawn uniformly from its own
// community. Requires every community to hold at least 3 nodes.
std::vector<std::vector<NodeId>> assign_buddies(const SynthGraph& world, Rng& rng);

// Planted-coefficient outcome generator: y = intercept + beta.x + noise,
// activity_p1 uniform in [p1_low, p1_high], activity_p2 = y * activity_p1.
struct OutcomeGenSpec {
  std::map<std::string, double> beta;  // keyed by kCovariateNames entries
  double intercept = 1.0;
  double noise_sd = 0.0;
  double p1_low = 500.0;
  double p1_high = 1500.0;
  std::uint64_t seed = 0;

  void validate() const;
};

// Sign pattern mirroring the reported effects: reciprocal strongest, incoming
// positive, outgoing zero, tie strength marginal.
OutcomeGenSpec planted_effect_preset(std::uint64_t seed);

std::vector<EgoRecord> gen_outcomes(const SynthGraph& world,
                                    const EdgeClassification& classification,
                                    const std::vector<std::vector<NodeId>>& buddies,
                                    const OutcomeGenSpec& spec);

void save_survey_csv(const FriendshipGraph& graph, const std::filesystem::path& path);
void save_communities_csv(const SynthGraph& world, const std::filesystem::path& path);
void save_ego_records_csv(const FriendshipGraph& graph, const std::vector<EgoRecord>& records,
                          const std::filesystem::path& path);

}  // namespace tielab

#endif  // TIELAB_SYNTH_HPP
