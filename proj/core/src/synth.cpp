#include "tielab/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "tielab/csv.hpp"
#include "tielab/error.hpp"
#include "tielab/io.hpp"

namespace tielab {

int ClosenessDist::sample(Rng& rng) const {
  const double u = rng.next_double();
  double cum = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    cum += weights[i];
    if (u < cum) return 3 + static_cast<int>(i);
  }
  return 7;
}

double ClosenessDist::mean() const {
  double m = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) m += weights[i] * (3.0 + static_cast<double>(i));
  return m;
}

void ClosenessDist::validate() const {
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw ValidationError("closeness weights must be nonnegative");
    total += w;
  }
  if (std::fabs(total - 1.0) > 1e-9) throw ValidationError("closeness weights must sum to 1");
}

ClosenessDist reciprocal_closeness_default() { return {{0.18, 0.30, 0.25, 0.18, 0.09}}; }
ClosenessDist unilateral_closeness_default() { return {{0.46, 0.30, 0.15, 0.06, 0.03}}; }

void GraphGenSpec::validate() const {
  if (n_nodes < 2) throw ValidationError("graph generator needs at least 2 nodes");
  if (n_communities == 0 || n_communities > n_nodes) {
    throw ValidationError("n_communities must lie in [1, n_nodes]");
  }
  auto prob_ok = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (!prob_ok(intra_edge_prob) || !prob_ok(inter_edge_prob) || !prob_ok(reciprocity_intra) ||
      !prob_ok(reciprocity_inter)) {
    throw ValidationError("generator probabilities must lie in [0,1]");
  }
  reciprocal_scores.validate();
  unilateral_scores.validate();
  // Nonzero reciprocity targets are unrealizable when no edges can exist.
  if (intra_edge_prob == 0.0 && inter_edge_prob == 0.0 &&
      (reciprocity_intra > 0.0 || reciprocity_inter > 0.0)) {
    throw ValidationError("infeasible spec: reciprocity targets with zero edge probability");
  }
}

GraphGenSpec paper_like_preset(std::uint64_t seed) {
  GraphGenSpec spec;
  spec.seed = seed;
  return spec;  // the defaults are the preset
}

SynthGraph gen_graph(const GraphGenSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);

  // Round-robin community labels give sizes as equal as possible.
  std::vector<std::uint32_t> community(spec.n_nodes);
  for (std::uint32_t i = 0; i < spec.n_nodes; ++i) community[i] = i % spec.n_communities;

  std::vector<std::string> names(spec.n_nodes);
  for (std::uint32_t i = 0; i < spec.n_nodes; ++i) names[i] = "p" + std::to_string(i);

  std::vector<NominationArc> arcs;
  for (std::uint32_t u = 0; u < spec.n_nodes; ++u) {
    for (std::uint32_t v = u + 1; v < spec.n_nodes; ++v) {
      const bool intra = community[u] == community[v];
      const double edge_prob = intra ? spec.intra_edge_prob : spec.inter_edge_prob;
      if (rng.next_double() >= edge_prob) continue;
      const double rec_prob = intra ? spec.reciprocity_intra : spec.reciprocity_inter;
      if (rng.next_double() < rec_prob) {
        arcs.push_back({u, v, spec.reciprocal_scores.sample(rng)});
        arcs.push_back({v, u, spec.reciprocal_scores.sample(rng)});
      } else {
        const bool forward = rng.next_double() < 0.5;
        arcs.push_back({forward ? u : v, forward ? v : u, spec.unilateral_scores.sample(rng)});
      }
    }
  }
  return SynthGraph{FriendshipGraph(std::move(names), std::move(arcs), spec.threshold),
                    std::move(community)};
}

std::vector<std::vector<NodeId>> assign_buddies(const SynthGraph& world, Rng& rng) {
  const std::uint32_t n = static_cast<std::uint32_t>(world.graph.node_count());
  std::vector<std::vector<NodeId>> members;
  for (std::uint32_t i = 0; i < n; ++i) {
    const std::uint32_t c = world.community[i];
    if (c >= members.size()) members.resize(c + 1);
    members[c].push_back(i);
  }
  for (const auto& group : members) {
    if (group.size() < 3) {
      throw ValidationError("buddy assignment needs at least 3 nodes per community");
    }
  }
  std::vector<std::vector<NodeId>> buddies(n);
  for (std::uint32_t ego = 0; ego < n; ++ego) {
    const auto& group = members[world.community[ego]];
    NodeId first, second;
    do {
      first = group[rng.next_below(group.size())];
    } while (first == ego);
    do {
      second = group[rng.next_below(group.size())];
    } while (second == ego || second == first);
    buddies[ego] = {first, second};
  }
  return buddies;
}

void OutcomeGenSpec::validate() const {
  if (noise_sd < 0.0) throw ValidationError("noise_sd must be nonnegative");
  if (!(p1_low > 0.0) || p1_high < p1_low) {
    throw ValidationError("activity_p1 range must be positive and ordered");
  }
  for (const auto& [name, value] : beta) {
    (void)value;
    if (std::find(kCovariateNames.begin(), kCovariateNames.end(), name) ==
        kCovariateNames.end()) {
      throw ValidationError("unknown covariate in beta: '" + name + "'");
    }
  }
}

OutcomeGenSpec planted_effect_preset(std::uint64_t seed) {
  OutcomeGenSpec spec;
  spec.beta = {{"n_reciprocal", 0.50}, {"n_incoming", 0.30}, {"n_outgoing", 0.0},
               {"tie_strength", 0.01}};
  spec.intercept = 1.0;
  spec.noise_sd = 0.10;
  spec.seed = seed;
  return spec;
}

std::vector<EgoRecord> gen_outcomes(const SynthGraph& world,
                                    const EdgeClassification& classification,
                                    const std::vector<std::vector<NodeId>>& buddies,
                                    const OutcomeGenSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  std::array<double, 4> beta{};
  for (std::size_t i = 0; i < kCovariateNames.size(); ++i) {
    const auto it = spec.beta.find(kCovariateNames[i]);
    beta[i] = it == spec.beta.end() ? 0.0 : it->second;
  }

  std::vector<EgoRecord> base;
  base.reserve(buddies.size());
  for (std::uint32_t ego = 0; ego < buddies.size(); ++ego) {
    base.push_back(EgoRecord{ego, buddies[ego], 1.0, 1.0});
  }
  const auto rows = build_rows(classification, world.graph.node_count(), base);

  std::vector<EgoRecord> records = std::move(base);
  for (std::size_t i = 0; i < records.size(); ++i) {
    double y = spec.intercept;
    for (std::size_t j = 0; j < beta.size(); ++j) y += beta[j] * rows[i].covariate(j);
    if (spec.noise_sd > 0.0) y += spec.noise_sd * rng.next_normal();
    const double p1 = spec.p1_low + (spec.p1_high - spec.p1_low) * rng.next_double();
    records[i].activity_p1 = p1;
    records[i].activity_p2 = y * p1;
  }
  return records;
}

void save_survey_csv(const FriendshipGraph& graph, const std::filesystem::path& path) {
  csv::Writer out;
  out.row({"src", "dst", "closeness"});
  for (const auto& arc : graph.arcs()) {
    out.row({graph.name_of(arc.src), graph.name_of(arc.dst), std::to_string(arc.closeness)});
  }
  atomic_write(path, out.str());
}

void save_communities_csv(const SynthGraph& world, const std::filesystem::path& path) {
  csv::Writer out;
  out.row({"node", "community"});
  for (NodeId i = 0; i < world.graph.node_count(); ++i) {
    out.row({world.graph.name_of(i), std::to_string(world.community[i])});
  }
  atomic_write(path, out.str());
}

void save_ego_records_csv(const FriendshipGraph& graph, const std::vector<EgoRecord>& records,
                          const std::filesystem::path& path) {
  csv::Writer out;
  out.row({"ego", "alter1", "alter2", "activity_p1", "activity_p2"});
  for (const auto& r : records) {
    if (r.alters.size() != 2) {
      throw ValidationError("ego-records CSV requires exactly two alters per ego");
    }
    out.row({graph.name_of(r.ego), graph.name_of(r.alters[0]), graph.name_of(r.alters[1]),
             csv::format_double(r.activity_p1), csv::format_double(r.activity_p2)});
  }
  atomic_write(path, out.str());
}

}  // namespace tielab
