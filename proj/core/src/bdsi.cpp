#include "tielab/bdsi.hpp"

#include <cmath>
#include <string>

#include "tielab/error.hpp"
#include "tielab/rng.hpp"

namespace tielab {

namespace {

constexpr std::uint64_t kSeedPickSalt = 0x5EEDC0DE5EEDC0DEULL;
constexpr std::uint64_t kFieldSalt = 0xF1E1DF1E1DF1E1DULL;

bool probability_ok(double p) { return p >= 0.0 && p <= 1.0; }

// Smallest count k with k/n >= fraction.
std::uint32_t coverage_target_count(double fraction, std::size_t n) {
  const double scaled = fraction * static_cast<double>(n);
  auto k = static_cast<std::uint32_t>(std::ceil(scaled));
  if (k > 0 && static_cast<double>(k - 1) >= scaled) --k;
  return k;
}

}  // namespace

void BDSIParams::validate(std::size_t node_count) const {
  if (!probability_ok(p_rec) || !probability_ok(p_plus) || !probability_ok(p_minus)) {
    throw ValidationError("transmission probabilities must lie in [0,1]");
  }
  if (max_steps == 0) throw ValidationError("max_steps must be positive");
  if (stop_at_coverage && !(*stop_at_coverage > 0.0 && *stop_at_coverage <= 1.0)) {
    throw ValidationError("stop_at_coverage must lie in (0,1]");
  }
  if (uses_explicit_seeds()) {
    for (NodeId node : seed_nodes) {
      if (node >= node_count) {
        throw ValidationError("seed node index " + std::to_string(node) + " not in graph");
      }
    }
  } else {
    if (seed_count == 0) throw ValidationError("seed_count must be positive");
    if (seed_count > node_count) {
      throw ValidationError("seed_count exceeds node count");
    }
  }
}

ContactNetwork::ContactNetwork(std::size_t node_count, const EdgeClassification& classification)
    : out_(node_count) {
  for (const auto& e : classification.edges()) {
    if (e.u >= node_count || e.v >= node_count) {
      throw ValidationError("logical edge endpoint outside node set");
    }
    if (e.is_reciprocal()) {
      out_[e.u].push_back({e.v, ContactKind::Reciprocal});
      out_[e.v].push_back({e.u, ContactKind::Reciprocal});
    } else {
      const NodeId from = *e.nominator;
      const NodeId to = from == e.u ? e.v : e.u;
      out_[from].push_back({to, ContactKind::UniForward});
      out_[to].push_back({from, ContactKind::UniBackward});
    }
  }
}

std::size_t ContactNetwork::reachable_count(const std::vector<NodeId>& sources,
                                            const BDSIParams& params) const {
  std::vector<char> seen(out_.size(), 0);
  std::vector<NodeId> stack;
  for (NodeId s : sources) {
    if (!seen[s]) {
      seen[s] = 1;
      stack.push_back(s);
    }
  }
  std::size_t count = stack.size();
  while (!stack.empty()) {
    const NodeId node = stack.back();
    stack.pop_back();
    for (const Contact& c : out_[node]) {
      if (!seen[c.to] && transmission_probability(params, c.kind) > 0.0) {
        seen[c.to] = 1;
        ++count;
        stack.push_back(c.to);
      }
    }
  }
  return count;
}

SimulationTrace bdsi_run(const ContactNetwork& network, const BDSIParams& params,
                         std::uint64_t run_seed) {
  const std::size_t n = network.node_count();
  if (n == 0) throw ValidationError("simulation on an empty graph");
  params.validate(n);

  std::vector<NodeId> seeds;
  if (params.uses_explicit_seeds()) {
    seeds = params.seed_nodes;
  } else {
    Rng rng(Rng::derive(run_seed, kSeedPickSalt));
    seeds = rng.sample_without_replacement(static_cast<std::uint32_t>(n), params.seed_count);
  }

  SimulationTrace trace;
  trace.rng_seed = run_seed;
  trace.infection_time.assign(n, -1);
  for (NodeId s : seeds) {
    if (trace.infection_time[s] >= 0) throw ValidationError("duplicate seed node");
    trace.infection_time[s] = 0;
  }

  std::uint32_t infected_count = static_cast<std::uint32_t>(seeds.size());
  trace.z_curve.assign(1, infected_count);

  const std::size_t reachable = network.reachable_count(seeds, params);
  const std::uint32_t stop_count =
      params.stop_at_coverage ? coverage_target_count(*params.stop_at_coverage, n)
                              : static_cast<std::uint32_t>(n);

  const std::uint64_t field_key = Rng::derive(run_seed, kFieldSalt);
  std::vector<NodeId> frontier = seeds;      // infected, may still have susceptible contacts
  std::vector<NodeId> newly_infected;

  for (std::uint32_t step = 1;
       step <= params.max_steps && infected_count < reachable && infected_count < stop_count;
       ++step) {
    newly_infected.clear();
    for (NodeId from : frontier) {
      for (const Contact& c : network.contacts_of(from)) {
        if (trace.infection_time[c.to] >= 0) continue;
        const double p = transmission_probability(params, c.kind);
        if (p <= 0.0) continue;
        if (crn_uniform(field_key, from, c.to, step) < p) {
          // Mark immediately; only step-(t-1) infected nodes are in `frontier`,
          // so updates stay synchronous.
          trace.infection_time[c.to] = static_cast<std::int32_t>(step);
          newly_infected.push_back(c.to);
        }
      }
    }
    infected_count += static_cast<std::uint32_t>(newly_infected.size());
    trace.z_curve.push_back(infected_count);
    frontier.insert(frontier.end(), newly_infected.begin(), newly_infected.end());
  }
  return trace;
}

CoverageCurve mean_coverage_curve(const std::vector<SimulationTrace>& traces,
                                  std::uint32_t horizon) {
  if (traces.empty()) throw EmptyInputError("mean coverage of zero traces");
  CoverageCurve curve;
  curve.runs = traces.size();
  curve.mean.assign(horizon + 1, 0.0);
  curve.se.assign(horizon + 1, 0.0);
  const double r = static_cast<double>(traces.size());
  for (std::uint32_t t = 0; t <= horizon; ++t) {
    double sum = 0.0;
    for (const auto& trace : traces) {
      const std::size_t idx = std::min<std::size_t>(t, trace.z_curve.size() - 1);
      sum += static_cast<double>(trace.z_curve[idx]);
    }
    const double mean = sum / r;
    curve.mean[t] = mean;
    if (traces.size() > 1) {
      double ss = 0.0;
      for (const auto& trace : traces) {
        const std::size_t idx = std::min<std::size_t>(t, trace.z_curve.size() - 1);
        const double d = static_cast<double>(trace.z_curve[idx]) - mean;
        ss += d * d;
      }
      curve.se[t] = std::sqrt(ss / (r - 1.0)) / std::sqrt(r);
    }
  }
  return curve;
}

TimeToInfect time_to_coverage(const SimulationTrace& trace, double target_fraction) {
  if (!(target_fraction > 0.0 && target_fraction <= 1.0)) {
    throw ValidationError("target_fraction must lie in (0,1]");
  }
  const std::uint32_t target = coverage_target_count(target_fraction, trace.node_count());
  for (std::uint32_t t = 0; t < trace.z_curve.size(); ++t) {
    if (trace.z_curve[t] >= target) return TimeToInfect{target_fraction, t};
  }
  return TimeToInfect{target_fraction, std::nullopt};
}

}  // namespace tielab
