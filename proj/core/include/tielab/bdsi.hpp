#ifndef TIELAB_BDSI_HPP
#define TIELAB_BDSI_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "tielab/graph.hpp"

namespace tielab {

// Direction-aware SI transmission probabilities. A reciprocal edge carries
// p_rec both ways; a unilateral edge carries p_plus from nominator to nominee
// and p_minus back. The canonical regime is p_rec >= p_plus >= p_minus;
// parameters outside it are legal (callers warn, they do not reject).
struct BDSIParams {
  double p_rec = 0.10;
  double p_plus = 0.05;
  double p_minus = 0.02;
  std::uint32_t seed_count = 1;
  std::vector<NodeId> seed_nodes;  // explicit seeding when non-empty
  std::uint32_t max_steps = 15;
  std::optional<double> stop_at_coverage;  // fraction in (0,1]

  bool uses_explicit_seeds() const { return !seed_nodes.empty(); }
  bool in_canonical_regime() const { return p_rec >= p_plus && p_plus >= p_minus; }
  void validate(std::size_t node_count) const;
};

// Per-node directed contacts derived from the classified edges. Every
// logical edge becomes two directed contacts with a probability class.
enum class ContactKind : std::uint8_t { Reciprocal, UniForward, UniBackward };

struct Contact {
  NodeId to;
  ContactKind kind;
};

class ContactNetwork {
 public:
  ContactNetwork(std::size_t node_count, const EdgeClassification& classification);

  std::size_t node_count() const { return out_.size(); }
  const std::vector<Contact>& contacts_of(NodeId node) const { return out_[node]; }

  // Nodes reachable from `sources` through contacts whose probability is
  // positive under `params`; used for the full-coverage halt.
  std::size_t reachable_count(const std::vector<NodeId>& sources, const BDSIParams& params) const;

 private:
  std::vector<std::vector<Contact>> out_;
};

inline double transmission_probability(const BDSIParams& p, ContactKind kind) {
  switch (kind) {
    case ContactKind::Reciprocal: return p.p_rec;
    case ContactKind::UniForward: return p.p_plus;
    case ContactKind::UniBackward: return p.p_minus;
  }
  return 0.0;
}

// One Monte Carlo realization: infection step per node (-1 = never) and the
// cumulative coverage curve Z(t) for t = 0..t_end.
struct SimulationTrace {
  std::vector<std::int32_t> infection_time;
  std::vector<std::uint32_t> z_curve;
  std::uint64_t rng_seed = 0;
  std::size_t node_count() const { return infection_time.size(); }
  bool infected(NodeId node) const { return infection_time[node] >= 0; }
};

// Synchronous discrete-time run. All transmission draws come from a
// counter-based uniform field keyed by (run seed, arc, step), so runs with
// the same seed share draws arc-by-arc: nested edge sets and pointwise-ordered
// parameters yield nested infected sets by construction.
SimulationTrace bdsi_run(const ContactNetwork& network, const BDSIParams& params,
                         std::uint64_t run_seed);

struct CoverageCurve {
  std::vector<double> mean;  // index t = 0..horizon
  std::vector<double> se;    // standard error across runs (0 for a single run)
  std::size_t runs = 0;
};

// Pointwise mean/SE across traces, each padded to `horizon` by carrying its
// final coverage forward.
CoverageCurve mean_coverage_curve(const std::vector<SimulationTrace>& traces,
                                  std::uint32_t horizon);

struct TimeToInfect {
  double target_fraction;
  std::optional<std::uint32_t> step;  // empty = target never reached
};

TimeToInfect time_to_coverage(const SimulationTrace& trace, double target_fraction);

}  // namespace tielab

#endif  // TIELAB_BDSI_HPP
