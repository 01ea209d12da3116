#ifndef TIELAB_PERCOLATION_HPP
#define TIELAB_PERCOLATION_HPP

#include <cstdint>
#include <vector>

#include "tielab/bdsi.hpp"
#include "tielab/graph.hpp"
#include "tielab/rng.hpp"

namespace tielab {

// How the removal count for a fraction F is computed:
//  ByFraction - round(F * size of the arm's own target class)
//  ByCount    - round(F * size of the reference class), identical in both
//               arms so equal absolute numbers of edges are removed.
enum class Matching : std::uint8_t { ByFraction, ByCount };

struct PercolationPlan {
  EdgeClass target_class = EdgeClass::Reciprocal;
  std::vector<double> fractions;  // strictly increasing, in [0,1]
  Matching matching = Matching::ByCount;
  EdgeClass reference_class = EdgeClass::Reciprocal;  // ByCount only
  std::uint32_t runs_per_point = 100;
  BDSIParams bdsi;
  std::uint64_t master_seed = 0;
  std::uint32_t horizon = 15;
  double coverage_target = 0.5;  // fraction defining the reported T
  bool independent_removals = false;  // re-sample the removal per F instead of nesting
  unsigned threads = 1;

  void validate() const;
};

// One sweep's removal order for a class: a single permutation, so the first
// k removals are nested inside the first k' >= k.
class RemovalSweep {
 public:
  RemovalSweep(const std::vector<LogicalEdge>& edges, EdgeClass target_class, Rng& rng);

  std::size_t class_size() const { return order_.size(); }
  // Edge set with the first `count` edges of the target class removed.
  std::vector<LogicalEdge> edges_after(std::size_t count) const;

 private:
  const std::vector<LogicalEdge>* edges_;
  std::vector<std::size_t> order_;  // indices into *edges_, permuted
};

// Uniformly removes exactly `count` logical edges of `target_class`.
// Removing a reciprocal edge removes both of its arcs by construction
// (the logical edge carries them).
std::vector<LogicalEdge> percolate(const std::vector<LogicalEdge>& edges, EdgeClass target_class,
                                   std::size_t count, Rng& rng);

struct PercolationPoint {
  double fraction;
  std::size_t removed_count;
  CoverageCurve curve;
  double mean_time = 0.0;  // over runs that reached coverage_target
  double sd_time = 0.0;
  std::uint32_t reached = 0;
  std::uint32_t unreached = 0;
};

struct PercolationResult {
  EdgeClass target_class;
  Matching matching;
  std::uint32_t runs_per_point;
  std::uint32_t horizon;
  double coverage_target;
  std::uint64_t master_seed;
  BDSIParams bdsi;
  std::vector<PercolationPoint> points;
  // Retained only when the caller asks for them (tests assert per-replicate
  // couplings on these); indexed [fraction][replicate].
  std::vector<std::vector<SimulationTrace>> traces;
};

PercolationResult percolation_sweep(const FriendshipGraph& graph,
                                    const EdgeClassification& classification,
                                    const PercolationPlan& plan, bool keep_traces = false);

struct DeltaZ {
  std::vector<double> fractions;
  std::vector<std::size_t> removed_a;
  std::vector<std::size_t> removed_b;
  std::vector<std::vector<double>> dz;  // [fraction][t], mean_a - mean_b
  std::vector<std::vector<double>> se;  // independent-arm variance sum
  std::uint32_t window_lo = 5;
  std::uint32_t window_hi = 10;
  std::vector<double> window_mean;  // mean dz over t in [window_lo, window_hi]
};

// Pointwise difference of mean coverage between two arms of the same plan
// (curve of a minus curve of b). Throws on mismatched fractions, horizon,
// run counts, or BDSI parameters.
DeltaZ delta_z(const PercolationResult& a, const PercolationResult& b,
               std::uint32_t window_lo = 5, std::uint32_t window_hi = 10);

}  // namespace tielab

#endif  // TIELAB_PERCOLATION_HPP
