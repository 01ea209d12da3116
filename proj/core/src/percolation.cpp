#include "tielab/percolation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tielab/error.hpp"
#include "tielab/parallel.hpp"
#include "tielab/rng.hpp"

namespace tielab {

namespace {

constexpr std::uint64_t kRunStreamBase = 0;
constexpr std::uint64_t kPermStreamBase = 1ULL << 40;

std::size_t count_for(const PercolationPlan& plan, double fraction, std::size_t target_size,
                      std::size_t reference_size) {
  const std::size_t basis =
      plan.matching == Matching::ByFraction ? target_size : reference_size;
  return static_cast<std::size_t>(std::llround(fraction * static_cast<double>(basis)));
}

}  // namespace

void PercolationPlan::validate() const {
  if (fractions.empty()) throw ValidationError("percolation plan needs at least one fraction");
  for (std::size_t i = 0; i < fractions.size(); ++i) {
    if (fractions[i] < 0.0 || fractions[i] > 1.0) {
      throw ValidationError("fractions must lie in [0,1]");
    }
    if (i > 0 && fractions[i] <= fractions[i - 1]) {
      throw ValidationError("fractions must be strictly increasing");
    }
  }
  if (runs_per_point == 0) throw ValidationError("runs_per_point must be positive");
}

RemovalSweep::RemovalSweep(const std::vector<LogicalEdge>& edges, EdgeClass target_class,
                           Rng& rng)
    : edges_(&edges) {
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (edges[i].cls == target_class) order_.push_back(i);
  }
  rng.shuffle(order_);
}

std::vector<LogicalEdge> RemovalSweep::edges_after(std::size_t count) const {
  if (count > order_.size()) {
    throw ValidationError("removal count " + std::to_string(count) + " exceeds class size " +
                          std::to_string(order_.size()));
  }
  std::vector<char> removed(edges_->size(), 0);
  for (std::size_t i = 0; i < count; ++i) removed[order_[i]] = 1;
  std::vector<LogicalEdge> kept;
  kept.reserve(edges_->size() - count);
  for (std::size_t i = 0; i < edges_->size(); ++i) {
    if (!removed[i]) kept.push_back((*edges_)[i]);
  }
  return kept;
}

std::vector<LogicalEdge> percolate(const std::vector<LogicalEdge>& edges, EdgeClass target_class,
                                   std::size_t count, Rng& rng) {
  RemovalSweep sweep(edges, target_class, rng);
  return sweep.edges_after(count);
}

PercolationResult percolation_sweep(const FriendshipGraph& graph,
                                    const EdgeClassification& classification,
                                    const PercolationPlan& plan, bool keep_traces) {
  plan.validate();
  plan.bdsi.validate(graph.node_count());
  const auto& edges = classification.edges();
  const std::size_t target_size = classification.count(plan.target_class);
  const std::size_t reference_size = classification.count(plan.reference_class);

  std::vector<std::size_t> counts;
  counts.reserve(plan.fractions.size());
  for (double f : plan.fractions) {
    const std::size_t count = count_for(plan, f, target_size, reference_size);
    if (count > target_size) {
      throw ValidationError("removal count " + std::to_string(count) + " exceeds " +
                            std::string(to_string(plan.target_class)) + " class size " +
                            std::to_string(target_size));
    }
    counts.push_back(count);
  }

  BDSIParams bdsi = plan.bdsi;
  bdsi.max_steps = std::max(bdsi.max_steps, plan.horizon);

  const std::size_t n_fractions = counts.size();
  std::vector<std::vector<SimulationTrace>> traces(
      n_fractions, std::vector<SimulationTrace>(plan.runs_per_point));

  parallel_for(plan.runs_per_point, plan.threads, [&](std::size_t rep) {
    Rng perm_rng = Rng::stream(plan.master_seed, kPermStreamBase + rep);
    const std::uint64_t run_seed = Rng::derive(plan.master_seed, kRunStreamBase + rep);
    RemovalSweep sweep(edges, plan.target_class, perm_rng);
    for (std::size_t fi = 0; fi < n_fractions; ++fi) {
      if (plan.independent_removals && fi > 0) {
        sweep = RemovalSweep(edges, plan.target_class, perm_rng);
      }
      EdgeClassification perturbed(sweep.edges_after(counts[fi]));
      ContactNetwork network(graph.node_count(), perturbed);
      traces[fi][rep] = bdsi_run(network, bdsi, run_seed);
    }
  });

  PercolationResult result;
  result.target_class = plan.target_class;
  result.matching = plan.matching;
  result.runs_per_point = plan.runs_per_point;
  result.horizon = plan.horizon;
  result.coverage_target = plan.coverage_target;
  result.master_seed = plan.master_seed;
  result.bdsi = plan.bdsi;
  result.points.reserve(n_fractions);
  for (std::size_t fi = 0; fi < n_fractions; ++fi) {
    PercolationPoint point;
    point.fraction = plan.fractions[fi];
    point.removed_count = counts[fi];
    point.curve = mean_coverage_curve(traces[fi], plan.horizon);
    double sum = 0.0, sum_sq = 0.0;
    for (const auto& trace : traces[fi]) {
      const TimeToInfect tti = time_to_coverage(trace, plan.coverage_target);
      if (tti.step) {
        const double t = static_cast<double>(*tti.step);
        sum += t;
        sum_sq += t * t;
        ++point.reached;
      } else {
        ++point.unreached;
      }
    }
    if (point.reached > 0) {
      const double r = static_cast<double>(point.reached);
      point.mean_time = sum / r;
      if (point.reached > 1) {
        const double var = (sum_sq - sum * sum / r) / (r - 1.0);
        point.sd_time = std::sqrt(std::max(0.0, var));
      }
    }
    result.points.push_back(std::move(point));
  }
  if (keep_traces) result.traces = std::move(traces);
  return result;
}

DeltaZ delta_z(const PercolationResult& a, const PercolationResult& b, std::uint32_t window_lo,
               std::uint32_t window_hi) {
  const auto same_params = [](const BDSIParams& x, const BDSIParams& y) {
    return x.p_rec == y.p_rec && x.p_plus == y.p_plus && x.p_minus == y.p_minus &&
           x.seed_count == y.seed_count && x.seed_nodes == y.seed_nodes;
  };
  if (a.points.size() != b.points.size() || a.horizon != b.horizon ||
      a.runs_per_point != b.runs_per_point || !same_params(a.bdsi, b.bdsi)) {
    throw ValidationError("delta_z: arms come from incompatible plans");
  }
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    const bool matched = a.matching == Matching::ByCount
                             ? a.points[i].removed_count == b.points[i].removed_count
                             : a.points[i].fraction == b.points[i].fraction;
    if (!matched) throw ValidationError("delta_z: arms have mismatched removal grids");
  }
  if (window_lo > window_hi || window_hi > a.horizon) {
    throw ValidationError("delta_z: bad early window");
  }

  DeltaZ out;
  out.window_lo = window_lo;
  out.window_hi = window_hi;
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    const auto& pa = a.points[i];
    const auto& pb = b.points[i];
    out.fractions.push_back(pa.fraction);
    out.removed_a.push_back(pa.removed_count);
    out.removed_b.push_back(pb.removed_count);
    std::vector<double> dz(a.horizon + 1), se(a.horizon + 1);
    for (std::uint32_t t = 0; t <= a.horizon; ++t) {
      dz[t] = pa.curve.mean[t] - pb.curve.mean[t];
      se[t] = std::sqrt(pa.curve.se[t] * pa.curve.se[t] + pb.curve.se[t] * pb.curve.se[t]);
    }
    double window_sum = 0.0;
    for (std::uint32_t t = window_lo; t <= window_hi; ++t) window_sum += dz[t];
    out.window_mean.push_back(window_sum / static_cast<double>(window_hi - window_lo + 1));
    out.dz.push_back(std::move(dz));
    out.se.push_back(std::move(se));
  }
  return out;
}

}  // namespace tielab
