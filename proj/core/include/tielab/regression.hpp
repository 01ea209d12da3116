#ifndef TIELAB_REGRESSION_HPP
#define TIELAB_REGRESSION_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "tielab/graph.hpp"

namespace tielab {

// One ego with its assigned buddies and the activity means of the baseline
// (P1) and intervention (P2) periods.
struct EgoRecord {
  NodeId ego;
  std::vector<NodeId> alters;
  double activity_p1;  // > 0
  double activity_p2;
};

// Canonical covariate order used throughout.
inline const std::vector<std::string> kCovariateNames = {"n_reciprocal", "n_incoming",
                                                         "n_outgoing", "tie_strength"};

struct CovariateRow {
  double y;             // activity change ratio p2/p1
  double n_reciprocal;  // alters sharing a reciprocal tie with the ego
  double n_incoming;    // alters who nominate the ego (ego perceived friend)
  double n_outgoing;    // alters the ego nominates (alter perceived friend)
  double tie_strength;  // sum of closeness over explicit ties to the alters

  double covariate(std::size_t index) const;
};

// One row per ego. Tie counts come from the classification of each
// (ego, alter) pair; tie strength sums the explicit closeness scores in both
// directions where present. Validates ego/alter membership in the node set.
std::vector<CovariateRow> build_rows(const EdgeClassification& classification,
                                     std::size_t node_count,
                                     const std::vector<EgoRecord>& records,
                                     bool log_ratio = false);

struct EffectEstimate {
  std::string name;
  double coefficient;
  double std_error;
  double ci_low;
  double ci_high;
  double p_value;
};

struct OlsFit {
  std::vector<EffectEstimate> estimates;  // intercept first when present
  std::size_t n_rows;
  std::size_t n_params;
  double sigma2;  // residual variance estimate, RSS / (n - k)
};

// Ordinary least squares through a Householder QR of the design matrix.
// Columns follow `covariates` (a subset of kCovariateNames), preceded by an
// intercept column when `intercept` is set. Classical standard errors; 95%
// CIs and two-sided p-values from the t distribution with n-k df.
OlsFit ols_fit(const std::vector<CovariateRow>& rows, const std::vector<std::string>& covariates,
               bool intercept = true);

// Ego-records CSV: `ego,alter1,alter2,activity_p1,activity_p2`. Node names
// are resolved against the graph's node set; unknown names are errors.
std::vector<EgoRecord> load_ego_records(const std::filesystem::path& path,
                                        const std::vector<std::string>& node_names);

}  // namespace tielab

#endif  // TIELAB_REGRESSION_HPP
