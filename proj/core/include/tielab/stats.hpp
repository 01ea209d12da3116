#ifndef TIELAB_STATS_HPP
#define TIELAB_STATS_HPP

#include <optional>
#include <span>
#include <vector>

#include "tielab/graph.hpp"

namespace tielab {

struct SampleSummary {
  std::size_t n = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased (n-1 denominator); 0 when n == 1

  static SampleSummary of(std::span<const double> values);
};

struct TTestResult {
  double t_statistic;
  double degrees_of_freedom;
  double p_value;  // two-sided
};

enum class TTestKind { Welch, Pooled };

// Two-sample t-test from summaries. Welch (default) uses the
// Welch-Satterthwaite degrees of freedom; Pooled is the classic equal-variance
// form. Requires n >= 2 on both sides and nonzero combined variance.
TTestResult t_test(const SampleSummary& a, const SampleSummary& b,
                   TTestKind kind = TTestKind::Welch);
TTestResult welch_t_test(std::span<const double> a, std::span<const double> b);

// How reciprocal edges contribute to the per-class closeness samples:
// both directed scores (default) or their per-edge mean.
enum class ClosenessConvention { DirectedScores, PerEdgeMean };

struct ClassSamples {
  std::vector<double> reciprocal;
  std::vector<double> unilateral;
};
ClassSamples closeness_samples(const EdgeClassification& classification,
                               ClosenessConvention convention = ClosenessConvention::DirectedScores);

struct ClosenessByClass {
  std::optional<SampleSummary> reciprocal;  // absent when the class is empty
  std::optional<SampleSummary> unilateral;
};
ClosenessByClass closeness_by_class(const EdgeClassification& classification,
                                    ClosenessConvention convention = ClosenessConvention::DirectedScores);

// Empirical CDF as step-function points: sorted unique x with the cumulative
// fraction at each. Last fraction is exactly 1.
struct EcdfPoint {
  double x;
  double cumulative_fraction;
};
std::vector<EcdfPoint> ecdf(std::span<const double> values);

// Gaussian kernel density estimate evaluated on a grid.
std::vector<double> kde(std::span<const double> values, double bandwidth,
                        std::span<const double> grid);

// Silverman's rule of thumb: 1.06 * sigma_hat * n^(-1/5).
double silverman_bandwidth(std::span<const double> values);

// Uniform grid spanning [min - pad*h, max + pad*h].
std::vector<double> kde_grid(std::span<const double> values, double bandwidth,
                             std::size_t points = 512, double pad = 5.0);

namespace special {

// Regularized incomplete beta I_x(a, b) via the Lentz continued fraction,
// absolute accuracy ~1e-10 over the arguments used here.
double ibeta_reg(double a, double b, double x);

// Student t distribution with (possibly fractional) df.
double students_t_cdf(double t, double df);
double students_t_two_sided_p(double t, double df);
double students_t_quantile(double p, double df);  // inverse CDF, p in (0,1)

}  // namespace special

}  // namespace tielab

#endif  // TIELAB_STATS_HPP
