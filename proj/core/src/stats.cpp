#include "tielab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "tielab/error.hpp"

namespace tielab {

SampleSummary SampleSummary::of(std::span<const double> values) {
  if (values.empty()) throw EmptyInputError("summary of an empty sample");
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double variance =
      values.size() > 1 ? ss / static_cast<double>(values.size() - 1) : 0.0;
  return SampleSummary{values.size(), mean, variance};
}

TTestResult t_test(const SampleSummary& a, const SampleSummary& b, TTestKind kind) {
  if (a.n < 2 || b.n < 2) {
    throw ValidationError("t-test needs at least 2 observations per sample");
  }
  const double na = static_cast<double>(a.n);
  const double nb = static_cast<double>(b.n);
  if (a.variance == 0.0 && b.variance == 0.0) {
    if (a.mean == b.mean) {
      throw DegenerateInputError("t-test undefined: both samples constant and equal");
    }
    // Constant but different samples: infinitely strong evidence.
    const double inf = std::numeric_limits<double>::infinity();
    return TTestResult{a.mean > b.mean ? inf : -inf, na + nb - 2.0, 0.0};
  }

  double t, df;
  if (kind == TTestKind::Welch) {
    const double va = a.variance / na;
    const double vb = b.variance / nb;
    t = (a.mean - b.mean) / std::sqrt(va + vb);
    df = (va + vb) * (va + vb) / (va * va / (na - 1.0) + vb * vb / (nb - 1.0));
  } else {
    const double sp2 =
        ((na - 1.0) * a.variance + (nb - 1.0) * b.variance) / (na + nb - 2.0);
    t = (a.mean - b.mean) / std::sqrt(sp2 * (1.0 / na + 1.0 / nb));
    df = na + nb - 2.0;
  }
  return TTestResult{t, df, special::students_t_two_sided_p(t, df)};
}

TTestResult welch_t_test(std::span<const double> a, std::span<const double> b) {
  return t_test(SampleSummary::of(a), SampleSummary::of(b), TTestKind::Welch);
}

ClassSamples closeness_samples(const EdgeClassification& classification,
                               ClosenessConvention convention) {
  ClassSamples out;
  for (const auto& e : classification.edges()) {
    if (e.is_reciprocal()) {
      if (convention == ClosenessConvention::DirectedScores) {
        out.reciprocal.push_back(static_cast<double>(*e.closeness_uv));
        out.reciprocal.push_back(static_cast<double>(*e.closeness_vu));
      } else {
        out.reciprocal.push_back((*e.closeness_uv + *e.closeness_vu) / 2.0);
      }
    } else {
      const int score = e.closeness_uv ? *e.closeness_uv : *e.closeness_vu;
      out.unilateral.push_back(static_cast<double>(score));
    }
  }
  return out;
}

ClosenessByClass closeness_by_class(const EdgeClassification& classification,
                                    ClosenessConvention convention) {
  const ClassSamples samples = closeness_samples(classification, convention);
  ClosenessByClass out;
  if (!samples.reciprocal.empty()) out.reciprocal = SampleSummary::of(samples.reciprocal);
  if (!samples.unilateral.empty()) out.unilateral = SampleSummary::of(samples.unilateral);
  return out;
}

std::vector<EcdfPoint> ecdf(std::span<const double> values) {
  if (values.empty()) throw EmptyInputError("ecdf of an empty sample");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  std::vector<EcdfPoint> points;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i + 1 < sorted.size() && sorted[i + 1] == sorted[i]) continue;  // keep last of a tie run
    points.push_back({sorted[i], static_cast<double>(i + 1) / n});
  }
  return points;
}

std::vector<double> kde(std::span<const double> values, double bandwidth,
                        std::span<const double> grid) {
  if (values.size() < 2) throw ValidationError("kde needs at least 2 observations");
  if (!(bandwidth > 0.0)) throw ValidationError("kde bandwidth must be positive");
  const double norm =
      1.0 / (static_cast<double>(values.size()) * bandwidth * std::sqrt(2.0 * M_PI));
  std::vector<double> density(grid.size(), 0.0);
  for (std::size_t g = 0; g < grid.size(); ++g) {
    double sum = 0.0;
    for (double v : values) {
      const double z = (grid[g] - v) / bandwidth;
      sum += std::exp(-0.5 * z * z);
    }
    density[g] = sum * norm;
  }
  return density;
}

double silverman_bandwidth(std::span<const double> values) {
  const SampleSummary s = SampleSummary::of(values);
  if (s.n < 2) throw ValidationError("silverman bandwidth needs at least 2 observations");
  const double sigma = std::sqrt(s.variance);
  if (sigma == 0.0) {
    throw DegenerateInputError("silverman bandwidth undefined for a constant sample");
  }
  return 1.06 * sigma * std::pow(static_cast<double>(s.n), -0.2);
}

std::vector<double> kde_grid(std::span<const double> values, double bandwidth,
                             std::size_t points, double pad) {
  if (values.empty()) throw EmptyInputError("kde grid of an empty sample");
  if (points < 2) throw ValidationError("kde grid needs at least 2 points");
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it - pad * bandwidth;
  const double hi = *hi_it + pad * bandwidth;
  std::vector<double> grid(points);
  const double step = (hi - lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) grid[i] = lo + step * static_cast<double>(i);
  return grid;
}

namespace special {

namespace {

double log_beta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

// Continued fraction for the incomplete beta (modified Lentz). Converges
// quickly for x < (a+1)/(a+b+2); the caller flips arguments otherwise.
double beta_cf(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = 1e-15;
  constexpr double kTiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h;
  }
  throw RuntimeFailure("incomplete beta continued fraction did not converge");
}

}  // namespace

double ibeta_reg(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) throw ValidationError("ibeta_reg requires a, b > 0");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double front = std::exp(a * std::log(x) + b * std::log1p(-x) - log_beta(a, b));
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_cf(a, b, x) / a;
  }
  return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double students_t_two_sided_p(double t, double df) {
  if (!(df > 0.0)) throw ValidationError("t distribution requires df > 0");
  if (std::isinf(t)) return 0.0;
  return ibeta_reg(df / 2.0, 0.5, df / (df + t * t));
}

double students_t_cdf(double t, double df) {
  const double half_p = 0.5 * students_t_two_sided_p(t, df);
  return t >= 0.0 ? 1.0 - half_p : half_p;
}

double students_t_quantile(double p, double df) {
  if (!(p > 0.0 && p < 1.0)) throw ValidationError("t quantile requires p in (0,1)");
  if (p == 0.5) return 0.0;
  const bool upper = p > 0.5;
  const double tail = upper ? 1.0 - p : p;  // solve in the left tail, mirror
  // CDF(-t) = tail  <=>  two_sided_p(t) = 2*tail, monotone in t.
  double lo = 0.0, hi = 1.0;
  while (students_t_two_sided_p(hi, df) > 2.0 * tail) {
    hi *= 2.0;
    if (hi > 1e12) break;
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (students_t_two_sided_p(mid, df) > 2.0 * tail) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-13 * std::max(1.0, hi)) break;
  }
  const double magnitude = 0.5 * (lo + hi);
  return upper ? magnitude : -magnitude;
}

}  // namespace special

}  // namespace tielab
