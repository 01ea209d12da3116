#include "tielab/regression.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "tielab/csv.hpp"
#include "tielab/error.hpp"
#include "tielab/stats.hpp"

namespace tielab {

double CovariateRow::covariate(std::size_t index) const {
  switch (index) {
    case 0: return n_reciprocal;
    case 1: return n_incoming;
    case 2: return n_outgoing;
    case 3: return tie_strength;
  }
  throw ValidationError("covariate index out of range");
}

std::vector<CovariateRow> build_rows(const EdgeClassification& classification,
                                     std::size_t node_count,
                                     const std::vector<EgoRecord>& records, bool log_ratio) {
  std::vector<CovariateRow> rows;
  rows.reserve(records.size());
  for (const auto& record : records) {
    if (record.ego >= node_count) throw ValidationError("ego not in graph node set");
    if (record.alters.empty()) throw ValidationError("ego record without alters");
    if (!(record.activity_p1 > 0.0)) throw ValidationError("activity_p1 must be positive");
    CovariateRow row{};
    row.y = record.activity_p2 / record.activity_p1;
    if (log_ratio) row.y = std::log(row.y);
    for (NodeId alter : record.alters) {
      if (alter >= node_count) throw ValidationError("alter not in graph node set");
      if (alter == record.ego) throw ValidationError("ego listed as its own alter");
      switch (classification.tie_class(record.ego, alter)) {
        case TieClass::Reciprocal: row.n_reciprocal += 1.0; break;
        case TieClass::UnilateralIn: row.n_incoming += 1.0; break;
        case TieClass::UnilateralOut: row.n_outgoing += 1.0; break;
        case TieClass::None: break;
      }
      if (const LogicalEdge* edge = classification.edge_between(record.ego, alter)) {
        if (edge->closeness_uv) row.tie_strength += *edge->closeness_uv;
        if (edge->closeness_vu) row.tie_strength += *edge->closeness_vu;
      }
    }
    rows.push_back(row);
  }
  return rows;
}

namespace {

// Householder QR with R returned in place; rank failures are detected on the
// diagonal of R rather than through the normal equations.
constexpr double kRankTolerance = 1e-10;

struct QrResult {
  std::vector<double> coef;
  std::vector<double> xtx_inv_diag;
  double rss;
};

QrResult qr_solve(std::vector<std::vector<double>> columns, std::vector<double> y,
                  const std::vector<std::string>& column_names) {
  const std::size_t k = columns.size();
  const std::size_t n = y.size();

  // In-place Householder: after the loop, columns hold R in the top k rows.
  // |R_jj| equals the residual norm of column j, so the rank check is an
  // absolute tolerance on the diagonal of R.
  std::vector<double> v(n, 0.0);
  for (std::size_t j = 0; j < k; ++j) {
    double norm_sq = 0.0;
    for (std::size_t i = j; i < n; ++i) norm_sq += columns[j][i] * columns[j][i];
    const double norm = std::sqrt(norm_sq);
    if (norm < kRankTolerance) {
      throw ValidationError("singular design: column '" + column_names[j] +
                            "' is collinear with the preceding columns");
    }
    const double alpha = columns[j][j] >= 0.0 ? -norm : norm;
    std::fill(v.begin(), v.end(), 0.0);
    v[j] = columns[j][j] - alpha;
    for (std::size_t i = j + 1; i < n; ++i) v[i] = columns[j][i];
    double v_norm_sq = 0.0;
    for (std::size_t i = j; i < n; ++i) v_norm_sq += v[i] * v[i];
    if (v_norm_sq > 0.0) {
      for (std::size_t c = j; c < k; ++c) {
        double dot = 0.0;
        for (std::size_t i = j; i < n; ++i) dot += v[i] * columns[c][i];
        const double scale = 2.0 * dot / v_norm_sq;
        for (std::size_t i = j; i < n; ++i) columns[c][i] -= scale * v[i];
      }
      double dot = 0.0;
      for (std::size_t i = j; i < n; ++i) dot += v[i] * y[i];
      const double scale = 2.0 * dot / v_norm_sq;
      for (std::size_t i = j; i < n; ++i) y[i] -= scale * v[i];
    }
  }

  // Back-substitute R beta = Q^T y (top k entries).
  QrResult result;
  result.coef.assign(k, 0.0);
  for (std::size_t jj = k; jj-- > 0;) {
    double rhs = y[jj];
    for (std::size_t c = jj + 1; c < k; ++c) rhs -= columns[c][jj] * result.coef[c];
    result.coef[jj] = rhs / columns[jj][jj];
  }

  result.rss = 0.0;
  for (std::size_t i = k; i < n; ++i) result.rss += y[i] * y[i];

  // diag((X^T X)^-1) = row norms of R^-1: solve R w = e_j for each j.
  result.xtx_inv_diag.assign(k, 0.0);
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<double> w(k, 0.0);
    for (std::size_t jj = j + 1; jj-- > 0;) {
      double rhs = jj == j ? 1.0 : 0.0;
      for (std::size_t c = jj + 1; c <= j; ++c) rhs -= columns[c][jj] * w[c];
      w[jj] = rhs / columns[jj][jj];
    }
    for (std::size_t jj = 0; jj <= j; ++jj) result.xtx_inv_diag[jj] += w[jj] * w[jj];
  }
  return result;
}

}  // namespace

OlsFit ols_fit(const std::vector<CovariateRow>& rows, const std::vector<std::string>& covariates,
               bool intercept) {
  std::vector<std::size_t> covariate_indices;
  for (const auto& name : covariates) {
    const auto it = std::find(kCovariateNames.begin(), kCovariateNames.end(), name);
    if (it == kCovariateNames.end()) throw ValidationError("unknown covariate '" + name + "'");
    covariate_indices.push_back(static_cast<std::size_t>(it - kCovariateNames.begin()));
  }

  const std::size_t n = rows.size();
  const std::size_t k = covariate_indices.size() + (intercept ? 1 : 0);
  if (k == 0) throw ValidationError("regression with no columns");
  if (n <= k) {
    throw ValidationError("insufficient data: " + std::to_string(n) + " rows for " +
                          std::to_string(k) + " parameters");
  }

  std::vector<std::string> column_names;
  std::vector<std::vector<double>> columns;
  if (intercept) {
    column_names.push_back("intercept");
    columns.emplace_back(n, 1.0);
  }
  for (std::size_t idx : covariate_indices) {
    column_names.push_back(kCovariateNames[idx]);
    std::vector<double> col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = rows[i].covariate(idx);
    columns.push_back(std::move(col));
  }
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = rows[i].y;

  const QrResult qr = qr_solve(std::move(columns), std::move(y), column_names);

  const double df = static_cast<double>(n - k);
  const double sigma2 = qr.rss / df;
  const double t_crit = special::students_t_quantile(0.975, df);

  OlsFit fit;
  fit.n_rows = n;
  fit.n_params = k;
  fit.sigma2 = sigma2;
  for (std::size_t j = 0; j < k; ++j) {
    EffectEstimate est;
    est.name = column_names[j];
    est.coefficient = qr.coef[j];
    est.std_error = std::sqrt(sigma2 * qr.xtx_inv_diag[j]);
    est.ci_low = est.coefficient - t_crit * est.std_error;
    est.ci_high = est.coefficient + t_crit * est.std_error;
    est.p_value = est.std_error > 0.0
                      ? special::students_t_two_sided_p(est.coefficient / est.std_error, df)
                      : (est.coefficient == 0.0 ? 1.0 : 0.0);
    fit.estimates.push_back(std::move(est));
  }
  return fit;
}

std::vector<EgoRecord> load_ego_records(const std::filesystem::path& path,
                                        const std::vector<std::string>& node_names) {
  std::unordered_map<std::string, NodeId> index;
  for (NodeId i = 0; i < node_names.size(); ++i) index.emplace(node_names[i], i);

  const auto table = csv::read_table(path, "ego,alter1,alter2,activity_p1,activity_p2");
  std::vector<EgoRecord> records;
  records.reserve(table.rows.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::size_t line_no = table.line_numbers[r];
    if (row.size() != 5) {
      throw ParseError("expected 5 fields, got " + std::to_string(row.size()), line_no);
    }
    auto lookup = [&](const std::string& name) -> NodeId {
      auto it = index.find(name);
      if (it == index.end()) throw ParseError("unknown node '" + name + "'", line_no);
      return it->second;
    };
    auto number = [&](const std::string& text) -> double {
      try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
      } catch (const std::exception&) {
        throw ParseError("not a number: '" + text + "'", line_no);
      }
    };
    EgoRecord record;
    record.ego = lookup(row[0]);
    record.alters = {lookup(row[1]), lookup(row[2])};
    record.activity_p1 = number(row[3]);
    record.activity_p2 = number(row[4]);
    records.push_back(std::move(record));
  }
  return records;
}

}  // namespace tielab
