#include "tielab/app.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include "tielab/csv.hpp"
#include "tielab/error.hpp"
#include "tielab/manifest.hpp"
#include "tielab/parallel.hpp"

namespace tielab::app {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

template <typename T>
void patch(const json& doc, const char* key, T& field) {
  if (doc.contains(key)) field = doc.at(key).get<T>();
}

void patch_path(const json& doc, const char* key, fs::path& field) {
  if (doc.contains(key)) field = fs::path(doc.at(key).get<std::string>());
}

void patch_common(const json& doc, CommonConfig& common) {
  patch_path(doc, "out_dir", common.out_dir);
  patch(doc, "seed", common.seed);
  patch(doc, "threads", common.threads);
}

json common_json(const CommonConfig& common) {
  return json{{"out_dir", common.out_dir.string()},
              {"seed", common.seed},
              {"threads", common.threads}};
}

ClosenessConvention parse_convention(const std::string& name) {
  if (name == "directed") return ClosenessConvention::DirectedScores;
  if (name == "edge_mean") return ClosenessConvention::PerEdgeMean;
  throw ValidationError("closeness convention must be 'directed' or 'edge_mean'");
}

TTestKind parse_t_test(const std::string& name) {
  if (name == "welch") return TTestKind::Welch;
  if (name == "pooled") return TTestKind::Pooled;
  throw ValidationError("t-test kind must be 'welch' or 'pooled'");
}

EdgeClass parse_edge_class(const std::string& name) {
  if (name == "reciprocal") return EdgeClass::Reciprocal;
  if (name == "unilateral") return EdgeClass::Unilateral;
  throw ValidationError("edge class must be 'reciprocal' or 'unilateral'");
}

Matching parse_matching(const std::string& name) {
  if (name == "by_count") return Matching::ByCount;
  if (name == "by_fraction") return Matching::ByFraction;
  throw ValidationError("matching must be 'by_count' or 'by_fraction'");
}

std::vector<NodeId> resolve_seed_nodes(const FriendshipGraph& graph,
                                       const std::vector<std::string>& names) {
  std::vector<NodeId> ids;
  ids.reserve(names.size());
  for (const auto& name : names) {
    const auto id = graph.find_node(name);
    if (!id) throw ValidationError("seed node '" + name + "' not in graph");
    ids.push_back(*id);
  }
  return ids;
}

void ensure_out_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw RuntimeFailure("cannot create output directory " + dir.string());
}

json summary_json(const std::optional<SampleSummary>& s) {
  if (!s) return nullptr;
  return json{{"n", s->n}, {"mean", s->mean}, {"variance", s->variance}};
}

std::string fmt(double v) { return csv::format_double(v); }

}  // namespace

json load_config_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file: " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ValidationError("bad config JSON in " + path.string() + ": " + e.what());
  }
  if (doc.contains("config")) return doc.at("config");  // manifest replay
  return doc;
}

// ---------------------------------------------------------------- stats ----

json to_json(const StatsConfig& c) {
  json doc = common_json(c.common);
  doc["graph"] = c.graph.string();
  doc["threshold"] = c.threshold;
  doc["closeness_convention"] = c.closeness_convention;
  doc["t_test_kind"] = c.t_test_kind;
  doc["kde_points"] = c.kde_points;
  return doc;
}

void apply_json(StatsConfig& c, const json& doc) {
  patch_common(doc, c.common);
  patch_path(doc, "graph", c.graph);
  patch(doc, "threshold", c.threshold);
  patch(doc, "closeness_convention", c.closeness_convention);
  patch(doc, "t_test_kind", c.t_test_kind);
  patch(doc, "kde_points", c.kde_points);
}

std::vector<std::string> run_stats(const StatsConfig& cfg) {
  const auto convention = parse_convention(cfg.closeness_convention);
  const auto t_kind = parse_t_test(cfg.t_test_kind);

  const FriendshipGraph graph = load_graph(cfg.graph, cfg.threshold);
  const EdgeClassification classification = classify(graph);
  const ReciprocityStats edges = reciprocity_stats(classification);
  const ClassSamples samples = closeness_samples(classification, convention);
  const ClosenessByClass by_class = closeness_by_class(classification, convention);

  json report;
  report["threshold"] = graph.threshold();
  report["n_nodes"] = graph.node_count();
  report["n_arcs"] = graph.arcs().size();
  std::size_t explicit_arcs = 0;
  for (const auto& arc : graph.arcs()) explicit_arcs += graph.is_explicit(arc);
  report["n_explicit_arcs"] = explicit_arcs;
  report["edges"] = {{"n_edges", edges.n_edges},
                     {"n_reciprocal", edges.n_reciprocal},
                     {"n_unilateral", edges.n_unilateral},
                     {"fraction_reciprocal", edges.fraction_reciprocal}};
  report["closeness"] = {{"convention", cfg.closeness_convention},
                         {"reciprocal", summary_json(by_class.reciprocal)},
                         {"unilateral", summary_json(by_class.unilateral)}};
  if (by_class.reciprocal && by_class.unilateral && by_class.reciprocal->n >= 2 &&
      by_class.unilateral->n >= 2) {
    try {
      const TTestResult tt = t_test(*by_class.reciprocal, *by_class.unilateral, t_kind);
      report["t_test"] = {{"kind", cfg.t_test_kind},
                          {"t", tt.t_statistic},
                          {"df", tt.degrees_of_freedom},
                          {"p", tt.p_value}};
    } catch (const DegenerateInputError& e) {
      report["t_test"] = {{"skipped", e.what()}};
    }
  } else {
    report["t_test"] = {{"skipped", "needs two observations in each class"}};
  }

  csv::Writer ecdf_csv;
  ecdf_csv.row({"class", "x", "cumulative_fraction"});
  csv::Writer kde_csv;
  kde_csv.row({"class", "x", "density"});
  const auto emit_class = [&](const char* label, const std::vector<double>& values) {
    if (values.empty()) return;
    for (const auto& point : ecdf(values)) {
      ecdf_csv.row({label, fmt(point.x), fmt(point.cumulative_fraction)});
    }
    if (values.size() < 2) return;
    double bandwidth = 0.0;
    try {
      bandwidth = silverman_bandwidth(values);
    } catch (const DegenerateInputError&) {
      return;  // constant sample, no density to draw
    }
    const auto grid = kde_grid(values, bandwidth, cfg.kde_points);
    const auto density = kde(values, bandwidth, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      kde_csv.row({label, fmt(grid[i]), fmt(density[i])});
    }
  };
  emit_class("reciprocal", samples.reciprocal);
  emit_class("unilateral", samples.unilateral);

  ensure_out_dir(cfg.common.out_dir);
  RunManifest manifest("stats", cfg.common.seed);
  manifest.set_config(to_json(cfg));
  manifest.add_input(cfg.graph);

  atomic_write(cfg.common.out_dir / "report.json", report.dump(2) + "\n");
  atomic_write(cfg.common.out_dir / "ecdf.csv", ecdf_csv.str());
  atomic_write(cfg.common.out_dir / "kde.csv", kde_csv.str());
  save_graph_json(graph, cfg.common.out_dir / "graph.json");
  save_classified_csv(graph, classification, cfg.common.out_dir / "edges.csv");
  save_nodes_csv(graph, cfg.common.out_dir / "nodes.csv");

  const std::vector<std::string> outputs = {"report.json", "ecdf.csv",  "kde.csv",
                                            "graph.json",  "edges.csv", "nodes.csv"};
  for (const auto& name : outputs) manifest.add_output(name);
  manifest.write(cfg.common.out_dir / "manifest.json");
  return outputs;
}

// ------------------------------------------------------------- simulate ----

json to_json(const SimulateConfig& c) {
  json doc = common_json(c.common);
  doc["graph"] = c.graph.string();
  doc["threshold"] = c.threshold;
  doc["p_rec"] = c.p_rec;
  doc["p_plus"] = c.p_plus;
  doc["p_minus"] = c.p_minus;
  doc["seed_count"] = c.seed_count;
  doc["seed_nodes"] = c.seed_nodes;
  doc["runs"] = c.runs;
  doc["horizon"] = c.horizon;
  if (c.stop_at_coverage) {
    doc["stop_at_coverage"] = *c.stop_at_coverage;
  } else {
    doc["stop_at_coverage"] = nullptr;
  }
  doc["write_traces"] = c.write_traces;
  return doc;
}

void apply_json(SimulateConfig& c, const json& doc) {
  patch_common(doc, c.common);
  patch_path(doc, "graph", c.graph);
  patch(doc, "threshold", c.threshold);
  patch(doc, "p_rec", c.p_rec);
  patch(doc, "p_plus", c.p_plus);
  patch(doc, "p_minus", c.p_minus);
  patch(doc, "seed_count", c.seed_count);
  patch(doc, "seed_nodes", c.seed_nodes);
  patch(doc, "runs", c.runs);
  patch(doc, "horizon", c.horizon);
  if (doc.contains("stop_at_coverage") && !doc.at("stop_at_coverage").is_null()) {
    c.stop_at_coverage = doc.at("stop_at_coverage").get<double>();
  }
  patch(doc, "write_traces", c.write_traces);
}

namespace {

BDSIParams bdsi_from(const SimulateConfig& c, const FriendshipGraph& graph) {
  BDSIParams params;
  params.p_rec = c.p_rec;
  params.p_plus = c.p_plus;
  params.p_minus = c.p_minus;
  params.seed_count = c.seed_count;
  params.seed_nodes = resolve_seed_nodes(graph, c.seed_nodes);
  params.max_steps = c.horizon;
  params.stop_at_coverage = c.stop_at_coverage;
  return params;
}

}  // namespace

std::vector<std::string> run_simulate(const SimulateConfig& cfg) {
  if (cfg.runs == 0) throw ValidationError("runs must be positive");
  const FriendshipGraph graph = load_graph(cfg.graph, cfg.threshold);
  const EdgeClassification classification = classify(graph);
  const ContactNetwork network(graph.node_count(), classification);
  const BDSIParams params = bdsi_from(cfg, graph);
  params.validate(graph.node_count());
  if (!params.in_canonical_regime()) {
    std::fprintf(stderr, "warning: parameters outside the canonical regime p_rec >= p_+ >= p_-\n");
  }

  std::vector<SimulationTrace> traces(cfg.runs);
  parallel_for(cfg.runs, cfg.common.threads, [&](std::size_t run) {
    traces[run] = bdsi_run(network, params, Rng::derive(cfg.common.seed, run));
  });
  const CoverageCurve curve = mean_coverage_curve(traces, cfg.horizon);

  csv::Writer coverage;
  coverage.row({"t", "z_mean", "z_se"});
  for (std::uint32_t t = 0; t <= cfg.horizon; ++t) {
    coverage.row({std::to_string(t), fmt(curve.mean[t]), fmt(curve.se[t])});
  }

  ensure_out_dir(cfg.common.out_dir);
  RunManifest manifest("simulate", cfg.common.seed);
  manifest.set_config(to_json(cfg));
  manifest.add_input(cfg.graph);
  atomic_write(cfg.common.out_dir / "coverage.csv", coverage.str());
  std::vector<std::string> outputs = {"coverage.csv"};

  if (cfg.write_traces) {
    csv::Writer trace_csv;
    trace_csv.row({"run", "node", "infection_step"});
    for (std::size_t run = 0; run < traces.size(); ++run) {
      for (NodeId node = 0; node < traces[run].node_count(); ++node) {
        const auto step = traces[run].infection_time[node];
        if (step < 0) continue;  // never infected
        trace_csv.row({std::to_string(run), graph.name_of(node), std::to_string(step)});
      }
    }
    atomic_write(cfg.common.out_dir / "traces.csv", trace_csv.str());
    outputs.push_back("traces.csv");
  }

  for (const auto& name : outputs) manifest.add_output(name);
  manifest.write(cfg.common.out_dir / "manifest.json");
  return outputs;
}

// ------------------------------------------------------------ percolate ----

json to_json(const PercolateConfig& c) {
  json doc = common_json(c.common);
  doc["graph"] = c.graph.string();
  doc["threshold"] = c.threshold;
  doc["p_rec"] = c.p_rec;
  doc["p_plus"] = c.p_plus;
  doc["p_minus"] = c.p_minus;
  doc["seed_count"] = c.seed_count;
  doc["seed_nodes"] = c.seed_nodes;
  doc["fractions"] = c.fractions;
  doc["matching"] = c.matching;
  doc["reference_class"] = c.reference_class;
  doc["arm"] = c.arm;
  doc["runs_per_point"] = c.runs_per_point;
  doc["horizon"] = c.horizon;
  doc["coverage_target"] = c.coverage_target;
  doc["independent_removals"] = c.independent_removals;
  doc["window_lo"] = c.window_lo;
  doc["window_hi"] = c.window_hi;
  return doc;
}

void apply_json(PercolateConfig& c, const json& doc) {
  patch_common(doc, c.common);
  patch_path(doc, "graph", c.graph);
  patch(doc, "threshold", c.threshold);
  patch(doc, "p_rec", c.p_rec);
  patch(doc, "p_plus", c.p_plus);
  patch(doc, "p_minus", c.p_minus);
  patch(doc, "seed_count", c.seed_count);
  patch(doc, "seed_nodes", c.seed_nodes);
  patch(doc, "fractions", c.fractions);
  patch(doc, "matching", c.matching);
  patch(doc, "reference_class", c.reference_class);
  patch(doc, "arm", c.arm);
  patch(doc, "runs_per_point", c.runs_per_point);
  patch(doc, "horizon", c.horizon);
  patch(doc, "coverage_target", c.coverage_target);
  patch(doc, "independent_removals", c.independent_removals);
  patch(doc, "window_lo", c.window_lo);
  patch(doc, "window_hi", c.window_hi);
}

std::vector<std::string> run_percolate(const PercolateConfig& cfg) {
  const FriendshipGraph graph = load_graph(cfg.graph, cfg.threshold);
  const EdgeClassification classification = classify(graph);

  PercolationPlan plan;
  plan.fractions = cfg.fractions;
  plan.matching = parse_matching(cfg.matching);
  plan.reference_class = parse_edge_class(cfg.reference_class);
  plan.runs_per_point = cfg.runs_per_point;
  plan.master_seed = cfg.common.seed;
  plan.horizon = cfg.horizon;
  plan.coverage_target = cfg.coverage_target;
  plan.independent_removals = cfg.independent_removals;
  plan.threads = cfg.common.threads;
  plan.bdsi.p_rec = cfg.p_rec;
  plan.bdsi.p_plus = cfg.p_plus;
  plan.bdsi.p_minus = cfg.p_minus;
  plan.bdsi.seed_count = cfg.seed_count;
  plan.bdsi.seed_nodes = resolve_seed_nodes(graph, cfg.seed_nodes);
  plan.bdsi.max_steps = cfg.horizon;
  if (!plan.bdsi.in_canonical_regime()) {
    std::fprintf(stderr, "warning: parameters outside the canonical regime p_rec >= p_+ >= p_-\n");
  }

  std::vector<EdgeClass> arms;
  if (cfg.arm == "both") {
    arms = {EdgeClass::Reciprocal, EdgeClass::Unilateral};
  } else {
    arms = {parse_edge_class(cfg.arm)};
  }

  std::vector<PercolationResult> results;
  for (EdgeClass arm : arms) {
    plan.target_class = arm;
    results.push_back(percolation_sweep(graph, classification, plan));
  }

  csv::Writer coverage;
  coverage.row({"class", "F", "removed_count", "t", "z_mean", "z_se"});
  csv::Writer times;
  times.row({"class", "F", "removed_count", "mean_t", "sd_t", "reached", "unreached"});
  for (const auto& result : results) {
    const char* label = to_string(result.target_class);
    for (const auto& point : result.points) {
      for (std::uint32_t t = 0; t <= result.horizon; ++t) {
        coverage.row({label, fmt(point.fraction), std::to_string(point.removed_count),
                      std::to_string(t), fmt(point.curve.mean[t]), fmt(point.curve.se[t])});
      }
      times.row({label, fmt(point.fraction), std::to_string(point.removed_count),
                 fmt(point.mean_time), fmt(point.sd_time), std::to_string(point.reached),
                 std::to_string(point.unreached)});
    }
  }

  ensure_out_dir(cfg.common.out_dir);
  RunManifest manifest("percolate", cfg.common.seed);
  manifest.set_config(to_json(cfg));
  manifest.add_input(cfg.graph);
  atomic_write(cfg.common.out_dir / "coverage.csv", coverage.str());
  atomic_write(cfg.common.out_dir / "times.csv", times.str());
  std::vector<std::string> outputs = {"coverage.csv", "times.csv"};

  if (arms.size() == 2) {
    // dz > 0 means removing reciprocal edges suppresses coverage more than
    // removing the same number of unilateral edges.
    const DeltaZ dz = delta_z(results[1], results[0], cfg.window_lo, cfg.window_hi);
    csv::Writer dz_csv;
    dz_csv.row({"F", "t", "dz_mean", "dz_se"});
    csv::Writer window_csv;
    window_csv.row({"F", "window_lo", "window_hi", "dz_window_mean"});
    for (std::size_t i = 0; i < dz.fractions.size(); ++i) {
      for (std::uint32_t t = 0; t <= cfg.horizon; ++t) {
        dz_csv.row({fmt(dz.fractions[i]), std::to_string(t), fmt(dz.dz[i][t]),
                    fmt(dz.se[i][t])});
      }
      window_csv.row({fmt(dz.fractions[i]), std::to_string(dz.window_lo),
                      std::to_string(dz.window_hi), fmt(dz.window_mean[i])});
    }
    atomic_write(cfg.common.out_dir / "delta_z.csv", dz_csv.str());
    atomic_write(cfg.common.out_dir / "delta_z_window.csv", window_csv.str());
    outputs.push_back("delta_z.csv");
    outputs.push_back("delta_z_window.csv");
  }

  for (const auto& name : outputs) manifest.add_output(name);
  manifest.write(cfg.common.out_dir / "manifest.json");
  return outputs;
}

// -------------------------------------------------------------- regress ----

json to_json(const RegressConfig& c) {
  json doc = common_json(c.common);
  doc["edges"] = c.edges.string();
  doc["nodes"] = c.nodes.string();
  doc["records"] = c.records.string();
  doc["covariates"] = c.covariates;
  doc["intercept"] = c.intercept;
  doc["log_ratio"] = c.log_ratio;
  return doc;
}

void apply_json(RegressConfig& c, const json& doc) {
  patch_common(doc, c.common);
  patch_path(doc, "edges", c.edges);
  patch_path(doc, "nodes", c.nodes);
  patch_path(doc, "records", c.records);
  patch(doc, "covariates", c.covariates);
  patch(doc, "intercept", c.intercept);
  patch(doc, "log_ratio", c.log_ratio);
}

std::vector<std::string> run_regress(const RegressConfig& cfg) {
  const LoadedClassification loaded = load_classified_csv(cfg.edges, cfg.nodes);
  const auto records = load_ego_records(cfg.records, loaded.node_names);
  const auto rows =
      build_rows(loaded.classification, loaded.node_names.size(), records, cfg.log_ratio);
  const OlsFit fit = ols_fit(rows, cfg.covariates, cfg.intercept);

  ensure_out_dir(cfg.common.out_dir);
  RunManifest manifest("regress", cfg.common.seed);
  manifest.set_config(to_json(cfg));
  manifest.add_input(cfg.edges);
  manifest.add_input(cfg.nodes);
  manifest.add_input(cfg.records);

  csv::Writer estimates;
  estimates.row({"name", "coef", "se", "ci_low", "ci_high", "p"});
  for (const auto& est : fit.estimates) {
    estimates.row({est.name, fmt(est.coefficient), fmt(est.std_error), fmt(est.ci_low),
                   fmt(est.ci_high), fmt(est.p_value)});
  }
  atomic_write(cfg.common.out_dir / "estimates.csv", estimates.str());

  json fit_info = {{"n_rows", fit.n_rows},
                   {"n_params", fit.n_params},
                   {"sigma2", fit.sigma2},
                   {"covariates", cfg.covariates},
                   {"intercept", cfg.intercept},
                   {"log_ratio", cfg.log_ratio}};
  atomic_write(cfg.common.out_dir / "fit.json", fit_info.dump(2) + "\n");

  const std::vector<std::string> outputs = {"estimates.csv", "fit.json"};
  for (const auto& name : outputs) manifest.add_output(name);
  manifest.write(cfg.common.out_dir / "manifest.json");
  return outputs;
}

// ---------------------------------------------------------------- synth ----

json to_json(const SynthConfig& c) {
  json doc = common_json(c.common);
  doc["n_nodes"] = c.n_nodes;
  doc["n_communities"] = c.n_communities;
  doc["intra_edge_prob"] = c.intra_edge_prob;
  doc["inter_edge_prob"] = c.inter_edge_prob;
  doc["reciprocity_intra"] = c.reciprocity_intra;
  doc["reciprocity_inter"] = c.reciprocity_inter;
  doc["beta_reciprocal"] = c.beta_reciprocal;
  doc["beta_incoming"] = c.beta_incoming;
  doc["beta_outgoing"] = c.beta_outgoing;
  doc["beta_tie_strength"] = c.beta_tie_strength;
  doc["intercept"] = c.intercept;
  doc["noise_sd"] = c.noise_sd;
  return doc;
}

void apply_json(SynthConfig& c, const json& doc) {
  patch_common(doc, c.common);
  patch(doc, "n_nodes", c.n_nodes);
  patch(doc, "n_communities", c.n_communities);
  patch(doc, "intra_edge_prob", c.intra_edge_prob);
  patch(doc, "inter_edge_prob", c.inter_edge_prob);
  patch(doc, "reciprocity_intra", c.reciprocity_intra);
  patch(doc, "reciprocity_inter", c.reciprocity_inter);
  patch(doc, "beta_reciprocal", c.beta_reciprocal);
  patch(doc, "beta_incoming", c.beta_incoming);
  patch(doc, "beta_outgoing", c.beta_outgoing);
  patch(doc, "beta_tie_strength", c.beta_tie_strength);
  patch(doc, "intercept", c.intercept);
  patch(doc, "noise_sd", c.noise_sd);
}

std::vector<std::string> run_synth(const SynthConfig& cfg) {
  GraphGenSpec gen;
  gen.n_nodes = cfg.n_nodes;
  gen.n_communities = cfg.n_communities;
  gen.intra_edge_prob = cfg.intra_edge_prob;
  gen.inter_edge_prob = cfg.inter_edge_prob;
  gen.reciprocity_intra = cfg.reciprocity_intra;
  gen.reciprocity_inter = cfg.reciprocity_inter;
  gen.seed = Rng::derive(cfg.common.seed, 1);

  const SynthGraph world = gen_graph(gen);
  const EdgeClassification classification = classify(world.graph);
  Rng buddy_rng = Rng::stream(cfg.common.seed, 2);
  const auto buddies = assign_buddies(world, buddy_rng);

  OutcomeGenSpec outcome;
  outcome.beta = {{"n_reciprocal", cfg.beta_reciprocal},
                  {"n_incoming", cfg.beta_incoming},
                  {"n_outgoing", cfg.beta_outgoing},
                  {"tie_strength", cfg.beta_tie_strength}};
  outcome.intercept = cfg.intercept;
  outcome.noise_sd = cfg.noise_sd;
  outcome.seed = Rng::derive(cfg.common.seed, 3);
  const auto records = gen_outcomes(world, classification, buddies, outcome);

  ensure_out_dir(cfg.common.out_dir);
  RunManifest manifest("synth", cfg.common.seed);
  manifest.set_config(to_json(cfg));
  save_survey_csv(world.graph, cfg.common.out_dir / "survey.csv");
  save_communities_csv(world, cfg.common.out_dir / "communities.csv");
  save_ego_records_csv(world.graph, records, cfg.common.out_dir / "ego_records.csv");

  const std::vector<std::string> outputs = {"survey.csv", "communities.csv", "ego_records.csv"};
  for (const auto& name : outputs) manifest.add_output(name);
  manifest.write(cfg.common.out_dir / "manifest.json");
  return outputs;
}

}  // namespace tielab::app
