// Command-line front end: parses flags into the app configs and reports
// results. All realwork lives in tielab::app so tests can drive it directly.

#include <cstdio>
#include <optional>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "tielab/app.hpp"
#include "tielab/error.hpp"
#include "tielab/version.hpp"

namespace {

using tielab::ValidationError;
namespace app = tielab::app;

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

// The config file must be applied before CLI11 writes flag values (flags
// override file values), so it is pulled out of argv ahead of parsing.
std::optional<std::string> scan_config_path(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--config" && i + 1 < argc) return std::string(argv[i + 1]);
    if (arg.rfind("--config=", 0) == 0) return arg.substr(9);
  }
  return std::nullopt;
}

void add_common(CLI::App* cmd, app::CommonConfig& common) {
  cmd->add_option("--config", "JSON config file (or a manifest to replay); flags override it")
      ->type_name("PATH");
  cmd->add_option("-o,--out", common.out_dir, "output directory");
  cmd->add_option("--seed", common.seed, "master seed (default: drawn from system entropy)");
  cmd->add_option("--threads", common.threads, "worker threads for independent runs");
}

void add_bdsi_flags(CLI::App* cmd, double& p_rec, double& p_plus, double& p_minus,
                    std::uint32_t& seed_count, std::vector<std::string>& seed_nodes) {
  cmd->add_option("--p-rec", p_rec, "transmission probability on reciprocal edges");
  cmd->add_option("--p-plus", p_plus, "probability from nominator to nominee (unilateral)");
  cmd->add_option("--p-minus", p_minus, "probability from nominee to nominator (unilateral)");
  cmd->add_option("--seed-count", seed_count, "uniform-random seed nodes per run");
  cmd->add_option("--seed-nodes", seed_nodes, "explicit seed nodes (overrides --seed-count)")
      ->delimiter(',');
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{std::string("tielab ") + tielab::kArtifactVersion +
               " - directed friendship networks: tie classification, BDSI contagion, "
               "edge percolation, peer-effect regression"};
  cli.require_subcommand(1);

  app::StatsConfig stats_cfg;
  app::SimulateConfig simulate_cfg;
  app::PercolateConfig percolate_cfg;
  app::RegressConfig regress_cfg;
  app::SynthConfig synth_cfg;

  auto* stats = cli.add_subcommand(
      "stats", "classify ties and report reciprocity counts, closeness summaries, "
               "t-test, ECDF and KDE grids (report.json, ecdf.csv, kde.csv, graph.json, "
               "edges.csv, nodes.csv)");
  add_common(stats, stats_cfg.common);
  stats->add_option("--graph", stats_cfg.graph, "survey CSV (src,dst,closeness)");
  stats->add_option("--threshold", stats_cfg.threshold,
                    "closeness threshold; ties require closeness strictly greater");
  stats->add_option("--closeness-convention", stats_cfg.closeness_convention,
                    "'directed' (both scores of a reciprocal edge) or 'edge_mean'");
  stats->add_option("--t-test", stats_cfg.t_test_kind, "'welch' or 'pooled'");
  stats->add_option("--kde-points", stats_cfg.kde_points, "KDE grid resolution");

  auto* simulate = cli.add_subcommand(
      "simulate", "Monte Carlo BDSI runs; writes coverage.csv (t,z_mean,z_se) and "
                  "optional traces.csv (run,node,infection_step)");
  add_common(simulate, simulate_cfg.common);
  simulate->add_option("--graph", simulate_cfg.graph, "survey CSV (src,dst,closeness)");
  simulate->add_option("--threshold", simulate_cfg.threshold, "closeness threshold");
  add_bdsi_flags(simulate, simulate_cfg.p_rec, simulate_cfg.p_plus, simulate_cfg.p_minus,
                 simulate_cfg.seed_count, simulate_cfg.seed_nodes);
  simulate->add_option("--runs", simulate_cfg.runs, "number of independent runs");
  simulate->add_option("--horizon", simulate_cfg.horizon, "steps to simulate and report");
  simulate->add_option("--stop-at-coverage", [&](const std::vector<std::string>& vals) {
    simulate_cfg.stop_at_coverage = std::stod(vals.at(0));
    return true;
  }, "halt each run at this coverage fraction");
  simulate->add_flag("--traces", simulate_cfg.write_traces, "also write per-run infection steps");

  auto* percolate = cli.add_subcommand(
      "percolate", "remove a growing fraction of reciprocal/unilateral edges and rerun "
                   "BDSI; writes coverage.csv, times.csv, delta_z.csv, delta_z_window.csv");
  add_common(percolate, percolate_cfg.common);
  percolate->add_option("--graph", percolate_cfg.graph, "survey CSV (src,dst,closeness)");
  percolate->add_option("--threshold", percolate_cfg.threshold, "closeness threshold");
  add_bdsi_flags(percolate, percolate_cfg.p_rec, percolate_cfg.p_plus, percolate_cfg.p_minus,
                 percolate_cfg.seed_count, percolate_cfg.seed_nodes);
  percolate->add_option("--fractions", percolate_cfg.fractions,
                        "removal fractions F, strictly increasing")
      ->delimiter(',');
  percolate->add_option("--matching", percolate_cfg.matching,
                        "'by_count' (same absolute removals in both arms, F times the "
                        "reference class size) or 'by_fraction' (F of each arm's class)");
  percolate->add_option("--reference-class", percolate_cfg.reference_class,
                        "class whose size anchors by_count removals");
  percolate->add_option("--arm", percolate_cfg.arm,
                        "'both' (default), 'reciprocal' or 'unilateral'");
  percolate->add_option("--runs-per-point", percolate_cfg.runs_per_point,
                        "replicates per fraction (fresh removal + one run each)");
  percolate->add_option("--horizon", percolate_cfg.horizon, "steps to simulate and report");
  percolate->add_option("--coverage-target", percolate_cfg.coverage_target,
                        "coverage fraction defining the reported time-to-infect");
  percolate->add_flag("--independent-removals", percolate_cfg.independent_removals,
                      "re-sample removals per fraction instead of nesting them");
  percolate->add_option("--window-lo", percolate_cfg.window_lo, "early window start (steps)");
  percolate->add_option("--window-hi", percolate_cfg.window_hi, "early window end (steps)");

  auto* regress = cli.add_subcommand(
      "regress", "OLS of activity change on tie-direction covariates; writes "
                 "estimates.csv (name,coef,se,ci_low,ci_high,p) and fit.json");
  add_common(regress, regress_cfg.common);
  regress->add_option("--edges", regress_cfg.edges, "classified-edge CSV from `stats`");
  regress->add_option("--nodes", regress_cfg.nodes, "node-index CSV from `stats`");
  regress->add_option("--records", regress_cfg.records,
                      "ego records CSV (ego,alter1,alter2,activity_p1,activity_p2)");
  regress->add_option("--covariates", regress_cfg.covariates,
                      "subset of n_reciprocal,n_incoming,n_outgoing,tie_strength")
      ->delimiter(',');
  regress->add_flag("!--no-intercept", regress_cfg.intercept, "drop the intercept column");
  regress->add_flag("--log-ratio", regress_cfg.log_ratio, "regress log(p2/p1) instead of p2/p1");

  auto* synth = cli.add_subcommand(
      "synth", "generate a planted-partition friendship network and planted-coefficient "
               "intervention outcomes; writes survey.csv, communities.csv, ego_records.csv");
  add_common(synth, synth_cfg.common);
  synth->add_option("--nodes", synth_cfg.n_nodes, "number of nodes");
  synth->add_option("--communities", synth_cfg.n_communities, "number of communities");
  synth->add_option("--intra-p", synth_cfg.intra_edge_prob, "within-community edge probability");
  synth->add_option("--inter-p", synth_cfg.inter_edge_prob, "cross-community edge probability");
  synth->add_option("--rec-intra", synth_cfg.reciprocity_intra,
                    "reciprocal fraction target, within-community edges");
  synth->add_option("--rec-inter", synth_cfg.reciprocity_inter,
                    "reciprocal fraction target, cross-community edges");
  synth->add_option("--beta-rec", synth_cfg.beta_reciprocal, "planted reciprocal coefficient");
  synth->add_option("--beta-in", synth_cfg.beta_incoming, "planted incoming coefficient");
  synth->add_option("--beta-out", synth_cfg.beta_outgoing, "planted outgoing coefficient");
  synth->add_option("--beta-tie", synth_cfg.beta_tie_strength, "planted tie-strength coefficient");
  synth->add_option("--intercept", synth_cfg.intercept, "planted intercept");
  synth->add_option("--noise-sd", synth_cfg.noise_sd, "outcome noise standard deviation");

  // Config file first, then flags on top.
  bool seed_from_file = false;
  try {
    if (const auto config_path = scan_config_path(argc, argv)) {
      const auto doc = app::load_config_file(*config_path);
      const std::string sub = argc > 1 ? argv[1] : "";
      if (sub == "stats") app::apply_json(stats_cfg, doc);
      else if (sub == "simulate") app::apply_json(simulate_cfg, doc);
      else if (sub == "percolate") app::apply_json(percolate_cfg, doc);
      else if (sub == "regress") app::apply_json(regress_cfg, doc);
      else if (sub == "synth") app::apply_json(synth_cfg, doc);
      else throw ValidationError("--config requires a subcommand as the first argument");
      seed_from_file = doc.contains("seed");
    }
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = cli.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    auto finish_seed = [&](CLI::App* cmd, app::CommonConfig& common) {
      if (cmd->count("--seed") == 0 && !seed_from_file) {
        common.seed = (static_cast<std::uint64_t>(std::random_device{}()) << 32) ^
                      std::random_device{}();
        std::fprintf(stderr, "seed not given; using %llu (recorded in manifest.json)\n",
                     static_cast<unsigned long long>(common.seed));
      }
    };
    if (stats->parsed()) {
      finish_seed(stats, stats_cfg.common);
      app::run_stats(stats_cfg);
    } else if (simulate->parsed()) {
      finish_seed(simulate, simulate_cfg.common);
      app::run_simulate(simulate_cfg);
    } else if (percolate->parsed()) {
      finish_seed(percolate, percolate_cfg.common);
      app::run_percolate(percolate_cfg);
    } else if (regress->parsed()) {
      finish_seed(regress, regress_cfg.common);
      app::run_regress(regress_cfg);
    } else if (synth->parsed()) {
      finish_seed(synth, synth_cfg.common);
      app::run_synth(synth_cfg);
    }
    return kExitOk;
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitRuntime;
  }
}
