#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "privrec/audit.hpp"
#include "privrec/bounds.hpp"
#include "privrec/experiment.hpp"
#include "privrec/graph.hpp"
#include "privrec/mechanisms.hpp"
#include "privrec/synthetic.hpp"
#include "privrec/utility.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitAuditFailure = 3;

privrec::UtilityConfig utility_from(const std::string& kind, double gamma, int max_path_len) {
  privrec::UtilityConfig cfg;
  if (kind == "common-neighbors") {
    cfg.kind = privrec::UtilityKind::CommonNeighbors;
  } else if (kind == "weighted-paths") {
    cfg.kind = privrec::UtilityKind::WeightedPaths;
  } else {
    throw CLI::ValidationError("--utility", "expected common-neighbors or weighted-paths");
  }
  cfg.gamma = gamma;
  cfg.max_path_len = max_path_len;
  return cfg;
}

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

// "results.csv" -> "results_<tag>.csv"
std::string derived_path(const std::string& out_path, const std::string& tag) {
  auto dot = out_path.rfind('.');
  auto slash = out_path.find_last_of("/\\");
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
    return out_path + "_" + tag;
  return out_path.substr(0, dot) + "_" + tag + out_path.substr(dot);
}

struct ExperimentArgs {
  privrec::ExperimentConfig cfg;
  std::string utility = "common-neighbors";
  double gamma = 0.005;
  int max_path_len = 3;
  std::vector<std::string> mechanisms = {"exponential", "laplace"};
  std::string out_path;
  bool write_cdf = false;
  bool write_degree = false;
};

int run_experiment_cmd(ExperimentArgs& args) {
  args.cfg.utility = utility_from(args.utility, args.gamma, args.max_path_len);
  args.cfg.run_exponential = args.cfg.run_laplace = args.cfg.run_smoothing = false;
  for (const auto& m : args.mechanisms) {
    if (m == "exponential")
      args.cfg.run_exponential = true;
    else if (m == "laplace")
      args.cfg.run_laplace = true;
    else if (m == "smoothing")
      args.cfg.run_smoothing = true;
    else if (m != "none")
      throw CLI::ValidationError("--mechanisms", "unknown mechanism " + m);
  }

  auto records = privrec::run_experiment(args.cfg);
  {
    auto out = open_out(args.out_path);
    privrec::write_records_csv(records, out);
  }

  std::size_t skipped = 0;
  for (const auto& rec : records) skipped += rec.skipped ? 1 : 0;
  std::cout << "targets: " << records.size() << " (skipped " << skipped << ")\n";
  std::cout << "wrote " << args.out_path << "\n";

  using Source = privrec::AccuracySource;
  std::vector<std::pair<Source, std::string>> sources;
  if (args.cfg.run_exponential) sources.emplace_back(Source::Exponential, "exponential");
  if (args.cfg.run_laplace) sources.emplace_back(Source::Laplace, "laplace");
  if (args.cfg.run_smoothing) sources.emplace_back(Source::Smoothing, "smoothing");
  sources.emplace_back(Source::Bound, "bound");

  if (skipped == records.size()) {
    if (args.write_cdf || args.write_degree)
      std::cout << "all targets skipped; no cdf/degree tables\n";
    return 0;
  }
  for (double eps : args.cfg.epsilons) {
    for (const auto& [source, name] : sources) {
      if (args.write_cdf) {
        auto rows = privrec::accuracy_cdf(records, eps, source);
        std::string path = derived_path(args.out_path, "cdf_" + name + "_eps" + fmt(eps));
        auto out = open_out(path);
        privrec::write_cdf_csv(rows, out);
        std::cout << "wrote " << path << "\n";
      }
      if (args.write_degree) {
        auto rows = privrec::degree_accuracy_table(records, eps, source);
        std::string path = derived_path(args.out_path, "degree_" + name + "_eps" + fmt(eps));
        auto out = open_out(path);
        privrec::write_degree_csv(rows, out);
        std::cout << "wrote " << path << "\n";
      }
    }
  }
  return 0;
}

struct BoundArgs {
  std::string mode = "auto";
  std::uint64_t n = 0, k = 0, t = 1;
  double c = 0.0;
  std::optional<double> delta, epsilon;
  double beta = 1.0, d = 1.0, s = 0.0;
};

int run_bound_cmd(const BoundArgs& args) {
  using privrec::AsymptoticMode;
  std::optional<AsymptoticMode> asym;
  if (args.mode == "general")
    asym = AsymptoticMode::General;
  else if (args.mode == "max-degree")
    asym = AsymptoticMode::MaxDegree;
  else if (args.mode == "target-degree")
    asym = AsymptoticMode::TargetDegree;
  else if (args.mode == "concentrated")
    asym = AsymptoticMode::Concentrated;
  else if (args.mode != "auto" && args.mode != "epsilon" && args.mode != "accuracy")
    throw CLI::ValidationError("--mode", "unknown mode " + args.mode);

  if (asym) {
    auto v = privrec::asymptotic_epsilon(*asym, static_cast<double>(args.n), args.beta, args.d,
                                         args.s);
    std::cout << (v ? fmt(*v) : "no constraint") << "\n";
    return 0;
  }

  privrec::BoundInputs in{args.n, args.k, args.c, args.t, args.delta, args.epsilon};
  bool want_epsilon = args.mode == "epsilon" || (args.mode == "auto" && args.delta.has_value());
  if (want_epsilon) {
    auto v = privrec::epsilon_lower_bound(in);
    std::cout << (v ? fmt(*v) : "no constraint") << "\n";
  } else {
    if (!args.epsilon) throw CLI::ValidationError("--epsilon", "required for the accuracy bound");
    std::cout << fmt(privrec::accuracy_upper_bound(in)) << "\n";
  }
  return 0;
}

struct AuditArgs {
  std::string graph_path;
  bool directed = false;
  std::string mechanism = "exponential";
  std::string utility = "common-neighbors";
  double gamma = 0.005;
  int max_path_len = 3;
  double epsilon = 1.0;
  std::optional<double> delta_f;
  std::optional<double> smoothing_x;
  double tol = 1e-5;
  bool strict = false;
  std::vector<privrec::NodeId> targets;
};

int run_audit_cmd(const AuditArgs& args) {
  privrec::MechanismKind mech;
  if (args.mechanism == "exponential")
    mech = privrec::MechanismKind::Exponential;
  else if (args.mechanism == "laplace")
    mech = privrec::MechanismKind::Laplace;
  else if (args.mechanism == "smoothing")
    mech = privrec::MechanismKind::Smoothing;
  else
    throw CLI::ValidationError("--mechanism", "unknown mechanism " + args.mechanism);

  privrec::UtilityConfig cfg = utility_from(args.utility, args.gamma, args.max_path_len);
  privrec::Graph g = privrec::load_edge_list_file(args.graph_path, args.directed).graph;

  std::vector<privrec::NodeId> targets = args.targets;
  if (targets.empty())
    for (privrec::NodeId r = 0; r < g.node_count(); ++r) targets.push_back(r);

  privrec::AuditOptions opt;
  opt.tol = args.tol;
  opt.strict_neighbors = args.strict;
  opt.smoothing_x = args.smoothing_x;

  bool all_passed = true;
  for (privrec::NodeId r : targets) {
    double df = args.delta_f ? *args.delta_f : privrec::sensitivity_bound(cfg, g, r).delta_f;
    privrec::PrivacyParams p{args.epsilon, df, 0};
    auto rep = privrec::audit_mechanism(g, r, mech, cfg, p, opt);
    all_passed = all_passed && rep.passed;
    std::cout << "target " << g.original_id(r) << ": " << (rep.passed ? "pass" : "FAIL")
              << " max log-ratio " << fmt(rep.max_log_ratio) << " vs epsilon "
              << fmt(rep.epsilon_claimed) << " (" << rep.pairs_checked << " comparisons";
    if (rep.pairs_checked > 0 && rep.max_log_ratio > 0.0) {
      std::cout << "; worst: " << (rep.witness_edit.kind == privrec::EdgeEdit::Kind::Add ? "add "
                                                                                         : "remove ")
                << g.original_id(rep.witness_edit.u) << "-" << g.original_id(rep.witness_edit.v)
                << " at candidate " << g.original_id(rep.witness_candidate);
    }
    std::cout << ")\n";
  }
  return all_passed ? 0 : kExitAuditFailure;
}

struct OracleTArgs {
  std::string graph_path;
  bool directed = false;
  privrec::NodeId target = 0, x = 0;
  int max_depth = 5;
  std::string utility = "common-neighbors";
  double gamma = 0.005;
  int max_path_len = 3;
};

int run_oracle_t_cmd(const OracleTArgs& args) {
  privrec::UtilityConfig cfg = utility_from(args.utility, args.gamma, args.max_path_len);
  privrec::Graph g = privrec::load_edge_list_file(args.graph_path, args.directed).graph;
  auto found = privrec::brute_force_t(g, args.target, args.x, cfg, args.max_depth);
  privrec::UtilityVector u = privrec::utility_vector(g, args.target, cfg);
  std::cout << "formula t: "
            << privrec::t_formula(cfg.kind, u.u_max, g.degree(args.target)) << "\n";
  if (found)
    std::cout << "brute-force t: " << *found << "\n";
  else
    std::cout << "brute-force t: not found within " << args.max_depth << " edits\n";
  return 0;
}

struct OracleSensArgs {
  std::string utility = "common-neighbors";
  double gamma = 0.005;
  int max_path_len = 3;
  privrec::NodeId exhaustive_max_nodes = 0;
  privrec::NodeId random_nodes = 0;
  std::size_t graphs = 50;
  double edge_prob = 0.4;
  std::uint64_t seed = 0;
};

int run_oracle_sens_cmd(const OracleSensArgs& args) {
  privrec::UtilityConfig cfg = utility_from(args.utility, args.gamma, args.max_path_len);
  if ((args.exhaustive_max_nodes == 0) == (args.random_nodes == 0))
    throw CLI::ValidationError("oracle sensitivity",
                               "pick exactly one of --exhaustive-max-nodes / --random-nodes");
  std::vector<privrec::Graph> population =
      args.exhaustive_max_nodes
          ? privrec::exhaustive_population(args.exhaustive_max_nodes)
          : privrec::random_population(args.random_nodes, args.graphs, args.edge_prob, args.seed);
  double observed = privrec::brute_force_sensitivity(cfg, population);
  std::cout << "graphs: " << population.size() << "\n";
  std::cout << "observed max L1 change: " << fmt(observed) << "\n";
  if (auto hit = privrec::sensitivity_bound_violation(cfg, population)) {
    std::cout << "BOUND VIOLATED on graph " << hit->graph_index << " target " << hit->target
              << ": observed " << fmt(hit->observed) << " > bound " << fmt(hit->bound) << "\n";
    return kExitAuditFailure;
  }
  std::cout << "sensitivity bound holds on every instance\n";
  return 0;
}

struct SynthArgs {
  privrec::NodeId nodes = 1000;
  privrec::NodeId edges_per_node = 5;
  std::uint64_t seed = 0;
  std::string out_path;
};

int run_synth_cmd(const SynthArgs& args) {
  privrec::Graph g = privrec::generate_synthetic(args.nodes, args.edges_per_node, args.seed);
  auto out = open_out(args.out_path);
  out << "# preferential attachment: nodes=" << args.nodes
      << " edges_per_node=" << args.edges_per_node << " seed=" << args.seed << "\n";
  for (privrec::NodeId v = 0; v < g.node_count(); ++v)
    for (privrec::NodeId w : g.neighbors(v, privrec::Direction::Undirected))
      if (v < w) out << v << "\t" << w << "\n";
  std::cout << "wrote " << args.out_path << " (" << g.node_count() << " nodes, " << g.edge_count()
            << " edges)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"differentially private link recommendations: mechanisms, bounds, audits"};
  app.require_subcommand(1);
  app.set_config("--config");

  ExperimentArgs exp;
  auto* exp_cmd = app.add_subcommand("experiment", "accuracy sweep over sampled targets");
  exp_cmd->add_option("--graph", exp.cfg.graph_path, "edge list file")->required();
  exp_cmd->add_flag("--directed", exp.cfg.directed, "treat edges as directed");
  exp_cmd->add_option("--utility", exp.utility, "common-neighbors|weighted-paths");
  exp_cmd->add_option("--gamma", exp.gamma, "path decay (weighted-paths)");
  exp_cmd->add_option("--max-path-len", exp.max_path_len, "longest counted walk, 2 or 3");
  exp_cmd->add_option("--epsilon", exp.cfg.epsilons, "privacy budgets to sweep")
      ->required()
      ->delimiter(',');
  exp_cmd->add_option("--sample-frac", exp.cfg.sample_fraction, "fraction of nodes as targets");
  exp_cmd->add_option("--trials", exp.cfg.trials, "noisy-argmax draws per target");
  exp_cmd->add_option("--seed", exp.cfg.seed, "rng seed");
  exp_cmd->add_option("--mechanisms", exp.mechanisms,
                      "any of exponential,laplace,smoothing or none")
      ->delimiter(',');
  exp_cmd->add_option("--smoothing-x", [&exp](const std::vector<std::string>& vals) {
        exp.cfg.smoothing_x = std::stod(vals.at(0));
        return true;
      },
      "fixed smoothing mix weight (default: derived from epsilon)");
  exp_cmd->add_option("--threads", exp.cfg.threads, "worker threads (0 = hardware)");
  exp_cmd->add_option("--out", exp.out_path, "results csv path")->required();
  exp_cmd->add_flag("--cdf", exp.write_cdf, "also write per-epsilon accuracy cdf csvs");
  exp_cmd->add_flag("--degree-table", exp.write_degree, "also write per-degree accuracy csvs");

  BoundArgs bnd;
  auto* bnd_cmd = app.add_subcommand("bound", "privacy/accuracy trade-off calculators");
  bnd_cmd->add_option("--mode", bnd.mode,
                      "auto|epsilon|accuracy|general|max-degree|target-degree|concentrated");
  bnd_cmd->add_option("--n", bnd.n, "candidate count");
  bnd_cmd->add_option("--k", bnd.k, "candidates above the (1-c)*u_max line");
  bnd_cmd->add_option("--c", bnd.c, "accuracy margin in (0, 1]");
  bnd_cmd->add_option("--t", bnd.t, "edit distance to the strict argmax");
  bnd_cmd->add_option("--delta", [&bnd](const std::vector<std::string>& vals) {
        bnd.delta = std::stod(vals.at(0));
        return true;
      },
      "accuracy shortfall, for the epsilon lower bound");
  bnd_cmd->add_option("--epsilon", [&bnd](const std::vector<std::string>& vals) {
        bnd.epsilon = std::stod(vals.at(0));
        return true;
      },
      "privacy budget, for the accuracy upper bound");
  bnd_cmd->add_option("--beta", bnd.beta, "utility concentration (asymptotic modes)");
  bnd_cmd->add_option("--d", bnd.d, "degree parameter (asymptotic modes)");
  bnd_cmd->add_option("--s", bnd.s, "top-score mass fraction (concentrated mode)");

  AuditArgs aud;
  auto* aud_cmd = app.add_subcommand("audit", "exhaustive neighbor-pair privacy check");
  aud_cmd->add_option("--graph", aud.graph_path, "edge list file")->required();
  aud_cmd->add_flag("--directed", aud.directed, "treat edges as directed");
  aud_cmd->add_option("--mechanism", aud.mechanism, "exponential|laplace|smoothing");
  aud_cmd->add_option("--utility", aud.utility, "common-neighbors|weighted-paths");
  aud_cmd->add_option("--gamma", aud.gamma, "path decay (weighted-paths)");
  aud_cmd->add_option("--max-path-len", aud.max_path_len, "longest counted walk, 2 or 3");
  aud_cmd->add_option("--epsilon", aud.epsilon, "claimed privacy budget");
  aud_cmd->add_option("--delta-f", [&aud](const std::vector<std::string>& vals) {
        aud.delta_f = std::stod(vals.at(0));
        return true;
      },
      "sensitivity override (default: computed bound)");
  aud_cmd->add_option("--smoothing-x", [&aud](const std::vector<std::string>& vals) {
        aud.smoothing_x = std::stod(vals.at(0));
        return true;
      },
      "smoothing mix weight (default: derived from epsilon)");
  aud_cmd->add_option("--tol", aud.tol, "laplace quadrature tolerance");
  aud_cmd->add_flag("--strict", aud.strict, "also audit edits incident to the target");
  aud_cmd->add_option("--target", aud.targets, "dense target ids (default: all)");

  auto* orc_cmd = app.add_subcommand("oracle", "brute-force cross-checks");
  orc_cmd->require_subcommand(1);
  OracleTArgs orct;
  auto* orct_cmd = orc_cmd->add_subcommand("t", "fewest edits making x the strict argmax");
  orct_cmd->add_option("--graph", orct.graph_path, "edge list file")->required();
  orct_cmd->add_flag("--directed", orct.directed, "treat edges as directed");
  orct_cmd->add_option("--target", orct.target, "dense target id")->required();
  orct_cmd->add_option("--x", orct.x, "candidate to promote")->required();
  orct_cmd->add_option("--max-depth", orct.max_depth, "largest edit set tried (max 5)");
  orct_cmd->add_option("--utility", orct.utility, "common-neighbors|weighted-paths");
  orct_cmd->add_option("--gamma", orct.gamma, "path decay (weighted-paths)");
  orct_cmd->add_option("--max-path-len", orct.max_path_len, "longest counted walk, 2 or 3");

  OracleSensArgs orcs;
  auto* orcs_cmd = orc_cmd->add_subcommand("sensitivity", "empirical max L1 utility change");
  orcs_cmd->add_option("--utility", orcs.utility, "common-neighbors|weighted-paths");
  orcs_cmd->add_option("--gamma", orcs.gamma, "path decay (weighted-paths)");
  orcs_cmd->add_option("--max-path-len", orcs.max_path_len, "longest counted walk, 2 or 3");
  orcs_cmd->add_option("--exhaustive-max-nodes", orcs.exhaustive_max_nodes,
                       "every graph on 2..N nodes (N <= 6)");
  orcs_cmd->add_option("--random-nodes", orcs.random_nodes, "random graphs on N nodes");
  orcs_cmd->add_option("--graphs", orcs.graphs, "random graph count");
  orcs_cmd->add_option("--edge-prob", orcs.edge_prob, "random edge probability");
  orcs_cmd->add_option("--seed", orcs.seed, "rng seed");

  SynthArgs syn;
  auto* syn_cmd = app.add_subcommand("synth", "write a preferential-attachment edge list");
  syn_cmd->add_option("--nodes", syn.nodes, "node count")->required();
  syn_cmd->add_option("--edges-per-node", syn.edges_per_node, "links added per new node");
  syn_cmd->add_option("--seed", syn.seed, "rng seed");
  syn_cmd->add_option("--out", syn.out_path, "edge list path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitUsage;
  }

  try {
    if (exp_cmd->parsed()) return run_experiment_cmd(exp);
    if (bnd_cmd->parsed()) return run_bound_cmd(bnd);
    if (aud_cmd->parsed()) return run_audit_cmd(aud);
    if (orct_cmd->parsed()) return run_oracle_t_cmd(orct);
    if (orcs_cmd->parsed()) return run_oracle_sens_cmd(orcs);
    if (syn_cmd->parsed()) return run_synth_cmd(syn);
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const privrec::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::length_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return 0;
}
