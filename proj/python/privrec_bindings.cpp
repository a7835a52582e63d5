#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <sstream>

#include "privrec/audit.hpp"
#include "privrec/bounds.hpp"
#include "privrec/experiment.hpp"
#include "privrec/graph.hpp"
#include "privrec/mechanisms.hpp"
#include "privrec/rng.hpp"
#include "privrec/synthetic.hpp"
#include "privrec/utility.hpp"

#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)

namespace py = pybind11;
using namespace privrec;

namespace {

Direction direction_from(const std::string& s) {
  if (s == "out") return Direction::Out;
  if (s == "in") return Direction::In;
  if (s == "undirected") return Direction::Undirected;
  throw std::invalid_argument("direction must be out, in, or undirected");
}

UtilityKind kind_from(const std::string& s) {
  if (s == "common-neighbors") return UtilityKind::CommonNeighbors;
  if (s == "weighted-paths") return UtilityKind::WeightedPaths;
  throw std::invalid_argument("utility must be common-neighbors or weighted-paths");
}

std::string kind_name(UtilityKind k) {
  return k == UtilityKind::CommonNeighbors ? "common-neighbors" : "weighted-paths";
}

MechanismKind mechanism_from(const std::string& s) {
  if (s == "exponential") return MechanismKind::Exponential;
  if (s == "laplace") return MechanismKind::Laplace;
  if (s == "smoothing") return MechanismKind::Smoothing;
  throw std::invalid_argument("mechanism must be exponential, laplace, or smoothing");
}

AsymptoticMode asymptotic_from(const std::string& s) {
  if (s == "general") return AsymptoticMode::General;
  if (s == "max-degree") return AsymptoticMode::MaxDegree;
  if (s == "target-degree") return AsymptoticMode::TargetDegree;
  if (s == "concentrated") return AsymptoticMode::Concentrated;
  throw std::invalid_argument(
      "mode must be general, max-degree, target-degree, or concentrated");
}

AccuracySource source_from(const std::string& s) {
  if (s == "exponential") return AccuracySource::Exponential;
  if (s == "laplace") return AccuracySource::Laplace;
  if (s == "smoothing") return AccuracySource::Smoothing;
  if (s == "bound") return AccuracySource::Bound;
  throw std::invalid_argument("source must be exponential, laplace, smoothing, or bound");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "differentially private link recommendations";

  py::class_<EdgeEdit>(m, "EdgeEdit")
      .def_static("add", &add_edge, py::arg("u"), py::arg("v"))
      .def_static("remove", &remove_edge, py::arg("u"), py::arg("v"))
      .def_property_readonly(
          "kind", [](const EdgeEdit& e) { return e.kind == EdgeEdit::Kind::Add ? "add" : "remove"; })
      .def_readonly("u", &EdgeEdit::u)
      .def_readonly("v", &EdgeEdit::v)
      .def("__repr__", [](const EdgeEdit& e) {
        std::ostringstream os;
        os << "EdgeEdit(" << (e.kind == EdgeEdit::Kind::Add ? "add" : "remove") << ", " << e.u
           << ", " << e.v << ")";
        return os.str();
      });

  py::class_<Graph>(m, "Graph")
      .def_static("from_edges", &Graph::from_edges, py::arg("node_count"), py::arg("directed"),
                  py::arg("edges"))
      .def_property_readonly("node_count", &Graph::node_count)
      .def_property_readonly("edge_count", &Graph::edge_count)
      .def_property_readonly("directed", &Graph::directed)
      .def(
          "neighbors",
          [](const Graph& g, NodeId v, const std::string& direction) {
            return g.neighbors(v, direction_from(direction));
          },
          py::arg("v"), py::arg("direction") = "undirected")
      .def("degree", &Graph::degree, py::arg("v"))
      .def_property_readonly("max_degree", &Graph::max_degree)
      .def("has_edge", &Graph::has_edge, py::arg("u"), py::arg("v"))
      .def("apply_edit", &Graph::apply_edit, py::arg("edit"))
      .def("original_id", &Graph::original_id, py::arg("v"))
      .def("__eq__", [](const Graph& a, const Graph& b) { return a == b; })
      .def("__repr__", [](const Graph& g) {
        std::ostringstream os;
        os << "Graph(" << (g.directed() ? "directed" : "undirected") << ", " << g.node_count()
           << " nodes, " << g.edge_count() << " edges)";
        return os.str();
      });

  py::class_<LoadResult>(m, "LoadResult")
      .def_readonly("graph", &LoadResult::graph)
      .def_readonly("duplicates_dropped", &LoadResult::duplicates_dropped)
      .def_readonly("self_loops_dropped", &LoadResult::self_loops_dropped);

  m.def("load_edge_list", &load_edge_list_file, py::arg("path"), py::arg("directed") = false);
  m.def(
      "load_edge_list_text",
      [](const std::string& text, bool directed) {
        std::istringstream in(text);
        return load_edge_list(in, directed);
      },
      py::arg("text"), py::arg("directed") = false);

  py::class_<UtilityConfig>(m, "UtilityConfig")
      .def(py::init([](const std::string& kind, double gamma, int max_path_len) {
             return UtilityConfig{kind_from(kind), gamma, max_path_len};
           }),
           py::arg("kind") = "common-neighbors", py::arg("gamma") = 0.005,
           py::arg("max_path_len") = 3)
      .def_property_readonly("kind", [](const UtilityConfig& c) { return kind_name(c.kind); })
      .def_readwrite("gamma", &UtilityConfig::gamma)
      .def_readwrite("max_path_len", &UtilityConfig::max_path_len);

  py::class_<UtilityVector>(m, "UtilityVector")
      .def_static("from_entries", &UtilityVector::from_entries, py::arg("target"),
                  py::arg("entries"))
      .def_readonly("target", &UtilityVector::target)
      .def_readonly("candidates", &UtilityVector::candidates)
      .def_readonly("values", &UtilityVector::values)
      .def_readonly("u_max", &UtilityVector::u_max)
      .def("value_of", &UtilityVector::value_of, py::arg("id"))
      .def("__len__", &UtilityVector::size)
      .def("as_dict", [](const UtilityVector& u) {
        py::dict d;
        for (std::size_t i = 0; i < u.candidates.size(); ++i)
          d[py::int_(u.candidates[i])] = u.values[i];
        return d;
      });

  m.def("candidate_set", &candidate_set, py::arg("graph"), py::arg("target"));
  m.def("common_neighbors_utility", &common_neighbors_utility, py::arg("graph"),
        py::arg("target"));
  m.def("weighted_paths_utility", &weighted_paths_utility, py::arg("graph"), py::arg("target"),
        py::arg("gamma"), py::arg("max_path_len") = 3);
  m.def("utility_vector", &utility_vector, py::arg("graph"), py::arg("target"), py::arg("config"));
  m.def(
      "sensitivity_bound",
      [](const UtilityConfig& cfg, const Graph& g, NodeId r) {
        SensitivityBound b = sensitivity_bound(cfg, g, r);
        return py::make_tuple(
            b.delta_f, b.basis == SensitivityBound::Basis::Exact ? "exact" : "conservative");
      },
      py::arg("config"), py::arg("graph"), py::arg("target"),
      "(delta_f, basis) for one edge edit away from the target");
  m.def("concentration_beta", &concentration_beta, py::arg("utility"), py::arg("fraction"));

  py::class_<PrivacyParams>(m, "PrivacyParams")
      .def(py::init([](double epsilon, double delta_f, std::uint64_t seed) {
             return PrivacyParams{epsilon, delta_f, seed};
           }),
           py::arg("epsilon"), py::arg("delta_f") = 1.0, py::arg("seed") = 0)
      .def_readwrite("epsilon", &PrivacyParams::epsilon)
      .def_readwrite("delta_f", &PrivacyParams::delta_f)
      .def_readwrite("seed", &PrivacyParams::seed);

  py::class_<RecommendationDistribution>(m, "RecommendationDistribution")
      .def_readonly("candidates", &RecommendationDistribution::candidates)
      .def_readonly("probs", &RecommendationDistribution::probs)
      .def("prob_of", &RecommendationDistribution::prob_of, py::arg("id"))
      .def("__len__", &RecommendationDistribution::size)
      .def("as_dict", [](const RecommendationDistribution& d) {
        py::dict out;
        for (std::size_t i = 0; i < d.candidates.size(); ++i)
          out[py::int_(d.candidates[i])] = d.probs[i];
        return out;
      });

  py::class_<Rng>(m, "Rng")
      .def(py::init<std::uint64_t>(), py::arg("seed"))
      .def("uniform01", &Rng::uniform01);
  m.def("substream", &substream, py::arg("seed"), py::arg("a"), py::arg("b"));

  m.def("best_recommendation", &best_recommendation, py::arg("utility"));
  m.def("exponential_distribution", &exponential_distribution, py::arg("utility"),
        py::arg("params"));
  m.def("laplace_sample", &laplace_sample, py::arg("utility"), py::arg("params"), py::arg("rng"));
  m.def("laplace_distribution", &laplace_distribution, py::arg("utility"), py::arg("params"),
        py::arg("tol") = 1e-9);
  m.def("laplace_two_node_probability", &laplace_two_node_probability, py::arg("epsilon"),
        py::arg("du"));
  m.def("smoothing_distribution", &smoothing_distribution, py::arg("base"), py::arg("x"));
  m.def("smoothing_epsilon", &smoothing_epsilon, py::arg("x"), py::arg("n"));
  m.def("smoothing_x", &smoothing_x, py::arg("epsilon"), py::arg("n"));
  m.def("expected_accuracy", &expected_accuracy, py::arg("distribution"), py::arg("utility"));
  m.def("monte_carlo_accuracy", &monte_carlo_accuracy, py::arg("utility"), py::arg("params"),
        py::arg("trials"));

  m.def(
      "epsilon_lower_bound",
      [](std::uint64_t n, std::uint64_t k, double c, std::uint64_t t, double delta) {
        return epsilon_lower_bound(BoundInputs{n, k, c, t, delta, std::nullopt});
      },
      py::arg("n"), py::arg("k"), py::arg("c"), py::arg("t"), py::arg("delta"),
      "smallest epsilon compatible with accuracy 1 - delta; None = no constraint");
  m.def(
      "accuracy_upper_bound",
      [](std::uint64_t n, std::uint64_t k, double c, std::uint64_t t, double epsilon) {
        return accuracy_upper_bound(BoundInputs{n, k, c, t, std::nullopt, epsilon});
      },
      py::arg("n"), py::arg("k"), py::arg("c"), py::arg("t"), py::arg("epsilon"));
  m.def(
      "t_formula",
      [](const std::string& kind, double u_max, std::uint64_t degree) {
        return t_formula(kind_from(kind), u_max, degree);
      },
      py::arg("kind"), py::arg("u_max"), py::arg("degree"));
  m.def("tightest_accuracy_bound", &tightest_accuracy_bound, py::arg("utility"), py::arg("t"),
        py::arg("epsilon"));
  m.def(
      "asymptotic_epsilon",
      [](const std::string& mode, double n, double beta, double d, double s) {
        return asymptotic_epsilon(asymptotic_from(mode), n, beta, d, s);
      },
      py::arg("mode"), py::arg("n"), py::arg("beta"), py::arg("d"), py::arg("s") = 0.0);

  py::class_<AuditReport>(m, "AuditReport")
      .def_readonly("target", &AuditReport::target)
      .def_readonly("epsilon_claimed", &AuditReport::epsilon_claimed)
      .def_readonly("max_log_ratio", &AuditReport::max_log_ratio)
      .def_readonly("pairs_checked", &AuditReport::pairs_checked)
      .def_readonly("witness_edit", &AuditReport::witness_edit)
      .def_readonly("witness_candidate", &AuditReport::witness_candidate)
      .def_readonly("passed", &AuditReport::passed)
      .def("__repr__", [](const AuditReport& r) {
        std::ostringstream os;
        os << "AuditReport(target=" << r.target << ", " << (r.passed ? "passed" : "FAILED")
           << ", max_log_ratio=" << r.max_log_ratio << ", epsilon=" << r.epsilon_claimed << ")";
        return os.str();
      });

  m.def(
      "audit_mechanism",
      [](const Graph& g, NodeId r, const std::string& mech, const UtilityConfig& cfg,
         const PrivacyParams& p, double tol, bool strict_neighbors,
         std::optional<double> smoothing_x) {
        AuditOptions opt{tol, strict_neighbors, smoothing_x};
        return audit_mechanism(g, r, mechanism_from(mech), cfg, p, opt);
      },
      py::arg("graph"), py::arg("target"), py::arg("mechanism"), py::arg("config"),
      py::arg("params"), py::arg("tol") = 1e-5, py::arg("strict_neighbors") = false,
      py::arg("smoothing_x") = py::none());
  m.def("brute_force_t", &brute_force_t, py::arg("graph"), py::arg("target"), py::arg("x"),
        py::arg("config"), py::arg("max_depth") = 5);
  m.def("brute_force_sensitivity", &brute_force_sensitivity, py::arg("config"),
        py::arg("population"));
  m.def(
      "sensitivity_bound_violation",
      [](const UtilityConfig& cfg, const std::vector<Graph>& population) -> py::object {
        auto hit = sensitivity_bound_violation(cfg, population);
        if (!hit) return py::none();
        return py::make_tuple(hit->graph_index, hit->target, hit->edit, hit->observed,
                              hit->bound);
      },
      py::arg("config"), py::arg("population"));
  m.def("exhaustive_population", &exhaustive_population, py::arg("max_nodes"));
  m.def("random_population", &random_population, py::arg("nodes"), py::arg("count"),
        py::arg("edge_prob"), py::arg("seed"));
  m.def("is_connected", &is_connected, py::arg("graph"));

  m.def("generate_synthetic", &generate_synthetic, py::arg("nodes"), py::arg("edges_per_node"),
        py::arg("seed"));

  py::class_<ExperimentConfig>(m, "ExperimentConfig")
      .def(py::init([](std::string graph_path, bool directed, const UtilityConfig& utility,
                       std::vector<double> epsilons, double sample_fraction, std::uint32_t trials,
                       std::uint64_t seed, bool run_exponential, bool run_laplace,
                       bool run_smoothing, std::optional<double> smoothing_x, unsigned threads) {
             return ExperimentConfig{std::move(graph_path), directed,        utility,
                                     std::move(epsilons),   sample_fraction, trials,
                                     seed,                  run_exponential, run_laplace,
                                     run_smoothing,         smoothing_x,     threads};
           }),
           py::arg("graph_path") = "", py::arg("directed") = false,
           py::arg("utility") = UtilityConfig{}, py::arg("epsilons") = std::vector<double>{1.0},
           py::arg("sample_fraction") = 0.1, py::arg("trials") = 1000, py::arg("seed") = 0,
           py::arg("run_exponential") = true, py::arg("run_laplace") = true,
           py::arg("run_smoothing") = false, py::arg("smoothing_x") = py::none(),
           py::arg("threads") = 0)
      .def_readwrite("graph_path", &ExperimentConfig::graph_path)
      .def_readwrite("directed", &ExperimentConfig::directed)
      .def_readwrite("utility", &ExperimentConfig::utility)
      .def_readwrite("epsilons", &ExperimentConfig::epsilons)
      .def_readwrite("sample_fraction", &ExperimentConfig::sample_fraction)
      .def_readwrite("trials", &ExperimentConfig::trials)
      .def_readwrite("seed", &ExperimentConfig::seed)
      .def_readwrite("run_exponential", &ExperimentConfig::run_exponential)
      .def_readwrite("run_laplace", &ExperimentConfig::run_laplace)
      .def_readwrite("run_smoothing", &ExperimentConfig::run_smoothing)
      .def_readwrite("smoothing_x", &ExperimentConfig::smoothing_x)
      .def_readwrite("threads", &ExperimentConfig::threads);

  py::class_<EpsilonAccuracy>(m, "EpsilonAccuracy")
      .def_readonly("epsilon", &EpsilonAccuracy::epsilon)
      .def_readonly("exponential", &EpsilonAccuracy::exponential)
      .def_readonly("laplace", &EpsilonAccuracy::laplace)
      .def_readonly("smoothing", &EpsilonAccuracy::smoothing)
      .def_readonly("bound", &EpsilonAccuracy::bound);

  py::class_<AccuracyRecord>(m, "AccuracyRecord")
      .def_readonly("original_id", &AccuracyRecord::original_id)
      .def_readonly("target", &AccuracyRecord::target)
      .def_readonly("degree", &AccuracyRecord::degree)
      .def_readonly("u_max", &AccuracyRecord::u_max)
      .def_readonly("t", &AccuracyRecord::t)
      .def_readonly("accuracies", &AccuracyRecord::accuracies)
      .def_readonly("skipped", &AccuracyRecord::skipped)
      .def_readonly("reason", &AccuracyRecord::reason);

  m.def("sample_targets", &sample_targets, py::arg("graph"), py::arg("fraction"), py::arg("seed"));
  m.def(
      "run_experiment",
      [](const Graph& g, const ExperimentConfig& cfg) { return run_experiment(g, cfg); },
      py::arg("graph"), py::arg("config"));
  m.def(
      "run_experiment_from_file",
      [](const ExperimentConfig& cfg) { return run_experiment(cfg); }, py::arg("config"));
  m.def(
      "write_records_csv",
      [](const std::vector<AccuracyRecord>& records, const std::string& path) {
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot write " + path);
        write_records_csv(records, out);
      },
      py::arg("records"), py::arg("path"));
  m.def(
      "records_csv",
      [](const std::vector<AccuracyRecord>& records) {
        std::ostringstream out;
        write_records_csv(records, out);
        return out.str();
      },
      py::arg("records"));
  m.def(
      "accuracy_cdf",
      [](const std::vector<AccuracyRecord>& records, double epsilon, const std::string& source) {
        std::vector<std::pair<double, double>> rows;
        for (const auto& row : accuracy_cdf(records, epsilon, source_from(source)))
          rows.emplace_back(row.threshold, row.fraction);
        return rows;
      },
      py::arg("records"), py::arg("epsilon"), py::arg("source"));
  m.def(
      "degree_accuracy_table",
      [](const std::vector<AccuracyRecord>& records, double epsilon, const std::string& source) {
        std::vector<std::tuple<std::uint64_t, std::size_t, double, double>> rows;
        for (const auto& row : degree_accuracy_table(records, epsilon, source_from(source)))
          rows.emplace_back(row.degree, row.targets, row.mean_accuracy, row.mean_bound);
        return rows;
      },
      py::arg("records"), py::arg("epsilon"), py::arg("source"));

#ifdef VERSION_INFO
  m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
#else
  m.attr("__version__") = "dev";
#endif
}
