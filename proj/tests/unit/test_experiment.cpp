#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "privrec/experiment.hpp"
#include "privrec/synthetic.hpp"

using namespace privrec;
using doctest::Approx;

namespace {

ExperimentConfig base_config() {
  ExperimentConfig cfg;
  cfg.utility = {UtilityKind::CommonNeighbors, 0.0, 3};
  cfg.epsilons = {std::log(2.0)};
  cfg.sample_fraction = 1.0;
  cfg.trials = 200;
  cfg.seed = 7;
  return cfg;
}

std::string csv_of(const std::vector<AccuracyRecord>& records) {
  std::ostringstream out;
  write_records_csv(records, out);
  return out.str();
}

struct TempFile {
  std::filesystem::path path;
  explicit TempFile(const std::string& name, const std::string& contents)
      : path(std::filesystem::temp_directory_path() / name) {
    std::ofstream out(path);
    out << contents;
  }
  ~TempFile() { std::error_code ec; std::filesystem::remove(path, ec); }
};

}  // namespace

TEST_SUITE("experiment") {

TEST_CASE("sampling takes the ceiling of the requested fraction") {
  Graph g = generate_synthetic(40, 2, 3);
  std::vector<NodeId> all = sample_targets(g, 1.0, 5);
  CHECK(all.size() == 40);
  std::vector<NodeId> tenth = sample_targets(g, 0.1, 5);
  CHECK(tenth.size() == 4);
  std::vector<NodeId> sliver = sample_targets(g, 0.001, 5);
  CHECK(sliver.size() == 1);
  std::vector<NodeId> again = sample_targets(g, 0.1, 5);
  CHECK(tenth == again);
  for (std::size_t i = 1; i < tenth.size(); ++i) CHECK(tenth[i - 1] < tenth[i]);
}

TEST_CASE("a hand-checkable run reproduces the closed-form accuracy") {
  Graph g = testutil::g2();
  ExperimentConfig cfg = base_config();
  cfg.run_laplace = false;
  std::vector<AccuracyRecord> records = run_experiment(g, cfg);
  REQUIRE(records.size() == 5);
  const AccuracyRecord& r0 = records[0];
  CHECK(r0.target == 0);
  CHECK(!r0.skipped);
  CHECK(r0.degree == 2);
  CHECK(r0.u_max == Approx(2.0));
  CHECK(r0.t == 4);
  REQUIRE(r0.accuracies.size() == 1);
  const EpsilonAccuracy& acc = r0.accuracies[0];
  CHECK(acc.epsilon == Approx(std::log(2.0)));
  REQUIRE(acc.exponential.has_value());
  // scores (2, 1): picking the top happens with weight 4 / (4 + 2).
  CHECK(*acc.exponential == Approx(5.0 / 6.0).epsilon(1e-12));
  CHECK(!acc.laplace.has_value());
  CHECK(acc.bound > 0.0);
  CHECK(acc.bound <= 1.0);
}

TEST_CASE("targets without usable scores are recorded, not dropped") {
  Graph pair = testutil::undirected(2, {{0, 1}});
  ExperimentConfig cfg = base_config();
  std::vector<AccuracyRecord> records = run_experiment(pair, cfg);
  REQUIRE(records.size() == 2);
  CHECK(records[0].skipped);
  CHECK(records[0].reason == "no candidates");

  Graph split = testutil::undirected(4, {{0, 1}, {2, 3}});
  records = run_experiment(split, cfg);
  REQUIRE(records.size() == 4);
  CHECK(records[0].skipped);
  CHECK(records[0].reason == "zero utility");
  CHECK(records[0].accuracies.empty());
}

TEST_CASE("worker count never changes the output") {
  Graph g = generate_synthetic(30, 2, 11);
  ExperimentConfig cfg = base_config();
  cfg.epsilons = {0.5, 1.0};
  cfg.sample_fraction = 0.5;
  cfg.threads = 1;
  std::string serial = csv_of(run_experiment(g, cfg));
  cfg.threads = 4;
  std::string parallel = csv_of(run_experiment(g, cfg));
  CHECK(serial == parallel);
  CHECK(csv_of(run_experiment(g, cfg)) == parallel);
}

TEST_CASE("csv rows carry the full schema") {
  Graph g = testutil::g2();
  ExperimentConfig cfg = base_config();
  cfg.run_laplace = false;
  std::string csv = csv_of(run_experiment(g, cfg));
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "target,degree,u_max,t,epsilon,exp_acc,laplace_acc,bound_acc,skipped,reason");
  std::getline(lines, line);
  CHECK(line == "0,2,2,4,0.6931471806,0.8333333333,,0.9848484848,false,");
}

TEST_CASE("skipped rows leave the measurement columns empty") {
  Graph pair = testutil::undirected(2, {{0, 1}});
  std::string csv = csv_of(run_experiment(pair, base_config()));
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  std::getline(lines, line);
  CHECK(line == "0,1,0,,,,,,true,no candidates");
}

TEST_CASE("accuracy cdf is a step function over measured targets") {
  std::vector<AccuracyRecord> records;
  auto add = [&records](NodeId id, double acc) {
    AccuracyRecord r;
    r.original_id = id;
    r.target = id;
    r.degree = 1;
    r.u_max = 1.0;
    r.t = 3;
    EpsilonAccuracy ea;
    ea.epsilon = 1.0;
    ea.exponential = acc;
    ea.bound = 1.0;
    r.accuracies.push_back(ea);
    records.push_back(r);
  };
  add(0, 0.2);
  add(1, 0.8);
  add(2, 0.2);
  AccuracyRecord skipped;
  skipped.original_id = 3;
  skipped.target = 3;
  skipped.skipped = true;
  skipped.reason = "no candidates";
  records.push_back(skipped);

  std::vector<CdfRow> cdf = accuracy_cdf(records, 1.0, AccuracySource::Exponential);
  REQUIRE(cdf.size() == 2);
  CHECK(cdf[0].threshold == Approx(0.2));
  CHECK(cdf[0].fraction == Approx(2.0 / 3.0));
  CHECK(cdf[1].threshold == Approx(0.8));
  CHECK(cdf[1].fraction == Approx(1.0));

  CHECK_THROWS_AS(accuracy_cdf(records, 1.0, AccuracySource::Laplace), std::invalid_argument);
  CHECK_THROWS_AS(accuracy_cdf(records, 2.0, AccuracySource::Exponential), std::invalid_argument);

  std::ostringstream out;
  write_cdf_csv(cdf, out);
  std::istringstream lines(out.str());
  std::string line;
  std::getline(lines, line);
  CHECK(line == "threshold,fraction");
}

TEST_CASE("degree table groups measured targets by degree") {
  std::vector<AccuracyRecord> records;
  auto add = [&records](NodeId id, std::uint32_t degree, double acc, double bound) {
    AccuracyRecord r;
    r.original_id = id;
    r.target = id;
    r.degree = degree;
    r.u_max = 1.0;
    r.t = 3;
    EpsilonAccuracy ea;
    ea.epsilon = 1.0;
    ea.exponential = acc;
    ea.bound = bound;
    r.accuracies.push_back(ea);
    records.push_back(r);
  };
  add(0, 1, 0.2, 0.5);
  add(1, 1, 0.4, 0.7);
  add(2, 2, 0.9, 1.0);

  std::vector<DegreeRow> table =
      degree_accuracy_table(records, 1.0, AccuracySource::Exponential);
  REQUIRE(table.size() == 2);
  CHECK(table[0].degree == 1);
  CHECK(table[0].targets == 2);
  CHECK(table[0].mean_accuracy == Approx(0.3));
  CHECK(table[0].mean_bound == Approx(0.6));
  CHECK(table[1].degree == 2);
  CHECK(table[1].targets == 1);
  CHECK(table[1].mean_accuracy == Approx(0.9));

  std::ostringstream out;
  write_degree_csv(table, out);
  std::istringstream lines(out.str());
  std::string line;
  std::getline(lines, line);
  CHECK(line == "degree,targets,mean_accuracy,mean_bound");
}

TEST_CASE("synthetic graphs have a predictable shape") {
  Graph tree = generate_synthetic(10, 1, 4);
  CHECK(tree.node_count() == 10);
  CHECK(tree.edge_count() == 9);
  Graph g = generate_synthetic(100, 5, 4);
  CHECK(g.edge_count() == 485);
  CHECK(generate_synthetic(100, 5, 4) == g);
  CHECK(generate_synthetic(100, 5, 5) != g);
  CHECK_THROWS_AS(generate_synthetic(5, 0, 1), std::domain_error);
  CHECK_THROWS_AS(generate_synthetic(5, 5, 1), std::domain_error);
}

TEST_CASE("a config pointing at an edge list file runs end to end") {
  TempFile file("privrec_test_graph.txt", "# fixture\n0\t1\n0\t2\n1\t3\n2\t3\n1\t4\n");
  ExperimentConfig cfg = base_config();
  cfg.graph_path = file.path.string();
  cfg.run_laplace = false;
  std::vector<AccuracyRecord> records = run_experiment(cfg);
  REQUIRE(records.size() == 5);
  CHECK(*records[0].accuracies[0].exponential == Approx(5.0 / 6.0).epsilon(1e-12));
}

TEST_CASE("configs are validated before any work starts") {
  ExperimentConfig cfg = base_config();
  cfg.epsilons = {};
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = base_config();
  cfg.epsilons = {-1.0};
  CHECK_THROWS_AS(cfg.validate(), std::domain_error);
  cfg = base_config();
  cfg.sample_fraction = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::domain_error);
  cfg = base_config();
  cfg.sample_fraction = 1.5;
  CHECK_THROWS_AS(cfg.validate(), std::domain_error);
  cfg = base_config();
  cfg.trials = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = base_config();
  cfg.run_smoothing = true;
  cfg.smoothing_x = 1.5;
  CHECK_THROWS_AS(cfg.validate(), std::domain_error);
}

TEST_CASE("smoothing joins the sweep when requested") {
  Graph g = testutil::g2();
  ExperimentConfig cfg = base_config();
  cfg.run_laplace = false;
  cfg.run_smoothing = true;
  cfg.smoothing_x = 0.5;
  std::vector<AccuracyRecord> records = run_experiment(g, cfg);
  const EpsilonAccuracy& acc = records[0].accuracies[0];
  REQUIRE(acc.smoothing.has_value());
  // deterministic pick mixed half with uniform: probs (3/4, 1/4) over
  // scores (2, 1), so the utility-weighted accuracy is 7/8.
  CHECK(*acc.smoothing == Approx(0.875).epsilon(1e-12));
  std::vector<CdfRow> cdf =
      accuracy_cdf(records, std::log(2.0), AccuracySource::Smoothing);
  CHECK(!cdf.empty());
}

}  // TEST_SUITE
