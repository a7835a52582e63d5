#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "privrec/graph.hpp"
#include "privrec/utility.hpp"

namespace privrec {

struct ExperimentConfig {
  std::string graph_path;
  bool directed = false;
  UtilityConfig utility;
  std::vector<double> epsilons;     // one accuracy sweep per value
  double sample_fraction = 0.1;     // fraction of nodes used as targets
  std::uint32_t trials = 1000;      // noisy-argmax draws per (target, epsilon)
  std::uint64_t seed = 0;
  bool run_exponential = true;
  bool run_laplace = true;
  bool run_smoothing = false;
  std::optional<double> smoothing_x;  // default: derived from each epsilon
  unsigned threads = 0;               // 0 = hardware concurrency

  void validate() const;
};

struct EpsilonAccuracy {
  double epsilon = 0.0;
  std::optional<double> exponential;
  std::optional<double> laplace;
  std::optional<double> smoothing;
  double bound = 1.0;  // tightest theoretical ceiling at this epsilon
};

struct AccuracyRecord {
  std::int64_t original_id = 0;
  NodeId target = 0;
  std::uint64_t degree = 0;
  double u_max = 0.0;
  std::uint64_t t = 0;  // only meaningful when not skipped
  std::vector<EpsilonAccuracy> accuracies;
  bool skipped = false;
  std::string reason;
};

// ceil(fraction * node_count) distinct targets, uniform without replacement,
// sorted ascending. Deterministic per seed.
std::vector<NodeId> sample_targets(const Graph& g, double fraction, std::uint64_t seed);

// Accuracy sweep over sampled targets. Targets with no candidates or
// all-zero utility are reported as skipped; a per-target failure marks that
// record and never aborts the batch. Record order follows the sorted target
// sample regardless of thread count.
std::vector<AccuracyRecord> run_experiment(const Graph& g, const ExperimentConfig& cfg);
// Same, loading cfg.graph_path first.
std::vector<AccuracyRecord> run_experiment(const ExperimentConfig& cfg);

// CSV with one row per (target, epsilon):
// target,degree,u_max,t,epsilon,exp_acc,laplace_acc,bound_acc,skipped,reason
// target is the original input id; absent measurements are empty cells.
void write_records_csv(const std::vector<AccuracyRecord>& records, std::ostream& out);

enum class AccuracySource { Exponential, Laplace, Smoothing, Bound };

struct CdfRow {
  double threshold = 0.0;  // an observed accuracy value
  double fraction = 0.0;   // fraction of targets with accuracy <= threshold
};

// Empirical accuracy CDF at one epsilon over non-skipped records. Rows are
// sorted by threshold and the last fraction is 1. Throws when the source was
// not measured at that epsilon.
std::vector<CdfRow> accuracy_cdf(const std::vector<AccuracyRecord>& records, double epsilon,
                                 AccuracySource source);
void write_cdf_csv(const std::vector<CdfRow>& rows, std::ostream& out);

struct DegreeRow {
  std::uint64_t degree = 0;
  std::size_t targets = 0;
  double mean_accuracy = 0.0;
  double mean_bound = 0.0;
};

// Mean accuracy and mean theoretical ceiling per target degree, ascending.
std::vector<DegreeRow> degree_accuracy_table(const std::vector<AccuracyRecord>& records,
                                             double epsilon, AccuracySource source);
void write_degree_csv(const std::vector<DegreeRow>& rows, std::ostream& out);

}  // namespace privrec
