#include "privrec/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "privrec/bounds.hpp"
#include "privrec/mechanisms.hpp"
#include "privrec/rng.hpp"

namespace privrec {

void ExperimentConfig::validate() const {
  if (epsilons.empty()) throw std::invalid_argument("need at least one epsilon");
  for (double e : epsilons)
    if (!(e > 0.0)) throw std::domain_error("epsilon must be positive");
  if (!(sample_fraction > 0.0 && sample_fraction <= 1.0))
    throw std::domain_error("sample_fraction must be in (0, 1]");
  if (run_laplace && trials == 0) throw std::invalid_argument("trials must be positive");
  if (smoothing_x && !(*smoothing_x >= 0.0 && *smoothing_x < 1.0))
    throw std::domain_error("smoothing_x must be in [0, 1)");
}

std::vector<NodeId> sample_targets(const Graph& g, double fraction, std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction <= 1.0))
    throw std::domain_error("fraction must be in (0, 1]");
  NodeId n = g.node_count();
  auto m = static_cast<NodeId>(
      std::min<double>(n, std::ceil(fraction * static_cast<double>(n))));
  std::vector<NodeId> ids(n);
  for (NodeId i = 0; i < n; ++i) ids[i] = i;
  Rng rng = substream(seed, n, 0x74677473);
  for (NodeId i = 0; i < m; ++i)
    std::swap(ids[i], ids[i + static_cast<NodeId>(rng.below(n - i))]);
  ids.resize(m);
  std::sort(ids.begin(), ids.end());
  return ids;
}

namespace {

AccuracyRecord measure_target(const Graph& g, NodeId r, const ExperimentConfig& cfg) {
  AccuracyRecord rec;
  rec.target = r;
  rec.original_id = g.original_id(r);
  rec.degree = g.degree(r);
  try {
    UtilityVector u = utility_vector(g, r, cfg.utility);
    rec.u_max = u.u_max;
    if (u.candidates.empty()) {
      rec.skipped = true;
      rec.reason = "no candidates";
      return rec;
    }
    if (!(u.u_max > 0.0)) {
      rec.skipped = true;
      rec.reason = "zero utility";
      return rec;
    }
    rec.t = t_formula(cfg.utility.kind, u.u_max, rec.degree);
    double df = sensitivity_bound(cfg.utility, g, r).delta_f;
    for (double eps : cfg.epsilons) {
      EpsilonAccuracy ea;
      ea.epsilon = eps;
      PrivacyParams p{eps, df, cfg.seed};
      if (cfg.run_exponential)
        ea.exponential = expected_accuracy(exponential_distribution(u, p), u);
      if (cfg.run_laplace) ea.laplace = monte_carlo_accuracy(u, p, cfg.trials);
      if (cfg.run_smoothing) {
        double x = cfg.smoothing_x ? *cfg.smoothing_x : smoothing_x(eps, u.size());
        ea.smoothing = expected_accuracy(smoothing_distribution(best_recommendation(u), x), u);
      }
      ea.bound = tightest_accuracy_bound(u, rec.t, eps);
      rec.accuracies.push_back(ea);
    }
  } catch (const std::exception& e) {
    rec.skipped = true;
    rec.accuracies.clear();
    rec.reason = std::string("error: ") + e.what();
  }
  return rec;
}

}  // namespace

std::vector<AccuracyRecord> run_experiment(const Graph& g, const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<NodeId> targets = sample_targets(g, cfg.sample_fraction, cfg.seed);
  std::vector<AccuracyRecord> records(targets.size());

  std::size_t workers = cfg.threads ? cfg.threads : std::thread::hardware_concurrency();
  workers = std::min(std::max<std::size_t>(workers, 1), targets.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < targets.size(); ++i)
      records[i] = measure_target(g, targets[i], cfg);
    return records;
  }

  // Records are written by index, so the output is identical however the
  // targets get interleaved.
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next.fetch_add(1); i < targets.size(); i = next.fetch_add(1))
      records[i] = measure_target(g, targets[i], cfg);
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  return records;
}

std::vector<AccuracyRecord> run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  Graph g = load_edge_list_file(cfg.graph_path, cfg.directed).graph;
  return run_experiment(g, cfg);
}

namespace {

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string fmt_opt(const std::optional<double>& v) { return v ? fmt(*v) : std::string(); }

std::string sanitize(std::string s) {
  for (char& ch : s)
    if (ch == ',' || ch == '\n') ch = ';';
  return s;
}

const std::optional<double>& pick(const EpsilonAccuracy& ea, AccuracySource source) {
  static const std::optional<double> none;
  switch (source) {
    case AccuracySource::Exponential:
      return ea.exponential;
    case AccuracySource::Laplace:
      return ea.laplace;
    case AccuracySource::Smoothing:
      return ea.smoothing;
    case AccuracySource::Bound:
      break;
  }
  return none;
}

// Accuracy values of `source` at `epsilon` across non-skipped records.
std::vector<std::pair<const AccuracyRecord*, double>> gather(
    const std::vector<AccuracyRecord>& records, double epsilon, AccuracySource source) {
  std::vector<std::pair<const AccuracyRecord*, double>> out;
  for (const auto& rec : records) {
    if (rec.skipped) continue;
    for (const auto& ea : rec.accuracies) {
      if (ea.epsilon != epsilon) continue;
      if (source == AccuracySource::Bound) {
        out.emplace_back(&rec, ea.bound);
      } else if (const auto& v = pick(ea, source)) {
        out.emplace_back(&rec, *v);
      }
      break;
    }
  }
  if (out.empty())
    throw std::invalid_argument("no accuracy measurements at this epsilon");
  return out;
}

}  // namespace

void write_records_csv(const std::vector<AccuracyRecord>& records, std::ostream& out) {
  out << "target,degree,u_max,t,epsilon,exp_acc,laplace_acc,bound_acc,skipped,reason\n";
  for (const auto& rec : records) {
    std::string head = std::to_string(rec.original_id) + "," + std::to_string(rec.degree) + "," +
                       fmt(rec.u_max) + "," + (rec.skipped ? std::string() : std::to_string(rec.t));
    if (rec.skipped) {
      out << head << ",,,,,true," << sanitize(rec.reason) << "\n";
      continue;
    }
    for (const auto& ea : rec.accuracies) {
      out << head << "," << fmt(ea.epsilon) << "," << fmt_opt(ea.exponential) << ","
          << fmt_opt(ea.laplace) << "," << fmt(ea.bound) << ",false,\n";
    }
  }
}

std::vector<CdfRow> accuracy_cdf(const std::vector<AccuracyRecord>& records, double epsilon,
                                 AccuracySource source) {
  auto values = gather(records, epsilon, source);
  std::vector<double> acc;
  acc.reserve(values.size());
  for (const auto& [rec, v] : values) acc.push_back(v);
  std::sort(acc.begin(), acc.end());
  std::vector<CdfRow> rows;
  double n = static_cast<double>(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) {
    if (i + 1 < acc.size() && acc[i + 1] == acc[i]) continue;
    rows.push_back({acc[i], static_cast<double>(i + 1) / n});
  }
  return rows;
}

void write_cdf_csv(const std::vector<CdfRow>& rows, std::ostream& out) {
  out << "threshold,fraction\n";
  for (const auto& row : rows) out << fmt(row.threshold) << "," << fmt(row.fraction) << "\n";
}

std::vector<DegreeRow> degree_accuracy_table(const std::vector<AccuracyRecord>& records,
                                             double epsilon, AccuracySource source) {
  auto values = gather(records, epsilon, source);
  std::map<std::uint64_t, DegreeRow> by_degree;
  for (const auto& [rec, v] : values) {
    DegreeRow& row = by_degree[rec->degree];
    row.degree = rec->degree;
    row.targets += 1;
    row.mean_accuracy += v;
    for (const auto& ea : rec->accuracies)
      if (ea.epsilon == epsilon) row.mean_bound += ea.bound;
  }
  std::vector<DegreeRow> rows;
  rows.reserve(by_degree.size());
  for (auto& [deg, row] : by_degree) {
    row.mean_accuracy /= static_cast<double>(row.targets);
    row.mean_bound /= static_cast<double>(row.targets);
    rows.push_back(row);
  }
  return rows;
}

void write_degree_csv(const std::vector<DegreeRow>& rows, std::ostream& out) {
  out << "degree,targets,mean_accuracy,mean_bound\n";
  for (const auto& row : rows)
    out << row.degree << "," << row.targets << "," << fmt(row.mean_accuracy) << ","
        << fmt(row.mean_bound) << "\n";
}

}  // namespace privrec
