#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "privrec/graph.hpp"
#include "privrec/mechanisms.hpp"
#include "privrec/utility.hpp"

namespace privrec {

enum class MechanismKind { Exponential, Laplace, Smoothing };

struct AuditOptions {
  // Numerical tolerance for the laplace quadrature; the pass threshold
  // allows 3*tol of slack for that mechanism (the others get none).
  double tol = 1e-5;
  // Also try edits incident to the target. The mechanisms only promise
  // indistinguishability for edits elsewhere, so strict audits are expected
  // to fail: an incident edit changes the candidate set itself.
  bool strict_neighbors = false;
  // Smoothing mix weight; defaults to the x whose cost equals params.epsilon.
  std::optional<double> smoothing_x;
};

struct AuditReport {
  NodeId target = 0;
  double epsilon_claimed = 0.0;
  double max_log_ratio = 0.0;   // largest |ln p(i|G) - ln p(i|G')| seen
  std::size_t pairs_checked = 0;  // (edit, candidate) probability comparisons
  EdgeEdit witness_edit = add_edge(0, 0);
  NodeId witness_candidate = 0;
  bool passed = true;
};

// Exhaustively compares recommendation probabilities for the target across
// every single-edge edit of g (add or remove), checking the claimed privacy
// budget. Small graphs only: 20 nodes, 10 for laplace whose probabilities
// come from quadrature.
AuditReport audit_mechanism(const Graph& g, NodeId r, MechanismKind mech,
                            const UtilityConfig& cfg, const PrivacyParams& p,
                            const AuditOptions& opt = {});

// Fewest edge edits (none touching r) that make x the strict utility
// argmax for r, searching subsets breadth-first by size; nullopt when
// max_depth is not enough. Guards: at most 8 nodes, max_depth at most 5.
// Throws std::domain_error when r's utility is all-zero (skipped upstream)
// and std::invalid_argument when x is not a candidate.
std::optional<std::uint64_t> brute_force_t(const Graph& g, NodeId r, NodeId x,
                                           const UtilityConfig& cfg, int max_depth = 5);

// Largest L1 utility change over every (graph, target, non-incident edit)
// triple in the population. The empirical counterpart of sensitivity_bound.
double brute_force_sensitivity(const UtilityConfig& cfg, const std::vector<Graph>& population);

struct SensitivityViolation {
  std::size_t graph_index = 0;
  NodeId target = 0;
  EdgeEdit edit = add_edge(0, 0);
  double observed = 0.0;
  double bound = 0.0;
};

// First triple whose observed L1 change exceeds sensitivity_bound for that
// same instance, if any.
std::optional<SensitivityViolation> sensitivity_bound_violation(
    const UtilityConfig& cfg, const std::vector<Graph>& population);

// Every undirected graph on 2..max_nodes labeled nodes (max 6: the count
// doubles per extra node pair, 33866 graphs at 6).
std::vector<Graph> exhaustive_population(NodeId max_nodes);

// count independent G(nodes, edge_prob) draws, deterministic per seed.
std::vector<Graph> random_population(NodeId nodes, std::size_t count, double edge_prob,
                                     std::uint64_t seed);

// Weak connectivity (edge direction ignored).
bool is_connected(const Graph& g);

}  // namespace privrec
