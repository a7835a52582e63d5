#pragma once

#include <cstdint>
#include <vector>

#include "privrec/rng.hpp"
#include "privrec/utility.hpp"

namespace privrec {

struct PrivacyParams {
  double epsilon = 1.0;  // privacy budget, > 0
  double delta_f = 1.0;  // utility sensitivity, > 0
  std::uint64_t seed = 0;

  void validate() const;
};

// Probability of recommending each candidate; parallel to candidates,
// entries nonnegative and summing to 1 (up to rounding).
struct RecommendationDistribution {
  std::vector<NodeId> candidates;
  std::vector<double> probs;

  std::size_t size() const { return candidates.size(); }
  double prob_of(NodeId id) const;
};

// Point mass on the highest-utility candidate, lowest id on ties. The
// non-private baseline. Throws std::invalid_argument on an empty vector.
RecommendationDistribution best_recommendation(const UtilityVector& u);

// p_i proportional to exp(epsilon * u_i / delta_f).
RecommendationDistribution exponential_distribution(const UtilityVector& u,
                                                    const PrivacyParams& p);

// One noisy-argmax draw: adds Laplace(delta_f / epsilon) noise to every
// utility and returns the highest-noised candidate, lowest id on ties.
NodeId laplace_sample(const UtilityVector& u, const PrivacyParams& p, Rng& rng);

// Exact win probabilities of the noisy argmax, by piecewise quadrature.
// Each entry is accurate to tol. Guarded to at most 64 candidates.
RecommendationDistribution laplace_distribution(const UtilityVector& u, const PrivacyParams& p,
                                                double tol = 1e-9);

// Two-candidate closed form: the probability that the candidate ahead by
// du >= 0 wins the noisy argmax at noise scale 1/epsilon. With theta =
// epsilon * du this is 1 - exp(-theta)/2 - theta/(4*exp(theta)). Used to
// cross-check laplace_distribution.
double laplace_two_node_probability(double epsilon, double du);

// Mixes a base distribution with uniform: (1 - x)/n + x * p_i, 0 <= x < 1.
RecommendationDistribution smoothing_distribution(const RecommendationDistribution& base,
                                                  double x);
// Privacy cost of the mixture when the base may be arbitrary: ln(1 + n*x/(1-x)).
double smoothing_epsilon(double x, std::size_t n);
// Inverse: the x whose mixture over n candidates costs epsilon.
double smoothing_x(double epsilon, std::size_t n);

// sum_i u_i * p_i / u_max. Requires u_max > 0 and identical candidate sets.
double expected_accuracy(const RecommendationDistribution& d, const UtilityVector& u);

// Mean accuracy of `trials` independent laplace_sample draws, one substream
// per (seed, target, trial). Deterministic for a fixed seed.
double monte_carlo_accuracy(const UtilityVector& u, const PrivacyParams& p, std::uint32_t trials);

}  // namespace privrec
