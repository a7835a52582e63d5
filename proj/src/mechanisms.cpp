#include "privrec/mechanisms.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace privrec {

void PrivacyParams::validate() const {
  if (!(epsilon > 0.0)) throw std::domain_error("epsilon must be positive");
  if (!(delta_f > 0.0)) throw std::domain_error("delta_f must be positive");
}

double RecommendationDistribution::prob_of(NodeId id) const {
  auto it = std::lower_bound(candidates.begin(), candidates.end(), id);
  if (it == candidates.end() || *it != id)
    throw std::out_of_range("node " + std::to_string(id) + " is not a candidate");
  return probs[static_cast<std::size_t>(it - candidates.begin())];
}

namespace {

void require_nonempty(const UtilityVector& u) {
  if (u.candidates.empty()) throw std::invalid_argument("no candidates to recommend");
}

}  // namespace

RecommendationDistribution best_recommendation(const UtilityVector& u) {
  require_nonempty(u);
  std::size_t best = 0;
  for (std::size_t i = 1; i < u.values.size(); ++i)
    if (u.values[i] > u.values[best]) best = i;  // ties keep the lowest id
  RecommendationDistribution d;
  d.candidates = u.candidates;
  d.probs.assign(u.candidates.size(), 0.0);
  d.probs[best] = 1.0;
  return d;
}

RecommendationDistribution exponential_distribution(const UtilityVector& u,
                                                    const PrivacyParams& p) {
  require_nonempty(u);
  p.validate();
  double scale = p.epsilon / p.delta_f;
  RecommendationDistribution d;
  d.candidates = u.candidates;
  d.probs.reserve(u.values.size());
  double sum = 0.0;
  for (double v : u.values) {
    // shifting by u_max keeps every exponent <= 0 so the sum cannot overflow
    double w = std::exp(scale * (v - u.u_max));
    d.probs.push_back(w);
    sum += w;
  }
  for (double& w : d.probs) w /= sum;
  return d;
}

namespace {

// Inverse CDF of Laplace(b) centered at 0, q in (0, 1).
double laplace_inverse_cdf(double q, double b) {
  return q < 0.5 ? b * std::log(2.0 * q) : -b * std::log(2.0 * (1.0 - q));
}

// CDF of Laplace(b) centered at 0.
double laplace_cdf(double x, double b) {
  return x < 0.0 ? 0.5 * std::exp(x / b) : 1.0 - 0.5 * std::exp(-x / b);
}

}  // namespace

NodeId laplace_sample(const UtilityVector& u, const PrivacyParams& p, Rng& rng) {
  require_nonempty(u);
  p.validate();
  double b = p.delta_f / p.epsilon;
  std::size_t best = 0;
  double best_val = 0.0;
  for (std::size_t i = 0; i < u.values.size(); ++i) {
    double noised = u.values[i] + laplace_inverse_cdf(rng.uniform01(), b);
    if (i == 0 || noised > best_val) {
      best = i;
      best_val = noised;
    }
  }
  return u.candidates[best];
}

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double eps, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * eps) return left + right + delta / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
}

}  // namespace

RecommendationDistribution laplace_distribution(const UtilityVector& u, const PrivacyParams& p,
                                                double tol) {
  require_nonempty(u);
  p.validate();
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  if (u.size() > 64) throw std::length_error("laplace_distribution supports at most 64 candidates");

  const double b = p.delta_f / p.epsilon;
  const std::size_t n = u.size();

  // Win probability of candidate i: integral over its noised value z of
  // pdf(z - u_i) * prod_{j != i} cdf(z - u_j). Exact ties have probability 0,
  // so the id tie-break never contributes mass.
  auto win_density = [&](std::size_t i, double z) {
    double pdf = std::exp(-std::abs(z - u.values[i]) / b) / (2.0 * b);
    double prod = pdf;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      prod *= laplace_cdf(z - u.values[j], b);
    }
    return prod;
  };

  // Integration window wide enough that every pdf keeps all but ~tail of its
  // mass inside; kinks of the integrand sit at the utility values.
  double lo_u = *std::min_element(u.values.begin(), u.values.end());
  double tail = tol / (4.0 * static_cast<double>(n)) * 1e-2;
  double window = b * std::log(1.0 / tail);
  double lo = lo_u - window;
  double hi = u.u_max + window;

  std::vector<double> breaks = u.values;
  breaks.push_back(lo);
  breaks.push_back(hi);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  RecommendationDistribution d;
  d.candidates = u.candidates;
  d.probs.assign(n, 0.0);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    std::function<double(double)> f = [&](double z) { return win_density(i, z); };
    double total = 0.0;
    for (std::size_t s = 0; s + 1 < breaks.size(); ++s) {
      double a = breaks[s], c = breaks[s + 1];
      if (c <= a) continue;
      double fa = f(a), fc = f(c), fm = f(0.5 * (a + c));
      double whole = (c - a) / 6.0 * (fa + 4.0 * fm + fc);
      total += adaptive_simpson(f, a, c, fa, fm, fc, whole,
                                tol / (static_cast<double>(breaks.size()) * 8.0), 40);
    }
    d.probs[i] = std::max(total, 0.0);
    sum += d.probs[i];
  }
  for (double& q : d.probs) q /= sum;
  return d;
}

double laplace_two_node_probability(double epsilon, double du) {
  if (!(epsilon > 0.0)) throw std::domain_error("epsilon must be positive");
  if (!(du >= 0.0)) throw std::domain_error("du must be nonnegative");
  double theta = epsilon * du;
  return 1.0 - 0.5 * std::exp(-theta) - theta / (4.0 * std::exp(theta));
}

RecommendationDistribution smoothing_distribution(const RecommendationDistribution& base,
                                                  double x) {
  if (base.candidates.empty()) throw std::invalid_argument("no candidates to recommend");
  if (!(x >= 0.0 && x < 1.0)) throw std::domain_error("x must be in [0, 1)");
  RecommendationDistribution d;
  d.candidates = base.candidates;
  double uniform = (1.0 - x) / static_cast<double>(base.size());
  d.probs.reserve(base.size());
  for (double q : base.probs) d.probs.push_back(uniform + x * q);
  return d;
}

double smoothing_epsilon(double x, std::size_t n) {
  if (!(x >= 0.0 && x < 1.0)) throw std::domain_error("x must be in [0, 1)");
  if (n == 0) throw std::invalid_argument("n must be positive");
  return std::log1p(static_cast<double>(n) * x / (1.0 - x));
}

double smoothing_x(double epsilon, std::size_t n) {
  if (!(epsilon >= 0.0)) throw std::domain_error("epsilon must be nonnegative");
  if (n == 0) throw std::invalid_argument("n must be positive");
  double g = std::expm1(epsilon);
  return g / (static_cast<double>(n) + g);
}

double expected_accuracy(const RecommendationDistribution& d, const UtilityVector& u) {
  if (d.candidates != u.candidates)
    throw std::invalid_argument("distribution and utility cover different candidates");
  if (!(u.u_max > 0.0)) throw std::domain_error("accuracy undefined when u_max is 0");
  double s = 0.0;
  for (std::size_t i = 0; i < d.probs.size(); ++i) s += d.probs[i] * u.values[i];
  return s / u.u_max;
}

double monte_carlo_accuracy(const UtilityVector& u, const PrivacyParams& p,
                            std::uint32_t trials) {
  require_nonempty(u);
  p.validate();
  if (trials == 0) throw std::invalid_argument("trials must be positive");
  if (!(u.u_max > 0.0)) throw std::domain_error("accuracy undefined when u_max is 0");
  double acc = 0.0;
  for (std::uint32_t k = 0; k < trials; ++k) {
    Rng rng = substream(p.seed, u.target, k);
    acc += u.value_of(laplace_sample(u, p, rng));
  }
  return acc / (u.u_max * static_cast<double>(trials));
}

}  // namespace privrec
