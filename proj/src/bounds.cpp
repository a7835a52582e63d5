#include "privrec/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace privrec {

void BoundInputs::validate() const {
  if (n < 2) throw std::invalid_argument("need at least two candidates");
  if (k >= n) throw std::invalid_argument("k must be below n");
  if (!(c > 0.0 && c <= 1.0)) throw std::domain_error("c must be in (0, 1]");
  if (t == 0) throw std::invalid_argument("t must be positive");
  if (delta && !(*delta > 0.0)) throw std::domain_error("delta must be positive");
  if (epsilon && !(*epsilon >= 0.0)) throw std::domain_error("epsilon must be nonnegative");
}

std::optional<double> epsilon_lower_bound(const BoundInputs& in) {
  in.validate();
  if (!in.delta) throw std::invalid_argument("delta is required");
  if (!(*in.delta < in.c)) throw std::domain_error("delta must be below c");
  double nk = static_cast<double>(in.n - in.k);
  double value = (std::log((in.c - *in.delta) / *in.delta) +
                  std::log(nk / (static_cast<double>(in.k) + 1.0))) /
                 static_cast<double>(in.t);
  if (value <= 0.0) return std::nullopt;
  return value;
}

double accuracy_upper_bound(const BoundInputs& in) {
  in.validate();
  if (!in.epsilon) throw std::invalid_argument("epsilon is required");
  double nk = static_cast<double>(in.n - in.k);
  double growth = (static_cast<double>(in.k) + 1.0) *
                  std::exp(*in.epsilon * static_cast<double>(in.t));
  return 1.0 - in.c * nk / (nk + growth);
}

std::uint64_t t_formula(UtilityKind kind, double u_max, std::uint64_t degree) {
  if (!(u_max > 0.0)) throw std::domain_error("t undefined for all-zero utility");
  if (kind == UtilityKind::CommonNeighbors) {
    double rounded = std::round(u_max);
    if (std::abs(u_max - rounded) > 1e-9)
      throw std::invalid_argument("common-neighbors u_max must be an integer");
    auto m = static_cast<std::uint64_t>(rounded);
    return m + 1 + (m == degree ? 1 : 0);
  }
  return static_cast<std::uint64_t>(std::floor(u_max)) + 2;
}

double tightest_accuracy_bound(const UtilityVector& u, std::uint64_t t, double epsilon) {
  if (!(epsilon >= 0.0)) throw std::domain_error("epsilon must be nonnegative");
  if (t == 0) throw std::invalid_argument("t must be positive");
  if (!(u.u_max > 0.0)) throw std::domain_error("bound undefined for all-zero utility");
  std::uint64_t n = u.size();
  if (n < 2) return 1.0;

  // Thresholds theta = (1 - c)*u_max worth trying: every distinct utility
  // value below the max, plus the one induced by c = 1 - 1/ln(n).
  std::vector<double> thetas;
  for (double v : u.values)
    if (v < u.u_max) thetas.push_back(v);
  double log_n = std::log(static_cast<double>(n));
  if (log_n > 1.0) thetas.push_back(u.u_max / log_n);
  std::sort(thetas.begin(), thetas.end());
  thetas.erase(std::unique(thetas.begin(), thetas.end()), thetas.end());

  double best = 1.0;
  for (double theta : thetas) {
    double c = 1.0 - theta / u.u_max;
    if (!(c > 0.0 && c <= 1.0)) continue;
    std::uint64_t k = 0;
    for (double v : u.values)
      if (v > theta) ++k;
    if (k == 0 || k >= n) continue;
    BoundInputs in{n, k, c, t, std::nullopt, epsilon};
    best = std::min(best, accuracy_upper_bound(in));
  }
  return best;
}

std::optional<double> asymptotic_epsilon(AsymptoticMode mode, double n, double beta, double d,
                                         double s) {
  if (!(n >= 3.0)) throw std::invalid_argument("n must be at least 3");
  if (!(beta >= 1.0)) throw std::invalid_argument("beta must be at least 1");
  if (!(d >= 1.0)) throw std::invalid_argument("d must be at least 1");
  double numer = std::log(n) - std::log(beta) - std::log(std::log(n));
  double budget = 0.0;
  switch (mode) {
    case AsymptoticMode::General:
      budget = d;
      break;
    case AsymptoticMode::MaxDegree:
      budget = 4.0 * d;
      break;
    case AsymptoticMode::TargetDegree:
      budget = d + 2.0;
      break;
    case AsymptoticMode::Concentrated: {
      if (!(s > 0.0 && s < 1.0))
        throw std::domain_error("s must be in (0, 1)");
      // roots of s*c^2 + (3s - 1)*c + 1 = 0; need the smallest one above 1
      double disc = (3.0 * s - 1.0) * (3.0 * s - 1.0) - 4.0 * s;
      if (disc < 0.0) return std::nullopt;
      double sq = std::sqrt(disc);
      double c1 = ((1.0 - 3.0 * s) - sq) / (2.0 * s);
      double c2 = ((1.0 - 3.0 * s) + sq) / (2.0 * s);
      double c = 0.0;
      if (c1 > 1.0)
        c = c1;
      else if (c2 > 1.0)
        c = c2;
      else
        return std::nullopt;
      budget = (2.0 * c - 1.0) * d;
      break;
    }
  }
  double value = numer / budget;
  if (value <= 0.0) return std::nullopt;
  return value;
}

}  // namespace privrec
