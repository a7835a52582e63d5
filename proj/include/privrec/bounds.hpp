#pragma once

#include <cstdint>
#include <optional>

#include "privrec/utility.hpp"

namespace privrec {

// Inputs shared by the privacy/accuracy trade-off calculators. n is the
// candidate count, k how many candidates score above the (1-c)*u_max line,
// t the edit distance that lifts some low scorer to the strict top, c the
// accuracy margin in (0, 1]. delta or epsilon is required depending on the
// direction being computed.
struct BoundInputs {
  std::uint64_t n = 0;
  std::uint64_t k = 0;
  double c = 0.0;
  std::uint64_t t = 1;
  std::optional<double> delta;
  std::optional<double> epsilon;

  void validate() const;
};

// Smallest privacy cost any mechanism with accuracy >= 1 - delta must pay:
// (ln((c - delta)/delta) + ln((n - k)/(k + 1))) / t. Requires delta < c.
// nullopt when the value is nonpositive, i.e. the inputs constrain nothing.
std::optional<double> epsilon_lower_bound(const BoundInputs& in);

// Best accuracy any epsilon-private mechanism can reach for these inputs:
// 1 - c*(n - k) / (n - k + (k + 1)*exp(epsilon * t)).
double accuracy_upper_bound(const BoundInputs& in);

// Edits that suffice to make a worst-case candidate the strict argmax.
// Common neighbors: u_max + 1, plus 1 more when u_max equals the target's
// degree. Weighted paths: floor(u_max) + 2. u_max must be positive (targets
// with all-zero utility are skipped upstream); common-neighbors u_max must
// be integral.
std::uint64_t t_formula(UtilityKind kind, double u_max, std::uint64_t degree);

// Minimum of accuracy_upper_bound over the (c, k) pairs induced by the
// distinct utility values and by c = 1 - 1/ln(n). Instances where no pair is
// admissible (say, all utilities equal) return 1: no constraint.
double tightest_accuracy_bound(const UtilityVector& u, std::uint64_t t, double epsilon);

// Large-n shorthand (ln n - ln beta - ln ln n) / T for the per-setting edit
// budgets T below. Advisory calculators: nullopt means no constraint.
enum class AsymptoticMode {
  General,        // T = d: any graph, beta-concentrated utility
  MaxDegree,      // T = 4*d, d = maximum degree
  TargetDegree,   // T = d + 2, d = the target's degree
  Concentrated,   // T = (2c - 1)*d with c from s*c^2 + (3s - 1)*c + 1 = 0
};
std::optional<double> asymptotic_epsilon(AsymptoticMode mode, double n, double beta, double d,
                                         double s = 0.0);

}  // namespace privrec
