#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "privrec/bounds.hpp"
#include "privrec/rng.hpp"
#include "privrec/utility.hpp"

using namespace privrec;
using doctest::Approx;

namespace {

using Entries = std::vector<std::pair<NodeId, double>>;

UtilityVector vec(Entries entries) { return UtilityVector::from_entries(100, std::move(entries)); }

BoundInputs with_epsilon(std::uint64_t n, std::uint64_t k, double c, std::uint64_t t, double eps) {
  return BoundInputs{n, k, c, t, std::nullopt, eps};
}

BoundInputs with_delta(std::uint64_t n, std::uint64_t k, double c, std::uint64_t t, double delta) {
  return BoundInputs{n, k, c, t, delta, std::nullopt};
}

// Naive re-evaluation of the threshold sweep, kept deliberately simple.
double tightest_oracle(const UtilityVector& u, std::uint64_t t, double eps) {
  std::set<double> thresholds;
  for (double v : u.values)
    if (v < u.u_max) thresholds.insert(v);
  double n = static_cast<double>(u.size());
  if (std::log(n) > 1.0) thresholds.insert(u.u_max / std::log(n));
  double best = 1.0;
  for (double theta : thresholds) {
    std::uint64_t k = 0;
    for (double v : u.values)
      if (v > theta) ++k;
    if (k == 0 || k >= u.size()) continue;
    double c = 1.0 - theta / u.u_max;
    if (!(c > 0.0 && c <= 1.0)) continue;
    best = std::min(best, accuracy_upper_bound(with_epsilon(u.size(), k, c, t, eps)));
  }
  return best;
}

}  // namespace

TEST_SUITE("bounds") {

TEST_CASE("the flagship accuracy ceiling") {
  double v = accuracy_upper_bound(with_epsilon(400000000, 100, 0.99, 150, 0.1));
  CHECK(v == Approx(0.457661166612810).epsilon(1e-12));
  CHECK(std::abs(v - 0.46) < 0.005);
}

TEST_CASE("degenerate ceilings") {
  // No privacy spent, everything in the low group: 1/(n+1).
  CHECK(accuracy_upper_bound(with_epsilon(10, 0, 1.0, 1, 0.0)) == Approx(1.0 / 11).epsilon(1e-14));
  // A huge budget is no constraint at all, and must not overflow.
  CHECK(accuracy_upper_bound(with_epsilon(1000, 10, 0.9, 150, 100.0)) == 1.0);
}

TEST_CASE("the ceiling moves the right way in every input") {
  double base = accuracy_upper_bound(with_epsilon(1000, 5, 0.9, 10, 0.5));
  CHECK(accuracy_upper_bound(with_epsilon(1000, 5, 0.9, 10, 1.0)) >= base);
  CHECK(accuracy_upper_bound(with_epsilon(1000, 5, 0.9, 20, 0.5)) >= base);
  CHECK(accuracy_upper_bound(with_epsilon(2000, 5, 0.9, 10, 0.5)) <= base);
}

TEST_CASE("the budget floor on a worked example") {
  auto v = epsilon_lower_bound(with_delta(400000000, 100, 0.99, 150, 0.54));
  REQUIRE(v.has_value());
  CHECK(*v == Approx(0.100063551876247).epsilon(1e-12));
}

TEST_CASE("vacuous budget floors report no constraint") {
  // Zero numerator: c - delta = delta and k + 1 = n - k.
  CHECK(!epsilon_lower_bound(with_delta(3, 1, 0.5, 1, 0.25)).has_value());
  // Negative log terms dominate.
  CHECK(!epsilon_lower_bound(with_delta(3, 1, 0.9, 1, 0.60)).has_value());
  CHECK_THROWS_AS(epsilon_lower_bound(with_delta(100, 5, 0.5, 3, 0.7)), std::domain_error);
  CHECK_THROWS_AS(epsilon_lower_bound(with_epsilon(100, 5, 0.5, 3, 1.0)), std::invalid_argument);
}

TEST_CASE("the two directions are the same identity") {
  Rng rng(314);
  int verified = 0;
  for (int rep = 0; rep < 400; ++rep) {
    std::uint64_t n = 50 + rng.below(5000);
    std::uint64_t k = rng.below(n / 4);
    double c = 0.3 + 0.7 * rng.uniform01();
    std::uint64_t t = 1 + rng.below(30);
    double eps = 0.05 + 2.0 * rng.uniform01();
    // Skip instances where 1 - ceiling or c - delta cancels away most of the
    // mantissa; the identity is exact but the round trip through a tiny
    // delta is not representable.
    double rho = static_cast<double>(k + 1) * std::exp(eps * static_cast<double>(t)) /
                 static_cast<double>(n - k);
    if (rho < 1e-3 || rho > 1e4) continue;
    double ceiling = accuracy_upper_bound(with_epsilon(n, k, c, t, eps));
    double delta = 1.0 - ceiling;
    if (!(delta > 0.0 && delta < c)) continue;
    auto floor = epsilon_lower_bound(with_delta(n, k, c, t, delta));
    REQUIRE(floor.has_value());
    CHECK(*floor == Approx(eps).epsilon(1e-9));
    ++verified;
  }
  CHECK(verified >= 100);
}

TEST_CASE("invalid trade-off inputs are rejected") {
  CHECK_THROWS_AS(accuracy_upper_bound(with_epsilon(10, 10, 0.9, 1, 1.0)), std::invalid_argument);
  CHECK_THROWS_AS(accuracy_upper_bound(with_epsilon(10, 2, 0.0, 1, 1.0)), std::domain_error);
  CHECK_THROWS_AS(accuracy_upper_bound(with_epsilon(10, 2, 1.1, 1, 1.0)), std::domain_error);
  CHECK_THROWS_AS(accuracy_upper_bound(with_epsilon(10, 2, 0.9, 0, 1.0)), std::invalid_argument);
  CHECK_THROWS_AS(accuracy_upper_bound(with_epsilon(10, 2, 0.9, 1, -0.5)), std::domain_error);
  CHECK_THROWS_AS(accuracy_upper_bound(with_epsilon(1, 0, 0.9, 1, 1.0)), std::invalid_argument);
}

TEST_CASE("edit-budget formula by utility kind") {
  CHECK(t_formula(UtilityKind::CommonNeighbors, 2.0, 3) == 3);
  CHECK(t_formula(UtilityKind::CommonNeighbors, 2.0, 2) == 4);  // top score ties the degree
  CHECK(t_formula(UtilityKind::CommonNeighbors, 1.0, 1) == 3);
  CHECK(t_formula(UtilityKind::WeightedPaths, 2.5, 7) == 4);
  CHECK(t_formula(UtilityKind::WeightedPaths, 2.0, 7) == 4);
  CHECK_THROWS_AS(t_formula(UtilityKind::CommonNeighbors, 0.0, 3), std::domain_error);
  CHECK_THROWS_AS(t_formula(UtilityKind::CommonNeighbors, 2.5, 3), std::invalid_argument);
}

TEST_CASE("threshold sweep beats no single choice") {
  UtilityVector u = vec({{1, 5.0}, {2, 0.0}, {3, 0.0}, {4, 0.0}});
  double four = tightest_accuracy_bound(u, 3, 1.0);
  CHECK(four < 1.0);
  UtilityVector wider = vec({{1, 5.0}, {2, 0.0}, {3, 0.0}, {4, 0.0}, {5, 0.0}, {6, 0.0}});
  CHECK(tightest_accuracy_bound(wider, 3, 1.0) < four);
}

TEST_CASE("flat scores leave the ceiling unconstrained") {
  UtilityVector u = vec({{1, 2.0}, {2, 2.0}, {3, 2.0}});
  CHECK(tightest_accuracy_bound(u, 3, 1.0) == 1.0);
}

TEST_CASE("the swept ceiling grows with the budget") {
  UtilityVector u = vec({{1, 4.0}, {2, 2.0}, {3, 1.0}, {4, 0.0}});
  double lo = tightest_accuracy_bound(u, 3, 0.5);
  double mid = tightest_accuracy_bound(u, 3, 1.0);
  double hi = tightest_accuracy_bound(u, 3, 3.0);
  CHECK(lo <= mid);
  CHECK(mid <= hi);
}

TEST_CASE("the swept ceiling matches a naive reimplementation") {
  Rng rng(2718);
  for (int rep = 0; rep < 200; ++rep) {
    std::size_t n = 2 + rng.below(12);
    Entries entries;
    for (std::size_t i = 0; i < n; ++i)
      entries.emplace_back(static_cast<NodeId>(i), static_cast<double>(rng.below(5)));
    entries[rng.below(n)].second += 1.0;
    UtilityVector u = vec(std::move(entries));
    std::uint64_t t = 1 + rng.below(6);
    double eps = 0.2 + 2.0 * rng.uniform01();
    CHECK(tightest_accuracy_bound(u, t, eps) == Approx(tightest_oracle(u, t, eps)).epsilon(1e-12));
  }
}

TEST_CASE("ceiling sweep rejects degenerate inputs") {
  UtilityVector zero = vec({{1, 0.0}, {2, 0.0}});
  CHECK_THROWS_AS(tightest_accuracy_bound(zero, 3, 1.0), std::domain_error);
  UtilityVector u = vec({{1, 1.0}, {2, 0.0}});
  CHECK_THROWS_AS(tightest_accuracy_bound(u, 0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(tightest_accuracy_bound(u, 3, -1.0), std::domain_error);
}

TEST_CASE("large-graph budget shorthand at its anchors") {
  auto general = asymptotic_epsilon(AsymptoticMode::General, 1e6, 10, 20);
  REQUIRE(general.has_value());
  CHECK(*general == Approx(0.444356677524711).epsilon(1e-12));
  auto small = asymptotic_epsilon(AsymptoticMode::General, 1000, 1, 10);
  REQUIRE(small.has_value());
  CHECK(*small == Approx(0.497511054506607).epsilon(1e-12));
}

TEST_CASE("degree-driven variants rescale the same numerator") {
  Rng rng(77);
  for (int rep = 0; rep < 50; ++rep) {
    double n = 100 + rng.below(100000);
    double beta = 1 + rng.below(20);
    double d = 1 + rng.below(50);
    auto general = asymptotic_epsilon(AsymptoticMode::General, n, beta, d + 2);
    auto target = asymptotic_epsilon(AsymptoticMode::TargetDegree, n, beta, d);
    CHECK(general.has_value() == target.has_value());
    if (general) CHECK(*general == Approx(*target).epsilon(1e-13));
    auto quarter = asymptotic_epsilon(AsymptoticMode::MaxDegree, n, beta, d);
    auto straight = asymptotic_epsilon(AsymptoticMode::General, n, beta, d);
    if (quarter && straight) CHECK(*straight == Approx(*quarter * 4.0).epsilon(1e-13));
  }
}

TEST_CASE("concentrated variant solves its quadratic") {
  // s = 0.1: roots 2 and 5, smallest root above 1 is 2, so the divisor
  // is (2*2 - 1)*d = 3d.
  auto v = asymptotic_epsilon(AsymptoticMode::Concentrated, 1000, 1, 10, 0.1);
  REQUIRE(v.has_value());
  CHECK(*v == Approx(0.165837018168869).epsilon(1e-12));
  double c = 2.0;
  double s = 0.1;
  CHECK(c - 1.0 == Approx((c + 1.0) * (c + 1.0) * s / (1.0 - s)).epsilon(1e-12));
  // s = 0.2: the discriminant goes negative, no admissible root.
  CHECK(!asymptotic_epsilon(AsymptoticMode::Concentrated, 1000, 1, 10, 0.2).has_value());
}

TEST_CASE("nonpositive numerators report no constraint") {
  CHECK(!asymptotic_epsilon(AsymptoticMode::General, 3, 3, 5).has_value());
}

TEST_CASE("shorthand guards its domain") {
  CHECK_THROWS_AS(asymptotic_epsilon(AsymptoticMode::General, 2, 1, 5), std::invalid_argument);
  CHECK_THROWS_AS(asymptotic_epsilon(AsymptoticMode::General, 100, 0.5, 5),
                  std::invalid_argument);
  CHECK_THROWS_AS(asymptotic_epsilon(AsymptoticMode::General, 100, 1, 0.5),
                  std::invalid_argument);
  CHECK_THROWS_AS(asymptotic_epsilon(AsymptoticMode::Concentrated, 100, 1, 5, 0.0),
                  std::domain_error);
  CHECK_THROWS_AS(asymptotic_epsilon(AsymptoticMode::Concentrated, 100, 1, 5, 1.5),
                  std::domain_error);
}

}  // TEST_SUITE
