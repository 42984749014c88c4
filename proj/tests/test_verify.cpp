#include <cmath>
#include <cstdlib>
#include <cstddef>
#include <vector>

#include "doctest.h"
#include "rropt/core.hpp"
#include "rropt/errors.hpp"
#include "rropt/information.hpp"
#include "rropt/mechanisms.hpp"
#include "rropt/privacy.hpp"
#include "rropt/rng.hpp"
#include "rropt/verify.hpp"
#include "testutil.hpp"

using namespace rropt;

namespace {

// Second pair whose rows are per-symbol rescalings mu(y) of the base rows,
// with mu chosen orthogonal to both rows so the rescaled rows still sum to
// one. Such pairs have vanishing per-symbol determinants against the base
// by construction.
MechanismPair parallel_partner(Rng& rng, const MechanismPair& base) {
  const std::size_t m = base.size();
  std::vector<double> dir(m);
  double g00 = 0.0, g01 = 0.0, g11 = 0.0, r0 = 0.0, r1 = 0.0;
  for (std::size_t y = 0; y < m; ++y) {
    dir[y] = rng.uniform(-1.0, 1.0);
    g00 += base.p0[y] * base.p0[y];
    g01 += base.p0[y] * base.p1[y];
    g11 += base.p1[y] * base.p1[y];
    r0 += dir[y] * base.p0[y];
    r1 += dir[y] * base.p1[y];
  }
  const double gram = g00 * g11 - g01 * g01;
  const double alpha = (r0 * g11 - r1 * g01) / gram;
  const double beta = (g00 * r1 - g01 * r0) / gram;
  double dmax = 0.0;
  for (std::size_t y = 0; y < m; ++y) {
    dir[y] -= alpha * base.p0[y] + beta * base.p1[y];
    dmax = std::max(dmax, std::abs(dir[y]));
  }
  if (dmax < 0.05) return base;  // degenerate draw, identical pair still works
  const double scale = 0.5 / dmax;
  std::vector<double> q0(m), q1(m);
  for (std::size_t y = 0; y < m; ++y) {
    const double mu = 1.0 + scale * dir[y];
    q0[y] = mu * base.p0[y];
    q1[y] = mu * base.p1[y];
  }
  return MechanismPair(make_distribution(q0), make_distribution(q1));
}

// Base pair whose rows are comfortably non-parallel.
MechanismPair solid_base(Rng& rng, std::size_t m) {
  for (;;) {
    const MechanismPair pair = testutil::random_pair(rng, m);
    double g00 = 0.0, g01 = 0.0, g11 = 0.0;
    for (std::size_t y = 0; y < m; ++y) {
      g00 += pair.p0[y] * pair.p0[y];
      g01 += pair.p0[y] * pair.p1[y];
      g11 += pair.p1[y] * pair.p1[y];
    }
    if (g00 * g11 - g01 * g01 >= 0.01) return pair;
  }
}

double max_abs_det(const MechanismPair& a, const MechanismPair& b) {
  double out = 0.0;
  for (std::size_t y = 0; y < a.size(); ++y) {
    out = std::max(out, std::abs(a.p1[y] * b.p0[y] - a.p0[y] * b.p1[y]));
  }
  return out;
}

void check_same_report(const SearchReport& a, const SearchReport& b) {
  CHECK(a.best_value == b.best_value);
  CHECK(a.candidates_examined == b.candidates_examined);
  CHECK(a.random_accepted == b.random_accepted);
  CHECK(a.random_attempts == b.random_attempts);
  REQUIRE(a.best_pair.size() == b.best_pair.size());
  for (std::size_t y = 0; y < a.best_pair.size(); ++y) {
    CHECK(a.best_pair.p0[y] == b.best_pair.p0[y]);
    CHECK(a.best_pair.p1[y] == b.best_pair.p1[y]);
  }
}

}  // namespace

TEST_SUITE("verify") {

TEST_CASE("objective summands match the divergence evaluators") {
  Rng rng(51);
  for (int i = 0; i < 60; ++i) {
    const MechanismPair pair = testutil::random_pair(rng, 2 + rng.below(4));
    const double theta = testutil::random_interior_theta(rng);
    CHECK(std::abs(evaluate_psi_sum(fisher_objective(theta), pair) -
                   fisher_information(pair, theta)) <= 1e-13);

    const double t1 = testutil::random_interior_theta(rng);
    const double t2 = testutil::random_interior_theta(rng);
    CHECK(std::abs(evaluate_psi_sum(f_divergence_objective(t1, t2, kl_generator()),
                                    pair) -
                   f_divergence(pair, t1, t2, kl_generator())) <= 1e-13);
    CHECK(std::abs(
              evaluate_psi_sum(f_divergence_objective(t1, t2, renyi_generator(0.5)),
                               pair) -
              f_divergence(pair, t1, t2, renyi_generator(0.5))) <= 1e-13);
  }

  // boundary conventions of the summands themselves
  const auto fisher = fisher_objective(0.4);
  CHECK(fisher.psi(0.0, 0.0) == 0.0);
  CHECK(fisher.psi(0.0, 0.5) == doctest::Approx(0.25 / (0.4 * 0.5)));
  const auto kl = f_divergence_objective(0.3, 0.7, kl_generator());
  CHECK(kl.psi(0.0, 0.0) == 0.0);

  CHECK_THROWS_AS(fisher_objective(0.0), ThetaOnBoundary);
  CHECK_THROWS_AS(f_divergence_objective(0.3, 1.0, kl_generator()),
                  ThetaOnBoundary);
}

TEST_CASE("sublinear_check accepts the theorem objectives") {
  CHECK(sublinear_check(fisher_objective(0.3), 500, 1));
  CHECK(sublinear_check(fisher_objective(0.71), 500, 2));
  CHECK(sublinear_check(f_divergence_objective(0.3, 0.7, kl_generator()), 500, 3));
  CHECK(sublinear_check(f_divergence_objective(0.2, 0.6, renyi_generator(0.5)),
                        500, 4));
  CHECK(sublinear_check(f_divergence_objective(0.2, 0.6, renyi_generator(-0.5)),
                        500, 5));
  CHECK(sublinear_check(
      SublinearObjective{[](double x, double y) { return std::abs(x - y); },
                         "total-variation summand"},
      500, 6));
  CHECK_THROWS_AS(sublinear_check(fisher_objective(0.3), 0, 1), Error);
}

TEST_CASE("sublinear_check rejects non-sublinear summands") {
  // degree-two homogeneity
  CHECK_FALSE(sublinear_check(
      SublinearObjective{[](double x, double y) { return (x - y) * (x - y); },
                         "squared difference"},
      500, 7));
  // homogeneous but superadditive
  CHECK_FALSE(sublinear_check(
      SublinearObjective{[](double x, double y) { return std::sqrt(x * y); },
                         "geometric mean"},
      500, 8));
}

TEST_CASE("convex_midpoint_check") {
  CHECK(convex_midpoint_check(kl_generator(), 500, 9));
  CHECK(convex_midpoint_check(renyi_generator(2.0), 500, 10));
  CHECK(convex_midpoint_check(renyi_generator(-0.5), 500, 11));
  CHECK_FALSE(convex_midpoint_check(
      ConvexGenerator{[](double x) { return std::sqrt(x); }, 0.0, 0.0, "sqrt"},
      500, 12));
  CHECK_THROWS_AS(convex_midpoint_check(kl_generator(), 0, 9), Error);
}

TEST_CASE("extreme point enumeration") {
  const PrivacyBudget budget(0.25, 0.4);
  const auto three = extreme_point_candidates(budget, 3, 20);
  CHECK(three.size() == 20 * 20 + 2 * 20);
  const auto two = extreme_point_candidates(budget, 2, 20);
  CHECK(two.size() == 2 * 20);

  for (const MechanismPair& pair : three) CHECK(satisfies_constraint(pair, budget));
  for (const MechanismPair& pair : two) CHECK(satisfies_constraint(pair, budget));

  // the known optimizer sits at the corner of the grid
  const MechanismPair opt = optimal_three_symbol(budget);
  bool found = false;
  for (const MechanismPair& pair : three) {
    double diff = 0.0;
    for (std::size_t y = 0; y < 3; ++y) {
      diff = std::max({diff, std::abs(pair.p0[y] - opt.p0[y]),
                       std::abs(pair.p1[y] - opt.p1[y])});
    }
    if (diff <= 1e-15) found = true;
  }
  CHECK(found);

  // and the binary families start at the two-symbol optimizers
  const MechanismPair low = optimal_two_symbol(budget, budget.theta0());
  CHECK(two[0].p0[0] == 1.0);
  CHECK(std::abs(two[0].p1[0] - low.p1[0]) <= 1e-15);
  CHECK(std::abs(two[0].p1[1] - low.p1[1]) <= 1e-15);

  CHECK_THROWS_AS(extreme_point_candidates(budget, 4, 20), Error);
  CHECK_THROWS_AS(extreme_point_candidates(budget, 1, 20), Error);
  CHECK_THROWS_AS(extreme_point_candidates(budget, 3, 1), Error);
}

TEST_CASE("brute force search certifies the fisher optimum") {
  const PrivacyBudget budget(0.25, 0.5);
  const SearchReport report = brute_force_max(
      budget, fisher_objective(0.5), max_fisher(budget, 0.5, 3), 3, 60, 20000, 9);
  CHECK(report.closed_form_value == 1.0);
  CHECK(std::abs(report.gap) <= 1e-9);
  CHECK(report.gap == report.closed_form_value - report.best_value);
  CHECK(report.random_attempts == 20000);
  CHECK(report.random_accepted > 0);
  CHECK(report.random_accepted < 20000);
  CHECK(report.candidates_examined == 60 * 60 + 2 * 60 + report.random_accepted);
  CHECK(std::abs(fisher_information(report.best_pair, 0.5) - 1.0) <= 1e-12);
}

TEST_CASE("brute force search is deterministic across thread budgets") {
  const PrivacyBudget budget(0.3, 0.45);
  const auto run = [&]() {
    return brute_force_max(budget, fisher_objective(0.35),
                           max_fisher(budget, 0.35, 3), 3, 50, 30000, 77);
  };
  const SearchReport base = run();
  check_same_report(base, run());

  setenv("RR_OPT_THREADS", "1", 1);
  const SearchReport serial = run();
  setenv("RR_OPT_THREADS", "7", 1);
  const SearchReport parallel = run();
  unsetenv("RR_OPT_THREADS");
  check_same_report(base, serial);
  check_same_report(base, parallel);
}

TEST_CASE("brute force search across objectives and budgets") {
  Rng rng(52);
  for (int i = 0; i < 8; ++i) {
    const PrivacyBudget budget = testutil::random_budget(rng);
    const double theta = testutil::random_interior_theta(rng);
    const SearchReport fisher =
        brute_force_max(budget, fisher_objective(theta),
                        max_fisher(budget, theta, 3), 3, 40, 3000, 100 + i);
    CHECK(std::abs(fisher.gap) <= 1e-9);

    const SearchReport binary =
        brute_force_max(budget, fisher_objective(theta),
                        max_fisher(budget, theta, 2), 2, 200, 10000, 200 + i);
    CHECK(std::abs(binary.gap) <= 1e-9);

    const SearchReport kl = brute_force_max(
        budget, f_divergence_objective(0.3, 0.7, kl_generator()),
        max_f_divergence(budget, 0.3, 0.7, kl_generator()), 3, 40, 3000, 300 + i);
    CHECK(std::abs(kl.gap) <= 1e-9);
  }

  // nearly unconstrained budget
  const PrivacyBudget loose(0.999, 0.5);
  const SearchReport wide = brute_force_max(
      loose, fisher_objective(0.5), max_fisher(loose, 0.5, 3), 3, 60, 5000, 53);
  CHECK(std::abs(wide.gap) <= 1e-9);
  CHECK(wide.best_value == doctest::Approx(4.0 * 0.999).epsilon(1e-9));

  CHECK_THROWS_AS(brute_force_max(loose, fisher_objective(0.5), 1.0, 3, 40, -1, 1),
                  Error);
  CHECK_THROWS_AS(brute_force_max(loose, fisher_objective(0.5), 1.0, 5, 40, 10, 1),
                  Error);
}

TEST_CASE("convexity equality holds exactly for parallel pairs") {
  Rng rng(54);
  for (int i = 0; i < 40; ++i) {
    const std::size_t m = 3 + rng.below(3);
    const MechanismPair base = solid_base(rng, m);
    const MechanismPair partner = parallel_partner(rng, base);
    const auto [j_equal, det_zero] = convexity_equality_holds(
        base, partner, testutil::random_interior_theta(rng),
        rng.uniform(0.1, 0.9));
    CHECK(j_equal);
    CHECK(det_zero);
  }

  // a pair mixed with itself is trivially parallel
  const MechanismPair self = optimal_three_symbol(PrivacyBudget(0.25, 0.5));
  const auto [j_equal, det_zero] = convexity_equality_holds(self, self, 0.4, 0.3);
  CHECK(j_equal);
  CHECK(det_zero);
}

TEST_CASE("convexity is strict for pairs with a nonvanishing determinant") {
  Rng rng(55);
  int tested = 0;
  while (tested < 40) {
    const std::size_t m = 2 + rng.below(4);
    const MechanismPair first = testutil::random_pair(rng, m);
    const MechanismPair second = testutil::random_pair(rng, m);
    if (max_abs_det(first, second) < 1e-3) continue;
    ++tested;
    const auto [j_equal, det_zero] = convexity_equality_holds(
        first, second, testutil::random_interior_theta(rng),
        rng.uniform(0.1, 0.9));
    CHECK_FALSE(j_equal);
    CHECK_FALSE(det_zero);
  }
}

TEST_CASE("convexity check input validation") {
  const MechanismPair pair = optimal_three_symbol(PrivacyBudget(0.25, 0.5));
  const MechanismPair binary(make_distribution({1.0, 0.0}),
                             make_distribution({0.75, 0.25}));
  CHECK_THROWS_AS(convexity_equality_holds(pair, binary, 0.4, 0.3), Error);
  CHECK_THROWS_AS(convexity_equality_holds(pair, pair, 0.4, 0.0), Error);
  CHECK_THROWS_AS(convexity_equality_holds(pair, pair, 0.4, 1.0), Error);
  CHECK_THROWS_AS(convexity_equality_holds(pair, pair, 0.0, 0.5), ThetaOnBoundary);
}

}  // TEST_SUITE
