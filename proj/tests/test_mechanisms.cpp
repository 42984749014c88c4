#include <cmath>
#include <cstddef>
#include <vector>

#include "doctest.h"
#include "rropt/core.hpp"
#include "rropt/errors.hpp"
#include "rropt/information.hpp"
#include "rropt/mechanisms.hpp"
#include "rropt/privacy.hpp"
#include "rropt/rng.hpp"
#include "testutil.hpp"

using namespace rropt;

namespace {

void check_entries(const ProbabilityVector& v, const std::vector<double>& want,
                   double tol = 1e-15) {
  REQUIRE(v.size() == want.size());
  for (std::size_t y = 0; y < want.size(); ++y) {
    CHECK(std::abs(v[y] - want[y]) <= tol);
  }
}

// Random valid family parameters over m in {3,4,5}: breakpoints drawn
// strictly increasing, per-block scalings bounded away from 0.
OptimalFamilyParams random_family_params(Rng& rng, std::size_t m) {
  OptimalFamilyParams params;
  // choose 1 <= r1 < r2 < r3 <= m
  params.r1 = 1 + rng.below(m - 2);
  params.r2 = params.r1 + 1 + rng.below(m - 1 - params.r1);
  params.r3 = params.r2 + 1 + rng.below(m - params.r2);
  params.b.assign(m, 0.0);
  const auto fill_block = [&](std::size_t lo, std::size_t hi) {
    if (lo >= hi) return;
    const auto block = testutil::random_simplex(rng, hi - lo, 0.5);
    for (std::size_t y = lo; y < hi; ++y) params.b[y] = block[y - lo];
  };
  fill_block(0, params.r1);
  fill_block(params.r1, params.r2);
  fill_block(params.r2, params.r3);
  fill_block(params.r3, m);
  return params;
}

}  // namespace

TEST_SUITE("mechanisms") {

TEST_CASE("optimal_three_symbol table values") {
  check_entries(optimal_three_symbol(PrivacyBudget(0.25, 0.5)).p0, {0.75, 0.25, 0.0});
  check_entries(optimal_three_symbol(PrivacyBudget(0.25, 0.5)).p1, {0.75, 0.0, 0.25});

  const MechanismPair asym = optimal_three_symbol(PrivacyBudget(0.25, 0.4));
  check_entries(asym.p0, {0.625, 0.375, 0.0});
  check_entries(asym.p1, {0.9375, 0.0, 0.0625});

  // weight at the lower end collapses p1 onto the shared symbol
  const MechanismPair edge = optimal_three_symbol(PrivacyBudget(0.5, 0.25));
  check_entries(edge.p1, {1.0, 0.0, 0.0});
}

TEST_CASE("optimal_two_symbol case selection") {
  const PrivacyBudget sym(0.25, 0.5);  // theta0 = 1/2
  check_entries(optimal_two_symbol(sym, 0.25).p0, {1.0, 0.0});
  check_entries(optimal_two_symbol(sym, 0.25).p1, {0.75, 0.25});
  check_entries(optimal_two_symbol(sym, 0.75).p0, {0.75, 0.25});
  check_entries(optimal_two_symbol(sym, 0.75).p1, {1.0, 0.0});

  // tie at theta == theta0 resolves to case (i)
  const PrivacyBudget asym(0.25, 0.4);  // theta0 = 0.1
  CHECK(asym.theta0() == doctest::Approx(0.1).epsilon(1e-12));
  const MechanismPair tie = optimal_two_symbol(asym, asym.theta0());
  check_entries(tie.p0, {1.0, 0.0});
  check_entries(tie.p1, {0.9375, 0.0625});

  CHECK_THROWS_AS(optimal_two_symbol(sym, 0.0), ThetaOnBoundary);
  CHECK_THROWS_AS(optimal_two_symbol(sym, 1.0), ThetaOnBoundary);
}

TEST_CASE("warner") {
  const MechanismPair w = warner(0.25);
  check_entries(w.p0, {0.625, 0.375});
  check_entries(w.p1, {0.375, 0.625});

  const MechanismPair near_identity = warner(0.999);
  check_entries(near_identity.p0, {0.9995, 0.0005}, 1e-12);

  Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    const double delta = rng.uniform(0.01, 0.99);
    const MechanismPair any = warner(delta);
    CHECK(any.p0[0] == any.p1[1]);
    CHECK(any.p0[1] == any.p1[0]);
    CHECK(uc_security(any, 0.5) == doctest::Approx(delta).epsilon(1e-12));
  }

  check_entries(warner_raw(0.8).p0, {0.8, 0.2});
  CHECK_THROWS_AS(warner(0.0), Error);
  CHECK_THROWS_AS(warner(1.0), Error);
  CHECK_THROWS_AS(warner_raw(1.2), Error);
}

TEST_CASE("greenberg") {
  const MechanismPair g = greenberg(0.25, 0.5);
  const MechanismPair w = warner(0.25);
  check_entries(g.p0, w.p0.entries());
  check_entries(g.p1, w.p1.entries());

  const MechanismPair skew = greenberg(0.25, 0.2);
  check_entries(skew.p0, {0.85, 0.15}, 1e-15);
  check_entries(skew.p1, {0.6, 0.4}, 1e-15);

  const MechanismPair near_no = greenberg(0.25, 1e-9);
  CHECK(near_no.p0[0] == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(near_no.p0[1] <= 1e-9);

  check_entries(greenberg_raw(0.25, 0.2).p0, {0.85, 0.15}, 1e-15);
  CHECK_THROWS_AS(greenberg(0.25, 0.0), Error);
  CHECK_THROWS_AS(greenberg(0.25, 1.0), Error);
}

TEST_CASE("holohan") {
  const MechanismPair low = holohan(0.25, 0.3);
  check_entries(low.p0, {1.0, 0.0});
  check_entries(low.p1, {0.75, 0.25});
  const MechanismPair high = holohan(0.25, 0.7);
  check_entries(high.p0, {0.75, 0.25});
  check_entries(high.p1, {1.0, 0.0});
  const MechanismPair mid = holohan(0.25, 0.5);  // theta <= 1/2 branch
  check_entries(mid.p0, {1.0, 0.0});

  // at w = 1/2, a/w = 1 - delta, so holohan coincides with optimal_two_symbol
  Rng rng(12);
  for (int i = 0; i < 50; ++i) {
    const double delta = rng.uniform(0.05, 0.95);
    const double theta = testutil::random_interior_theta(rng);
    const MechanismPair h = holohan(delta, theta);
    const MechanismPair o = optimal_two_symbol(PrivacyBudget(delta, 0.5), theta);
    check_entries(h.p0, o.p0.entries(), 1e-15);
    check_entries(h.p1, o.p1.entries(), 1e-15);
  }
}

TEST_CASE("optimal_family block construction") {
  const PrivacyBudget budget(0.25, 0.5);

  OptimalFamilyParams degenerate{{1.0, 1.0, 1.0}, 1, 2, 3};
  const MechanismPair deg = optimal_family(budget, degenerate);
  const MechanismPair direct = optimal_three_symbol(budget);
  check_entries(deg.p0, direct.p0.entries());
  check_entries(deg.p1, direct.p1.entries());

  OptimalFamilyParams split{{0.5, 0.5, 1.0, 1.0}, 2, 3, 4};
  const MechanismPair four = optimal_family(budget, split);
  check_entries(four.p0, {0.375, 0.375, 0.25, 0.0});
  check_entries(four.p1, {0.375, 0.375, 0.0, 0.25});
  CHECK(is_optimal(four, budget));

  OptimalFamilyParams padded{{1.0, 1.0, 1.0, 1.0}, 1, 2, 3};
  const MechanismPair pad = optimal_family(budget, padded);
  check_entries(pad.p0, {0.75, 0.25, 0.0, 0.0});
  check_entries(pad.p1, {0.75, 0.0, 0.25, 0.0});
}

TEST_CASE("optimal_family parameter validation") {
  const PrivacyBudget budget(0.25, 0.5);
  CHECK_THROWS_AS(optimal_family(budget, {{1.0, 1.0, 1.0}, 0, 2, 3}),
                  InvalidBreakpoints);
  CHECK_THROWS_AS(optimal_family(budget, {{1.0, 1.0, 1.0}, 2, 2, 3}),
                  InvalidBreakpoints);
  CHECK_THROWS_AS(optimal_family(budget, {{1.0, 1.0, 1.0}, 1, 2, 4}),
                  InvalidBreakpoints);
  CHECK_THROWS_AS(optimal_family(budget, {{0.6, 1.0, 1.0}, 1, 2, 3}),
                  BlockNotNormalized);
  CHECK_THROWS_AS(optimal_family(budget, {{1.0, 0.3, 0.3, 1.0}, 1, 3, 4}),
                  BlockNotNormalized);
  // trailing block must be normalized when present
  CHECK_THROWS_AS(optimal_family(budget, {{1.0, 1.0, 1.0, 0.5}, 1, 2, 3}),
                  BlockNotNormalized);
  CHECK_NOTHROW(optimal_family(budget, {{1.0, 1.0, 1.0, 1.0}, 1, 2, 3}));
}

TEST_CASE("is_optimal certificate") {
  const PrivacyBudget budget(0.25, 0.5);
  CHECK(is_optimal(optimal_three_symbol(budget), budget));

  // certificates are weight-specific
  CHECK_FALSE(is_optimal(optimal_three_symbol(budget), PrivacyBudget(0.25, 0.4)));
  CHECK(is_optimal(optimal_three_symbol(PrivacyBudget(0.25, 0.4)),
                   PrivacyBudget(0.25, 0.4)));

  const MechanismPair same(make_distribution({0.5, 0.25, 0.25}),
                           make_distribution({0.5, 0.25, 0.25}));
  CHECK_FALSE(is_optimal(same, budget));

  const MechanismPair binary(make_distribution({1.0, 0.0}),
                             make_distribution({0.75, 0.25}));
  CHECK_THROWS_AS(is_optimal(binary, budget), AlphabetTooSmall);
}

TEST_CASE("optimal constructors saturate the budget") {
  Rng rng(13);
  for (int i = 0; i < 100; ++i) {
    const PrivacyBudget budget = testutil::random_budget(rng);
    const MechanismPair three = optimal_three_symbol(budget);
    CHECK(std::abs(uc_security(three, budget.weight()) - budget.delta()) <= 1e-12);
    CHECK(satisfies_constraint(three, budget));
    CHECK(is_optimal(three, budget));

    const MechanismPair two =
        optimal_two_symbol(budget, testutil::random_interior_theta(rng));
    CHECK(std::abs(uc_security(two, budget.weight()) - budget.delta()) <= 1e-12);
  }
}

TEST_CASE("family outputs certify and hit the closed-form maximum") {
  Rng rng(14);
  for (int i = 0; i < 40; ++i) {
    const PrivacyBudget budget = testutil::random_budget(rng);
    const std::size_t m = 3 + rng.below(3);
    const OptimalFamilyParams params = random_family_params(rng, m);
    const MechanismPair pair = optimal_family(budget, params);
    CHECK(satisfies_constraint(pair, budget));
    CHECK(is_optimal(pair, budget));
    for (int k = 0; k < 10; ++k) {
      const double theta = testutil::random_interior_theta(rng);
      CHECK(std::abs(fisher_information(pair, theta) -
                     max_fisher(budget, theta, 3)) <= 1e-9);
    }
  }
}

TEST_CASE("fisher information of a family output is permutation invariant") {
  Rng rng(15);
  const PrivacyBudget budget(0.3, 0.45);
  const OptimalFamilyParams params = random_family_params(rng, 5);
  const MechanismPair pair = optimal_family(budget, params);

  std::vector<std::size_t> perm{3, 0, 4, 1, 2};
  std::vector<double> q0(5), q1(5);
  for (std::size_t y = 0; y < 5; ++y) {
    q0[perm[y]] = pair.p0[y];
    q1[perm[y]] = pair.p1[y];
  }
  const MechanismPair shuffled(make_distribution(q0), make_distribution(q1));
  for (double theta : {0.1, 0.37, 0.5, 0.74, 0.92}) {
    CHECK(std::abs(fisher_information(pair, theta) -
                   fisher_information(shuffled, theta)) <= 1e-12);
    CHECK(is_optimal(shuffled, budget));
  }
}

}  // TEST_SUITE
