#pragma once

#include <cstddef>
#include <vector>

#include "rropt/core.hpp"

namespace rropt {

// The maximizer of every sublinear utility under the budget:
//   p0 = [a/(1-w), 1-a/(1-w), 0],  p1 = [a/w, 0, 1-a/w].
// Saturates the constraint and passes is_optimal.
MechanismPair optimal_three_symbol(const PrivacyBudget& budget);

// Best binary-alphabet pair for the given theta. Case (i), theta <= theta0:
// p0=[1,0], p1=[a/w, 1-a/w]; case (ii): p0=[a/(1-w), 1-a/(1-w)], p1=[1,0].
// The tie at theta == theta0 resolves to case (i); both cases give equal
// Fisher information there.
MechanismPair optimal_two_symbol(const PrivacyBudget& budget, MixtureParameter theta);

// Warner's flip scheme at the budget-saturating flip probability:
// p0 = [(1+delta)/2, (1-delta)/2], p1 reversed.
MechanismPair warner(double delta);
// General flip probability pi (p0 = [pi, 1-pi], p1 reversed).
MechanismPair warner_raw(double pi);

// Greenberg's unrelated-question scheme with unrelated-answer rate eta,
// at the budget-saturating design:
// p0 = [delta + (1-delta)(1-eta), (1-delta)eta],
// p1 = [(1-delta)(1-eta), delta + (1-delta)eta].
MechanismPair greenberg(double delta, double eta);
// General truthful-answer probability pi.
MechanismPair greenberg_raw(double pi, double eta);

// The binary scheme of the (0,delta)-DP row:
// theta <= 1/2: ([1,0], [1-delta, delta]); theta > 1/2: swapped.
MechanismPair holohan(double delta, MixtureParameter theta);

// Block description of the full optimal family over |Y| = b.size() symbols:
// block 1 = [1..r1] shared, block 2 = (r1..r2] p0-only, block 3 = (r2..r3]
// p1-only, block 4 = (r3..|Y|] unused. Each present block's b-slice sums
// to 1. Breakpoints are 1-based and strictly increasing.
struct OptimalFamilyParams {
  std::vector<double> b;
  std::size_t r1 = 0;
  std::size_t r2 = 0;
  std::size_t r3 = 0;

  // Throws InvalidBreakpoints / BlockNotNormalized.
  void validate() const;
};

// p0 puts mass a/(1-w) on block 1 and 1-a/(1-w) on block 2; p1 puts a/w on
// block 1 and 1-a/w on block 3; both distribute within a block
// proportionally to b. Every output passes is_optimal.
MechanismPair optimal_family(const PrivacyBudget& budget, const OptimalFamilyParams& params);

// Optimality certificate for |Y| >= 3: checks (1-w)p0(y) == w p1(y) on every
// shared-support symbol and
//   (1-w) sum_{p1(y)>0} p0(y) == w sum_{p0(y)>0} p1(y) == a,
// each within tol. Support detection uses threshold 1e-12. The certificate
// and achieving the maximum Fisher information are equivalent.
bool is_optimal(const MechanismPair& pair, const PrivacyBudget& budget, double tol = 1e-9);

}  // namespace rropt
