#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "rropt/core.hpp"
#include "rropt/information.hpp"

namespace rropt {

// Per-symbol summand psi(x, y) on the non-negative quadrant. Sublinearity
// (positive homogeneity plus subadditivity) is what pushes the aggregate
// Psi(p0, p1) = sum_y psi(p0(y), p1(y)) onto extreme points of the feasible
// set, so every objective fed to the search should pass sublinear_check.
struct SublinearObjective {
  std::function<double(double, double)> psi;
  std::string description;
};

// The Fisher-information summand (y-x)^2 / ((1-theta)x + theta y), with the
// 0-at-(0,0) convention.
SublinearObjective fisher_objective(MixtureParameter theta);
// The f-divergence summand ((1-t2)x + t2 y) f(ratio of the two mixtures).
SublinearObjective f_divergence_objective(MixtureParameter theta1,
                                          MixtureParameter theta2,
                                          ConvexGenerator f);

// Samples (alpha, x, y) tuples and checks psi(ax, ay) == a psi(x, y) within
// 1e-9 relative and psi(x1+x2, y1+y2) <= psi(x1,y1) + psi(x2,y2) + 1e-9.
bool sublinear_check(const SublinearObjective& obj, int samples, std::uint64_t seed);

// Midpoint convexity of a generator on sampled positive pairs.
bool convex_midpoint_check(const ConvexGenerator& f, int samples, std::uint64_t seed);

double evaluate_psi_sum(const SublinearObjective& obj, const MechanismPair& pair);

// The extreme-point structure: one shared symbol plus disjoint remainders.
// Size 3 emits p0=[x,1-x,0], p1=[y,0,1-y] over a grid with (1-w)x >= a,
// w y >= a, plus the two binary boundary families (zero-padded); size 2
// emits just the boundary families. Count: G^2 + 2G for size 3, 2G for
// size 2. Every pair satisfies the budget by construction.
std::vector<MechanismPair> extreme_point_candidates(const PrivacyBudget& budget,
                                                    std::size_t alphabet_size,
                                                    int grid_points);

struct SearchReport {
  double best_value;
  MechanismPair best_pair;
  std::int64_t candidates_examined;
  double closed_form_value;
  double gap;  // closed_form_value - best_value; >= -1e-9 or the theorem is violated
  std::int64_t random_attempts;
  std::int64_t random_accepted;
};

// Maximizes Psi over extreme-point candidates plus random feasible pairs
// (uniform simplex-product draws kept iff they satisfy the budget; the
// acceptance rate is reported). closed_form_value is the theorem value the
// search is being tested against. Deterministic for a fixed seed, including
// under RR_OPT_THREADS-bounded parallel evaluation: the reduction is an
// argmax with a lexicographic tie-break on the pair entries.
SearchReport brute_force_max(const PrivacyBudget& budget, const SublinearObjective& obj,
                             double closed_form_value, std::size_t alphabet_size,
                             int grid_points, std::int64_t random_samples,
                             std::uint64_t seed);

// The convexity-equality dichotomy for J: returns (J at the t-mixed pair
// equals the t-combination of J values within 1e-10, every per-symbol
// determinant q1(y) q0'(y) - q0(y) q1'(y) vanishes within 1e-12). The two
// booleans agreeing on random instances is the lemma.
std::pair<bool, bool> convexity_equality_holds(const MechanismPair& qpair,
                                               const MechanismPair& qpair2,
                                               MixtureParameter theta, double t);

}  // namespace rropt
