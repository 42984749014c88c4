#pragma once

#include <functional>

#include "rropt/core.hpp"

namespace rropt {

// The paper's suprema run over open intervals; brackets are clamped to
// [-1 + kSClamp, -kSClamp] for s in (-1,0) and [kSClamp, kSMax] for s > 0.
inline constexpr double kSClamp = 1e-7;
inline constexpr double kSMax = 50.0;

// Result of a scalar maximization. iterations < 0 flags convergence at a
// clamped bracket endpoint (the supremum lives at or beyond the boundary);
// its magnitude is the number of objective evaluations either way.
struct ExponentResult {
  double value = 0.0;
  double s_star = 0.0;
  int iterations = 0;

  bool at_boundary() const { return iterations < 0; }
  int evaluations() const { return iterations < 0 ? -iterations : iterations; }
};

// Golden-section maximization over [lo, hi], seeded by a coarse scan so a
// mildly multimodal objective still lands in the best cell (unimodality of
// the exponent objectives is unproven; tests cross-check against dense
// grids). Objective values of -inf are treated as "skip this point"; NaN or
// +inf throws NonFiniteObjective, as does an everywhere--inf objective.
ExponentResult maximize_scalar(const std::function<double(double)>& objective,
                               double lo, double hi, double tol = 1e-10);

// Chernoff bound: sup over s in (-1,0) of (-s) D_{1+s}(p_theta1 || p_theta2).
ExponentResult chernoff_exponent(const MechanismPair& pair, MixtureParameter theta1,
                                 MixtureParameter theta2);
ExponentResult max_chernoff(const PrivacyBudget& budget, MixtureParameter theta1,
                            MixtureParameter theta2);

// Stein exponent: the relative entropy D(p_theta1 || p_theta2).
double stein_exponent(const MechanismPair& pair, MixtureParameter theta1,
                      MixtureParameter theta2);
double max_stein(const PrivacyBudget& budget, MixtureParameter theta1,
                 MixtureParameter theta2);

// Hoeffding bound at type-I rate r:
// sup over s in (-1,0) of (s/(1+s)) { r - D_{1+s}(p_theta2 || p_theta1) }.
ExponentResult hoeffding_exponent(const MechanismPair& pair, MixtureParameter theta1,
                                  MixtureParameter theta2, double rate);
ExponentResult max_hoeffding(const PrivacyBudget& budget, MixtureParameter theta1,
                             MixtureParameter theta2, double rate);

// Han-Kobayashi bound: the same objective with s > 0, truncated at kSMax
// (the objective is unbounded as s grows when the divergence term vanishes;
// the boundary flag reports truncation).
ExponentResult han_kobayashi(const MechanismPair& pair, MixtureParameter theta1,
                             MixtureParameter theta2, double rate);
ExponentResult min_han_kobayashi(const PrivacyBudget& budget, MixtureParameter theta1,
                                 MixtureParameter theta2, double rate);

}  // namespace rropt
