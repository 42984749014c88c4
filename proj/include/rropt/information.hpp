#pragma once

#include <cstddef>
#include <functional>
#include <string>

#include "rropt/core.hpp"

namespace rropt {

// Convex generator f for an f-divergence. evaluate is only consulted on
// (0, inf); the two limits supply the conventions at the boundary:
// limit_at_zero = f(0+) and slope_at_infinity = lim f(x)/x.
struct ConvexGenerator {
  std::function<double(double)> evaluate;
  double limit_at_zero = 0.0;
  double slope_at_infinity = 0.0;
  std::string name;
};

// f(x) = x ln x (relative entropy).
ConvexGenerator kl_generator();
// f(x) = x^{1+s} for s > 0, f(x) = -x^{1+s} for s in (-1,0); at s = 0 the
// KL generator. The sign keeps f convex across the whole range.
ConvexGenerator renyi_generator(double s);

// J_theta = sum_y (p1(y)-p0(y))^2 / p_theta(y); a symbol with
// p0(y) = p1(y) = 0 contributes 0.
double fisher_information(const MechanismPair& pair, MixtureParameter theta);

// Closed-form maximum of J_theta over the feasible set. alphabet_size 2
// selects between the two binary cases at theta0; 3 or more uses
// (1/(theta(1-theta))) (1 - a/(w(1-theta)+(1-w)theta)).
double max_fisher(const PrivacyBudget& budget, MixtureParameter theta, std::size_t alphabet_size);

// D_f(p_theta1 || p_theta2) = sum_y p_theta2(y) f(p_theta1(y)/p_theta2(y)),
// with boundary terms resolved through the generator's limits. May be +-inf.
double f_divergence(const MechanismPair& pair, MixtureParameter theta1,
                    MixtureParameter theta2, const ConvexGenerator& f);

// Relative Renyi entropy D_{1+s}: (1/s) ln sum_y p1^{1+s} p2^{-s} for s != 0,
// relative entropy at s = 0. Requires s > -1. May be +inf.
double renyi_divergence(const MechanismPair& pair, MixtureParameter theta1,
                        MixtureParameter theta2, double s);

// Closed-form maxima over the feasible set; both are attained by
// optimal_three_symbol(budget) and agree with direct evaluation there.
double max_f_divergence(const PrivacyBudget& budget, MixtureParameter theta1,
                        MixtureParameter theta2, const ConvexGenerator& f);
double max_renyi(const PrivacyBudget& budget, MixtureParameter theta1,
                 MixtureParameter theta2, double s);

}  // namespace rropt
