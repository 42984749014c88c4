#pragma once

#include "rropt/core.hpp"

namespace rropt {

// ||(1-w)p0 - w p1||_1, the universally composable security measure.
double uc_security(const MechanismPair& pair, double weight);

// min over answer sets S of (1-w)p0(S) + w p1(S^c); equals (1 - uc)/2.
double min_weighted_error(const MechanismPair& pair, double weight);

// Same minimum by enumerating all 2^|Y| subsets. Oracle for the closed form;
// refuses alphabets larger than 20 symbols.
double min_weighted_error_exhaustive(const MechanismPair& pair, double weight);

// Smallest dp such that p_i(S) <= e^eps p_j(S) + dp for all S and both
// orderings (i,j). At eps = 0 this is half the l1 distance.
double dp_delta(const MechanismPair& pair, double epsilon);

// uc_security(pair, budget.weight) <= budget.delta, with additive slack
// 1e-12 so analytically tight optimal pairs pass.
bool satisfies_constraint(const MechanismPair& pair, const PrivacyBudget& budget);

}  // namespace rropt
