#include "rropt/privacy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "rropt/errors.hpp"

namespace rropt {

namespace {

void check_weight(double weight) {
  if (!(weight > 0.0 && weight < 1.0)) {
    throw Error("weight must lie in (0,1)");
  }
}

}  // namespace

double uc_security(const MechanismPair& pair, double weight) {
  check_weight(weight);
  double sum = 0.0;
  for (std::size_t y = 0; y < pair.size(); ++y) {
    sum += std::abs((1.0 - weight) * pair.p0[y] - weight * pair.p1[y]);
  }
  return sum;
}

double min_weighted_error(const MechanismPair& pair, double weight) {
  check_weight(weight);
  // The minimizing S collects exactly the symbols with negative
  // d_y = (1-w)p0(y) - w p1(y), so the minimum is w + sum_y min(0, d_y).
  double negative_part = 0.0;
  for (std::size_t y = 0; y < pair.size(); ++y) {
    const double d = (1.0 - weight) * pair.p0[y] - weight * pair.p1[y];
    negative_part += std::min(0.0, d);
  }
  return weight + negative_part;
}

double min_weighted_error_exhaustive(const MechanismPair& pair, double weight) {
  check_weight(weight);
  const std::size_t m = pair.size();
  if (m > 20) {
    throw AlphabetTooLarge("exhaustive minimization supports at most 20 symbols");
  }
  double best = 2.0;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    double p0_in = 0.0;
    double p1_out = 0.0;
    for (std::size_t y = 0; y < m; ++y) {
      if (mask & (1u << y)) {
        p0_in += pair.p0[y];
      } else {
        p1_out += pair.p1[y];
      }
    }
    best = std::min(best, (1.0 - weight) * p0_in + weight * p1_out);
  }
  return best;
}

double dp_delta(const MechanismPair& pair, double epsilon) {
  if (!(epsilon >= 0.0)) throw Error("epsilon must be non-negative");
  const double scale = std::exp(epsilon);
  double d01 = 0.0;
  double d10 = 0.0;
  for (std::size_t y = 0; y < pair.size(); ++y) {
    d01 += std::max(0.0, pair.p0[y] - scale * pair.p1[y]);
    d10 += std::max(0.0, pair.p1[y] - scale * pair.p0[y]);
  }
  return std::max(d01, d10);
}

bool satisfies_constraint(const MechanismPair& pair, const PrivacyBudget& budget) {
  return uc_security(pair, budget.weight()) <= budget.delta() + 1e-12;
}

}  // namespace rropt
