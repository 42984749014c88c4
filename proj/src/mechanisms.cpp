#include "rropt/mechanisms.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "rropt/errors.hpp"

namespace rropt {

namespace {

constexpr double kSupportThreshold = 1e-12;

void check_unit_interval(double v, const char* name) {
  if (!(v > 0.0 && v < 1.0)) {
    throw Error(std::string(name) + " must lie in (0,1)");
  }
}

}  // namespace

MechanismPair optimal_three_symbol(const PrivacyBudget& budget) {
  const double a = budget.a();
  const double w = budget.weight();
  return MechanismPair(
      make_distribution({a / (1.0 - w), 1.0 - a / (1.0 - w), 0.0}),
      make_distribution({a / w, 0.0, 1.0 - a / w}));
}

MechanismPair optimal_two_symbol(const PrivacyBudget& budget, MixtureParameter theta) {
  theta.require_interior("optimal_two_symbol");
  const double a = budget.a();
  const double w = budget.weight();
  if (theta.value() <= budget.theta0()) {
    return MechanismPair(make_distribution({1.0, 0.0}),
                         make_distribution({a / w, 1.0 - a / w}));
  }
  return MechanismPair(make_distribution({a / (1.0 - w), 1.0 - a / (1.0 - w)}),
                       make_distribution({1.0, 0.0}));
}

MechanismPair warner(double delta) {
  check_unit_interval(delta, "delta");
  return warner_raw((1.0 + delta) / 2.0);
}

MechanismPair warner_raw(double pi) {
  if (!(pi >= 0.0 && pi <= 1.0)) throw Error("pi must lie in [0,1]");
  return MechanismPair(make_distribution({pi, 1.0 - pi}),
                       make_distribution({1.0 - pi, pi}));
}

MechanismPair greenberg(double delta, double eta) {
  check_unit_interval(delta, "delta");
  check_unit_interval(eta, "eta");
  return MechanismPair(
      make_distribution({delta + (1.0 - delta) * (1.0 - eta), (1.0 - delta) * eta}),
      make_distribution({(1.0 - delta) * (1.0 - eta), delta + (1.0 - delta) * eta}));
}

MechanismPair greenberg_raw(double pi, double eta) {
  if (!(pi >= 0.0 && pi <= 1.0)) throw Error("pi must lie in [0,1]");
  check_unit_interval(eta, "eta");
  // Answer the sensitive question with probability pi, otherwise answer the
  // unrelated question whose yes-rate is eta.
  return MechanismPair(
      make_distribution({pi + (1.0 - pi) * (1.0 - eta), (1.0 - pi) * eta}),
      make_distribution({(1.0 - pi) * (1.0 - eta), pi + (1.0 - pi) * eta}));
}

MechanismPair holohan(double delta, MixtureParameter theta) {
  check_unit_interval(delta, "delta");
  if (theta.value() <= 0.5) {
    return MechanismPair(make_distribution({1.0, 0.0}),
                         make_distribution({1.0 - delta, delta}));
  }
  return MechanismPair(make_distribution({1.0 - delta, delta}),
                       make_distribution({1.0, 0.0}));
}

void OptimalFamilyParams::validate() const {
  const std::size_t m = b.size();
  if (r1 < 1 || !(r1 < r2 && r2 < r3) || r3 > m) {
    throw InvalidBreakpoints("need 1 <= r1 < r2 < r3 <= |Y|");
  }
  for (double v : b) {
    if (!(v >= 0.0)) throw Error("block scalings must be non-negative");
  }
  const auto block_sum = [this](std::size_t lo, std::size_t hi) {
    double s = 0.0;
    for (std::size_t y = lo; y < hi; ++y) s += b[y];
    return s;
  };
  const double s1 = block_sum(0, r1);
  const double s2 = block_sum(r1, r2);
  const double s3 = block_sum(r2, r3);
  if (std::abs(s1 - 1.0) > kNormalizationTol ||
      std::abs(s2 - 1.0) > kNormalizationTol ||
      std::abs(s3 - 1.0) > kNormalizationTol) {
    throw BlockNotNormalized("each of the first three b-blocks must sum to 1");
  }
  if (r3 < m && std::abs(block_sum(r3, m) - 1.0) > kNormalizationTol) {
    throw BlockNotNormalized("trailing b-block must sum to 1 when present");
  }
}

MechanismPair optimal_family(const PrivacyBudget& budget, const OptimalFamilyParams& params) {
  params.validate();
  const double a = budget.a();
  const double w = budget.weight();
  const std::size_t m = params.b.size();
  std::vector<double> p0(m, 0.0);
  std::vector<double> p1(m, 0.0);
  for (std::size_t y = 0; y < params.r1; ++y) {
    p0[y] = a / (1.0 - w) * params.b[y];
    p1[y] = a / w * params.b[y];
  }
  for (std::size_t y = params.r1; y < params.r2; ++y) {
    p0[y] = (1.0 - a / (1.0 - w)) * params.b[y];
  }
  for (std::size_t y = params.r2; y < params.r3; ++y) {
    p1[y] = (1.0 - a / w) * params.b[y];
  }
  return MechanismPair(make_distribution(std::move(p0)),
                       make_distribution(std::move(p1)));
}

bool is_optimal(const MechanismPair& pair, const PrivacyBudget& budget, double tol) {
  if (pair.size() < 3) {
    throw AlphabetTooSmall("optimality certificate is defined for |Y| >= 3");
  }
  const double a = budget.a();
  const double w = budget.weight();
  double p0_on_supp1 = 0.0;
  double p1_on_supp0 = 0.0;
  for (std::size_t y = 0; y < pair.size(); ++y) {
    const bool in0 = pair.p0[y] > kSupportThreshold;
    const bool in1 = pair.p1[y] > kSupportThreshold;
    if (in0 && in1 &&
        std::abs((1.0 - w) * pair.p0[y] - w * pair.p1[y]) > tol) {
      return false;
    }
    if (in1) p0_on_supp1 += pair.p0[y];
    if (in0) p1_on_supp0 += pair.p1[y];
  }
  return std::abs((1.0 - w) * p0_on_supp1 - a) <= tol &&
         std::abs(w * p1_on_supp0 - a) <= tol;
}

}  // namespace rropt
