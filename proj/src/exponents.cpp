#include "rropt/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rropt/errors.hpp"
#include "rropt/information.hpp"

namespace rropt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kCoarsePoints = 65;

void check_rate(double rate) {
  if (!(rate >= 0.0)) throw Error("rate must be non-negative");
}

}  // namespace

ExponentResult maximize_scalar(const std::function<double(double)>& objective,
                               double lo, double hi, double tol) {
  if (!(lo < hi)) throw Error("maximize_scalar requires lo < hi");
  if (!(tol > 0.0)) throw Error("maximize_scalar requires tol > 0");

  int evals = 0;
  double best_x = lo;
  double best_v = -kInf;
  const auto eval = [&](double x) {
    const double v = objective(x);
    ++evals;
    if (std::isnan(v) || v == kInf) {
      throw NonFiniteObjective("objective is not finite inside the bracket");
    }
    if (v > best_v) {
      best_v = v;
      best_x = x;
    }
    return v;
  };

  // Coarse scan picks the cell holding the best sample; golden section then
  // refines inside its neighborhood.
  const double step = (hi - lo) / (kCoarsePoints - 1);
  int best_index = 0;
  double best_coarse = -kInf;
  for (int i = 0; i < kCoarsePoints; ++i) {
    const double x = (i == kCoarsePoints - 1) ? hi : lo + step * i;
    const double v = eval(x);
    if (v > best_coarse) {
      best_coarse = v;
      best_index = i;
    }
  }
  if (best_v == -kInf) {
    throw NonFiniteObjective("objective is -inf everywhere on the bracket");
  }

  double a = lo + step * std::max(0, best_index - 1);
  double b = (best_index + 1 >= kCoarsePoints - 1) ? hi : lo + step * (best_index + 1);
  static const double kInvPhi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = eval(c);
  double fd = eval(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = eval(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = eval(d);
    }
  }

  const double boundary_eps = std::max(4.0 * tol, 1e-9 * (hi - lo));
  const bool at_edge = (best_x - lo <= boundary_eps) || (hi - best_x <= boundary_eps);
  return ExponentResult{best_v, best_x, at_edge ? -evals : evals};
}

ExponentResult chernoff_exponent(const MechanismPair& pair, MixtureParameter theta1,
                                 MixtureParameter theta2) {
  const auto objective = [&](double s) {
    // A non-finite divergence makes the point unusable rather than an error.
    const double d = renyi_divergence(pair, theta1, theta2, s);
    return std::isfinite(d) ? -s * d : -kInf;
  };
  return maximize_scalar(objective, -1.0 + kSClamp, -kSClamp);
}

ExponentResult max_chernoff(const PrivacyBudget& budget, MixtureParameter theta1,
                            MixtureParameter theta2) {
  const auto objective = [&](double s) {
    const double d = max_renyi(budget, theta1, theta2, s);
    return std::isfinite(d) ? -s * d : -kInf;
  };
  return maximize_scalar(objective, -1.0 + kSClamp, -kSClamp);
}

double stein_exponent(const MechanismPair& pair, MixtureParameter theta1,
                      MixtureParameter theta2) {
  return renyi_divergence(pair, theta1, theta2, 0.0);
}

double max_stein(const PrivacyBudget& budget, MixtureParameter theta1,
                 MixtureParameter theta2) {
  return max_renyi(budget, theta1, theta2, 0.0);
}

ExponentResult hoeffding_exponent(const MechanismPair& pair, MixtureParameter theta1,
                                  MixtureParameter theta2, double rate) {
  check_rate(rate);
  const auto objective = [&](double s) {
    const double d = renyi_divergence(pair, theta2, theta1, s);
    return std::isfinite(d) ? s / (1.0 + s) * (rate - d) : -kInf;
  };
  return maximize_scalar(objective, -1.0 + kSClamp, -kSClamp);
}

ExponentResult max_hoeffding(const PrivacyBudget& budget, MixtureParameter theta1,
                             MixtureParameter theta2, double rate) {
  check_rate(rate);
  const auto objective = [&](double s) {
    const double d = max_renyi(budget, theta2, theta1, s);
    return std::isfinite(d) ? s / (1.0 + s) * (rate - d) : -kInf;
  };
  return maximize_scalar(objective, -1.0 + kSClamp, -kSClamp);
}

ExponentResult han_kobayashi(const MechanismPair& pair, MixtureParameter theta1,
                             MixtureParameter theta2, double rate) {
  check_rate(rate);
  const auto objective = [&](double s) {
    const double d = renyi_divergence(pair, theta2, theta1, s);
    return std::isfinite(d) ? s / (1.0 + s) * (rate - d) : -kInf;
  };
  return maximize_scalar(objective, kSClamp, kSMax);
}

ExponentResult min_han_kobayashi(const PrivacyBudget& budget, MixtureParameter theta1,
                                 MixtureParameter theta2, double rate) {
  check_rate(rate);
  const auto objective = [&](double s) {
    const double d = max_renyi(budget, theta2, theta1, s);
    return std::isfinite(d) ? s / (1.0 + s) * (rate - d) : -kInf;
  };
  return maximize_scalar(objective, kSClamp, kSMax);
}

}  // namespace rropt
