#include "rropt/information.hpp"

#include <cmath>
#include <limits>

#include "rropt/errors.hpp"

namespace rropt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// w(1-theta) + (1-w)theta, the shared-symbol mixture profile.
double shared_profile(double w, double theta) {
  return w * (1.0 - theta) + (1.0 - w) * theta;
}

}  // namespace

ConvexGenerator kl_generator() {
  return ConvexGenerator{
      [](double x) { return x * std::log(x); },
      0.0,   // x ln x -> 0
      kInf,  // ln x -> inf
      "x*ln(x)",
  };
}

ConvexGenerator renyi_generator(double s) {
  if (s <= -1.0) throw SOutOfRange("renyi generator requires s > -1");
  if (s == 0.0) return kl_generator();
  if (s > 0.0) {
    return ConvexGenerator{
        [s](double x) { return std::pow(x, 1.0 + s); },
        0.0,
        kInf,
        "x^(1+s), s=" + std::to_string(s),
    };
  }
  // 1+s in (0,1): x^{1+s} is concave, so the generator is its negative.
  return ConvexGenerator{
      [s](double x) { return -std::pow(x, 1.0 + s); },
      0.0,
      0.0,  // -x^s -> 0 for s < 0
      "-x^(1+s), s=" + std::to_string(s),
  };
}

double fisher_information(const MechanismPair& pair, MixtureParameter theta) {
  const double t = theta.value();
  double sum = 0.0;
  for (std::size_t y = 0; y < pair.size(); ++y) {
    const double d = pair.p1[y] - pair.p0[y];
    const double pt = (1.0 - t) * pair.p0[y] + t * pair.p1[y];
    if (pt <= 0.0) {
      // For interior theta this forces p0(y) = p1(y) = 0, contributing 0.
      if (d != 0.0) {
        throw ThetaOnBoundary("p_theta(y) = 0 on a symbol where p0 and p1 differ");
      }
      continue;
    }
    sum += d * d / pt;
  }
  return sum;
}

double max_fisher(const PrivacyBudget& budget, MixtureParameter theta,
                  std::size_t alphabet_size) {
  if (alphabet_size < 2) throw Error("alphabet_size must be at least 2");
  theta.require_interior("max_fisher");
  const double t = theta.value();
  const double a = budget.a();
  const double w = budget.weight();
  if (alphabet_size == 2) {
    if (t <= budget.theta0()) {
      return (w - a) / (t * (w * (1.0 - t) + a * t));
    }
    return (1.0 - w - a) / ((1.0 - t) * (a * (1.0 - t) + (1.0 - w) * t));
  }
  return (1.0 / (t * (1.0 - t))) * (1.0 - a / shared_profile(w, t));
}

double f_divergence(const MechanismPair& pair, MixtureParameter theta1,
                    MixtureParameter theta2, const ConvexGenerator& f) {
  const ProbabilityVector m1 = mixture(pair, theta1);
  const ProbabilityVector m2 = mixture(pair, theta2);
  double sum = 0.0;
  for (std::size_t y = 0; y < pair.size(); ++y) {
    const double q1 = m1[y];
    const double q2 = m2[y];
    if (q2 <= 0.0) {
      if (q1 <= 0.0) continue;
      if (f.slope_at_infinity != 0.0) sum += q1 * f.slope_at_infinity;
    } else if (q1 <= 0.0) {
      if (f.limit_at_zero != 0.0) sum += q2 * f.limit_at_zero;
    } else {
      sum += q2 * f.evaluate(q1 / q2);
    }
  }
  return sum;
}

double renyi_divergence(const MechanismPair& pair, MixtureParameter theta1,
                        MixtureParameter theta2, double s) {
  if (s <= -1.0) throw SOutOfRange("renyi divergence requires s > -1");
  const ProbabilityVector m1 = mixture(pair, theta1);
  const ProbabilityVector m2 = mixture(pair, theta2);
  if (s == 0.0) {
    double sum = 0.0;
    for (std::size_t y = 0; y < pair.size(); ++y) {
      if (m1[y] <= 0.0) continue;  // 0 ln(0/q) = 0
      if (m2[y] <= 0.0) return kInf;
      sum += m1[y] * std::log(m1[y] / m2[y]);
    }
    return sum;
  }
  double sum = 0.0;
  for (std::size_t y = 0; y < pair.size(); ++y) {
    const double q1 = m1[y];
    const double q2 = m2[y];
    if (q1 <= 0.0) continue;
    if (q2 <= 0.0) {
      if (s > 0.0) return kInf;
      continue;  // s in (-1,0): q2^{-s} = 0
    }
    sum += std::pow(q1, 1.0 + s) * std::pow(q2, -s);
  }
  return std::log(sum) / s;  // sum == 0 gives +inf for s < 0
}

double max_f_divergence(const PrivacyBudget& budget, MixtureParameter theta1,
                        MixtureParameter theta2, const ConvexGenerator& f) {
  theta1.require_interior("max_f_divergence");
  theta2.require_interior("max_f_divergence");
  const double t1 = theta1.value();
  const double t2 = theta2.value();
  const double a = budget.a();
  const double w = budget.weight();
  const double shared_mass = a / (w * (1.0 - w));
  const double c0 = 1.0 - a / (1.0 - w);
  const double c1 = 1.0 - a / w;
  const double a1 = shared_profile(w, t1);
  const double a2 = shared_profile(w, t2);
  double sum = shared_mass * a2 * f.evaluate(a1 / a2);
  if (c0 > 0.0) sum += c0 * (1.0 - t2) * f.evaluate((1.0 - t1) / (1.0 - t2));
  if (c1 > 0.0) sum += c1 * t2 * f.evaluate(t1 / t2);
  return sum;
}

double max_renyi(const PrivacyBudget& budget, MixtureParameter theta1,
                 MixtureParameter theta2, double s) {
  if (s <= -1.0) throw SOutOfRange("max renyi requires s > -1");
  theta1.require_interior("max_renyi");
  theta2.require_interior("max_renyi");
  const double t1 = theta1.value();
  const double t2 = theta2.value();
  const double a = budget.a();
  const double w = budget.weight();
  const double shared_mass = a / (w * (1.0 - w));
  const double c0 = 1.0 - a / (1.0 - w);
  const double c1 = 1.0 - a / w;
  const double a1 = shared_profile(w, t1);
  const double a2 = shared_profile(w, t2);
  if (s == 0.0) {
    double sum = shared_mass * a1 * std::log(a1 / a2);
    if (c0 > 0.0) sum += c0 * (1.0 - t1) * std::log((1.0 - t1) / (1.0 - t2));
    if (c1 > 0.0) sum += c1 * t1 * std::log(t1 / t2);
    return sum;
  }
  double sum = shared_mass * std::pow(a1, 1.0 + s) * std::pow(a2, -s);
  if (c0 > 0.0) sum += c0 * std::pow(1.0 - t1, 1.0 + s) * std::pow(1.0 - t2, -s);
  if (c1 > 0.0) sum += c1 * std::pow(t1, 1.0 + s) * std::pow(t2, -s);
  return std::log(sum) / s;
}

}  // namespace rropt
