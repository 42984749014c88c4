#pragma once

#include <cstddef>
#include <vector>

namespace rropt {

// Entries must sum to 1 within this tolerance.
inline constexpr double kNormalizationTol = 1e-12;
// Entries in [kNegativeClamp, 0) are rounded up to exactly 0; anything below
// is rejected. Derived pairs like [a/(1-w), 1-a/(1-w), 0] hit exact zeros but
// intermediate arithmetic can undershoot by an ulp.
inline constexpr double kNegativeClamp = -1e-15;

// A distribution over the disclosed-symbol alphabet Y. Immutable once built;
// construction validates non-negativity and normalization.
class ProbabilityVector {
 public:
  explicit ProbabilityVector(std::vector<double> entries);

  std::size_t size() const { return entries_.size(); }
  double operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<double>& entries() const { return entries_; }
  std::vector<double>::const_iterator begin() const { return entries_.begin(); }
  std::vector<double>::const_iterator end() const { return entries_.end(); }

 private:
  std::vector<double> entries_;
};

ProbabilityVector make_distribution(std::vector<double> values);

// The ordered pair (p0, p1): conditional distributions of the disclosed
// symbol given private bit 0 or 1.
struct MechanismPair {
  MechanismPair(ProbabilityVector p0_in, ProbabilityVector p1_in);

  std::size_t size() const { return p0.size(); }

  ProbabilityVector p0;
  ProbabilityVector p1;
};

// Privacy constraint parameters: ||(1-w)p0 - w p1||_1 <= delta with prior
// weight w. Derived quantities: a = (1-delta)/2 is the floor on the
// adversary's weighted error, and theta0 = (w-a)/delta is the threshold
// between the two binary-alphabet optimal mechanisms.
class PrivacyBudget {
 public:
  PrivacyBudget(double delta, double weight);

  double delta() const { return delta_; }
  double weight() const { return weight_; }
  double a() const { return a_; }
  double theta0() const { return theta0_; }

 private:
  double delta_;
  double weight_;
  double a_;
  double theta0_;
};

// Population ratio parameter theta in [0, 1]. Implicit construction from
// double is intentional: validation happens at every API boundary without
// ceremony at call sites.
class MixtureParameter {
 public:
  MixtureParameter(double theta);  // NOLINT(google-explicit-constructor)

  double value() const { return theta_; }
  bool interior() const { return theta_ > 0.0 && theta_ < 1.0; }
  // Throws ThetaOnBoundary unless 0 < theta < 1.
  void require_interior(const char* what) const;

 private:
  double theta_;
};

// p_theta = (1-theta) p0 + theta p1, the marginal of a disclosed symbol when
// the population's 1-fraction is theta.
ProbabilityVector mixture(const MechanismPair& pair, MixtureParameter theta);

}  // namespace rropt
