#include "rropt/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "rropt/errors.hpp"

namespace rropt {

ProbabilityVector::ProbabilityVector(std::vector<double> entries)
    : entries_(std::move(entries)) {
  if (entries_.empty()) {
    throw Error("distribution must have at least one symbol");
  }
  double sum = 0.0;
  for (double& e : entries_) {
    if (!std::isfinite(e)) throw Error("distribution entry is not finite");
    if (e < 0.0) {
      if (e < kNegativeClamp) {
        throw NegativeEntry("distribution entry " + std::to_string(e) +
                            " below " + std::to_string(kNegativeClamp));
      }
      e = 0.0;
    }
    sum += e;
  }
  if (std::abs(sum - 1.0) > kNormalizationTol) {
    throw NotNormalized("distribution entries sum to " + std::to_string(sum));
  }
}

ProbabilityVector make_distribution(std::vector<double> values) {
  return ProbabilityVector(std::move(values));
}

MechanismPair::MechanismPair(ProbabilityVector p0_in, ProbabilityVector p1_in)
    : p0(std::move(p0_in)), p1(std::move(p1_in)) {
  if (p0.size() != p1.size()) {
    throw Error("mechanism pair rows have different alphabet sizes");
  }
}

PrivacyBudget::PrivacyBudget(double delta, double weight)
    : delta_(delta), weight_(weight) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw Error("delta must lie in (0,1)");
  }
  a_ = (1.0 - delta) / 2.0;
  // Callers that compute w = a arithmetically can land an ulp outside the
  // closed interval; accept within the shared comparison slack.
  if (!(weight >= a_ - 1e-12 && weight <= 1.0 - a_ + 1e-12)) {
    throw Error("weight must lie in [a, 1-a] = [(1-delta)/2, (1+delta)/2]");
  }
  theta0_ = std::clamp((weight - a_) / delta, 0.0, 1.0);
}

MixtureParameter::MixtureParameter(double theta) : theta_(theta) {
  if (!(theta >= 0.0 && theta <= 1.0)) {
    throw Error("theta must lie in [0,1]");
  }
}

void MixtureParameter::require_interior(const char* what) const {
  if (!interior()) {
    throw ThetaOnBoundary(std::string(what) + " requires 0 < theta < 1");
  }
}

ProbabilityVector mixture(const MechanismPair& pair, MixtureParameter theta) {
  const double t = theta.value();
  std::vector<double> out(pair.size());
  for (std::size_t y = 0; y < pair.size(); ++y) {
    out[y] = (1.0 - t) * pair.p0[y] + t * pair.p1[y];
  }
  return ProbabilityVector(std::move(out));
}

}  // namespace rropt
