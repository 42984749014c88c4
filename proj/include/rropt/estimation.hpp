#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rropt/core.hpp"

namespace rropt {

// Observed symbol counts; the sufficient statistic for theta because the
// likelihood factorizes over symbols.
struct SurveyDataset {
  std::vector<std::int64_t> counts;
  std::int64_t n = 0;
};

// Each respondent draws X ~ Bernoulli(theta) and then Y ~ p_X. Reproducible
// for a fixed seed (see rng.hpp for the generator contract).
SurveyDataset sample_survey(const MechanismPair& pair, MixtureParameter theta,
                            std::int64_t n, std::uint64_t seed);

struct EstimateResult {
  double theta_hat = 0.0;
  double fisher_at_hat = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 1.0;
  double alpha = 0.05;
  // Set when every observed symbol has p0(y) == p1(y): the likelihood is
  // flat and theta_hat falls back to 0.5.
  bool uninformative = false;
};

// Maximizer of the concave log-likelihood sum_y counts(y) ln p_theta(y) over
// [0,1], found by bisecting the monotone derivative to 1e-10. Boundary
// maximizers return exactly 0 or 1. fisher_at_hat evaluates at theta_hat
// clamped into [1e-9, 1-1e-9]; the confidence interval uses it when positive.
EstimateResult mle(const MechanismPair& pair, const SurveyDataset& data,
                   double alpha = 0.05);

// theta_hat + quantile(alpha/2)/sqrt(n J) up to the symmetric upper bound,
// clipped to [0,1]. Throws NonPositiveFisher when fisher <= 0.
std::pair<double, double> confidence_interval(double theta_hat, double fisher,
                                              std::int64_t n, double alpha);

// Standard normal quantile, rational approximation plus one Newton step
// against erfc; absolute error well below 1e-9.
double normal_quantile(double p);

// Mean of (theta_hat - theta)^2 over independent trials; trial t uses the
// stream seeded with seed + t.
double monte_carlo_mse(const MechanismPair& pair, MixtureParameter theta,
                       std::int64_t n, int trials, std::uint64_t seed);

struct SimulationSummary {
  double mse = 0.0;
  double crb = 0.0;              // 1 / (n J_theta) at the true theta
  double coverage = 0.0;         // fraction of trials whose CI contains theta
  double theta_hat_mean = 0.0;
  double theta_hat_min = 0.0;
  double theta_hat_max = 0.0;
  int uninformative_trials = 0;
  int trials = 0;
};

// Runs the full study behind monte_carlo_mse: per-trial MLE, interval
// coverage and summary statistics, aggregated in trial order.
SimulationSummary simulate_survey_study(const MechanismPair& pair, MixtureParameter theta,
                                        std::int64_t n, int trials, double alpha,
                                        std::uint64_t seed);

// Dataset CSV with header "symbol,count", one row per symbol (1-based ids).
std::string dataset_to_csv(const SurveyDataset& data);
SurveyDataset dataset_from_csv(const std::string& text);

}  // namespace rropt
