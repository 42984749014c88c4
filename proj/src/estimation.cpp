#include "rropt/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "rropt/errors.hpp"
#include "rropt/information.hpp"
#include "rropt/rng.hpp"

namespace rropt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kThetaTol = 1e-10;

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error("alpha must lie in (0,1)");
}

// Log-likelihood derivative sum_y counts(y) (p1(y)-p0(y)) / p_theta(y).
// Decreasing in theta because the log-likelihood is concave (p_theta is
// affine in theta). At theta = 0 or 1 a vanishing p_theta(y) with counts
// contributes a signed infinity, which bisection handles as a sign.
double loglik_derivative(const MechanismPair& pair, const SurveyDataset& data,
                         double theta) {
  double sum = 0.0;
  for (std::size_t y = 0; y < pair.size(); ++y) {
    if (data.counts[y] == 0) continue;
    const double d = pair.p1[y] - pair.p0[y];
    if (d == 0.0) continue;
    const double pt = (1.0 - theta) * pair.p0[y] + theta * pair.p1[y];
    if (pt <= 0.0) {
      sum += d > 0.0 ? kInf : -kInf;
    } else {
      sum += static_cast<double>(data.counts[y]) * d / pt;
    }
  }
  return sum;
}

}  // namespace

SurveyDataset sample_survey(const MechanismPair& pair, MixtureParameter theta,
                            std::int64_t n, std::uint64_t seed) {
  if (n < 1) throw Error("need at least one respondent");
  Rng rng(seed);
  const double t = theta.value();
  SurveyDataset data;
  data.counts.assign(pair.size(), 0);
  data.n = n;
  for (std::int64_t i = 0; i < n; ++i) {
    const ProbabilityVector& row = rng.uniform() < t ? pair.p1 : pair.p0;
    const double u = rng.uniform();
    double cum = 0.0;
    std::size_t y = pair.size() - 1;
    for (std::size_t k = 0; k < pair.size(); ++k) {
      cum += row[k];
      if (u < cum) {
        y = k;
        break;
      }
    }
    ++data.counts[y];
  }
  return data;
}

EstimateResult mle(const MechanismPair& pair, const SurveyDataset& data,
                   double alpha) {
  check_alpha(alpha);
  if (data.counts.size() != pair.size()) {
    throw Error("dataset alphabet does not match the mechanism");
  }
  std::int64_t total = 0;
  for (std::size_t y = 0; y < pair.size(); ++y) {
    if (data.counts[y] < 0) throw Error("negative count");
    total += data.counts[y];
    if (data.counts[y] > 0 && pair.p0[y] <= 0.0 && pair.p1[y] <= 0.0) {
      throw DegenerateLikelihood("observed a symbol both rows assign zero mass");
    }
  }
  if (total < 1 || total != data.n) throw Error("counts must sum to n >= 1");

  EstimateResult result;
  result.alpha = alpha;

  bool informative = false;
  for (std::size_t y = 0; y < pair.size(); ++y) {
    if (data.counts[y] > 0 && pair.p0[y] != pair.p1[y]) informative = true;
  }
  if (!informative) {
    result.theta_hat = 0.5;
    result.uninformative = true;
  } else if (loglik_derivative(pair, data, 0.0) <= 0.0) {
    result.theta_hat = 0.0;
  } else if (loglik_derivative(pair, data, 1.0) >= 0.0) {
    result.theta_hat = 1.0;
  } else {
    double lo = 0.0;
    double hi = 1.0;
    while (hi - lo > kThetaTol) {
      const double mid = 0.5 * (lo + hi);
      (loglik_derivative(pair, data, mid) >= 0.0 ? lo : hi) = mid;
    }
    result.theta_hat = 0.5 * (lo + hi);
  }

  result.fisher_at_hat =
      fisher_information(pair, std::clamp(result.theta_hat, 1e-9, 1.0 - 1e-9));
  if (result.fisher_at_hat > 0.0) {
    std::tie(result.ci_lo, result.ci_hi) =
        confidence_interval(result.theta_hat, result.fisher_at_hat, data.n, alpha);
  } else {
    result.ci_lo = 0.0;
    result.ci_hi = 1.0;
  }
  return result;
}

std::pair<double, double> confidence_interval(double theta_hat, double fisher,
                                              std::int64_t n, double alpha) {
  if (!(fisher > 0.0)) throw NonPositiveFisher("confidence interval needs fisher > 0");
  if (n < 1) throw Error("need n >= 1");
  check_alpha(alpha);
  const double half_width =
      normal_quantile(1.0 - alpha / 2.0) / std::sqrt(static_cast<double>(n) * fisher);
  return {std::max(0.0, theta_hat - half_width),
          std::min(1.0, theta_hat + half_width)};
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw Error("quantile argument must lie in (0,1)");
  // Reflect the upper tail onto the lower: 1 - p is exact for p >= 1/2, and
  // the Halley residual below keeps full precision only where erfc is tiny.
  if (p > 0.5) return -normal_quantile(1.0 - p);

  // Acklam's rational approximation (~1e-9 relative), then one Halley step
  // against the erfc-based CDF.
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double p_low = 0.02425;

  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  }

  static const double kSqrt2Pi = std::sqrt(8.0 * std::atan(1.0));
  const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
  const double u = e * kSqrt2Pi * std::exp(0.5 * x * x);
  return x - u / (1.0 + 0.5 * x * u);
}

double monte_carlo_mse(const MechanismPair& pair, MixtureParameter theta,
                       std::int64_t n, int trials, std::uint64_t seed) {
  return simulate_survey_study(pair, theta, n, trials, 0.05, seed).mse;
}

SimulationSummary simulate_survey_study(const MechanismPair& pair, MixtureParameter theta,
                                        std::int64_t n, int trials, double alpha,
                                        std::uint64_t seed) {
  if (trials < 1) throw Error("need at least one trial");
  check_alpha(alpha);
  const double t = theta.value();
  SimulationSummary out;
  out.trials = trials;
  out.crb = 1.0 / (static_cast<double>(n) * fisher_information(pair, theta));
  out.theta_hat_min = kInf;
  out.theta_hat_max = -kInf;
  double sq_sum = 0.0;
  double hat_sum = 0.0;
  int covered = 0;
  for (int trial = 0; trial < trials; ++trial) {
    const SurveyDataset data =
        sample_survey(pair, theta, n, seed + static_cast<std::uint64_t>(trial));
    const EstimateResult est = mle(pair, data, alpha);
    const double err = est.theta_hat - t;
    sq_sum += err * err;
    hat_sum += est.theta_hat;
    out.theta_hat_min = std::min(out.theta_hat_min, est.theta_hat);
    out.theta_hat_max = std::max(out.theta_hat_max, est.theta_hat);
    if (est.ci_lo <= t && t <= est.ci_hi) ++covered;
    if (est.uninformative) ++out.uninformative_trials;
  }
  out.mse = sq_sum / trials;
  out.theta_hat_mean = hat_sum / trials;
  out.coverage = static_cast<double>(covered) / trials;
  return out;
}

std::string dataset_to_csv(const SurveyDataset& data) {
  std::ostringstream os;
  os << "symbol,count\n";
  for (std::size_t y = 0; y < data.counts.size(); ++y) {
    os << (y + 1) << ',' << data.counts[y] << '\n';
  }
  return os.str();
}

SurveyDataset dataset_from_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line != "symbol,count") {
    throw Error("dataset CSV must start with header symbol,count");
  }
  SurveyDataset data;
  std::size_t expected = 1;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw Error("malformed dataset row: " + line);
    const std::size_t symbol = std::stoull(line.substr(0, comma));
    const std::int64_t count = std::stoll(line.substr(comma + 1));
    if (symbol != expected) throw Error("dataset symbols must run 1..|Y| in order");
    if (count < 0) throw Error("negative count in dataset");
    data.counts.push_back(count);
    data.n += count;
    ++expected;
  }
  if (data.counts.empty()) throw Error("dataset CSV has no rows");
  return data;
}

}  // namespace rropt
