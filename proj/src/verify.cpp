#include "rropt/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>
#include <utility>

#include "rropt/errors.hpp"
#include "rropt/privacy.hpp"
#include "rropt/rng.hpp"

namespace rropt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int thread_budget() {
  if (const char* env = std::getenv("RR_OPT_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

// Running argmax with a lexicographic tie-break on (p0, p1) so reductions
// are deterministic regardless of evaluation order.
struct BestCandidate {
  double value = -kInf;
  std::vector<double> p0;
  std::vector<double> p1;

  void consider(double v, const std::vector<double>& cand0,
                const std::vector<double>& cand1) {
    if (std::isnan(v)) return;
    if (v > value) {
      value = v;
      p0 = cand0;
      p1 = cand1;
      return;
    }
    if (v == value && !p0.empty() &&
        std::lexicographical_compare(
            cand0.begin(), cand0.end(), p0.begin(), p0.end())) {
      p0 = cand0;
      p1 = cand1;
    }
  }

  void merge(const BestCandidate& other) {
    if (!other.p0.empty()) consider(other.value, other.p0, other.p1);
  }
};

double psi_sum(const SublinearObjective& obj, const std::vector<double>& p0,
               const std::vector<double>& p1) {
  double sum = 0.0;
  for (std::size_t y = 0; y < p0.size(); ++y) sum += obj.psi(p0[y], p1[y]);
  return sum;
}

// Uniform draw from the simplex (flat Dirichlet) via exponential spacings.
void fill_simplex(Rng& rng, std::vector<double>& out) {
  double total = 0.0;
  for (double& v : out) {
    v = -std::log(1.0 - rng.uniform());
    total += v;
  }
  for (double& v : out) v /= total;
}

}  // namespace

SublinearObjective fisher_objective(MixtureParameter theta) {
  theta.require_interior("fisher objective");
  const double t = theta.value();
  return SublinearObjective{
      [t](double x, double y) {
        const double denom = (1.0 - t) * x + t * y;
        if (denom <= 0.0) return 0.0;
        const double d = y - x;
        return d * d / denom;
      },
      "fisher summand at theta=" + std::to_string(t),
  };
}

SublinearObjective f_divergence_objective(MixtureParameter theta1,
                                          MixtureParameter theta2,
                                          ConvexGenerator f) {
  theta1.require_interior("f-divergence objective");
  theta2.require_interior("f-divergence objective");
  const double t1 = theta1.value();
  const double t2 = theta2.value();
  return SublinearObjective{
      [t1, t2, f = std::move(f)](double x, double y) {
        const double g1 = (1.0 - t1) * x + t1 * y;
        const double g2 = (1.0 - t2) * x + t2 * y;
        if (g2 <= 0.0) {
          if (g1 <= 0.0) return 0.0;
          return f.slope_at_infinity == 0.0 ? 0.0 : g1 * f.slope_at_infinity;
        }
        if (g1 <= 0.0) {
          return f.limit_at_zero == 0.0 ? 0.0 : g2 * f.limit_at_zero;
        }
        return g2 * f.evaluate(g1 / g2);
      },
      "f-divergence summand (" + f.name + ")",
  };
}

bool sublinear_check(const SublinearObjective& obj, int samples, std::uint64_t seed) {
  if (samples < 1) throw Error("need at least one sample");
  Rng rng(seed);
  const auto draw = [&rng]() {
    const double u = rng.uniform();
    if (u < 0.1) return 0.0;  // exercise the boundary conventions
    return rng.uniform(0.0, 2.0);
  };
  for (int i = 0; i < samples; ++i) {
    const double x = draw();
    const double y = draw();
    const double alpha = rng.uniform(0.01, 2.0);
    const double scaled = obj.psi(alpha * x, alpha * y);
    const double reference = alpha * obj.psi(x, y);
    if (std::abs(scaled - reference) > 1e-9 * std::max(1.0, std::abs(reference))) {
      return false;
    }
    const double x2 = draw();
    const double y2 = draw();
    if (obj.psi(x + x2, y + y2) > obj.psi(x, y) + obj.psi(x2, y2) + 1e-9) {
      return false;
    }
  }
  return true;
}

bool convex_midpoint_check(const ConvexGenerator& f, int samples, std::uint64_t seed) {
  if (samples < 1) throw Error("need at least one sample");
  Rng rng(seed);
  for (int i = 0; i < samples; ++i) {
    const double x = rng.uniform(1e-3, 5.0);
    const double y = rng.uniform(1e-3, 5.0);
    const double fx = f.evaluate(x);
    const double fy = f.evaluate(y);
    const double mid = f.evaluate(0.5 * (x + y));
    const double scale = std::max({1.0, std::abs(fx), std::abs(fy)});
    if (mid > 0.5 * (fx + fy) + 1e-12 * scale) return false;
  }
  return true;
}

double evaluate_psi_sum(const SublinearObjective& obj, const MechanismPair& pair) {
  return psi_sum(obj, pair.p0.entries(), pair.p1.entries());
}

std::vector<MechanismPair> extreme_point_candidates(const PrivacyBudget& budget,
                                                    std::size_t alphabet_size,
                                                    int grid_points) {
  if (alphabet_size != 2 && alphabet_size != 3) {
    throw Error("extreme-point enumeration supports alphabet sizes 2 and 3");
  }
  if (grid_points < 2) throw Error("need at least two grid points");
  const double a = budget.a();
  const double w = budget.weight();
  const double x_min = a / (1.0 - w);
  const double y_min = a / w;
  const auto grid_value = [grid_points](double lo, int i) {
    if (i == grid_points - 1) return 1.0;
    return lo + (1.0 - lo) * i / (grid_points - 1);
  };

  std::vector<MechanismPair> out;
  if (alphabet_size == 3) {
    out.reserve(static_cast<std::size_t>(grid_points) * grid_points + 2 * grid_points);
    for (int i = 0; i < grid_points; ++i) {
      const double x = grid_value(x_min, i);
      for (int j = 0; j < grid_points; ++j) {
        const double y = grid_value(y_min, j);
        out.emplace_back(make_distribution({x, 1.0 - x, 0.0}),
                         make_distribution({y, 0.0, 1.0 - y}));
      }
    }
    for (int j = 0; j < grid_points; ++j) {
      const double y = grid_value(y_min, j);
      out.emplace_back(make_distribution({1.0, 0.0, 0.0}),
                       make_distribution({y, 1.0 - y, 0.0}));
    }
    for (int i = 0; i < grid_points; ++i) {
      const double x = grid_value(x_min, i);
      out.emplace_back(make_distribution({x, 1.0 - x, 0.0}),
                       make_distribution({1.0, 0.0, 0.0}));
    }
  } else {
    out.reserve(2 * grid_points);
    for (int j = 0; j < grid_points; ++j) {
      const double y = grid_value(y_min, j);
      out.emplace_back(make_distribution({1.0, 0.0}),
                       make_distribution({y, 1.0 - y}));
    }
    for (int i = 0; i < grid_points; ++i) {
      const double x = grid_value(x_min, i);
      out.emplace_back(make_distribution({x, 1.0 - x}),
                       make_distribution({1.0, 0.0}));
    }
  }
  return out;
}

SearchReport brute_force_max(const PrivacyBudget& budget, const SublinearObjective& obj,
                             double closed_form_value, std::size_t alphabet_size,
                             int grid_points, std::int64_t random_samples,
                             std::uint64_t seed) {
  if (random_samples < 0) throw Error("random_samples must be non-negative");
  const std::vector<MechanismPair> candidates =
      extreme_point_candidates(budget, alphabet_size, grid_points);
  const auto n_grid = static_cast<std::int64_t>(candidates.size());
  const std::int64_t total = n_grid + random_samples;
  const double delta_slack = budget.delta() + 1e-12;
  const double w = budget.weight();

  struct ChunkResult {
    BestCandidate best;
    std::int64_t accepted = 0;
  };

  const auto run_range = [&](std::int64_t lo, std::int64_t hi, ChunkResult& result) {
    std::vector<double> p0(alphabet_size);
    std::vector<double> p1(alphabet_size);
    for (std::int64_t idx = lo; idx < hi; ++idx) {
      if (idx < n_grid) {
        const MechanismPair& pair = candidates[static_cast<std::size_t>(idx)];
        result.best.consider(psi_sum(obj, pair.p0.entries(), pair.p1.entries()),
                             pair.p0.entries(), pair.p1.entries());
        continue;
      }
      Rng rng(seed + static_cast<std::uint64_t>(idx - n_grid));
      fill_simplex(rng, p0);
      fill_simplex(rng, p1);
      double uc = 0.0;
      for (std::size_t y = 0; y < alphabet_size; ++y) {
        uc += std::abs((1.0 - w) * p0[y] - w * p1[y]);
      }
      if (uc > delta_slack) continue;
      ++result.accepted;
      result.best.consider(psi_sum(obj, p0, p1), p0, p1);
    }
  };

  ChunkResult merged;
  const int threads = std::min<std::int64_t>(thread_budget(), std::max<std::int64_t>(1, total / 4096));
  if (threads <= 1) {
    run_range(0, total, merged);
  } else {
    std::vector<ChunkResult> results(threads);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int k = 0; k < threads; ++k) {
      const std::int64_t lo = total * k / threads;
      const std::int64_t hi = total * (k + 1) / threads;
      pool.emplace_back(run_range, lo, hi, std::ref(results[k]));
    }
    for (auto& worker : pool) worker.join();
    for (const ChunkResult& r : results) {
      merged.best.merge(r.best);
      merged.accepted += r.accepted;
    }
  }

  MechanismPair best_pair(make_distribution(merged.best.p0),
                          make_distribution(merged.best.p1));
  return SearchReport{
      merged.best.value,
      std::move(best_pair),
      n_grid + merged.accepted,
      closed_form_value,
      closed_form_value - merged.best.value,
      random_samples,
      merged.accepted,
  };
}

std::pair<bool, bool> convexity_equality_holds(const MechanismPair& qpair,
                                               const MechanismPair& qpair2,
                                               MixtureParameter theta, double t) {
  if (qpair.size() != qpair2.size()) {
    throw Error("pairs must share an alphabet size");
  }
  if (!(t > 0.0 && t < 1.0)) throw Error("t must lie in (0,1)");
  theta.require_interior("convexity equality check");

  std::vector<double> m0(qpair.size());
  std::vector<double> m1(qpair.size());
  bool det_zero = true;
  for (std::size_t y = 0; y < qpair.size(); ++y) {
    m0[y] = (1.0 - t) * qpair.p0[y] + t * qpair2.p0[y];
    m1[y] = (1.0 - t) * qpair.p1[y] + t * qpair2.p1[y];
    const double det = qpair.p1[y] * qpair2.p0[y] - qpair.p0[y] * qpair2.p1[y];
    if (std::abs(det) > 1e-12) det_zero = false;
  }
  const MechanismPair mixed(make_distribution(std::move(m0)),
                            make_distribution(std::move(m1)));
  const double j_mixed = fisher_information(mixed, theta);
  const double j_combo = (1.0 - t) * fisher_information(qpair, theta) +
                         t * fisher_information(qpair2, theta);
  return {std::abs(j_mixed - j_combo) <= 1e-10, det_zero};
}

}  // namespace rropt
