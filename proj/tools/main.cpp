#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rropt/core.hpp"
#include "rropt/errors.hpp"
#include "rropt/estimation.hpp"
#include "rropt/exponents.hpp"
#include "rropt/information.hpp"
#include "rropt/mechanism_json.hpp"
#include "rropt/mechanisms.hpp"
#include "rropt/privacy.hpp"
#include "rropt/verify.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;
constexpr int kExitMetricMismatch = 4;
constexpr int kExitCertification = 5;

// Flag combination problems that CLI11 cannot express (per-scheme or
// per-figure requirements).
struct UsageError {
  std::string message;
};

// Metric given parameters it does not consume, or missing ones it needs.
struct MetricMismatch {
  std::string message;
};

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw rropt::Error("cannot open output file: " + path);
  out << text;
}

void require_flag(const CLI::Option* opt, const std::string& context) {
  if (opt->count() == 0) {
    throw UsageError{opt->get_name() + " is required for " + context};
  }
}

struct MechOptions {
  std::string scheme;
  double delta = 0.0;
  double weight = 0.0;
  double theta = 0.0;
  double eta = 0.0;
  std::string family_spec;
  CLI::Option* weight_opt = nullptr;
  CLI::Option* theta_opt = nullptr;
  CLI::Option* eta_opt = nullptr;
  CLI::Option* family_opt = nullptr;
};

rropt::OptimalFamilyParams read_family_spec(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw rropt::Error("cannot open family spec: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw rropt::Error(std::string("invalid family spec JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("b") || !j["b"].is_array() ||
      !j.contains("r1") || !j.contains("r2") || !j.contains("r3")) {
    throw rropt::Error("family spec needs keys b (array), r1, r2, r3");
  }
  rropt::OptimalFamilyParams params;
  for (const auto& v : j["b"]) {
    if (!v.is_number()) throw rropt::Error("non-numeric entry in family spec b");
    params.b.push_back(v.get<double>());
  }
  params.r1 = j["r1"].get<std::size_t>();
  params.r2 = j["r2"].get<std::size_t>();
  params.r3 = j["r3"].get<std::size_t>();
  return params;
}

int run_mech(const MechOptions& o) {
  if (!(o.delta > 0.0 && o.delta < 1.0)) {
    throw rropt::Error("delta must lie in (0,1)");
  }
  const auto pair = [&]() -> rropt::MechanismPair {
    if (o.scheme == "warner") return rropt::warner(o.delta);
    if (o.scheme == "greenberg") {
      require_flag(o.eta_opt, "scheme greenberg");
      return rropt::greenberg(o.delta, o.eta);
    }
    if (o.scheme == "holohan") {
      require_flag(o.theta_opt, "scheme holohan");
      return rropt::holohan(o.delta, o.theta);
    }
    require_flag(o.weight_opt, "scheme " + o.scheme);
    const rropt::PrivacyBudget budget(o.delta, o.weight);
    if (o.scheme == "optimal3") return rropt::optimal_three_symbol(budget);
    if (o.scheme == "optimal2") {
      require_flag(o.theta_opt, "scheme optimal2");
      return rropt::optimal_two_symbol(budget, o.theta);
    }
    require_flag(o.family_opt, "scheme family");
    return rropt::optimal_family(budget, read_family_spec(o.family_spec));
  }();
  std::cout << rropt::mechanism_to_json(pair) << "\n";
  return 0;
}

struct EvalOptions {
  std::string mech_path;
  std::string metric;
  double theta = 0.0;
  double theta1 = 0.0;
  double theta2 = 0.0;
  double weight = 0.0;
  double s = 0.0;
  double rate = 0.0;
  double epsilon = 0.0;
  CLI::Option* theta_opt = nullptr;
  CLI::Option* theta1_opt = nullptr;
  CLI::Option* theta2_opt = nullptr;
  CLI::Option* weight_opt = nullptr;
  CLI::Option* s_opt = nullptr;
  CLI::Option* rate_opt = nullptr;
  CLI::Option* epsilon_opt = nullptr;
};

int run_eval(const EvalOptions& o) {
  const auto need = [&](const CLI::Option* opt) {
    if (opt->count() == 0) {
      throw MetricMismatch{opt->get_name() + " is required for metric " + o.metric};
    }
  };
  const auto forbid = [&](const CLI::Option* opt) {
    if (opt->count() != 0) {
      throw MetricMismatch{opt->get_name() + " does not apply to metric " + o.metric};
    }
  };
  const auto need_pair_thetas = [&]() {
    need(o.theta1_opt);
    need(o.theta2_opt);
    forbid(o.theta_opt);
  };

  const rropt::MechanismPair pair = rropt::load_mechanism(o.mech_path);
  nlohmann::json out;
  if (o.metric == "fisher") {
    need(o.theta_opt);
    for (const auto* opt : {o.theta1_opt, o.theta2_opt, o.weight_opt, o.s_opt,
                            o.rate_opt, o.epsilon_opt}) {
      forbid(opt);
    }
    out["fisher"] = rropt::fisher_information(pair, o.theta);
  } else if (o.metric == "uc") {
    need(o.weight_opt);
    for (const auto* opt : {o.theta_opt, o.theta1_opt, o.theta2_opt, o.s_opt,
                            o.rate_opt, o.epsilon_opt}) {
      forbid(opt);
    }
    out["uc"] = rropt::uc_security(pair, o.weight);
  } else if (o.metric == "dp") {
    for (const auto* opt : {o.theta_opt, o.theta1_opt, o.theta2_opt, o.weight_opt,
                            o.s_opt, o.rate_opt}) {
      forbid(opt);
    }
    out["dp"] = rropt::dp_delta(pair, o.epsilon);
  } else if (o.metric == "renyi") {
    need_pair_thetas();
    need(o.s_opt);
    for (const auto* opt : {o.weight_opt, o.rate_opt, o.epsilon_opt}) forbid(opt);
    out["renyi"] = rropt::renyi_divergence(pair, o.theta1, o.theta2, o.s);
  } else if (o.metric == "kl") {
    need_pair_thetas();
    for (const auto* opt : {o.weight_opt, o.s_opt, o.rate_opt, o.epsilon_opt}) {
      forbid(opt);
    }
    out["kl"] = rropt::renyi_divergence(pair, o.theta1, o.theta2, 0.0);
  } else if (o.metric == "chernoff" || o.metric == "stein") {
    need_pair_thetas();
    for (const auto* opt : {o.weight_opt, o.s_opt, o.rate_opt, o.epsilon_opt}) {
      forbid(opt);
    }
    if (o.metric == "stein") {
      out["stein"] = rropt::stein_exponent(pair, o.theta1, o.theta2);
    } else {
      const auto r = rropt::chernoff_exponent(pair, o.theta1, o.theta2);
      out["chernoff"] = r.value;
      out["s_star"] = r.s_star;
    }
  } else {  // hoeffding | hk
    need_pair_thetas();
    need(o.rate_opt);
    for (const auto* opt : {o.weight_opt, o.s_opt, o.epsilon_opt}) forbid(opt);
    const auto r = o.metric == "hoeffding"
                       ? rropt::hoeffding_exponent(pair, o.theta1, o.theta2, o.rate)
                       : rropt::han_kobayashi(pair, o.theta1, o.theta2, o.rate);
    out[o.metric] = r.value;
    out["s_star"] = r.s_star;
  }
  std::cout << out.dump() << "\n";
  return 0;
}

struct SweepOptions {
  int figure = 0;
  double delta = 0.25;
  double weight = 0.5;
  int grid = 99;
  std::string out_path;
};

int run_sweep(const SweepOptions& o) {
  if (o.grid < 1) throw rropt::Error("grid must be at least 1");
  const rropt::PrivacyBudget budget(o.delta, o.weight);
  const auto theta_at = [&](int i) { return static_cast<double>(i) / (o.grid + 1); };

  std::string csv;
  if (o.figure == 2) {
    csv = "theta,max_y2,max_y3\n";
    for (int i = 1; i <= o.grid; ++i) {
      const double theta = theta_at(i);
      csv += format_number(theta);
      csv += ',';
      csv += format_number(rropt::max_fisher(budget, theta, 2));
      csv += ',';
      csv += format_number(rropt::max_fisher(budget, theta, 3));
      csv += '\n';
    }
  } else if (o.figure == 3) {
    const rropt::MechanismPair warner_pair = rropt::warner(o.delta);
    const rropt::MechanismPair greenberg_pair = rropt::greenberg(o.delta, 0.5);
    const rropt::MechanismPair optimal_pair = rropt::optimal_three_symbol(budget);
    csv = "theta,warner,greenberg_eta_half,holohan,optimal3\n";
    for (int i = 1; i <= o.grid; ++i) {
      const double theta = theta_at(i);
      const rropt::MechanismPair holohan_pair = rropt::holohan(o.delta, theta);
      csv += format_number(theta);
      csv += ',';
      csv += format_number(rropt::fisher_information(warner_pair, theta));
      csv += ',';
      csv += format_number(rropt::fisher_information(greenberg_pair, theta));
      csv += ',';
      csv += format_number(rropt::fisher_information(holohan_pair, theta));
      csv += ',';
      csv += format_number(rropt::fisher_information(optimal_pair, theta));
      csv += '\n';
    }
  } else {
    csv = "theta1,theta2,max_relative_entropy\n";
    for (int i = 1; i <= o.grid; ++i) {
      for (int j = 1; j <= o.grid; ++j) {
        const double theta1 = theta_at(i);
        const double theta2 = theta_at(j);
        csv += format_number(theta1);
        csv += ',';
        csv += format_number(theta2);
        csv += ',';
        csv += format_number(rropt::max_renyi(budget, theta1, theta2, 0.0));
        csv += '\n';
      }
    }
  }
  write_text(o.out_path, csv);
  return 0;
}

struct SimulateOptions {
  std::string mech_path;
  double theta = 0.0;
  std::int64_t n = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  double alpha = 0.05;
  std::string data_out;
};

int run_simulate(const SimulateOptions& o) {
  const rropt::MechanismPair pair = rropt::load_mechanism(o.mech_path);
  const rropt::SimulationSummary s =
      rropt::simulate_survey_study(pair, o.theta, o.n, o.trials, o.alpha, o.seed);
  if (!o.data_out.empty()) {
    const rropt::SurveyDataset first =
        rropt::sample_survey(pair, o.theta, o.n, o.seed);
    write_text(o.data_out, rropt::dataset_to_csv(first));
  }
  nlohmann::json out;
  out["alpha"] = o.alpha;
  out["coverage"] = s.coverage;
  out["crb"] = s.crb;
  out["mse"] = s.mse;
  out["mse_over_crb"] = s.mse / s.crb;
  out["n"] = o.n;
  out["seed"] = o.seed;
  out["theta"] = o.theta;
  out["theta_hat_max"] = s.theta_hat_max;
  out["theta_hat_mean"] = s.theta_hat_mean;
  out["theta_hat_min"] = s.theta_hat_min;
  out["trials"] = s.trials;
  out["uninformative_trials"] = s.uninformative_trials;
  std::cout << out.dump() << "\n";
  return 0;
}

struct VerifyOptions {
  std::string objective;
  double delta = 0.0;
  double weight = 0.0;
  double theta = 0.0;
  double theta1 = 0.0;
  double theta2 = 0.0;
  double s = 0.0;
  int grid = 400;
  std::int64_t samples = 100000;
  std::uint64_t seed = 0;
  std::size_t alphabet = 3;
  double expect = 0.0;
  CLI::Option* theta_opt = nullptr;
  CLI::Option* theta1_opt = nullptr;
  CLI::Option* theta2_opt = nullptr;
  CLI::Option* s_opt = nullptr;
  CLI::Option* expect_opt = nullptr;
};

int run_verify(const VerifyOptions& o) {
  const rropt::PrivacyBudget budget(o.delta, o.weight);
  rropt::SublinearObjective objective{{}, ""};
  double closed_form = 0.0;
  if (o.objective == "fisher") {
    require_flag(o.theta_opt, "objective fisher");
    objective = rropt::fisher_objective(o.theta);
    closed_form = rropt::max_fisher(budget, o.theta, o.alphabet);
  } else {
    if (o.alphabet != 3) {
      throw UsageError{"--size other than 3 is only supported for --objective fisher"};
    }
    require_flag(o.theta1_opt, "objective " + o.objective);
    require_flag(o.theta2_opt, "objective " + o.objective);
    if (o.objective == "kl") {
      objective = rropt::f_divergence_objective(o.theta1, o.theta2, rropt::kl_generator());
      closed_form =
          rropt::max_f_divergence(budget, o.theta1, o.theta2, rropt::kl_generator());
    } else {
      require_flag(o.s_opt, "objective renyi");
      objective =
          rropt::f_divergence_objective(o.theta1, o.theta2, rropt::renyi_generator(o.s));
      closed_form =
          rropt::max_f_divergence(budget, o.theta1, o.theta2, rropt::renyi_generator(o.s));
    }
  }
  if (o.expect_opt->count() != 0) closed_form = o.expect;

  const rropt::SearchReport report = rropt::brute_force_max(
      budget, objective, closed_form, o.alphabet, o.grid, o.samples, o.seed);

  nlohmann::json out;
  out["best_pair"]["p0"] = report.best_pair.p0.entries();
  out["best_pair"]["p1"] = report.best_pair.p1.entries();
  out["best_value"] = report.best_value;
  out["candidates_examined"] = report.candidates_examined;
  out["closed_form_value"] = report.closed_form_value;
  out["gap"] = report.gap;
  out["random_accepted"] = report.random_accepted;
  out["random_attempts"] = report.random_attempts;
  std::cout << out.dump() << "\n";

  if (report.gap < -1e-9) {
    std::cerr << "certification failed: search exceeded the closed form by "
              << format_number(-report.gap) << "\n";
    return kExitCertification;
  }
  if (report.gap > 1e-3) {
    std::cerr << "certification failed: search missed the closed form by "
              << format_number(report.gap) << "\n";
    return kExitCertification;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Optimal binary randomized response under an l1 privacy budget.\n"
      "Exit codes: 0 ok, 2 usage, 3 invalid parameter/domain, 4 metric/parameter\n"
      "mismatch, 5 certification failure."};
  app.require_subcommand(1);

  MechOptions mech;
  CLI::App* mech_cmd = app.add_subcommand(
      "mech", "Construct a mechanism and print its JSON {\"p0\":[...],\"p1\":[...]}");
  mech_cmd
      ->add_option("--scheme", mech.scheme,
                   "one of optimal3|optimal2|warner|greenberg|holohan|family")
      ->required()
      ->check(CLI::IsMember(
          {"optimal3", "optimal2", "warner", "greenberg", "holohan", "family"}));
  mech_cmd->add_option("--delta", mech.delta, "privacy budget delta in (0,1)")
      ->required();
  mech.weight_opt = mech_cmd->add_option(
      "--weight", mech.weight, "prior weight w (optimal3/optimal2/family)");
  mech.theta_opt = mech_cmd->add_option(
      "--theta", mech.theta, "population ratio theta (optimal2/holohan)");
  mech.eta_opt = mech_cmd->add_option(
      "--eta", mech.eta, "unrelated-answer rate eta (greenberg)");
  mech.family_opt = mech_cmd->add_option(
      "--family-spec", mech.family_spec,
      "JSON file with keys b (array), r1, r2, r3 (family)");

  EvalOptions eval;
  CLI::App* eval_cmd =
      app.add_subcommand("eval", "Evaluate one metric of a mechanism JSON file");
  eval_cmd->add_option("--mech", eval.mech_path, "mechanism JSON file")->required();
  eval_cmd
      ->add_option("--metric", eval.metric,
                   "one of fisher|uc|dp|renyi|kl|chernoff|stein|hoeffding|hk")
      ->required()
      ->check(CLI::IsMember({"fisher", "uc", "dp", "renyi", "kl", "chernoff",
                             "stein", "hoeffding", "hk"}));
  eval.theta_opt = eval_cmd->add_option("--theta", eval.theta, "theta (fisher)");
  eval.theta1_opt =
      eval_cmd->add_option("--theta1", eval.theta1, "first mixture parameter");
  eval.theta2_opt =
      eval_cmd->add_option("--theta2", eval.theta2, "second mixture parameter");
  eval.weight_opt = eval_cmd->add_option("--weight", eval.weight, "prior weight (uc)");
  eval.s_opt = eval_cmd->add_option("--s", eval.s, "Renyi order offset s > -1 (renyi)");
  eval.rate_opt =
      eval_cmd->add_option("--rate", eval.rate, "type-I rate r >= 0 (hoeffding/hk)");
  eval.epsilon_opt =
      eval_cmd->add_option("--epsilon", eval.epsilon, "DP epsilon >= 0 (dp, default 0)");

  SweepOptions sweep;
  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "Write a figure-reproduction CSV over a theta grid in (0,1)");
  sweep_cmd->add_option("--figure", sweep.figure, "2, 3, or 4")
      ->required()
      ->check(CLI::Range(2, 4));
  sweep_cmd->add_option("--delta", sweep.delta, "privacy budget delta (default 0.25)");
  sweep_cmd->add_option("--weight", sweep.weight, "prior weight w (default 0.5)");
  sweep_cmd->add_option("--grid", sweep.grid,
                        "N interior grid points; N rows, N^2 for figure 4 (default 99)");
  sweep_cmd->add_option("--out", sweep.out_path, "output path (default: stdout)");

  SimulateOptions simulate;
  CLI::App* simulate_cmd = app.add_subcommand(
      "simulate", "Run seeded survey trials with MLE recovery; print a report JSON");
  simulate_cmd->add_option("--mech", simulate.mech_path, "mechanism JSON file")
      ->required();
  simulate_cmd->add_option("--theta", simulate.theta, "true population ratio")
      ->required();
  simulate_cmd->add_option("--n", simulate.n, "respondents per trial")->required();
  simulate_cmd->add_option("--trials", simulate.trials, "number of trials")->required();
  simulate_cmd->add_option("--seed", simulate.seed, "RNG seed")->required();
  simulate_cmd->add_option("--alpha", simulate.alpha,
                           "CI miss probability (default 0.05)");
  simulate_cmd->add_option("--data-out", simulate.data_out,
                           "write the first trial's dataset CSV here");

  VerifyOptions verify;
  CLI::App* verify_cmd = app.add_subcommand(
      "verify", "Certify a closed-form maximum against a brute-force search");
  verify_cmd->add_option("--objective", verify.objective, "one of fisher|kl|renyi")
      ->required()
      ->check(CLI::IsMember({"fisher", "kl", "renyi"}));
  verify_cmd->add_option("--delta", verify.delta, "privacy budget delta")->required();
  verify_cmd->add_option("--weight", verify.weight, "prior weight w")->required();
  verify.theta_opt = verify_cmd->add_option("--theta", verify.theta, "theta (fisher)");
  verify.theta1_opt =
      verify_cmd->add_option("--theta1", verify.theta1, "first mixture parameter");
  verify.theta2_opt =
      verify_cmd->add_option("--theta2", verify.theta2, "second mixture parameter");
  verify.s_opt = verify_cmd->add_option("--s", verify.s, "Renyi order offset (renyi)");
  verify_cmd->add_option("--grid", verify.grid,
                         "extreme-point grid resolution (default 400)");
  verify_cmd->add_option("--samples", verify.samples,
                         "random feasible-pair draws (default 100000)");
  verify_cmd->add_option("--seed", verify.seed, "RNG seed")->required();
  verify_cmd->add_option("--size", verify.alphabet,
                         "alphabet size 2 or 3 (default 3; 2 needs --objective fisher)");
  verify.expect_opt = verify_cmd->add_option(
      "--expect", verify.expect, "override the closed-form value (test hook)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*mech_cmd) return run_mech(mech);
    if (*eval_cmd) return run_eval(eval);
    if (*sweep_cmd) return run_sweep(sweep);
    if (*simulate_cmd) return run_simulate(simulate);
    return run_verify(verify);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.message << "\n";
    return kExitUsage;
  } catch (const MetricMismatch& e) {
    std::cerr << "metric mismatch: " << e.message << "\n";
    return kExitMetricMismatch;
  } catch (const rropt::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  }
}
