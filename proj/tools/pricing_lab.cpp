// Command-line front end: validate configs, run replica batches, sweep
// horizons, and fit the regret growth exponent from a sweep file.
//
// Exit codes: 0 success, 2 configuration/validation error, 3 more than half
// of the requested replicas failed.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pricing/config.hpp"
#include "pricing/runner.hpp"
#include "pricing/schedule.hpp"
#include "pricing/stats.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitFailures = 3;

struct CommonOpts {
  std::string config_path;
  std::string seeds_text;
  std::int64_t horizon = 0;
  std::string out_dir;
  bool serial = false;
};

/// Loads, applies CLI overrides, and validates.  Returns false (and prints
/// to stderr) when the config cannot be used.
bool prepare_config(const CommonOpts& opts, pricing::ExperimentConfig& cfg) {
  std::vector<std::string> errors;
  cfg = pricing::load_config(opts.config_path, errors);
  if (!errors.empty()) {
    for (const auto& e : errors) std::cerr << "config error: " << e << "\n";
    return false;
  }
  if (!opts.seeds_text.empty()) {
    try {
      cfg.run.seeds = pricing::parse_seeds(opts.seeds_text);
    } catch (const std::exception& e) {
      std::cerr << "config error: --seeds: " << e.what() << "\n";
      return false;
    }
  }
  if (opts.horizon > 0) cfg.run.horizon = opts.horizon;
  if (!opts.out_dir.empty()) cfg.run.out_dir = opts.out_dir;

  const pricing::ValidationReport report = pricing::validate_config(cfg);
  for (const auto& w : report.warnings) {
    std::cerr << "warning: " << w << "\n";
  }
  if (!report.ok()) {
    for (const auto& f : report.failures) {
      std::cerr << "invalid [" << f.check << "]: " << f.detail << "\n";
    }
    return false;
  }
  return true;
}

void print_schedule_if_relevant(const pricing::ExperimentConfig& cfg) {
  if (cfg.policy.name != "c20cb") return;
  pricing::ScheduleOverrides ov;
  ov.eta = cfg.policy.eta;
  ov.delta = cfg.policy.delta;
  ov.statement_cb = cfg.policy.statement_cb;
  const auto sched = pricing::ConstantSchedule::derive(
      pricing::PolicyView::of(cfg.instance), cfg.instance.lipschitz_bound(),
      cfg.run.horizon, ov);
  std::cout << sched.to_string() << "\n";
  for (const auto& w : sched.warnings()) {
    std::cout << "schedule warning: " << w << "\n";
  }
}

int cmd_validate(const CommonOpts& opts) {
  pricing::ExperimentConfig cfg;
  if (!prepare_config(opts, cfg)) return kExitConfig;
  std::cout << "config ok: policy=" << cfg.policy.name
            << " horizon=" << cfg.run.horizon
            << " seeds=" << cfg.run.seeds.size() << "\n";
  try {
    print_schedule_if_relevant(cfg);
  } catch (const std::exception& e) {
    std::cerr << "invalid [schedule]: " << e.what() << "\n";
    return kExitConfig;
  }
  return 0;
}

int cmd_run(const CommonOpts& opts, bool per_round) {
  pricing::ExperimentConfig cfg;
  if (!prepare_config(opts, cfg)) return kExitConfig;
  if (per_round) cfg.run.per_round = true;

  const auto results =
      pricing::run_replicas(cfg, /*parallel=*/!opts.serial, cfg.run.per_round);

  const std::string out = pricing::resolve_out_dir(cfg);
  pricing::write_outputs(cfg, results, out);

  std::vector<double> ok_regrets;
  int failed = 0;
  for (const auto& r : results) {
    if (r.summary.status == "ok") {
      ok_regrets.push_back(r.summary.final_regret);
    } else {
      ++failed;
      std::cerr << "seed " << r.summary.seed << ": " << r.summary.status
                << "\n";
    }
  }
  std::cout << "replicas: " << results.size() << " ok: " << ok_regrets.size()
            << " failed: " << failed << "\n";
  if (!ok_regrets.empty()) {
    std::printf("mean final regret: %.6g (stderr %.3g)\n",
                pricing::mean(ok_regrets),
                pricing::stderr_of_mean(ok_regrets));
  }
  std::cout << "outputs: " << out << "/summary.csv\n";
  return 2 * failed > static_cast<int>(results.size()) ? kExitFailures : 0;
}

int cmd_sweep(const CommonOpts& opts, const std::string& horizons_text) {
  pricing::ExperimentConfig cfg;
  if (!prepare_config(opts, cfg)) return kExitConfig;

  std::vector<std::int64_t> horizons;
  std::istringstream hs(horizons_text);
  std::string tok;
  while (std::getline(hs, tok, ',')) {
    try {
      horizons.push_back(std::stoll(tok));
    } catch (const std::exception&) {
      std::cerr << "config error: bad horizon '" << tok << "'\n";
      return kExitConfig;
    }
  }
  if (horizons.empty()) {
    std::cerr << "config error: --horizons is empty\n";
    return kExitConfig;
  }

  const auto points = pricing::run_sweep(cfg, horizons, !opts.serial);

  const std::string out = pricing::resolve_out_dir(cfg);
  std::filesystem::create_directories(out);
  const std::string path = out + "/sweep.csv";
  {
    std::ofstream os(path);
    if (!os) {
      std::cerr << "cannot write " << path << "\n";
      return kExitConfig;
    }
    pricing::write_sweep_csv(os, points);
  }

  int total_ok = 0, total_failed = 0;
  std::vector<std::pair<double, double>> fit_points;
  for (const auto& p : points) {
    total_ok += p.n_ok;
    total_failed += p.n_failed;
    std::printf("T=%-8lld mean regret %.6g (stderr %.3g, ok %d, failed %d)\n",
                static_cast<long long>(p.horizon), p.mean_regret,
                p.stderr_regret, p.n_ok, p.n_failed);
    if (p.n_ok > 0) {
      fit_points.emplace_back(static_cast<double>(p.horizon), p.mean_regret);
    }
  }
  if (fit_points.size() >= 2) {
    const auto fit = pricing::fit_scaling(fit_points);
    std::printf("growth exponent: %.4f (r^2 %.4f, %d points)\n", fit.slope,
                fit.r2, fit.n_used);
  }
  std::cout << "outputs: " << path << "\n";
  return 2 * total_failed > total_ok + total_failed ? kExitFailures : 0;
}

int cmd_report(const std::string& in_path) {
  std::ifstream is(in_path);
  if (!is) {
    std::cerr << "cannot read " << in_path << "\n";
    return kExitConfig;
  }
  std::vector<pricing::SweepPoint> points;
  try {
    points = pricing::read_sweep_csv(is);
  } catch (const std::exception& e) {
    std::cerr << "bad sweep file: " << e.what() << "\n";
    return kExitConfig;
  }
  std::vector<std::pair<double, double>> fit_points;
  for (const auto& p : points) {
    if (p.n_ok > 0) {
      fit_points.emplace_back(static_cast<double>(p.horizon), p.mean_regret);
    }
  }
  try {
    const auto fit = pricing::fit_scaling(fit_points);
    for (const auto& w : fit.warnings) std::cerr << "warning: " << w << "\n";
    std::printf("growth exponent: %.4f\nintercept (log): %.4f\nr^2: %.4f\n"
                "points used: %d\n",
                fit.slope, fit.intercept, fit.r2, fit.n_used);
  } catch (const std::exception& e) {
    std::cerr << "fit error: " << e.what() << "\n";
    return kExitConfig;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Simulation lab for online pricing under inventory-censored demand"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string horizons_text;
  std::string in_path;
  bool per_round = false;

  auto add_common = [&](CLI::App* sub, bool need_config) {
    auto* c = sub->add_option("--config", opts.config_path,
                              "experiment config file");
    if (need_config) c->required();
    sub->add_option("--seeds", opts.seeds_text,
                    "override seeds, e.g. 7 or 1,2,5 or 1..20");
    sub->add_option("--horizon", opts.horizon, "override run.horizon");
    sub->add_option("--out", opts.out_dir, "override output directory");
    sub->add_flag("--serial", opts.serial,
                  "run replicas on one thread (results are identical)");
  };

  auto* validate = app.add_subcommand(
      "validate", "check a config and print the derived constants");
  add_common(validate, true);

  auto* run = app.add_subcommand("run", "run the configured replica batch");
  add_common(run, true);
  run->add_flag("--per-round", per_round,
                "also write a per-round trace CSV per seed");

  auto* sweep = app.add_subcommand(
      "sweep", "run the batch at several horizons and fit the growth rate");
  add_common(sweep, true);
  sweep->add_option("--horizons", horizons_text, "comma-separated horizons")
      ->required();

  auto* report =
      app.add_subcommand("report", "fit the growth exponent from a sweep CSV");
  report->add_option("--in", in_path, "sweep.csv produced by `sweep`")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(validate)) return cmd_validate(opts);
    if (app.got_subcommand(run)) return cmd_run(opts, per_round);
    if (app.got_subcommand(sweep)) return cmd_sweep(opts, horizons_text);
    if (app.got_subcommand(report)) return cmd_report(in_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return 0;
}
