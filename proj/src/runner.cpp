#include "pricing/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "pricing/baselines.hpp"
#include "pricing/c20cb.hpp"
#include "pricing/market.hpp"
#include "pricing/oracle.hpp"
#include "pricing/schedule.hpp"

namespace pricing {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

/// Commas inside failure reasons would break the one-row-per-replica CSV.
std::string sanitize(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

std::unique_ptr<Policy> build_policy(const ExperimentConfig& cfg,
                                     const NoiseModel& noise,
                                     std::uint64_t seed) {
  const PolicyView view = PolicyView::of(cfg.instance);
  const std::int64_t horizon = cfg.run.horizon;
  if (cfg.policy.name == "c20cb") {
    ScheduleOverrides ov;
    ov.eta = cfg.policy.eta;
    ov.delta = cfg.policy.delta;
    ov.statement_cb = cfg.policy.statement_cb;
    const ConstantSchedule sched = ConstantSchedule::derive(
        view, cfg.instance.lipschitz_bound(), horizon, ov);
    return std::make_unique<C20cbPolicy>(sched, view, seed,
                                         cfg.policy.gamma0_variant);
  }
  if (cfg.policy.name == "etc") {
    int window = cfg.policy.etc_window;
    if (window <= 0) {
      window = static_cast<int>(std::max<std::int64_t>(
          16, std::llround(std::sqrt(static_cast<double>(horizon)))));
    }
    return std::make_unique<EtcPolicy>(view, window, seed);
  }
  if (cfg.policy.name == "ucb") {
    int arms = cfg.policy.ucb_arms;
    if (arms <= 0) {
      arms = static_cast<int>(
          std::ceil(std::pow(static_cast<double>(horizon), 1.0 / 3.0)));
    }
    return std::make_unique<UcbGridPolicy>(view, arms);
  }
  if (cfg.policy.name == "oracle") {
    return std::make_unique<OraclePolicy>(cfg.instance, noise);
  }
  throw std::invalid_argument("unknown policy: " + cfg.policy.name);
}

}  // namespace

ReplicaResult run_replica(const ExperimentConfig& cfg, std::uint64_t seed,
                          bool keep_trace) {
  const auto start = std::chrono::steady_clock::now();
  ReplicaResult result;
  RunSummary& s = result.summary;
  s.seed = seed;
  s.policy = cfg.policy.name;
  s.horizon = cfg.run.horizon;
  s.a_err = kNaN;
  s.b_err = kNaN;
  s.coverage = kNaN;
  s.final_regret = kNaN;

  // The policy must outlive the try block: estimator state is read for the
  // summary even when the run failed partway.
  std::unique_ptr<NoiseModel> noise;
  std::unique_ptr<Policy> policy;
  try {
    noise = cfg.instance.make_noise();
    const InventoryGenerator inventory(cfg.inventory, seed);
    const MarketSim sim(cfg.instance, *noise, inventory, seed,
                        cfg.run.horizon);
    policy = build_policy(cfg, *noise, seed);

    if (keep_trace) {
      result.trace.reserve(static_cast<std::size_t>(cfg.run.horizon));
    }
    RegretLedger ledger(/*keep_entries=*/false);
    std::int64_t covered = 0;

    for (std::int64_t t = 0; t < cfg.run.horizon; ++t) {
      const double gamma = sim.reveal(t);
      const PolicyDecision decision = policy->act(gamma);
      const RoundOutcome outcome = sim.step(t, decision.price);
      policy->learn(decision, outcome.observation());

      const RevenueCurve curve(cfg.instance.a, cfg.instance.b, gamma, *noise);
      const OptimalPrice opt = optimal_price(curve, cfg.instance.p_max);
      const double expected_revenue = curve.revenue(decision.price);
      // Throws when the round index regresses or the "optimum" is beaten.
      ledger.record(t + 1, decision.price, expected_revenue, opt.price,
                    opt.revenue);
      const double inst = std::max(opt.revenue - expected_revenue, 0.0);

      if (decision.clamped) ++s.clamped;
      const bool coverage_round =
          decision.record_feedback && !decision.clamped &&
          (decision.round_case == RoundCase::bar_contains_zero ||
           decision.round_case == RoundCase::closest_to_zero);
      if (coverage_round) {
        ++s.coverage_rounds;
        if (std::fabs(curve.derivative(decision.price) - decision.r_hat) <=
            decision.bar_half_width) {
          ++covered;
        }
      }

      if (keep_trace) {
        TraceRow row;
        row.t = t + 1;
        row.round_case = decision.round_case;
        row.gamma = gamma;
        row.price = decision.price;
        row.bin = decision.bin;
        row.d_potential = outcome.d_potential;
        row.d_observed = outcome.d_observed;
        row.indicator = outcome.indicator ? 1 : 0;
        row.reward = outcome.reward;
        row.opt_price = opt.price;
        row.opt_reward = opt.revenue;
        row.regret_inst = inst;
        row.regret_cum = ledger.cumulative();
        result.trace.push_back(row);
      }
    }
    s.final_regret = ledger.cumulative();
    if (s.coverage_rounds > 0) {
      s.coverage =
          static_cast<double>(covered) / static_cast<double>(s.coverage_rounds);
    }
  } catch (const std::exception& e) {
    s.status = "failed: " + sanitize(e.what());
  }

  const auto* c20cb = dynamic_cast<const C20cbPolicy*>(policy.get());
  const auto* etc = dynamic_cast<const EtcPolicy*>(policy.get());
  if (c20cb != nullptr && c20cb->estimates_ready()) {
    s.a_err = std::fabs(c20cb->estimates().a_hat - cfg.instance.a);
    s.b_err = std::fabs(c20cb->estimates().b_hat - cfg.instance.b);
    s.tau_effective = c20cb->tau_effective();
  } else if (etc != nullptr && etc->committed()) {
    s.a_err = std::fabs(etc->estimates().a_hat - cfg.instance.a);
    s.b_err = std::fabs(etc->estimates().b_hat - cfg.instance.b);
  }

  s.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return result;
}

std::vector<ReplicaResult> run_replicas(const ExperimentConfig& cfg,
                                        bool parallel, bool keep_trace) {
  const auto& seeds = cfg.run.seeds;
  std::vector<ReplicaResult> results(seeds.size());
  const auto n = static_cast<std::int64_t>(seeds.size());
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < n; ++i) {
      results[static_cast<std::size_t>(i)] = run_replica(
          cfg, seeds[static_cast<std::size_t>(i)], keep_trace);
    }
  } else {
    for (std::int64_t i = 0; i < n; ++i) {
      results[static_cast<std::size_t>(i)] = run_replica(
          cfg, seeds[static_cast<std::size_t>(i)], keep_trace);
    }
  }
  return results;
}

void write_trace_csv(std::ostream& os, const std::vector<TraceRow>& rows) {
  os << "t,stage,gamma,price,bin,d_potential,d_observed,indicator,reward,"
        "opt_price,opt_reward,regret_inst,regret_cum\n";
  for (const TraceRow& r : rows) {
    os << r.t << ',' << to_label(r.round_case) << ',' << fmt_double(r.gamma)
       << ',' << fmt_double(r.price) << ',';
    if (r.bin == kNoBin) {
      os << "NA";
    } else {
      os << r.bin;
    }
    os << ',' << fmt_double(r.d_potential) << ',' << fmt_double(r.d_observed)
       << ',' << r.indicator << ',' << fmt_double(r.reward) << ','
       << fmt_double(r.opt_price) << ',' << fmt_double(r.opt_reward) << ','
       << fmt_double(r.regret_inst) << ',' << fmt_double(r.regret_cum)
       << '\n';
  }
}

void write_summary_csv(std::ostream& os, std::vector<RunSummary> rows) {
  std::sort(rows.begin(), rows.end(),
            [](const RunSummary& a, const RunSummary& b) {
              return a.seed < b.seed;
            });
  os << "seed,policy,horizon,status,final_regret,a_err,b_err,clamped,"
        "coverage,coverage_rounds,tau_effective,wall_seconds\n";
  for (const RunSummary& r : rows) {
    os << r.seed << ',' << r.policy << ',' << r.horizon << ','
       << sanitize(r.status) << ',' << fmt_double(r.final_regret) << ','
       << fmt_double(r.a_err) << ',' << fmt_double(r.b_err) << ','
       << r.clamped << ',' << fmt_double(r.coverage) << ','
       << r.coverage_rounds << ',' << r.tau_effective << ','
       << fmt_double(r.wall_seconds) << '\n';
  }
}

void write_outputs(const ExperimentConfig& cfg,
                   const std::vector<ReplicaResult>& results,
                   const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  {
    std::ofstream os(out_dir + "/summary.csv");
    if (!os) throw std::runtime_error("cannot write " + out_dir + "/summary.csv");
    std::vector<RunSummary> summaries;
    summaries.reserve(results.size());
    for (const auto& r : results) summaries.push_back(r.summary);
    write_summary_csv(os, std::move(summaries));
  }
  if (cfg.run.per_round) {
    for (const auto& r : results) {
      const std::string path =
          out_dir + "/trace_seed" + std::to_string(r.summary.seed) + ".csv";
      std::ofstream os(path);
      if (!os) throw std::runtime_error("cannot write " + path);
      write_trace_csv(os, r.trace);
    }
  }
}

std::vector<SweepPoint> run_sweep(const ExperimentConfig& base,
                                  const std::vector<std::int64_t>& horizons,
                                  bool parallel) {
  std::vector<SweepPoint> points;
  for (const std::int64_t horizon : horizons) {
    ExperimentConfig cfg = base;
    cfg.run.horizon = horizon;
    const auto results = run_replicas(cfg, parallel, false);
    SweepPoint p;
    p.horizon = horizon;
    std::vector<double> regrets;
    for (const auto& r : results) {
      if (r.summary.status == "ok") {
        regrets.push_back(r.summary.final_regret);
      } else {
        ++p.n_failed;
      }
    }
    p.n_ok = static_cast<int>(regrets.size());
    if (!regrets.empty()) {
      double sum = 0.0;
      for (double v : regrets) sum += v;
      p.mean_regret = sum / static_cast<double>(regrets.size());
      double ss = 0.0;
      for (double v : regrets) ss += (v - p.mean_regret) * (v - p.mean_regret);
      p.stderr_regret =
          regrets.size() > 1
              ? std::sqrt(ss / (static_cast<double>(regrets.size()) - 1.0) /
                          static_cast<double>(regrets.size()))
              : 0.0;
    } else {
      p.mean_regret = kNaN;
      p.stderr_regret = kNaN;
    }
    points.push_back(p);
  }
  return points;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepPoint>& points) {
  os << "horizon,mean_regret,stderr_regret,n_ok,n_failed\n";
  for (const SweepPoint& p : points) {
    os << p.horizon << ',' << fmt_double(p.mean_regret) << ','
       << fmt_double(p.stderr_regret) << ',' << p.n_ok << ',' << p.n_failed
       << '\n';
  }
}

std::vector<SweepPoint> read_sweep_csv(std::istream& is) {
  std::vector<SweepPoint> points;
  std::string line;
  if (!std::getline(is, line)) {
    throw std::runtime_error("empty sweep file");
  }
  if (line.rfind("horizon,mean_regret", 0) != 0) {
    throw std::runtime_error("unexpected sweep header: " + line);
  }
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    SweepPoint p;
    std::istringstream ls(line);
    std::string tok;
    auto next = [&]() -> std::string {
      if (!std::getline(ls, tok, ',')) {
        throw std::runtime_error("short sweep row: " + line);
      }
      return tok;
    };
    p.horizon = std::stoll(next());
    p.mean_regret = std::stod(next());
    p.stderr_regret = std::stod(next());
    p.n_ok = std::stoi(next());
    p.n_failed = std::stoi(next());
    points.push_back(p);
  }
  return points;
}

}  // namespace pricing
