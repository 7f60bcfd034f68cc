#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pricing/config.hpp"
#include "pricing/policy.hpp"

namespace pricing {

struct RunSummary {
  std::uint64_t seed = 0;
  std::string policy;
  std::int64_t horizon = 0;
  std::string status = "ok";  // "ok" or "failed: reason"
  double final_regret = 0.0;
  double a_err = 0.0;  // |a_hat - a|; NaN when the policy has no estimate
  double b_err = 0.0;
  std::int64_t clamped = 0;
  double coverage = 0.0;  // bar-coverage fraction; NaN when not applicable
  std::int64_t coverage_rounds = 0;
  int tau_effective = 0;
  double wall_seconds = 0.0;  // excluded from determinism comparisons
};

struct TraceRow {
  std::int64_t t = 0;  // 1-based round index
  RoundCase round_case = RoundCase::stage1;
  double gamma = 0.0;
  double price = 0.0;
  int bin = kNoBin;
  double d_potential = 0.0;
  double d_observed = 0.0;
  int indicator = 0;
  double reward = 0.0;
  double opt_price = 0.0;
  double opt_reward = 0.0;
  double regret_inst = 0.0;
  double regret_cum = 0.0;
};

struct ReplicaResult {
  RunSummary summary;
  std::vector<TraceRow> trace;  // filled only when requested
};

/**
 * Runs one replica end to end: environment, policy, oracle bookkeeping.
 * A replica is a pure function of (config, seed).  Estimator hard failures
 * are captured in summary.status instead of escaping.
 */
[[nodiscard]] ReplicaResult run_replica(const ExperimentConfig& cfg,
                                        std::uint64_t seed, bool keep_trace);

/**
 * Replica fan-out over cfg.run.seeds.  The parallel path distributes seeds
 * across OpenMP threads; every replica stays single-threaded, so parallel
 * and serial results are identical row for row.
 */
[[nodiscard]] std::vector<ReplicaResult> run_replicas(
    const ExperimentConfig& cfg, bool parallel, bool keep_trace);

void write_trace_csv(std::ostream& os, const std::vector<TraceRow>& rows);
/// Rows are written sorted by seed regardless of completion order.
void write_summary_csv(std::ostream& os, std::vector<RunSummary> rows);

/// Creates out_dir, writes summary.csv and (optionally) per-seed traces.
void write_outputs(const ExperimentConfig& cfg,
                   const std::vector<ReplicaResult>& results,
                   const std::string& out_dir);

struct SweepPoint {
  std::int64_t horizon = 0;
  double mean_regret = 0.0;
  double stderr_regret = 0.0;
  int n_ok = 0;
  int n_failed = 0;
};

[[nodiscard]] std::vector<SweepPoint> run_sweep(
    const ExperimentConfig& base, const std::vector<std::int64_t>& horizons,
    bool parallel);

void write_sweep_csv(std::ostream& os, const std::vector<SweepPoint>& points);
[[nodiscard]] std::vector<SweepPoint> read_sweep_csv(std::istream& is);

}  // namespace pricing
