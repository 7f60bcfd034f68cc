#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "pricing/instance.hpp"
#include "pricing/policy.hpp"
#include "pricing/rng.hpp"
#include "pricing/schedule.hpp"

namespace pricing {

/// Stage-1 estimation failed (censoring indicators carried no slope signal
/// within the extension budget).
class EstimatorFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/**
 * Running sums of the exploration stage.  The quartile indicators bypass
 * censoring (their thresholds sit below every inventory level), giving
 * unbiased moment equations for the demand line:
 *
 *   E[(e_1 - e_2) / (gamma_t - gamma_0)] = 1 / (4 b p_max)
 *   E[b p_max e_3 + (3 gamma_t + gamma_0) / 4] = a
 */
struct Stage1Accumulators {
  double sum_q = 0.0;      // sum of (e_1 - e_2) / (gamma_t - gamma_0)
  double sum_e3 = 0.0;
  double sum_gamma = 0.0;
  std::int64_t count = 0;

  void add(int e1, int e2, int e3, double gamma, double gamma0) {
    sum_q += (e1 - e2) / (gamma - gamma0);
    sum_e3 += e3;
    sum_gamma += gamma;
    ++count;
  }

  struct Estimates {
    double b_raw = 0.0;
    double a_raw = 0.0;
    double b_hat = 0.0;  // clamped to [b_min, b_max]
    double a_hat = 0.0;  // clamped to (0, a_max]
  };

  /// Throws EstimatorFailure when the slope denominator is non-positive.
  [[nodiscard]] Estimates finish(double p_max, double gamma0, double a_max,
                                 double b_min, double b_max) const;
};

struct GridBin {
  double f = 0.0;      // running mean of the censoring indicator
  double g = 0.0;      // running mean of D - gamma + c
  double bar = 0.0;    // confidence half-width Delta_k
  std::int64_t n = 0;  // observations recorded into this bin
};

/**
 * The confidence-bound grid over margin targets w_k = 2k*Delta, k = -M..M.
 * Bin k prices so the censoring margin gamma - a + b p lands on w_k; its
 * running means estimate F(w_k) and G(c) - G(w_k), which combine into a
 * derivative estimate at that margin.
 */
struct GridState {
  int m = 0;
  double delta_grid = 0.0;
  double c_n = 0.0;
  double c_tau = 0.0;
  int tau = 0;
  double a_hat = 0.0;
  double b_hat = 0.0;
  std::vector<GridBin> bins;  // index k + m

  GridState() = default;
  GridState(const ConstantSchedule& s, double a_hat_in, double b_hat_in);

  [[nodiscard]] double w(int k) const { return 2.0 * k * delta_grid; }
  [[nodiscard]] GridBin& bin(int k) {
    return bins.at(static_cast<std::size_t>(k + m));
  }
  [[nodiscard]] const GridBin& bin(int k) const {
    return bins.at(static_cast<std::size_t>(k + m));
  }

  /// Price that steers the margin onto w_k at inventory level gamma.
  [[nodiscard]] double target_price(int k, double gamma) const {
    return (w(k) - (gamma - a_hat)) / b_hat;
  }

  /// Derivative estimate of bin k at inventory gamma (gamma0_variant swaps
  /// the revealed gamma for the fixed floor gamma_0 in the leading term).
  [[nodiscard]] double r_hat(int k, double gamma, double c,
                             bool gamma0_variant, double gamma0) const {
    const double lead = (gamma0_variant ? gamma0 : gamma) - c;
    return lead + bin(k).g - b_hat * target_price(k, gamma) * bin(k).f;
  }

  /// Folds one observation into bin k: running means + fresh bar width.
  void record(int k, bool indicator, double d_observed, double gamma, double c);
};

struct ScanResult {
  RoundCase round_case = RoundCase::all_above_zero;
  int k = kNoBin;
  double raw_price = 0.0;
  double r_hat = 0.0;
  double bar_half_width = 0.0;
};

/**
 * Bar scan, largest margin (= largest price) first.  The first bar that
 * straddles zero wins outright; otherwise the bar endpoint closest to zero
 * wins (strict improvement, so earlier = larger k on ties); when every bar
 * sits strictly above zero nothing is played from the grid.
 */
[[nodiscard]] ScanResult opt_price_scan(const GridState& grid, double gamma,
                                        double c, bool gamma0_variant,
                                        double gamma0);

/**
 * Closest-to-zero confidence-bound pricing policy.
 *
 * Phase 1 (tau rounds, extended while the slope signal is empty): uniform
 * price exploration feeding the quartile moment equations.  Phase 2: one
 * seeding round per grid bin, then per-round bar scans with feedback routed
 * to the chosen bin.  Rounds whose inventory clears the no-censoring
 * threshold are priced at a_hat / (2 b_hat) without feedback.
 */
class C20cbPolicy final : public Policy {
 public:
  C20cbPolicy(const ConstantSchedule& schedule, const PolicyView& view,
              std::uint64_t seed, bool gamma0_variant = false);

  [[nodiscard]] PolicyDecision act(double gamma) override;
  void learn(const PolicyDecision& decision, const Observation& obs) override;
  [[nodiscard]] std::string name() const override { return "c20cb"; }

  [[nodiscard]] bool estimates_ready() const { return phase_ != Phase::explore; }
  [[nodiscard]] const Stage1Accumulators& stage1() const { return acc_; }
  /// Valid once estimates_ready().
  [[nodiscard]] const Stage1Accumulators::Estimates& estimates() const;
  [[nodiscard]] const GridState& grid() const { return grid_; }
  [[nodiscard]] int tau_effective() const { return tau_effective_; }
  [[nodiscard]] const ConstantSchedule& schedule() const { return schedule_; }

  /// Versioned text snapshot of the mutable state; restore resumes a policy
  /// mid-run given the same schedule/view.
  void save_state(std::ostream& os) const;
  [[nodiscard]] static C20cbPolicy restore(const ConstantSchedule& schedule,
                                           const PolicyView& view,
                                           bool gamma0_variant,
                                           std::istream& is);

 private:
  enum class Phase { explore, grid_init, main };

  [[nodiscard]] double clamp_price(double p) const;
  [[nodiscard]] double fallback_price() const;  // a_hat / (2 b_hat), clamped

  ConstantSchedule schedule_;
  PolicyView view_;
  bool gamma0_variant_ = false;
  SplitMix64 explore_rng_;
  Phase phase_ = Phase::explore;
  std::int64_t round_ = 0;  // rounds consumed (== learn() calls)
  Stage1Accumulators acc_;
  Stage1Accumulators::Estimates est_;
  int tau_effective_ = 0;
  int init_next_k_ = 0;
  GridState grid_;
};

}  // namespace pricing
