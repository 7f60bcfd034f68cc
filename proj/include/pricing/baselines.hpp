#pragma once

#include <cstdint>
#include <vector>

#include "pricing/c20cb.hpp"
#include "pricing/instance.hpp"
#include "pricing/oracle.hpp"
#include "pricing/policy.hpp"
#include "pricing/rng.hpp"

namespace pricing {

/**
 * Explore-then-commit: the same uniform exploration and moment estimators
 * as the confidence-bound policy, then the estimated uncensored optimum
 * a_hat / (2 b_hat) forever.  Ignores censoring after the window, which is
 * exactly the weakness the adaptive grid is meant to beat.
 */
class EtcPolicy final : public Policy {
 public:
  EtcPolicy(const PolicyView& view, int window, std::uint64_t seed);

  [[nodiscard]] PolicyDecision act(double gamma) override;
  void learn(const PolicyDecision& decision, const Observation& obs) override;
  [[nodiscard]] std::string name() const override { return "etc"; }

  [[nodiscard]] bool committed() const { return committed_; }
  [[nodiscard]] double commit_price() const;
  [[nodiscard]] const Stage1Accumulators::Estimates& estimates() const;

 private:
  PolicyView view_;
  int window_;
  SplitMix64 explore_rng_;
  Stage1Accumulators acc_;
  Stage1Accumulators::Estimates est_;
  bool committed_ = false;
  double commit_price_ = 0.0;
};

/**
 * Index policy on a fixed price grid (K arm midpoints of [0, p_max]):
 * round-robin init, then highest empirical mean plus sqrt(2 log t / n)
 * bonus on rewards normalized by p_max * a_max.  Knows nothing about
 * censoring or the demand line.
 */
class UcbGridPolicy final : public Policy {
 public:
  UcbGridPolicy(const PolicyView& view, int n_arms);

  [[nodiscard]] PolicyDecision act(double gamma) override;
  void learn(const PolicyDecision& decision, const Observation& obs) override;
  [[nodiscard]] std::string name() const override { return "ucb-grid"; }

  [[nodiscard]] int arms() const { return static_cast<int>(prices_.size()); }
  [[nodiscard]] double arm_price(int i) const {
    return prices_.at(static_cast<std::size_t>(i));
  }
  [[nodiscard]] std::int64_t arm_pulls(int i) const {
    return pulls_.at(static_cast<std::size_t>(i));
  }

 private:
  PolicyView view_;
  std::vector<double> prices_;
  std::vector<double> mean_reward_;  // normalized
  std::vector<std::int64_t> pulls_;
  std::int64_t round_ = 0;
  int pending_arm_ = -1;
};

/**
 * Diagnostic reference that plays the per-round oracle optimum.  It holds
 * the true instance on purpose; regret against it should be ~0.
 */
class OraclePolicy final : public Policy {
 public:
  OraclePolicy(const ProblemInstance& inst, const NoiseModel& noise)
      : inst_(inst), noise_(noise) {}

  [[nodiscard]] PolicyDecision act(double gamma) override;
  void learn(const PolicyDecision&, const Observation&) override {}
  [[nodiscard]] std::string name() const override { return "oracle"; }

 private:
  const ProblemInstance& inst_;
  const NoiseModel& noise_;
};

}  // namespace pricing
