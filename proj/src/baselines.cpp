#include "pricing/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pricing {

EtcPolicy::EtcPolicy(const PolicyView& view, int window, std::uint64_t seed)
    : view_(view),
      window_(window),
      explore_rng_(substream(seed, Stream::exploration)) {
  if (window < 1) throw std::invalid_argument("window must be >= 1");
}

PolicyDecision EtcPolicy::act(double gamma) {
  (void)gamma;
  PolicyDecision d;
  if (!committed_) {
    d.price = view_.p_max * explore_rng_.next_double();
    d.raw_price = d.price;
    d.round_case = RoundCase::explore;
    d.record_feedback = true;
    return d;
  }
  d.price = commit_price_;
  d.raw_price = commit_price_;
  d.round_case = RoundCase::commit;
  d.record_feedback = false;
  return d;
}

void EtcPolicy::learn(const PolicyDecision& decision, const Observation& obs) {
  if (!decision.record_feedback || committed_) return;
  acc_.add(obs.quartile[0], obs.quartile[1], obs.quartile[2], obs.gamma,
           view_.gamma0());
  if (acc_.count >= window_) {
    if (acc_.sum_q > 0.0) {
      est_ = acc_.finish(view_.p_max, view_.gamma0(), view_.a_max, view_.b_min,
                         view_.b_max);
      commit_price_ =
          std::clamp(est_.a_hat / (2.0 * est_.b_hat), 0.0, view_.p_max);
      committed_ = true;
    } else if (acc_.count >= 2LL * window_) {
      throw EstimatorFailure(
          "explore-then-commit: no censoring-indicator signal after " +
          std::to_string(acc_.count) + " rounds (window " +
          std::to_string(window_) + ")");
    }
  }
}

double EtcPolicy::commit_price() const {
  if (!committed_) throw std::logic_error("not committed yet");
  return commit_price_;
}

const Stage1Accumulators::Estimates& EtcPolicy::estimates() const {
  if (!committed_) throw std::logic_error("not committed yet");
  return est_;
}

UcbGridPolicy::UcbGridPolicy(const PolicyView& view, int n_arms)
    : view_(view) {
  if (n_arms < 1) throw std::invalid_argument("need at least one arm");
  prices_.resize(static_cast<std::size_t>(n_arms));
  for (int i = 0; i < n_arms; ++i) {
    prices_[static_cast<std::size_t>(i)] =
        (i + 0.5) * view_.p_max / n_arms;
  }
  mean_reward_.assign(prices_.size(), 0.0);
  pulls_.assign(prices_.size(), 0);
}

PolicyDecision UcbGridPolicy::act(double gamma) {
  (void)gamma;
  ++round_;
  const int n = arms();
  int arm = -1;
  if (round_ <= n) {
    arm = static_cast<int>(round_ - 1);  // round-robin seeding
  } else {
    double best = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      const auto idx = static_cast<std::size_t>(i);
      const double bonus = std::sqrt(
          2.0 * std::log(static_cast<double>(round_)) /
          static_cast<double>(pulls_[idx]));
      const double ucb = mean_reward_[idx] + bonus;
      if (ucb > best) {
        best = ucb;
        arm = i;
      }
    }
  }
  pending_arm_ = arm;
  PolicyDecision d;
  d.price = prices_[static_cast<std::size_t>(arm)];
  d.raw_price = d.price;
  d.bin = arm;
  d.round_case = RoundCase::ucb_arm;
  d.record_feedback = true;
  return d;
}

void UcbGridPolicy::learn(const PolicyDecision& decision,
                          const Observation& obs) {
  if (!decision.record_feedback) return;
  if (decision.bin < 0 || decision.bin >= arms() ||
      decision.bin != pending_arm_) {
    throw std::logic_error("arm feedback out of order");
  }
  const auto idx = static_cast<std::size_t>(decision.bin);
  const double normalized = obs.reward / (view_.p_max * view_.a_max);
  const double n = static_cast<double>(pulls_[idx]);
  mean_reward_[idx] = (n * mean_reward_[idx] + normalized) / (n + 1.0);
  ++pulls_[idx];
}

PolicyDecision OraclePolicy::act(double gamma) {
  const RevenueCurve curve(inst_.a, inst_.b, gamma, noise_);
  const OptimalPrice opt = optimal_price(curve, inst_.p_max);
  PolicyDecision d;
  d.price = opt.price;
  d.raw_price = opt.price;
  d.round_case = RoundCase::oracle_play;
  d.record_feedback = false;
  return d;
}

}  // namespace pricing
