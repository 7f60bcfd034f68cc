#pragma once

#include <limits>
#include <string>

#include "pricing/market.hpp"

namespace pricing {

/// Which branch produced a round's price; becomes the trace "stage" column.
enum class RoundCase {
  stage1,             // uniform exploration
  grid_init,          // one seeding round per confidence bin
  skip_large_gamma,   // inventory high enough that the cap cannot bind
  bar_contains_zero,  // some bin's confidence bar straddles zero
  closest_to_zero,    // fallback: bin whose bar endpoint is nearest zero
  all_above_zero,     // every bar strictly positive; no feedback recorded
  explore,            // baseline exploration window
  commit,             // baseline committed price
  ucb_arm,            // index-policy arm pull
  oracle_play,        // reference policy playing the per-round optimum
};

[[nodiscard]] const char* to_label(RoundCase c);

/// Sentinel bin index for rounds that are not routed to any bin.
inline constexpr int kNoBin = std::numeric_limits<int>::min();

struct PolicyDecision {
  double price = 0.0;
  RoundCase round_case = RoundCase::stage1;
  int bin = kNoBin;
  bool record_feedback = true;

  // Diagnostics filled by the confidence-bound main loop.
  double raw_price = 0.0;  // before clamping to [0, p_max]
  bool clamped = false;
  double r_hat = std::numeric_limits<double>::quiet_NaN();
  double bar_half_width = std::numeric_limits<double>::quiet_NaN();
};

/**
 * Online pricing policy.  act() sees only the revealed inventory level;
 * learn() sees only the policy-visible Observation.  The true demand
 * parameters and the oracle stay on the other side of this interface.
 */
class Policy {
 public:
  virtual ~Policy() = default;

  [[nodiscard]] virtual PolicyDecision act(double gamma) = 0;
  virtual void learn(const PolicyDecision& decision, const Observation& obs) = 0;
  [[nodiscard]] virtual std::string name() const = 0;
};

}  // namespace pricing
