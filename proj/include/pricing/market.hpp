#pragma once

#include <array>
#include <cstdint>

#include "pricing/instance.hpp"
#include "pricing/inventory.hpp"
#include "pricing/noise.hpp"

namespace pricing {

/// What a policy is allowed to see after a round.
struct Observation {
  double gamma = 0.0;      // revealed inventory level
  double demand = 0.0;     // observed (censored) demand D = min(gamma, d)
  bool indicator = false;  // 1[D < gamma]: demand did not hit the cap
  std::array<int, 3> quartile{};  // e_i = 1[D >= (i*gamma + (4-i)*gamma_0)/4]
  double reward = 0.0;     // realized p * D
};

/// Full per-round record; d_potential is environment/trace-only.
struct RoundOutcome {
  double gamma = 0.0;
  double price = 0.0;
  double d_potential = 0.0;
  double d_observed = 0.0;
  bool indicator = false;  // 1[d_observed < gamma]
  std::array<int, 3> quartile{};
  double reward = 0.0;

  [[nodiscard]] Observation observation() const {
    return Observation{gamma, d_observed, indicator, quartile, reward};
  }
};

/**
 * The sequential environment: per-round inventory revelation, latent linear
 * demand with bounded iid noise, demand censoring at the inventory level,
 * and realized revenue.  step(t, p) is a pure function of (seed, t, p), so
 * reruns are bit-identical and rounds can be revisited.
 */
class MarketSim {
 public:
  MarketSim(const ProblemInstance& inst, const NoiseModel& noise,
            const InventoryGenerator& inventory, std::uint64_t seed,
            std::int64_t horizon);

  /// Inventory level revealed to the seller at round t (0-based).
  [[nodiscard]] double reveal(std::int64_t t) const;

  /// Plays price p at round t.  Throws std::invalid_argument when p is
  /// outside [0, p_max] and std::out_of_range when t is outside [0, horizon).
  [[nodiscard]] RoundOutcome step(std::int64_t t, double price) const;

  /// Deterministic core shared with tests: outcome given an explicit noise
  /// realization.
  [[nodiscard]] static RoundOutcome outcome(const ProblemInstance& inst,
                                            double gamma, double price,
                                            double noise_draw);

  [[nodiscard]] std::int64_t horizon() const { return horizon_; }

 private:
  const ProblemInstance& inst_;
  const NoiseModel& noise_;
  const InventoryGenerator& inventory_;
  std::uint64_t seed_;
  std::int64_t horizon_;
};

}  // namespace pricing
