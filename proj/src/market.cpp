#include "pricing/market.hpp"

#include <stdexcept>
#include <string>

namespace pricing {

MarketSim::MarketSim(const ProblemInstance& inst, const NoiseModel& noise,
                     const InventoryGenerator& inventory, std::uint64_t seed,
                     std::int64_t horizon)
    : inst_(inst),
      noise_(noise),
      inventory_(inventory),
      seed_(seed),
      horizon_(horizon) {
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
}

double MarketSim::reveal(std::int64_t t) const {
  if (t < 0 || t >= horizon_) {
    throw std::out_of_range("round " + std::to_string(t) +
                            " outside horizon " + std::to_string(horizon_));
  }
  return inventory_.gamma(t);
}

RoundOutcome MarketSim::step(std::int64_t t, double price) const {
  const double gamma = reveal(t);
  SplitMix64 g =
      substream_at(seed_, Stream::noise, static_cast<std::uint64_t>(t));
  return outcome(inst_, gamma, price, noise_.sample(g));
}

RoundOutcome MarketSim::outcome(const ProblemInstance& inst, double gamma,
                                double price, double noise_draw) {
  if (!(price >= 0.0 && price <= inst.p_max)) {
    throw std::invalid_argument("price " + std::to_string(price) +
                                " outside [0, p_max]");
  }
  RoundOutcome out;
  out.gamma = gamma;
  out.price = price;
  out.d_potential = inst.a - inst.b * price + noise_draw;
  out.indicator = out.d_potential < gamma;
  out.d_observed = out.indicator ? out.d_potential : gamma;
  const double gamma0 = inst.gamma0();
  for (int i = 1; i <= 3; ++i) {
    const double quartile_point = (i * gamma + (4 - i) * gamma0) / 4.0;
    out.quartile[i - 1] = out.d_observed >= quartile_point ? 1 : 0;
  }
  out.reward = price * out.d_observed;
  return out;
}

}  // namespace pricing
