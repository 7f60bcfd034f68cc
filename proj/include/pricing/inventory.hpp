#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pricing/rng.hpp"

namespace pricing {

enum class InventoryKind { constant, cyclic, iid_uniform, piecewise, replay };

[[nodiscard]] InventoryKind inventory_kind_from_string(const std::string& s);
[[nodiscard]] std::string to_string(InventoryKind k);

struct InventorySpec {
  InventoryKind kind = InventoryKind::piecewise;
  double band_lo = 0.0;       // iid_uniform, piecewise
  double band_hi = 0.0;
  double value = 0.0;         // constant
  std::vector<double> cycle;  // cyclic
  std::int64_t epoch_len = 50;  // piecewise
  std::string replay_path;    // replay
};

/**
 * Oblivious adversary: the whole inventory sequence is a pure function of
 * (spec, seed), fixed before the run starts.  gamma(t) is random-access so
 * replays and parallel consumers see identical sequences.
 */
class InventoryGenerator {
 public:
  InventoryGenerator(InventorySpec spec, std::uint64_t seed);

  [[nodiscard]] double gamma(std::int64_t t) const;

  /// Range the generator can emit (replay/cyclic: realized min/max).
  [[nodiscard]] double lo() const { return lo_; }
  [[nodiscard]] double hi() const { return hi_; }

  /// Rounds available; -1 when unbounded (all kinds except replay).
  [[nodiscard]] std::int64_t length() const { return length_; }

  [[nodiscard]] const InventorySpec& spec() const { return spec_; }

 private:
  InventorySpec spec_;
  std::uint64_t seed_;
  std::vector<double> replay_values_;
  double lo_ = 0.0;
  double hi_ = 0.0;
  std::int64_t length_ = -1;
};

}  // namespace pricing
