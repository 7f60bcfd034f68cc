#include "pricing/inventory.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pricing {

InventoryKind inventory_kind_from_string(const std::string& s) {
  if (s == "constant") return InventoryKind::constant;
  if (s == "cyclic") return InventoryKind::cyclic;
  if (s == "iid-uniform") return InventoryKind::iid_uniform;
  if (s == "piecewise") return InventoryKind::piecewise;
  if (s == "replay") return InventoryKind::replay;
  throw std::invalid_argument("unknown inventory kind: " + s);
}

std::string to_string(InventoryKind k) {
  switch (k) {
    case InventoryKind::constant:
      return "constant";
    case InventoryKind::cyclic:
      return "cyclic";
    case InventoryKind::iid_uniform:
      return "iid-uniform";
    case InventoryKind::piecewise:
      return "piecewise";
    case InventoryKind::replay:
      return "replay";
  }
  return "?";
}

InventoryGenerator::InventoryGenerator(InventorySpec spec, std::uint64_t seed)
    : spec_(std::move(spec)), seed_(seed) {
  switch (spec_.kind) {
    case InventoryKind::constant:
      lo_ = hi_ = spec_.value;
      break;
    case InventoryKind::cyclic: {
      if (spec_.cycle.empty()) {
        throw std::invalid_argument("cyclic inventory needs a non-empty cycle");
      }
      auto [mn, mx] = std::minmax_element(spec_.cycle.begin(),
                                          spec_.cycle.end());
      lo_ = *mn;
      hi_ = *mx;
      break;
    }
    case InventoryKind::iid_uniform:
    case InventoryKind::piecewise:
      if (!(spec_.band_lo <= spec_.band_hi)) {
        throw std::invalid_argument("inventory band must satisfy lo <= hi");
      }
      if (spec_.kind == InventoryKind::piecewise && spec_.epoch_len < 1) {
        throw std::invalid_argument("piecewise epoch length must be >= 1");
      }
      lo_ = spec_.band_lo;
      hi_ = spec_.band_hi;
      break;
    case InventoryKind::replay: {
      std::ifstream in(spec_.replay_path);
      if (!in) {
        throw std::runtime_error("cannot open inventory replay file: " +
                                 spec_.replay_path);
      }
      std::string line;
      while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        double v;
        if (ls >> v) replay_values_.push_back(v);
      }
      if (replay_values_.empty()) {
        throw std::runtime_error("inventory replay file has no values: " +
                                 spec_.replay_path);
      }
      auto [mn, mx] = std::minmax_element(replay_values_.begin(),
                                          replay_values_.end());
      lo_ = *mn;
      hi_ = *mx;
      length_ = static_cast<std::int64_t>(replay_values_.size());
      break;
    }
  }
}

double InventoryGenerator::gamma(std::int64_t t) const {
  if (t < 0) throw std::out_of_range("inventory round index must be >= 0");
  switch (spec_.kind) {
    case InventoryKind::constant:
      return spec_.value;
    case InventoryKind::cyclic:
      return spec_.cycle[static_cast<std::size_t>(
          t % static_cast<std::int64_t>(spec_.cycle.size()))];
    case InventoryKind::iid_uniform: {
      SplitMix64 g = substream_at(seed_, Stream::inventory,
                                  static_cast<std::uint64_t>(t));
      return spec_.band_lo + (spec_.band_hi - spec_.band_lo) * g.next_double();
    }
    case InventoryKind::piecewise:
      // Adversarial alternation between the band endpoints.
      return ((t / spec_.epoch_len) % 2 == 0) ? spec_.band_lo : spec_.band_hi;
    case InventoryKind::replay:
      if (t >= length_) {
        throw std::out_of_range("inventory replay file exhausted at round " +
                                std::to_string(t));
      }
      return replay_values_[static_cast<std::size_t>(t)];
  }
  throw std::logic_error("unreachable inventory kind");
}

}  // namespace pricing
