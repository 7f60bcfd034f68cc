#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pricing/instance.hpp"
#include "pricing/inventory.hpp"

namespace pricing {

struct PolicySpec {
  std::string name = "c20cb";  // c20cb | etc | ucb | oracle
  std::optional<double> eta;
  double delta = 0.05;
  bool gamma0_variant = false;
  bool statement_cb = false;
  int etc_window = 0;  // 0 -> exploration length tau of the schedule
  int ucb_arms = 0;    // 0 -> ceil(T^(1/3))
};

struct RunSpec {
  std::int64_t horizon = 0;
  std::vector<std::uint64_t> seeds{1};
  std::string out_dir;  // empty -> $PRICING_LAB_OUT -> "out"
  bool per_round = false;
};

/// Everything a run needs, read from one flat key = value file with dotted
/// section prefixes (instance., policy., run.).  Unknown keys are errors.
struct ExperimentConfig {
  ProblemInstance instance;
  InventorySpec inventory;
  PolicySpec policy;
  RunSpec run;
};

/// Parses and type-checks; collects problems instead of throwing so the CLI
/// can report all of them at once.  The returned config is only meaningful
/// when errors stays empty.
[[nodiscard]] ExperimentConfig parse_config(std::istream& in,
                                            std::vector<std::string>& errors);
[[nodiscard]] ExperimentConfig load_config(const std::string& path,
                                           std::vector<std::string>& errors);

/// "7" | "1,2,5" | "1..20" (inclusive range).
[[nodiscard]] std::vector<std::uint64_t> parse_seeds(const std::string& text);

/// Semantic checks across sections: feasibility assumptions against the
/// inventory range, horizon bounds, replay length, policy values.
[[nodiscard]] ValidationReport validate_config(const ExperimentConfig& cfg);

/// Resolved output directory (config value, else environment, else "out").
[[nodiscard]] std::string resolve_out_dir(const ExperimentConfig& cfg);

inline constexpr const char* kOutDirEnvVar = "PRICING_LAB_OUT";

}  // namespace pricing
