#include "pricing/policy.hpp"

namespace pricing {

const char* to_label(RoundCase c) {
  switch (c) {
    case RoundCase::stage1:
      return "stage1";
    case RoundCase::grid_init:
      return "grid-init";
    case RoundCase::skip_large_gamma:
      return "skip-large-gamma";
    case RoundCase::bar_contains_zero:
      return "bar-contains-zero";
    case RoundCase::closest_to_zero:
      return "closest-to-zero";
    case RoundCase::all_above_zero:
      return "all-above-zero";
    case RoundCase::explore:
      return "explore";
    case RoundCase::commit:
      return "commit";
    case RoundCase::ucb_arm:
      return "ucb-arm";
    case RoundCase::oracle_play:
      return "oracle";
  }
  return "?";
}

}  // namespace pricing
