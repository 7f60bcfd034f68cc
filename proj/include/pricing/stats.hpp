#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace pricing {

[[nodiscard]] double mean(const std::vector<double>& xs);
/// Standard error of the mean (sample std over sqrt(n)); 0 for n < 2.
[[nodiscard]] double stderr_of_mean(const std::vector<double>& xs);

struct ScalingFit {
  double slope = 0.0;
  double intercept = 0.0;  // in log space
  double r2 = 0.0;
  int n_used = 0;
  std::vector<std::string> warnings;  // excluded points etc.
};

/**
 * OLS on (log T, log value) pairs; the slope is the empirical growth
 * exponent.  Non-positive coordinates cannot be log-transformed and are
 * excluded with a warning; fewer than two usable points is an error.
 */
[[nodiscard]] ScalingFit fit_scaling(
    const std::vector<std::pair<double, double>>& points);

}  // namespace pricing
