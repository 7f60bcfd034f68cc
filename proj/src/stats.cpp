#include "pricing/stats.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace pricing {

double mean(const std::vector<double>& xs) {
  if (xs.empty()) throw std::invalid_argument("mean of empty sample");
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

double stderr_of_mean(const std::vector<double>& xs) {
  const std::size_t n = xs.size();
  if (n < 2) return 0.0;
  const double m = mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  const double var = ss / static_cast<double>(n - 1);
  return std::sqrt(var / static_cast<double>(n));
}

ScalingFit fit_scaling(const std::vector<std::pair<double, double>>& points) {
  ScalingFit fit;
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& [t, v] = points[i];
    if (!(t > 0.0) || !(v > 0.0) || !std::isfinite(t) || !std::isfinite(v)) {
      char buf[128];
      std::snprintf(buf, sizeof buf,
                    "excluded point %zu (T=%g, value=%g): not positive finite",
                    i, t, v);
      fit.warnings.emplace_back(buf);
      continue;
    }
    lx.push_back(std::log(t));
    ly.push_back(std::log(v));
  }
  if (lx.size() < 2) {
    throw std::invalid_argument(
        "scaling fit needs at least two positive points");
  }
  const auto n = static_cast<double>(lx.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  if (sxx <= 0.0) {
    throw std::invalid_argument("scaling fit needs at least two distinct T");
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.n_used = static_cast<int>(lx.size());
  if (syy <= 0.0) {
    fit.r2 = 1.0;  // all values equal and exactly fitted by slope 0
  } else {
    double ss_res = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      const double e = ly[i] - (fit.intercept + fit.slope * lx[i]);
      ss_res += e * e;
    }
    fit.r2 = 1.0 - ss_res / syy;
  }
  return fit;
}

}  // namespace pricing
