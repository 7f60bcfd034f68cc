#include "pricing/instance.hpp"

#include <cstdio>
#include <sstream>

namespace pricing {
namespace {

constexpr double kBandMargin = 1e-9;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

std::string ValidationReport::to_string() const {
  std::ostringstream os;
  for (const auto& p : passed) os << "  ok   " << p << "\n";
  for (const auto& f : failures)
    os << "  FAIL " << f.check << ": " << f.detail << "\n";
  for (const auto& w : warnings) os << "  warn " << w << "\n";
  return os.str();
}

ValidationReport validate_instance(const ProblemInstance& inst,
                                   double gamma_lo, double gamma_hi) {
  ValidationReport rep;
  auto check = [&rep](bool ok, const std::string& name,
                      const std::string& detail) {
    if (ok) {
      rep.passed.push_back(name);
    } else {
      rep.failures.push_back({name, detail});
    }
  };

  check(inst.a > 0.0 && inst.a <= inst.a_max, "intercept-bounds",
        "need 0 < a <= a_max, got a=" + fmt(inst.a) +
            " a_max=" + fmt(inst.a_max));
  check(inst.b_min > 0.0 && inst.b_min <= inst.b && inst.b <= inst.b_max,
        "slope-bounds",
        "need 0 < b_min <= b <= b_max, got b_min=" + fmt(inst.b_min) +
            " b=" + fmt(inst.b) + " b_max=" + fmt(inst.b_max));
  check(inst.c > 0.0, "noise-width", "need c > 0, got c=" + fmt(inst.c));
  check(inst.p_max > 0.0, "price-cap",
        "need p_max > 0, got p_max=" + fmt(inst.p_max));
  check(gamma_lo <= gamma_hi, "inventory-range",
        "need gamma_lo <= gamma_hi, got [" + fmt(gamma_lo) + ", " +
            fmt(gamma_hi) + "]");

  // (1) every inventory level sits strictly below the noise-free intercept.
  check(gamma_hi <= inst.a - inst.c - kBandMargin, "inventory-below-intercept",
        "need gamma_hi < a - c, got gamma_hi=" + fmt(gamma_hi) +
            " vs a - c=" + fmt(inst.a - inst.c));
  // (2) inventory exceeds twice the noise half-width.
  check(gamma_lo >= 2.0 * inst.c + kBandMargin, "inventory-above-noise",
        "need gamma_lo > 2c, got gamma_lo=" + fmt(gamma_lo) +
            " vs 2c=" + fmt(2.0 * inst.c));
  // (3) demand stays positive at the price cap.
  check(inst.a - inst.b * inst.p_max - inst.c > 0.0, "demand-at-price-cap",
        "need a - b*p_max - c > 0, got " +
            fmt(inst.a - inst.b * inst.p_max - inst.c));
  // (4) the inventory floor clears gamma_0 = a_max - b_min*p_max + c.
  check(inst.gamma_min > inst.gamma0() && gamma_lo >= inst.gamma_min,
        "inventory-above-floor",
        "need gamma_lo >= gamma_min > gamma_0, got gamma_lo=" + fmt(gamma_lo) +
            " gamma_min=" + fmt(inst.gamma_min) +
            " gamma_0=" + fmt(inst.gamma0()));
  // (5) the price range covers the uncensored optimum a / (2b).
  check(inst.p_max >= inst.a / (2.0 * inst.b), "price-range-covers-optimum",
        "need p_max >= a/(2b), got p_max=" + fmt(inst.p_max) +
            " vs a/(2b)=" + fmt(inst.a / (2.0 * inst.b)));

  if (inst.noise == NoiseKind::truncated_gaussian && inst.noise_sigma < 0.0) {
    rep.failures.push_back(
        {"noise-sigma", "sigma must be positive (or 0 for the default c/3)"});
  }
  return rep;
}

}  // namespace pricing
