#pragma once

#include <cstdint>
#include <vector>

#include "pricing/instance.hpp"
#include "pricing/noise.hpp"

namespace pricing {

/**
 * Expected-revenue curve of one round, built from the true demand line and
 * the noise model's closed-form F and G:
 *
 *   r(p)  = p * (gamma - c + G(c) - G(gamma - a + b*p))
 *   r'(p) = gamma - c + G(c) - G(x) - b*p*F(x),  x = gamma - a + b*p
 *
 * r' is non-increasing, so the optimizer below is a plain bisection.
 */
class RevenueCurve {
 public:
  RevenueCurve(double a, double b, double gamma, const NoiseModel& noise)
      : a_(a), b_(b), gamma_(gamma), noise_(noise) {}

  /// Censoring margin x = gamma - a + b*p fed to F and G.
  [[nodiscard]] double margin(double price) const {
    return gamma_ - a_ + b_ * price;
  }

  [[nodiscard]] double revenue(double price) const;
  [[nodiscard]] double derivative(double price) const;

  [[nodiscard]] double gamma() const { return gamma_; }
  [[nodiscard]] double a() const { return a_; }
  [[nodiscard]] double b() const { return b_; }
  [[nodiscard]] const NoiseModel& noise() const { return noise_; }

 private:
  double a_;
  double b_;
  double gamma_;
  const NoiseModel& noise_;
};

struct OptimalPrice {
  double price = 0.0;
  double revenue = 0.0;
  bool boundary = false;  // optimum pinned at p_max (r' still positive there)
  int iterations = 0;
};

/// Bisection on the monotone derivative over [0, min(p_max, a/b)].
[[nodiscard]] OptimalPrice optimal_price(const RevenueCurve& curve,
                                         double p_max, double tol = 1e-9,
                                         int max_iter = 80);

struct RegretEntry {
  std::int64_t t = 0;
  double price = 0.0;
  double revenue = 0.0;      // expected revenue at the played price
  double opt_price = 0.0;
  double opt_revenue = 0.0;
  double inst = 0.0;
  double cum = 0.0;
};

/**
 * Per-round regret bookkeeping against the dynamic per-round optimum.
 * Rejects out-of-order rounds and negative instantaneous regret beyond a
 * 1e-9 float tolerance.
 */
class RegretLedger {
 public:
  explicit RegretLedger(bool keep_entries = true)
      : keep_entries_(keep_entries) {}

  void record(std::int64_t t, double price, double revenue, double opt_price,
              double opt_revenue);

  [[nodiscard]] double cumulative() const { return cum_; }
  [[nodiscard]] std::int64_t rounds() const { return rounds_; }
  [[nodiscard]] const std::vector<RegretEntry>& entries() const {
    return entries_;
  }

 private:
  bool keep_entries_;
  double cum_ = 0.0;
  std::int64_t rounds_ = 0;
  std::int64_t last_t_ = -1;
  std::vector<RegretEntry> entries_;
};

/// Structural checks of one revenue curve on a price grid.
struct CurvePropertyReport {
  bool derivative_nonincreasing = false;
  double worst_derivative_increase = 0.0;
  int sign_changes = 0;          // sign changes of r' along the grid (0 or 1)
  bool boundary_optimum = false; // r'(p_max) > 0
  double opt_price = 0.0;
  bool smoothness_checked = false;  // skipped for boundary optima
  bool smoothness_ok = false;    // r(p*) - r(p) <= C_s (p - p*)^2
  double worst_smoothness_gap = 0.0;
  bool concavity_checked = false;  // skipped when F(x*) < 1e-3 or boundary
  bool concavity_ok = false;     // r'(p1)-r'(p2) >= C_eps (p2-p1) near p*
  double eps_neighborhood = 0.0;
  double c_eps = 0.0;
  double c_s = 0.0;

  [[nodiscard]] bool ok() const {
    return derivative_nonincreasing && sign_changes <= 1 &&
           (!smoothness_checked || smoothness_ok) &&
           (!concavity_checked || concavity_ok);
  }
};

[[nodiscard]] CurvePropertyReport check_curve_properties(
    const RevenueCurve& curve, double p_max, double b_min, double b_max,
    double lipschitz_f, int grid_points = 1000);

/**
 * Monte-Carlo mean realized reward at (gamma, price); the simulation-side
 * consistency check of the closed-form revenue.  Counter-based per-sample
 * keys make the parallel kernel a reduction over the same sample set as the
 * serial reference (sums differ only by reduction order).
 */
double mc_mean_reward(const ProblemInstance& inst, const NoiseModel& noise,
                      double gamma, double price, std::int64_t n_samples,
                      std::uint64_t seed, bool parallel,
                      double* stderr_out = nullptr);

}  // namespace pricing
