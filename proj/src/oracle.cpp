#include "pricing/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace pricing {

double RevenueCurve::revenue(double price) const {
  const double c = noise_.half_width();
  return price * (gamma_ - c + noise_.integrated_cdf(c) -
                  noise_.integrated_cdf(margin(price)));
}

double RevenueCurve::derivative(double price) const {
  const double c = noise_.half_width();
  const double x = margin(price);
  return gamma_ - c + noise_.integrated_cdf(c) - noise_.integrated_cdf(x) -
         b_ * price * noise_.cdf(x);
}

OptimalPrice optimal_price(const RevenueCurve& curve, double p_max, double tol,
                           int max_iter) {
  if (!(p_max > 0.0)) throw std::invalid_argument("p_max must be positive");
  const double upper =
      curve.b() > 0.0 ? std::min(p_max, curve.a() / curve.b()) : p_max;

  OptimalPrice out;
  if (curve.derivative(upper) > 0.0) {
    // Derivative never crosses zero on the feasible range: revenue is still
    // rising at the cap.
    out.price = upper;
    out.revenue = curve.revenue(upper);
    out.boundary = upper >= p_max;
    return out;
  }

  double lo = 0.0, hi = upper;
  int it = 0;
  while (hi - lo > tol && it < max_iter) {
    const double mid = 0.5 * (lo + hi);
    (curve.derivative(mid) > 0.0 ? lo : hi) = mid;
    ++it;
  }
  out.price = 0.5 * (lo + hi);
  out.revenue = curve.revenue(out.price);
  out.iterations = it;
  return out;
}

void RegretLedger::record(std::int64_t t, double price, double revenue,
                          double opt_price, double opt_revenue) {
  if (t <= last_t_) {
    throw std::invalid_argument("regret ledger: non-increasing round index " +
                                std::to_string(t));
  }
  const double inst = opt_revenue - revenue;
  if (inst < -1e-9) {
    throw std::runtime_error(
        "regret ledger: negative instantaneous regret " +
        std::to_string(inst) + " at round " + std::to_string(t) +
        " (oracle optimum beaten)");
  }
  last_t_ = t;
  cum_ += std::max(inst, 0.0);
  ++rounds_;
  if (keep_entries_) {
    entries_.push_back({t, price, revenue, opt_price, opt_revenue, inst, cum_});
  }
}

CurvePropertyReport check_curve_properties(const RevenueCurve& curve,
                                           double p_max, double b_min,
                                           double b_max, double lipschitz_f,
                                           int grid_points) {
  if (grid_points < 3) throw std::invalid_argument("grid too small");
  CurvePropertyReport rep;

  const double step = p_max / (grid_points - 1);
  std::vector<double> deriv(static_cast<std::size_t>(grid_points));
  for (int i = 0; i < grid_points; ++i) {
    deriv[static_cast<std::size_t>(i)] = curve.derivative(i * step);
  }

  rep.derivative_nonincreasing = true;
  rep.sign_changes = 0;
  constexpr double kTol = 1e-9;
  for (int i = 1; i < grid_points; ++i) {
    const double inc = deriv[i] - deriv[i - 1];
    if (inc > rep.worst_derivative_increase) {
      rep.worst_derivative_increase = inc;
    }
    if (inc > kTol) rep.derivative_nonincreasing = false;
    if ((deriv[i - 1] > 0.0) && (deriv[i] <= 0.0)) ++rep.sign_changes;
    if ((deriv[i - 1] <= 0.0) && (deriv[i] > 0.0)) ++rep.sign_changes;
  }
  rep.boundary_optimum = curve.derivative(p_max) > 0.0;

  const OptimalPrice opt = optimal_price(curve, p_max);
  rep.opt_price = opt.price;

  // Smoothness around the optimum: r(p*) - r(p) <= C_s (p - p*)^2 with
  // C_s = L_r / 2, L_r = 2 b_max + b_max^2 p_max L_F.
  const double l_r = 2.0 * b_max + b_max * b_max * p_max * lipschitz_f;
  rep.c_s = 0.5 * l_r;
  rep.smoothness_checked = !rep.boundary_optimum;
  if (rep.smoothness_checked) {
    rep.smoothness_ok = true;
    for (int i = 0; i < grid_points; ++i) {
      const double p = i * step;
      const double gap = opt.revenue - curve.revenue(p) -
                         rep.c_s * (p - opt.price) * (p - opt.price);
      if (gap > rep.worst_smoothness_gap) rep.worst_smoothness_gap = gap;
    }
    if (rep.worst_smoothness_gap > 1e-7) rep.smoothness_ok = false;
  }

  // Local strong decrease of r' in the eps-neighborhood of p*:
  // r'(p1) - r'(p2) >= C_eps (p2 - p1).  Adjacent grid pairs telescope, so
  // checking neighbors covers all pairs.  Skipped when F at the optimum is
  // numerically zero (fully censored optimum carries no local signal).
  const double f_at_opt = curve.noise().cdf(curve.margin(opt.price));
  if (f_at_opt >= 1e-3 && !rep.boundary_optimum) {
    rep.concavity_checked = true;
    rep.eps_neighborhood = f_at_opt / (2.0 * lipschitz_f * b_max);
    rep.c_eps = 0.5 * b_min * f_at_opt;
    rep.concavity_ok = true;
    const double lo = std::max(0.0, opt.price - rep.eps_neighborhood);
    const double hi = std::min(p_max, opt.price + rep.eps_neighborhood);
    const int n = grid_points;
    const double h = (hi - lo) / (n - 1);
    if (h > 0.0) {
      double prev = curve.derivative(lo);
      for (int i = 1; i < n; ++i) {
        const double cur = curve.derivative(lo + i * h);
        if (prev - cur < rep.c_eps * h - 1e-9) {
          rep.concavity_ok = false;
          break;
        }
        prev = cur;
      }
    }
  }
  return rep;
}

double mc_mean_reward(const ProblemInstance& inst, const NoiseModel& noise,
                      double gamma, double price, std::int64_t n_samples,
                      std::uint64_t seed, bool parallel, double* stderr_out) {
  if (n_samples < 1) throw std::invalid_argument("need at least one sample");
  double sum = 0.0, sum_sq = 0.0;

  if (parallel) {
#pragma omp parallel for reduction(+ : sum, sum_sq) schedule(static)
    for (std::int64_t i = 0; i < n_samples; ++i) {
      SplitMix64 g = substream_at(seed, Stream::monte_carlo,
                                  static_cast<std::uint64_t>(i));
      const double d = inst.a - inst.b * price + noise.sample(g);
      const double r = price * std::min(gamma, d);
      sum += r;
      sum_sq += r * r;
    }
  } else {
    for (std::int64_t i = 0; i < n_samples; ++i) {
      SplitMix64 g = substream_at(seed, Stream::monte_carlo,
                                  static_cast<std::uint64_t>(i));
      const double d = inst.a - inst.b * price + noise.sample(g);
      const double r = price * std::min(gamma, d);
      sum += r;
      sum_sq += r * r;
    }
  }

  const double n = static_cast<double>(n_samples);
  const double mean = sum / n;
  if (stderr_out != nullptr) {
    const double var = std::max(0.0, sum_sq / n - mean * mean);
    *stderr_out = std::sqrt(var / n);
  }
  return mean;
}

}  // namespace pricing
