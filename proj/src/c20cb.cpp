#include "pricing/c20cb.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

namespace pricing {

Stage1Accumulators::Estimates Stage1Accumulators::finish(double p_max,
                                                         double gamma0,
                                                         double a_max,
                                                         double b_min,
                                                         double b_max) const {
  if (count == 0) {
    throw EstimatorFailure("stage 1 finished with no rounds recorded");
  }
  if (!(sum_q > 0.0)) {
    throw EstimatorFailure(
        "stage 1 slope signal empty after " + std::to_string(count) +
        " rounds: every quartile difference e_1 - e_2 was zero, the slope "
        "denominator cannot be inverted");
  }
  const double n = static_cast<double>(count);
  Estimates est;
  est.b_raw = 1.0 / (4.0 * p_max * (sum_q / n));
  est.b_hat = std::clamp(est.b_raw, b_min, b_max);
  const double mean_e3 = sum_e3 / n;
  const double mean_gamma = sum_gamma / n;
  est.a_raw = est.b_raw * p_max * mean_e3 + (3.0 * mean_gamma + gamma0) / 4.0;
  est.a_hat = std::min(
      est.b_hat * p_max * mean_e3 + (3.0 * mean_gamma + gamma0) / 4.0, a_max);
  return est;
}

GridState::GridState(const ConstantSchedule& s, double a_hat_in,
                     double b_hat_in)
    : m(s.m),
      delta_grid(s.delta_grid),
      c_n(s.c_n),
      c_tau(s.c_tau),
      tau(s.tau),
      a_hat(a_hat_in),
      b_hat(b_hat_in),
      bins(static_cast<std::size_t>(2 * s.m + 1)) {}

void GridState::record(int k, bool indicator, double d_observed, double gamma,
                       double c) {
  GridBin& b = bin(k);
  const double n = static_cast<double>(b.n);
  b.f = (n * b.f + (indicator ? 1.0 : 0.0)) / (n + 1.0);
  b.g = (n * b.g + (d_observed - gamma + c)) / (n + 1.0);
  ++b.n;
  b.bar = c_n / std::sqrt(static_cast<double>(b.n)) +
          c_tau / std::sqrt(static_cast<double>(tau));
}

ScanResult opt_price_scan(const GridState& grid, double gamma, double c,
                          bool gamma0_variant, double gamma0) {
  ScanResult best;
  double best_rho = std::numeric_limits<double>::infinity();
  bool all_above = true;

  for (int k = grid.m; k >= -grid.m; --k) {
    const double rh = grid.r_hat(k, gamma, c, gamma0_variant, gamma0);
    const double bar = grid.bin(k).bar;
    const double lo = rh - bar;
    const double hi = rh + bar;

    if (lo <= 0.0 && 0.0 <= hi) {
      // Largest straddling bin wins outright (largest price).
      ScanResult res;
      res.round_case = RoundCase::bar_contains_zero;
      res.k = k;
      res.raw_price = grid.target_price(k, gamma);
      res.r_hat = rh;
      res.bar_half_width = bar;
      return res;
    }
    if (lo <= 0.0) all_above = false;
    const double rho = std::min(std::fabs(lo), std::fabs(hi));
    if (rho < best_rho) {
      best_rho = rho;
      best.k = k;
      best.raw_price = grid.target_price(k, gamma);
      best.r_hat = rh;
      best.bar_half_width = bar;
    }
  }

  if (all_above) {
    ScanResult res;
    res.round_case = RoundCase::all_above_zero;
    return res;
  }
  best.round_case = RoundCase::closest_to_zero;
  return best;
}

C20cbPolicy::C20cbPolicy(const ConstantSchedule& schedule,
                         const PolicyView& view, std::uint64_t seed,
                         bool gamma0_variant)
    : schedule_(schedule),
      view_(view),
      gamma0_variant_(gamma0_variant),
      explore_rng_(substream(seed, Stream::exploration)) {
  if (!(view_.p_max > 0.0)) {
    throw std::invalid_argument("p_max must be positive");
  }
}

double C20cbPolicy::clamp_price(double p) const {
  return std::clamp(p, 0.0, view_.p_max);
}

double C20cbPolicy::fallback_price() const {
  return clamp_price(est_.a_hat / (2.0 * est_.b_hat));
}

const Stage1Accumulators::Estimates& C20cbPolicy::estimates() const {
  if (!estimates_ready()) {
    throw std::logic_error("stage-1 estimates not available yet");
  }
  return est_;
}

PolicyDecision C20cbPolicy::act(double gamma) {
  PolicyDecision d;
  switch (phase_) {
    case Phase::explore: {
      d.price = view_.p_max * explore_rng_.next_double();
      d.raw_price = d.price;
      d.round_case = RoundCase::stage1;
      d.record_feedback = true;
      return d;
    }
    case Phase::grid_init: {
      const int k = init_next_k_;
      d.raw_price = grid_.target_price(k, gamma);
      d.price = clamp_price(d.raw_price);
      d.clamped = d.price != d.raw_price;
      d.bin = k;
      d.round_case = RoundCase::grid_init;
      d.record_feedback = true;
      return d;
    }
    case Phase::main: {
      const double threshold =
          (est_.a_hat + schedule_.c_a /
                            std::sqrt(static_cast<double>(schedule_.tau))) /
              2.0 +
          view_.c;
      if (gamma >= threshold) {
        d.price = fallback_price();
        d.raw_price = d.price;
        d.round_case = RoundCase::skip_large_gamma;
        d.record_feedback = false;
        return d;
      }
      const ScanResult scan = opt_price_scan(grid_, gamma, view_.c,
                                             gamma0_variant_, view_.gamma0());
      if (scan.round_case == RoundCase::all_above_zero) {
        d.price = fallback_price();
        d.raw_price = d.price;
        d.round_case = RoundCase::all_above_zero;
        d.record_feedback = false;
        return d;
      }
      d.bin = scan.k;
      d.raw_price = scan.raw_price;
      d.price = clamp_price(scan.raw_price);
      d.clamped = d.price != d.raw_price;
      d.r_hat = scan.r_hat;
      d.bar_half_width = scan.bar_half_width;
      d.round_case = scan.round_case;
      d.record_feedback = true;
      return d;
    }
  }
  throw std::logic_error("unreachable policy phase");
}

void C20cbPolicy::learn(const PolicyDecision& decision,
                        const Observation& obs) {
  ++round_;
  switch (phase_) {
    case Phase::explore: {
      acc_.add(obs.quartile[0], obs.quartile[1], obs.quartile[2], obs.gamma,
               view_.gamma0());
      if (acc_.count >= schedule_.tau) {
        if (acc_.sum_q > 0.0) {
          est_ = acc_.finish(view_.p_max, view_.gamma0(), view_.a_max,
                             view_.b_min, view_.b_max);
          tau_effective_ = static_cast<int>(acc_.count);
          grid_ = GridState(schedule_, est_.a_hat, est_.b_hat);
          init_next_k_ = -schedule_.m;
          phase_ = Phase::grid_init;
        } else if (acc_.count >= 2LL * schedule_.tau) {
          throw EstimatorFailure(
              "stage 1 extension budget exhausted: no censoring-indicator "
              "signal after " +
              std::to_string(acc_.count) + " rounds (nominal tau " +
              std::to_string(schedule_.tau) +
              "); instance appears degenerate for quartile estimation");
        }
        // Otherwise: keep exploring round-by-round until signal appears.
      }
      return;
    }
    case Phase::grid_init: {
      if (decision.bin == kNoBin) {
        throw std::logic_error("grid init round carried no bin");
      }
      grid_.record(decision.bin, obs.indicator, obs.demand, obs.gamma,
                   view_.c);
      ++init_next_k_;
      if (init_next_k_ > schedule_.m) phase_ = Phase::main;
      return;
    }
    case Phase::main: {
      if (!decision.record_feedback) return;
      if (decision.bin == kNoBin) {
        throw std::logic_error("feedback requested without a bin");
      }
      grid_.record(decision.bin, obs.indicator, obs.demand, obs.gamma,
                   view_.c);
      return;
    }
  }
}

void C20cbPolicy::save_state(std::ostream& os) const {
  char buf[256];
  os << "c20cb-state 1\n";
  std::snprintf(buf, sizeof buf, "phase %d round %lld tau_eff %d next_k %d\n",
                static_cast<int>(phase_), static_cast<long long>(round_),
                tau_effective_, init_next_k_);
  os << buf;
  os << "rng " << explore_rng_.state << "\n";
  std::snprintf(buf, sizeof buf, "acc %.17g %.17g %.17g %lld\n", acc_.sum_q,
                acc_.sum_e3, acc_.sum_gamma,
                static_cast<long long>(acc_.count));
  os << buf;
  std::snprintf(buf, sizeof buf, "est %.17g %.17g %.17g %.17g\n", est_.b_raw,
                est_.a_raw, est_.b_hat, est_.a_hat);
  os << buf;
  std::snprintf(buf, sizeof buf,
                "grid %d %.17g %.17g %.17g %d %.17g %.17g bins %zu\n",
                grid_.m, grid_.delta_grid, grid_.c_n, grid_.c_tau, grid_.tau,
                grid_.a_hat, grid_.b_hat, grid_.bins.size());
  os << buf;
  for (std::size_t i = 0; i < grid_.bins.size(); ++i) {
    const GridBin& b = grid_.bins[i];
    std::snprintf(buf, sizeof buf, "bin %lld %.17g %.17g %lld %.17g\n",
                  static_cast<long long>(i) - grid_.m, b.f, b.g,
                  static_cast<long long>(b.n), b.bar);
    os << buf;
  }
  os << "end\n";
}

C20cbPolicy C20cbPolicy::restore(const ConstantSchedule& schedule,
                                 const PolicyView& view, bool gamma0_variant,
                                 std::istream& is) {
  auto fail = [](const std::string& what) {
    throw std::runtime_error("bad policy snapshot: " + what);
  };

  std::string tag;
  int version = 0;
  if (!(is >> tag >> version) || tag != "c20cb-state") fail("header");
  if (version != 1) fail("unsupported version " + std::to_string(version));

  C20cbPolicy p(schedule, view, 0, gamma0_variant);
  int phase_int = 0;
  long long round = 0, acc_count = 0;
  if (!(is >> tag >> phase_int) || tag != "phase") fail("phase");
  if (!(is >> tag >> round) || tag != "round") fail("round");
  if (!(is >> tag >> p.tau_effective_) || tag != "tau_eff") fail("tau_eff");
  if (!(is >> tag >> p.init_next_k_) || tag != "next_k") fail("next_k");
  if (phase_int < 0 || phase_int > 2) fail("phase value");
  p.phase_ = static_cast<Phase>(phase_int);
  p.round_ = round;
  if (!(is >> tag >> p.explore_rng_.state) || tag != "rng") fail("rng");
  if (!(is >> tag >> p.acc_.sum_q >> p.acc_.sum_e3 >> p.acc_.sum_gamma >>
        acc_count) ||
      tag != "acc") {
    fail("accumulators");
  }
  p.acc_.count = acc_count;
  if (!(is >> tag >> p.est_.b_raw >> p.est_.a_raw >> p.est_.b_hat >>
        p.est_.a_hat) ||
      tag != "est") {
    fail("estimates");
  }
  std::size_t nbins = 0;
  GridState g;
  if (!(is >> tag >> g.m >> g.delta_grid >> g.c_n >> g.c_tau >> g.tau >>
        g.a_hat >> g.b_hat) ||
      tag != "grid") {
    fail("grid header");
  }
  if (!(is >> tag >> nbins) || tag != "bins") fail("bin count");
  g.bins.resize(nbins);
  for (std::size_t i = 0; i < nbins; ++i) {
    long long k = 0, n = 0;
    GridBin b;
    if (!(is >> tag >> k >> b.f >> b.g >> n >> b.bar) || tag != "bin") {
      fail("bin " + std::to_string(i));
    }
    if (k != static_cast<long long>(i) - g.m) fail("bin index order");
    b.n = n;
    g.bins[i] = b;
  }
  if (!(is >> tag) || tag != "end") fail("trailer");
  if (p.phase_ != Phase::explore &&
      g.bins.size() != static_cast<std::size_t>(2 * g.m + 1)) {
    fail("bin count inconsistent with grid half-size");
  }
  p.grid_ = std::move(g);
  return p;
}

}  // namespace pricing
