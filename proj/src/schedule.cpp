#include "pricing/schedule.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace pricing {
namespace {

double log_factor(double eta, double delta) {
  const double q = eta * delta;
  if (!(q > 0.0) || !(q < 2.0)) {
    throw std::invalid_argument(
        "eta*delta must lie in (0, 2); got eta*delta=" + std::to_string(q));
  }
  return std::sqrt(0.5 * std::log(2.0 / q));
}

struct Scales {
  double c_a, c_b, c_n, c_tau;
};

Scales scales_at(const PolicyView& v, double lipschitz_f, double eta,
                 double delta, bool statement_cb) {
  const double gap = v.gamma_min - v.gamma0();
  if (!(gap > 0.0)) {
    throw std::invalid_argument(
        "gamma_min must exceed gamma_0 to derive the schedule");
  }
  const double lf = log_factor(eta, delta);
  const double c_b = statement_cb
                         ? 8.0 * v.b_max * v.b_max / gap * lf
                         : 4.0 * v.b_max * v.b_max * v.p_max / gap * lf;
  const double c_a = v.p_max * (c_b + v.b_max * lf);
  const double c_n = (v.c + v.a_max + v.b_max * v.p_max) * lf;
  const double c_tau =
      2.0 * (v.b_max * v.p_max * lipschitz_f + 1.0) *
          (c_a + c_b * (v.c + v.a_max) / v.b_min) +
      v.p_max * c_b;
  return {c_a, c_b, c_n, c_tau};
}

}  // namespace

ConstantSchedule ConstantSchedule::derive(const PolicyView& view,
                                          double lipschitz_f,
                                          std::int64_t horizon,
                                          const ScheduleOverrides& overrides) {
  if (horizon < 64) {
    throw std::invalid_argument("horizon must be at least 64");
  }
  if (!(lipschitz_f > 0.0)) {
    throw std::invalid_argument("Lipschitz bound must be positive");
  }
  ConstantSchedule s;
  s.horizon = horizon;
  s.delta = overrides.delta;
  s.statement_cb = overrides.statement_cb;
  s.lipschitz_f = lipschitz_f;
  s.tau = static_cast<int>(
      std::max<std::int64_t>(16, std::llround(std::sqrt(
                                     static_cast<double>(horizon)))));

  if (overrides.eta.has_value()) {
    s.eta = *overrides.eta;
  } else {
    const double t54 = std::pow(static_cast<double>(horizon), 1.25);
    const double eta0 = 1.0 / t54;
    const Scales first =
        scales_at(view, lipschitz_f, eta0, s.delta, s.statement_cb);
    s.eta = (first.c_a + first.c_b * view.p_max) / (10.0 * view.c * t54);
  }

  const Scales sc = scales_at(view, lipschitz_f, s.eta, s.delta,
                              s.statement_cb);
  s.c_a = sc.c_a;
  s.c_b = sc.c_b;
  s.c_n = sc.c_n;
  s.c_tau = sc.c_tau;
  s.delta_grid =
      (s.c_a + s.c_b * view.p_max) / std::sqrt(static_cast<double>(s.tau));
  s.m = static_cast<int>(std::floor(view.c / (2.0 * s.delta_grid)));
  return s;
}

std::string ConstantSchedule::to_string() const {
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "horizon=%lld tau=%d eta=%.10g delta=%.10g\n"
                "C_a=%.10g C_b=%.10g (%s form) C_N=%.10g C_tau=%.10g\n"
                "grid: Delta=%.10g M=%d bins=%d L_F=%.10g",
                static_cast<long long>(horizon), tau, eta, delta, c_a, c_b,
                statement_cb ? "statement" : "derived", c_n, c_tau, delta_grid,
                m, 2 * m + 1, lipschitz_f);
  return buf;
}

std::vector<std::string> ConstantSchedule::warnings() const {
  std::vector<std::string> w;
  if (m < 4) {
    std::ostringstream os;
    os << "grid very coarse for this horizon (M=" << m
       << "); confidence-bound pricing degenerates toward a single bin";
    w.push_back(os.str());
  }
  if (tau + (2LL * m + 1) >= horizon) {
    std::ostringstream os;
    os << "exploration (tau=" << tau << ") plus grid init (" << (2 * m + 1)
       << " rounds) exhausts the horizon " << horizon;
    w.push_back(os.str());
  }
  return w;
}

}  // namespace pricing
