#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pricing/instance.hpp"

namespace pricing {

struct ScheduleOverrides {
  std::optional<double> eta;  // confidence knob; default follows the horizon
  double delta = 0.05;
  bool statement_cb = false;  // alternate C_b form (no p_max factor, times 2)
};

/**
 * All horizon-dependent constants the policy runs on, derived once up
 * front from the policy-visible instance bounds.
 *
 * eta and delta enter only through the factor sqrt(0.5*log(2/(eta*delta))),
 * which scales every constant linearly.  The default eta is obtained from
 * the target-confidence relation eta = (C_a + C_b p_max)/(10 c T^(5/4)) by
 * one fixed-point pass starting at eta_0 = T^(-5/4) (the relation is
 * circular since C_a, C_b depend on eta).
 */
struct ConstantSchedule {
  std::int64_t horizon = 0;
  int tau = 0;           // exploration length, round(sqrt(T)), floor 16
  double eta = 0.0;
  double delta = 0.0;
  double c_a = 0.0;      // intercept-estimate deviation scale
  double c_b = 0.0;      // slope-estimate deviation scale
  double c_n = 0.0;      // per-bin bar term, decays as 1/sqrt(N_k)
  double c_tau = 0.0;    // estimate-bias bar term, fixed at 1/sqrt(tau)
  double delta_grid = 0.0;  // half the grid spacing in margin space
  int m = 0;             // grid half-size: bins k = -M..M at w_k = 2k*delta_grid
  double lipschitz_f = 0.0;
  bool statement_cb = false;

  [[nodiscard]] static ConstantSchedule derive(
      const PolicyView& view, double lipschitz_f, std::int64_t horizon,
      const ScheduleOverrides& overrides = {});

  [[nodiscard]] std::string to_string() const;
  [[nodiscard]] std::vector<std::string> warnings() const;
};

}  // namespace pricing
