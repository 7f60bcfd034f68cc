#pragma once

#include <memory>
#include <string>
#include <vector>

#include "pricing/noise.hpp"

namespace pricing {

/**
 * One market instance: latent linear demand a - b*p plus bounded noise,
 * price cap p_max, and the known a-priori bounds (a_max, b_min, b_max,
 * gamma_min) that policies are allowed to use.  The true (a, b) stay on the
 * environment/oracle side.
 */
struct ProblemInstance {
  double a = 0.0;
  double b = 0.0;
  double a_max = 0.0;
  double b_min = 0.0;
  double b_max = 0.0;
  double c = 0.0;
  double p_max = 0.0;
  double gamma_min = 0.0;
  NoiseKind noise = NoiseKind::uniform;
  double noise_sigma = 0.0;  // truncated gaussian only; <= 0 -> c/3
  double lipschitz_f = 0.0;  // known bound on F's Lipschitz constant; <= 0 -> model's

  /// Feasibility floor gamma_0 = a_max - b_min * p_max + c.
  [[nodiscard]] double gamma0() const { return a_max - b_min * p_max + c; }

  [[nodiscard]] std::unique_ptr<NoiseModel> make_noise() const {
    return make_noise_model(noise, c, noise_sigma);
  }

  /// Lipschitz bound handed to schedule derivation.
  [[nodiscard]] double lipschitz_bound() const {
    if (lipschitz_f > 0.0) return lipschitz_f;
    return make_noise()->lipschitz();
  }
};

/// The constants a learning policy may legally see (no true a, b).
struct PolicyView {
  double a_max = 0.0;
  double b_min = 0.0;
  double b_max = 0.0;
  double c = 0.0;
  double p_max = 0.0;
  double gamma_min = 0.0;

  [[nodiscard]] double gamma0() const { return a_max - b_min * p_max + c; }

  [[nodiscard]] static PolicyView of(const ProblemInstance& inst) {
    return PolicyView{inst.a_max, inst.b_min, inst.b_max,
                      inst.c,     inst.p_max, inst.gamma_min};
  }
};

struct ValidationIssue {
  std::string check;
  std::string detail;
};

struct ValidationReport {
  std::vector<std::string> passed;
  std::vector<ValidationIssue> failures;
  std::vector<std::string> warnings;

  [[nodiscard]] bool ok() const { return failures.empty(); }
  [[nodiscard]] std::string to_string() const;
};

/**
 * Checks the feasibility assumptions against the inventory range
 * [gamma_lo, gamma_hi] the generator can emit.  Refuses (reports a failure)
 * rather than clamping anything.
 */
[[nodiscard]] ValidationReport validate_instance(const ProblemInstance& inst,
                                                 double gamma_lo,
                                                 double gamma_hi);

}  // namespace pricing
