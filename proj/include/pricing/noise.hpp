#pragma once

#include <memory>
#include <string>

#include "pricing/rng.hpp"

namespace pricing {

enum class NoiseKind { uniform, triangular, truncated_gaussian };

/**
 * Zero-mean demand noise with bounded support [-c, c].
 *
 * Beyond sampling, a model exposes the two functions the analytic oracle is
 * built on: the CDF F and its running integral G(x) = integral of F from -c
 * to x.  Both are closed forms per model.  Because the noise has zero mean,
 * G(c) = c holds exactly; keeping that identity to ~1e-9 is part of the
 * model contract and is what makes the closed-form revenue usable.
 */
class NoiseModel {
 public:
  virtual ~NoiseModel() = default;

  [[nodiscard]] virtual NoiseKind kind() const = 0;
  [[nodiscard]] virtual std::string name() const = 0;

  /// Support half-width c.
  [[nodiscard]] virtual double half_width() const = 0;

  /// F(x); 0 below -c, 1 above c.
  [[nodiscard]] virtual double cdf(double x) const = 0;

  /// G(x) = integral of F over [-c, x]; 0 below -c, equals x above c.
  [[nodiscard]] virtual double integrated_cdf(double x) const = 0;

  /// A Lipschitz bound on F (the model's peak density).
  [[nodiscard]] virtual double lipschitz() const = 0;

  [[nodiscard]] virtual double sample(SplitMix64& rng) const = 0;
};

/// sigma only applies to the truncated Gaussian; <= 0 selects the default c/3.
[[nodiscard]] std::unique_ptr<NoiseModel> make_noise_model(NoiseKind kind,
                                                           double c,
                                                           double sigma = 0.0);

/// Parses "uniform" | "triangular" | "truncated-gaussian"; throws on others.
[[nodiscard]] NoiseKind noise_kind_from_string(const std::string& s);
[[nodiscard]] std::string to_string(NoiseKind k);

}  // namespace pricing
