#include "pricing/noise.hpp"

#include <cmath>
#include <stdexcept>

namespace pricing {
namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014326779;

double std_normal_cdf(double u) { return 0.5 * std::erfc(-u * M_SQRT1_2); }
double std_normal_pdf(double u) {
  return kInvSqrt2Pi * std::exp(-0.5 * u * u);
}
/// Antiderivative of the standard normal CDF: I(u) = u*Phi(u) + phi(u).
double std_normal_cdf_integral(double u) {
  return u * std_normal_cdf(u) + std_normal_pdf(u);
}

class UniformNoise final : public NoiseModel {
 public:
  explicit UniformNoise(double c) : c_(c) {}

  [[nodiscard]] NoiseKind kind() const override { return NoiseKind::uniform; }
  [[nodiscard]] std::string name() const override { return "uniform"; }
  [[nodiscard]] double half_width() const override { return c_; }

  [[nodiscard]] double cdf(double x) const override {
    if (x <= -c_) return 0.0;
    if (x >= c_) return 1.0;
    return (x + c_) / (2.0 * c_);
  }

  [[nodiscard]] double integrated_cdf(double x) const override {
    if (x <= -c_) return 0.0;
    if (x >= c_) return x;
    const double s = x + c_;
    return s * s / (4.0 * c_);
  }

  [[nodiscard]] double lipschitz() const override { return 1.0 / (2.0 * c_); }

  [[nodiscard]] double sample(SplitMix64& rng) const override {
    return -c_ + 2.0 * c_ * rng.next_double();
  }

 private:
  double c_;
};

/// Symmetric triangular density (c - |x|) / c^2 on [-c, c].
class TriangularNoise final : public NoiseModel {
 public:
  explicit TriangularNoise(double c) : c_(c) {}

  [[nodiscard]] NoiseKind kind() const override {
    return NoiseKind::triangular;
  }
  [[nodiscard]] std::string name() const override { return "triangular"; }
  [[nodiscard]] double half_width() const override { return c_; }

  [[nodiscard]] double cdf(double x) const override {
    if (x <= -c_) return 0.0;
    if (x >= c_) return 1.0;
    if (x <= 0.0) {
      const double s = x + c_;
      return s * s / (2.0 * c_ * c_);
    }
    const double s = c_ - x;
    return 1.0 - s * s / (2.0 * c_ * c_);
  }

  [[nodiscard]] double integrated_cdf(double x) const override {
    if (x <= -c_) return 0.0;
    if (x >= c_) return x;
    if (x <= 0.0) {
      const double s = x + c_;
      return s * s * s / (6.0 * c_ * c_);
    }
    const double s = c_ - x;
    return c_ / 6.0 + x - (c_ * c_ * c_ - s * s * s) / (6.0 * c_ * c_);
  }

  [[nodiscard]] double lipschitz() const override { return 1.0 / c_; }

  [[nodiscard]] double sample(SplitMix64& rng) const override {
    return c_ * (rng.next_double() + rng.next_double() - 1.0);
  }

 private:
  double c_;
};

/// N(0, sigma^2) conditioned on [-c, c]; symmetric, hence exactly zero-mean.
class TruncatedGaussianNoise final : public NoiseModel {
 public:
  TruncatedGaussianNoise(double c, double sigma)
      : c_(c),
        sigma_(sigma),
        phi_lo_(std_normal_cdf(-c / sigma)),
        mass_(std_normal_cdf(c / sigma) - std_normal_cdf(-c / sigma)),
        int_lo_(std_normal_cdf_integral(-c / sigma)) {}

  [[nodiscard]] NoiseKind kind() const override {
    return NoiseKind::truncated_gaussian;
  }
  [[nodiscard]] std::string name() const override {
    return "truncated-gaussian";
  }
  [[nodiscard]] double half_width() const override { return c_; }

  [[nodiscard]] double cdf(double x) const override {
    if (x <= -c_) return 0.0;
    if (x >= c_) return 1.0;
    return (std_normal_cdf(x / sigma_) - phi_lo_) / mass_;
  }

  [[nodiscard]] double integrated_cdf(double x) const override {
    if (x <= -c_) return 0.0;
    if (x >= c_) return x;
    const double upper =
        sigma_ * (std_normal_cdf_integral(x / sigma_) - int_lo_);
    return (upper - (x + c_) * phi_lo_) / mass_;
  }

  [[nodiscard]] double lipschitz() const override {
    return kInvSqrt2Pi / (sigma_ * mass_);
  }

  [[nodiscard]] double sample(SplitMix64& rng) const override {
    // Inverse-CDF: bisection bracket, then Newton polish.  Deterministic
    // draw count (one uniform) keeps substreams aligned.
    const double u = rng.next_double();
    double lo = -c_, hi = c_;
    for (int i = 0; i < 16; ++i) {
      const double mid = 0.5 * (lo + hi);
      (cdf(mid) < u ? lo : hi) = mid;
    }
    double x = 0.5 * (lo + hi);
    for (int i = 0; i < 4; ++i) {
      const double density = std_normal_pdf(x / sigma_) / (sigma_ * mass_);
      if (density <= 1e-300) break;
      x -= (cdf(x) - u) / density;
      if (x < lo) x = lo;
      if (x > hi) x = hi;
    }
    return x;
  }

 private:
  double c_;
  double sigma_;
  double phi_lo_;
  double mass_;
  double int_lo_;
};

}  // namespace

std::unique_ptr<NoiseModel> make_noise_model(NoiseKind kind, double c,
                                             double sigma) {
  if (!(c > 0.0)) {
    throw std::invalid_argument("noise half-width c must be positive");
  }
  switch (kind) {
    case NoiseKind::uniform:
      return std::make_unique<UniformNoise>(c);
    case NoiseKind::triangular:
      return std::make_unique<TriangularNoise>(c);
    case NoiseKind::truncated_gaussian: {
      const double s = sigma > 0.0 ? sigma : c / 3.0;
      return std::make_unique<TruncatedGaussianNoise>(c, s);
    }
  }
  throw std::invalid_argument("unknown noise kind");
}

NoiseKind noise_kind_from_string(const std::string& s) {
  if (s == "uniform") return NoiseKind::uniform;
  if (s == "triangular") return NoiseKind::triangular;
  if (s == "truncated-gaussian") return NoiseKind::truncated_gaussian;
  throw std::invalid_argument("unknown noise kind: " + s);
}

std::string to_string(NoiseKind k) {
  switch (k) {
    case NoiseKind::uniform:
      return "uniform";
    case NoiseKind::triangular:
      return "triangular";
    case NoiseKind::truncated_gaussian:
      return "truncated-gaussian";
  }
  return "?";
}

}  // namespace pricing
