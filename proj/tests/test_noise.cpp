#include "pricing/noise.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "pricing/rng.hpp"

using namespace pricing;

namespace {

/// One-sample Kolmogorov-Smirnov statistic against the model's own CDF.
double ks_statistic(const NoiseModel& m, int n, std::uint64_t seed) {
  SplitMix64 rng = substream(seed, Stream::fuzz);
  std::vector<double> xs(static_cast<std::size_t>(n));
  for (auto& x : xs) x = m.sample(rng);
  std::sort(xs.begin(), xs.end());
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const double f = m.cdf(xs[static_cast<std::size_t>(i)]);
    worst = std::max(worst, std::fabs(f - static_cast<double>(i) / n));
    worst = std::max(worst, std::fabs(f - static_cast<double>(i + 1) / n));
  }
  return worst;
}

}  // namespace

TEST_CASE("uniform noise closed forms") {
  const auto m = make_noise_model(NoiseKind::uniform, 1.0);
  CHECK(m->cdf(0.0) == doctest::Approx(0.5));
  CHECK(m->integrated_cdf(0.0) == doctest::Approx(0.25));
  CHECK(m->cdf(-1.0) == 0.0);
  CHECK(m->cdf(1.0) == 1.0);
  CHECK(m->cdf(-2.0) == 0.0);
  CHECK(m->integrated_cdf(-2.0) == 0.0);
  CHECK(m->integrated_cdf(3.0) == doctest::Approx(3.0));
  CHECK(m->lipschitz() == doctest::Approx(0.5));

  const auto m2 = make_noise_model(NoiseKind::uniform, 2.0);
  CHECK(m2->cdf(0.5) == doctest::Approx(0.625));
  CHECK(m2->lipschitz() == doctest::Approx(0.25));
}

TEST_CASE("triangular noise closed forms") {
  const auto m = make_noise_model(NoiseKind::triangular, 1.0);
  CHECK(m->cdf(0.5) == doctest::Approx(0.875));
  CHECK(m->cdf(-0.5) == doctest::Approx(0.125));
  CHECK(m->cdf(0.0) == doctest::Approx(0.5));
  CHECK(m->integrated_cdf(0.0) == doctest::Approx(1.0 / 6.0));
  CHECK(m->lipschitz() == doctest::Approx(1.0));

  const auto m2 = make_noise_model(NoiseKind::triangular, 2.0);
  CHECK(m2->cdf(0.7) == doctest::Approx(0.78875).epsilon(1e-12));
  CHECK(m2->integrated_cdf(0.7) ==
        doctest::Approx(0.7915416666666666).epsilon(1e-12));
}

TEST_CASE("truncated gaussian closed forms (sigma = c/3 default)") {
  const auto m = make_noise_model(NoiseKind::truncated_gaussian, 1.0);
  // Frozen from an independent Python evaluation of the same closed forms,
  // cross-checked against numerical integration of the CDF.
  CHECK(m->cdf(0.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(m->cdf(0.5) == doctest::Approx(0.9343654969899314).epsilon(1e-12));
  CHECK(m->integrated_cdf(0.0) ==
        doctest::Approx(0.13185947101056944).epsilon(1e-12));
  CHECK(m->integrated_cdf(0.5) ==
        doctest::Approx(0.5089908709841255).epsilon(1e-12));
  CHECK(m->lipschitz() ==
        doctest::Approx(1.2000667767638546).epsilon(1e-12));
}

TEST_CASE("zero-mean identity G(c) = c holds to 1e-9 for every model") {
  for (double c : {0.5, 1.0, 2.0, 3.5}) {
    for (auto kind : {NoiseKind::uniform, NoiseKind::triangular,
                      NoiseKind::truncated_gaussian}) {
      const auto m = make_noise_model(kind, c);
      CHECK(std::fabs(m->integrated_cdf(c) - c) <= 1e-9);
    }
    const auto wide = make_noise_model(NoiseKind::truncated_gaussian, c, c);
    CHECK(std::fabs(wide->integrated_cdf(c) - c) <= 1e-9);
  }
}

TEST_CASE("central difference of G reproduces F") {
  const double h = 1e-6;
  for (auto kind : {NoiseKind::uniform, NoiseKind::triangular,
                    NoiseKind::truncated_gaussian}) {
    const auto m = make_noise_model(kind, 1.0);
    for (double x : {-0.6, -0.1, 0.2, 0.8}) {
      const double fd =
          (m->integrated_cdf(x + h) - m->integrated_cdf(x - h)) / (2.0 * h);
      CHECK(std::fabs(fd - m->cdf(x)) <= 1e-6);
    }
  }
}

TEST_CASE("samples respect the support and match the CDF") {
  const int n = 1000000;
  int seed_ix = 0;
  for (auto kind : {NoiseKind::uniform, NoiseKind::triangular,
                    NoiseKind::truncated_gaussian}) {
    const double c = 1.5;
    const auto m = make_noise_model(kind, c);
    SplitMix64 rng = substream(900 + seed_ix++, Stream::fuzz);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      const double x = m->sample(rng);
      REQUIRE(x >= -c);
      REQUIRE(x <= c);
      sum += x;
    }
    CHECK(std::fabs(sum / n) <= 3.0 * c / 1000.0);
    CHECK(ks_statistic(*m, n, 77) <= 0.005);
  }
}

TEST_CASE("factory and parsing") {
  CHECK_THROWS_AS((void)make_noise_model(NoiseKind::uniform, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)make_noise_model(NoiseKind::uniform, -1.0),
                  std::invalid_argument);
  CHECK(noise_kind_from_string("uniform") == NoiseKind::uniform);
  CHECK(noise_kind_from_string("triangular") == NoiseKind::triangular);
  CHECK(noise_kind_from_string("truncated-gaussian") ==
        NoiseKind::truncated_gaussian);
  CHECK_THROWS_AS((void)noise_kind_from_string("gaussian"),
                  std::invalid_argument);
  for (auto kind : {NoiseKind::uniform, NoiseKind::triangular,
                    NoiseKind::truncated_gaussian}) {
    CHECK(noise_kind_from_string(to_string(kind)) == kind);
    CHECK(make_noise_model(kind, 1.0)->name() == to_string(kind));
    CHECK(make_noise_model(kind, 1.0)->kind() == kind);
    CHECK(make_noise_model(kind, 2.5)->half_width() == 2.5);
  }
}
