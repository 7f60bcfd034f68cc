#include "pricing/stats.hpp"

#include <cmath>
#include <stdexcept>

#include "doctest.h"

using namespace pricing;

TEST_CASE("mean and standard error") {
  CHECK(mean({2.0, 4.0, 6.0}) == doctest::Approx(4.0));
  CHECK_THROWS_AS((void)mean({}), std::invalid_argument);
  CHECK(stderr_of_mean({5.0}) == 0.0);
  // Sample std of {2,4,6} is 2, so the standard error is 2/sqrt(3).
  CHECK(stderr_of_mean({2.0, 4.0, 6.0}) ==
        doctest::Approx(2.0 / std::sqrt(3.0)));
}

TEST_CASE("log-log fit recovers exact power laws") {
  // value = sqrt(T): slope 1/2, perfect fit.
  const ScalingFit half = fit_scaling({{100.0, 10.0},
                                       {400.0, 20.0},
                                       {1600.0, 40.0}});
  CHECK(half.slope == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(half.r2 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(half.n_used == 3);
  CHECK(half.warnings.empty());
  // Intercept in log space: log(10) - 0.5 log(100) = log(1).
  CHECK(half.intercept == doctest::Approx(0.0).epsilon(1e-12));

  const ScalingFit linear = fit_scaling({{100.0, 100.0}, {400.0, 400.0}});
  CHECK(linear.slope == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(linear.r2 == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("non-positive points are excluded with a warning") {
  const ScalingFit fit = fit_scaling({{100.0, 10.0},
                                      {400.0, 20.0},
                                      {900.0, 0.0},
                                      {-1.0, 5.0}});
  CHECK(fit.n_used == 2);
  CHECK(fit.warnings.size() == 2);
  CHECK(fit.slope == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("degenerate inputs are rejected") {
  CHECK_THROWS_AS((void)fit_scaling({{100.0, 10.0}}), std::invalid_argument);
  CHECK_THROWS_AS((void)fit_scaling({{100.0, 10.0}, {0.0, 20.0}}),
                  std::invalid_argument);
  // Two points on the same T cannot identify a slope.
  CHECK_THROWS_AS((void)fit_scaling({{100.0, 10.0}, {100.0, 20.0}}),
                  std::invalid_argument);
}

TEST_CASE("constant values fit slope zero with r2 = 1") {
  const ScalingFit flat = fit_scaling({{100.0, 7.0}, {400.0, 7.0}});
  CHECK(flat.slope == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(flat.r2 == doctest::Approx(1.0));
}
