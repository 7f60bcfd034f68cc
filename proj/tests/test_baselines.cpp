#include "pricing/baselines.hpp"

#include <cmath>

#include "doctest.h"

using namespace pricing;

namespace {

PolicyView canonical_view() {
  return PolicyView{/*a_max=*/10.0, /*b_min=*/1.0, /*b_max=*/1.0,
                    /*c=*/1.0,      /*p_max=*/6.0, /*gamma_min=*/5.5};
}

Observation informative_obs() {
  Observation obs;
  obs.gamma = 8.0;
  obs.demand = 7.0;
  obs.indicator = true;
  obs.quartile = {1, 0, 1};  // q-signal 1/3 per round (gamma_0 = 5)
  return obs;
}

}  // namespace

TEST_CASE("explore-then-commit explores, estimates, then commits") {
  EtcPolicy pol(canonical_view(), /*window=*/20, /*seed=*/5);
  CHECK(!pol.committed());
  CHECK_THROWS_AS((void)pol.commit_price(), std::logic_error);

  for (int t = 0; t < 20; ++t) {
    const PolicyDecision d = pol.act(8.0);
    CHECK(d.round_case == RoundCase::explore);
    CHECK(d.price >= 0.0);
    CHECK(d.price <= 6.0);
    CHECK(d.record_feedback);
    pol.learn(d, informative_obs());
  }
  CHECK(pol.committed());
  // Same synthetic stream as the grid policy's test: b_hat clamps to 1,
  // a_hat clamps to 10, so the committed price is a_hat/(2 b_hat) = 5.
  CHECK(pol.estimates().b_hat == doctest::Approx(1.0));
  CHECK(pol.estimates().a_hat == doctest::Approx(10.0));
  CHECK(pol.commit_price() == doctest::Approx(5.0));

  const PolicyDecision d = pol.act(6.0);
  CHECK(d.round_case == RoundCase::commit);
  CHECK(d.price == doctest::Approx(5.0));
  CHECK(!d.record_feedback);
  // Post-commit feedback is ignored entirely.
  pol.learn(d, informative_obs());
  CHECK(pol.commit_price() == doctest::Approx(5.0));
}

TEST_CASE("explore-then-commit extends, then fails without slope signal") {
  EtcPolicy pol(canonical_view(), /*window=*/10, /*seed=*/5);
  Observation blank;
  blank.gamma = 8.0;
  blank.demand = 8.0;
  blank.quartile = {1, 1, 1};  // e1 - e2 = 0 forever
  for (int t = 0; t < 19; ++t) {
    pol.learn(pol.act(8.0), blank);
    CHECK(!pol.committed());
  }
  CHECK_THROWS_AS(pol.learn(pol.act(8.0), blank), EstimatorFailure);
  CHECK_THROWS_AS(EtcPolicy(canonical_view(), 0, 1), std::invalid_argument);
}

TEST_CASE("index policy seeds round-robin then chases the best arm") {
  const PolicyView view = canonical_view();
  UcbGridPolicy pol(view, /*n_arms=*/4);
  CHECK(pol.arms() == 4);
  // Midpoint prices of the 4 bins of [0, 6].
  CHECK(pol.arm_price(0) == doctest::Approx(0.75));
  CHECK(pol.arm_price(1) == doctest::Approx(2.25));
  CHECK(pol.arm_price(2) == doctest::Approx(3.75));
  CHECK(pol.arm_price(3) == doctest::Approx(5.25));

  // Rounds 1..4 play arms 0..3 in order.
  for (int i = 0; i < 4; ++i) {
    const PolicyDecision d = pol.act(7.0);
    CHECK(d.round_case == RoundCase::ucb_arm);
    CHECK(d.bin == i);
    CHECK(d.price == doctest::Approx(pol.arm_price(i)));
    Observation obs;
    obs.reward = 0.0;
    pol.learn(d, obs);
  }

  // Feed arm 2 big rewards whenever it is played; it must dominate.
  for (int t = 0; t < 400; ++t) {
    const PolicyDecision d = pol.act(7.0);
    Observation obs;
    obs.reward = d.bin == 2 ? 20.0 : 0.1;
    pol.learn(d, obs);
  }
  std::int64_t max_pulls = 0;
  int best_arm = -1;
  for (int i = 0; i < 4; ++i) {
    if (pol.arm_pulls(i) > max_pulls) {
      max_pulls = pol.arm_pulls(i);
      best_arm = i;
    }
  }
  CHECK(best_arm == 2);
  CHECK(max_pulls > 200);
}

TEST_CASE("index policy rejects out-of-order feedback") {
  UcbGridPolicy pol(canonical_view(), 3);
  const PolicyDecision d = pol.act(7.0);
  PolicyDecision stale = d;
  stale.bin = (d.bin + 1) % 3;
  Observation obs;
  CHECK_THROWS_AS(pol.learn(stale, obs), std::logic_error);
  CHECK_THROWS_AS(UcbGridPolicy(canonical_view(), 0), std::invalid_argument);
}

TEST_CASE("reference policy plays the per-round optimum") {
  ProblemInstance inst;
  inst.a = 10.0;
  inst.b = 1.0;
  inst.a_max = 10.0;
  inst.b_min = 1.0;
  inst.b_max = 1.0;
  inst.c = 1.0;
  inst.p_max = 6.0;
  inst.gamma_min = 5.5;
  inst.noise = NoiseKind::uniform;
  const auto noise = inst.make_noise();
  OraclePolicy pol(inst, *noise);
  const PolicyDecision d = pol.act(5.5);
  CHECK(d.round_case == RoundCase::oracle_play);
  CHECK(d.price == doctest::Approx(5.281967668825689).epsilon(1e-6));
  CHECK(!d.record_feedback);
}
