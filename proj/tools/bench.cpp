// Benchmark comparing the serial reference paths against the OpenMP-parallel
// ones on the two hot kernels: replica fan-out (seeds x full runs) and the
// Monte-Carlo expected-revenue estimator.  The parallel replica path must
// agree with the serial one exactly; the Monte-Carlo kernel reduces in a
// different order, so it is compared under a tolerance.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "pricing/config.hpp"
#include "pricing/oracle.hpp"
#include "pricing/runner.hpp"

namespace {

double now_minus(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

pricing::ExperimentConfig bench_config(std::int64_t horizon, int n_seeds) {
  const std::string text =
      "instance.a = 10\n"
      "instance.b = 1\n"
      "instance.c = 1\n"
      "instance.p_max = 6\n"
      "instance.gamma_min = 5.5\n"
      "instance.noise = uniform\n"
      "instance.inventory = iid-uniform\n"
      "instance.band_lo = 5.6\n"
      "instance.band_hi = 8.8\n"
      "policy.name = c20cb\n"
      "policy.eta = 39.99998\n"
      "run.horizon = 1000\n";
  std::istringstream in(text);
  std::vector<std::string> errors;
  auto cfg = pricing::parse_config(in, errors);
  if (!errors.empty()) {
    for (const auto& e : errors) std::fprintf(stderr, "%s\n", e.c_str());
    throw std::runtime_error("internal benchmark config is invalid");
  }
  cfg.run.horizon = horizon;
  cfg.run.seeds.clear();
  for (int s = 1; s <= n_seeds; ++s) {
    cfg.run.seeds.push_back(static_cast<std::uint64_t>(s));
  }
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"serial vs parallel benchmark for the replica fan-out and the "
               "Monte-Carlo revenue kernel"};
  std::int64_t horizon = 20000;
  int n_seeds = 16;
  std::int64_t mc_samples = 20000000;
  app.add_option("--horizon", horizon, "rounds per replica");
  app.add_option("--seeds", n_seeds, "number of replicas");
  app.add_option("--mc-samples", mc_samples, "Monte-Carlo sample count");
  CLI11_PARSE(app, argc, argv);

  const auto cfg = bench_config(horizon, n_seeds);

  std::printf("replica fan-out: %d seeds x %lld rounds\n", n_seeds,
              static_cast<long long>(horizon));
  auto t0 = std::chrono::steady_clock::now();
  const auto serial = pricing::run_replicas(cfg, /*parallel=*/false, false);
  const double t_serial = now_minus(t0);

  t0 = std::chrono::steady_clock::now();
  const auto parallel = pricing::run_replicas(cfg, /*parallel=*/true, false);
  const double t_parallel = now_minus(t0);

  bool identical = serial.size() == parallel.size();
  for (std::size_t i = 0; identical && i < serial.size(); ++i) {
    identical = serial[i].summary.final_regret ==
                    parallel[i].summary.final_regret &&
                serial[i].summary.status == parallel[i].summary.status;
  }
  std::printf("  serial   %8.3f s\n", t_serial);
  std::printf("  parallel %8.3f s  (speedup %.2fx, results %s)\n", t_parallel,
              t_serial / t_parallel, identical ? "identical" : "DIFFER");

  const auto noise = cfg.instance.make_noise();
  const double gamma = 6.5;
  const double price = 4.0;
  std::printf("monte-carlo revenue at gamma=%.2f price=%.2f: %lld samples\n",
              gamma, price, static_cast<long long>(mc_samples));
  double se_serial = 0.0, se_parallel = 0.0;
  t0 = std::chrono::steady_clock::now();
  const double mc_serial =
      pricing::mc_mean_reward(cfg.instance, *noise, gamma, price, mc_samples,
                              /*seed=*/12345, /*parallel=*/false, &se_serial);
  const double tm_serial = now_minus(t0);
  t0 = std::chrono::steady_clock::now();
  const double mc_parallel =
      pricing::mc_mean_reward(cfg.instance, *noise, gamma, price, mc_samples,
                              /*seed=*/12345, /*parallel=*/true, &se_parallel);
  const double tm_parallel = now_minus(t0);

  const double diff = std::fabs(mc_serial - mc_parallel);
  std::printf("  serial   %8.3f s  mean %.8f (se %.2g)\n", tm_serial,
              mc_serial, se_serial);
  std::printf("  parallel %8.3f s  mean %.8f (se %.2g)\n", tm_parallel,
              mc_parallel, se_parallel);
  // Same sample set either way; only the reduction order differs.
  const double tol = 4.0 * (se_serial + se_parallel) + 1e-9;
  std::printf("  speedup %.2fx, |diff| %.3g (%s)\n", tm_serial / tm_parallel,
              diff, diff <= tol ? "within tolerance" : "OUT OF TOLERANCE");
  return 0;
}
