#include "doctest.h"
#include "qinv/report.hpp"
#include "qinv/simulator.hpp"
#include "testutil.hpp"

using namespace qinv;
using test::load_bundled;
using test::make_spec;

TEST_SUITE_BEGIN("simulator");

TEST_CASE("fixed seed and config reproduce bit-identical estimates") {
  const Scenario scenario = load_bundled("low_traffic.json");
  SimConfig config;
  config.horizon = 5000.0;
  config.warmup = 500.0;
  config.replications = 6;
  config.seed = 12345;

  const SimEstimates first = simulate(scenario.spec, config);
  const SimEstimates second = simulate(scenario.spec, config);
  CHECK(sim_to_json(first, config) == sim_to_json(second, config));

  config.threads = 1;  // thread count must not change the merge
  const SimEstimates serial = simulate(scenario.spec, config);
  CHECK(sim_to_json(first, config) == sim_to_json(serial, config));

  config.seed = 54321;  // and a different seed must
  const SimEstimates reseeded = simulate(scenario.spec, config);
  CHECK(sim_to_json(first, config) != sim_to_json(reseeded, config));
}

TEST_CASE("failure-free specs never visit a failed state") {
  const ModelSpec spec = make_spec({1.0, 2.0}, {4.0, 5.0}, {0.0, 0.0},
                                   {1.0, 1.0}, {1.0, 1.0},
                                   {{-1.0, 1.0}, {1.0, -1.0}}, 0, 3);
  SimConfig config;
  config.horizon = 3000.0;
  config.warmup = 300.0;
  config.replications = 4;
  config.seed = 7;
  const SimEstimates estimates = simulate(spec, config);
  CHECK(estimates.p_failed.mean == 0.0);
  CHECK(estimates.p_failed.halfwidth == 0.0);
  for (const auto& rep : estimates.replications) CHECK(rep.p_failed == 0.0);
}

TEST_CASE("instant retrials behave like an ordinary single queue") {
  // lambda/(mu - lambda) = 1 in-system customer on average
  const ModelSpec spec = make_spec({1.0}, {2.0}, {0.0}, {1.0}, {1e4}, {{0.0}}, 0, 2);
  SimConfig config;
  config.horizon = 5e4;
  config.warmup = 5e3;
  config.replications = 8;
  config.seed = 99;
  const SimEstimates estimates = simulate(spec, config);
  CHECK(std::abs(estimates.L.mean - 1.0) < 0.05);
}

TEST_CASE("inventory marginal is uniform (chi-square of standardized bins)") {
  const ModelSpec spec = make_spec({2.0, 1.0}, {5.0, 4.0}, {0.3, 0.2},
                                   {2.0, 3.0}, {1.5, 1.0},
                                   {{-1.0, 1.0}, {0.8, -0.8}}, 2, 7);
  SimConfig config;
  config.horizon = 4e4;
  config.warmup = 4e3;
  config.replications = 12;
  config.seed = 2027;
  const SimEstimates estimates = simulate(spec, config);
  REQUIRE(estimates.inventory_marginal.size() == 5);
  // sum over bins of ((mean_k - 1/5) / se_k)^2 is approximately chi-square
  // with span - 1 degrees of freedom; 13.2767 is the 99% point for df = 4
  const double t = student_t_975(config.replications - 1);
  double statistic = 0.0;
  for (const auto& bin : estimates.inventory_marginal) {
    const double se = bin.halfwidth / t;
    statistic += std::pow((bin.mean - 0.2) / se, 2);
  }
  CHECK(statistic < 13.2767);
}

TEST_CASE("orbit cap breach raises the divergence signal") {
  ModelSpec spec = load_bundled("low_traffic.json").spec;
  spec.env.lambda *= 10.0;  // rho ~ 4.5
  SimConfig config;
  config.horizon = 1e5;
  config.warmup = 10.0;
  config.replications = 2;
  config.seed = 1;
  config.orbit_cap = 300;
  CHECK_THROWS_AS(simulate(spec, config), SimulationDivergedError);
}

TEST_CASE("estimates and halfwidths are well formed") {
  const Scenario scenario = load_bundled("high_traffic.json");
  SimConfig config;
  config.horizon = 4000.0;
  config.warmup = 400.0;
  config.replications = 5;
  config.seed = 3;
  const SimEstimates estimates = simulate(scenario.spec, config);
  for (const Estimate* e : {&estimates.p_idle, &estimates.p_busy,
                            &estimates.p_failed, &estimates.B_inv}) {
    CHECK(e->halfwidth >= 0.0);
  }
  for (const Estimate* p :
       {&estimates.p_idle, &estimates.p_busy, &estimates.p_failed}) {
    CHECK(p->mean >= 0.0);
    CHECK(p->mean <= 1.0);
  }
  double orbit_total = 0.0;
  for (const auto& bin : estimates.orbit_marginal) orbit_total += bin.mean;
  CHECK(orbit_total == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("student t quantiles") {
  CHECK(student_t_975(1) == doctest::Approx(12.706));
  CHECK(student_t_975(19) == doctest::Approx(2.093));
  CHECK(student_t_975(1000) == doctest::Approx(1.96).epsilon(1e-2));
}

TEST_CASE("config sanity checks") {
  const ModelSpec spec = make_spec({1.0}, {2.0}, {0.0}, {1.0}, {1.0}, {{0.0}}, 0, 1);
  SimConfig config;
  config.replications = 0;
  CHECK_THROWS_AS(simulate(spec, config), std::invalid_argument);
  config.replications = 1;
  config.warmup = config.horizon;
  CHECK_THROWS_AS(simulate(spec, config), std::invalid_argument);
}

TEST_SUITE_END();
