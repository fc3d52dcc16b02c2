#include "doctest.h"
#include "qinv/measures.hpp"
#include "testutil.hpp"

using namespace qinv;
using test::load_bundled;
using test::make_spec;

namespace {

// power iteration on the uniformized chain, as an independent check of the
// dense stationary solve
Vector stationary_by_power_iteration(const Matrix& Q) {
  const int m = static_cast<int>(Q.rows());
  const double uniformization = Q.diagonal().cwiseAbs().maxCoeff() * 1.05;
  const Matrix P = Matrix::Identity(m, m) + Q / uniformization;
  RowVector p = RowVector::Constant(m, 1.0 / m);
  for (int iteration = 0; iteration < 200000; ++iteration) {
    RowVector next = p * P;
    if ((next - p).cwiseAbs().maxCoeff() < 1e-15) return next.transpose();
    p = next;
  }
  return p.transpose();
}

}  // namespace

TEST_SUITE_BEGIN("measures");

TEST_CASE("two-state symmetric environment splits evenly") {
  Matrix Q(2, 2);
  Q << -1.0, 1.0, 1.0, -1.0;
  const Vector p = env_stationary(Q);
  CHECK(p(0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(p(1) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("seven-state environment stationary vector") {
  const ModelSpec spec = load_bundled("low_traffic.json").spec;
  const Vector p = env_stationary(spec.env.Q);
  CHECK((p.transpose() * spec.env.Q).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(p.sum() == doctest::Approx(1.0).epsilon(1e-14));
  const Vector reference = stationary_by_power_iteration(spec.env.Q);
  CHECK((p - reference).cwiseAbs().maxCoeff() < 1e-8);
  CHECK(p(0) == doctest::Approx(0.174045156175).epsilon(1e-9));
}

TEST_CASE("absorbing environment block is rejected") {
  Matrix Q(3, 3);
  Q << -1.0, 1.0, 0.0,
        1.0, -1.0, 0.0,
        0.5, 0.5, -1.0;  // states {1,2} never reach 3
  CHECK_THROWS_AS(env_stationary(Q), DegenerateSolveError);
}

TEST_CASE("low-traffic report matches the frozen solve") {
  const Scenario scenario = load_bundled("low_traffic.json");
  const SteadyState steady = solve_steady_state(scenario.spec, 75);
  const PerformanceReport report = compute_report(steady, scenario.spec);

  CHECK(report.p_idle == doctest::Approx(0.378190391422).epsilon(1e-9));
  CHECK(report.p_busy == doctest::Approx(0.341239677691).epsilon(1e-9));
  CHECK(report.p_failed == doctest::Approx(0.280569930887).epsilon(1e-9));
  CHECK(report.L_R == doctest::Approx(7.130965222128).epsilon(1e-9));
  CHECK(report.lambda_bar == doctest::Approx(4.160450850985).epsilon(1e-10));
  CHECK(report.W == doctest::Approx(1.796008453759).epsilon(1e-9));
  CHECK(report.B_inv == doctest::Approx(23.0).epsilon(1e-10));

  // identities that hold by construction
  CHECK(std::abs((report.L - report.L_R) - report.p_busy) < 1e-14);
  CHECK(std::abs(report.D_S - scenario.spec.policy.span() * report.W) < 1e-12);
  CHECK(std::abs(report.W_R * report.lambda_bar - report.L_R) < 1e-12);
  CHECK(std::abs(report.W * report.lambda_bar - report.L) < 1e-12);

  CHECK(report.p_idle + report.p_busy + report.p_failed ==
        doctest::Approx(1.0).epsilon(1e-9));
  CHECK(report.orbit_marginal.sum() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(report.inventory_marginal.sum() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(report.orbit_marginal.size() == 76);

  // the inventory marginal is uniform on s+1..S, so B_inv = (S+s+1)/2
  const double uniform = 1.0 / scenario.spec.policy.span();
  CHECK((report.inventory_marginal.array() - uniform).abs().maxCoeff() < 1e-6);
}

TEST_CASE("probabilities stay in range on random specs") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 4; ++trial) {
    const ModelSpec spec = test::random_spec(rng, 2, 3, test::Load::stable);
    const SteadyState steady = solve_steady_state(spec, 25);
    const PerformanceReport report = compute_report(steady, spec);
    for (double p : {report.p_idle, report.p_busy, report.p_failed}) {
      CHECK(p >= 0.0);
      CHECK(p <= 1.0);
    }
    CHECK(report.orbit_marginal.minCoeff() >= 0.0);
    CHECK(report.L >= report.L_R);
    CHECK(report.B_inv ==
          doctest::Approx((spec.policy.S + spec.policy.s + 1) / 2.0)
              .epsilon(1e-6));
  }
}

TEST_SUITE_END();
