#include "qinv/stability.hpp"

#include <cmath>
#include <string>

namespace qinv {

namespace {
constexpr double kBoundaryBand = 1e-9;
constexpr double kResidualTol = 1e-9;
}  // namespace

RowVector solve_pi_star(const JumpChainLimits& limits) {
  const int n = limits.dim();
  Matrix system = (limits.chain - Matrix::Identity(n, n)).transpose();
  system.row(n - 1).setOnes();
  Vector rhs = Vector::Zero(n);
  rhs(n - 1) = 1.0;

  Eigen::PartialPivLU<Matrix> lu(system);
  Vector pi = lu.solve(rhs);

  RowVector pi_star = pi.transpose();
  const double residual =
      (pi_star * limits.chain - pi_star).cwiseAbs().maxCoeff();
  if (!pi.allFinite() || residual > kResidualTol)
    throw DegenerateSolveError(
        "limiting jump chain has no unique stationary vector (residual " +
        std::to_string(residual) + ")");
  if (pi_star.minCoeff() < -kResidualTol)
    throw DegenerateSolveError("stationary vector has negative mass");
  pi_star = pi_star.cwiseMax(0.0);
  pi_star /= pi_star.sum();
  return pi_star;
}

double numerical_drift(const JumpChainLimits& limits, const RowVector& pi_star) {
  const Vector ones = Vector::Ones(limits.dim());
  return pi_star * (limits.up_limit - limits.down_limit) * ones;
}

double closed_form_drift(const ModelSpec& spec) {
  const auto& env = spec.env;
  return (env.alpha.array() * (env.lambda - env.mu).array() +
          env.lambda.array() * env.xi.array())
      .sum();
}

std::pair<double, Vector> traffic_intensity(const ModelSpec& spec) {
  const auto& env = spec.env;
  const double offered = (env.lambda.array() * (env.alpha + env.xi).array()).sum();
  const double served = (env.mu.array() * env.alpha.array()).sum();
  Vector per_state = (env.lambda.array() / env.mu.array()) *
                     (1.0 + env.xi.array() / env.alpha.array());
  return {offered / served, std::move(per_state)};
}

StabilityReport analyze_stability(const ModelSpec& spec) {
  StabilityReport report;
  auto [rho, per_state] = traffic_intensity(spec);
  report.rho = rho;
  report.rho_per_state = std::move(per_state);
  report.drift_closed = closed_form_drift(spec);

  if (std::abs(rho - 1.0) < kBoundaryBand)
    report.verdict = Verdict::boundary;
  else
    report.verdict = rho < 1.0 ? Verdict::stable : Verdict::unstable;

  if (spec.env.theta.minCoeff() > 0.0) {
    const JumpChainLimits limits = compute_limits(spec);
    report.pi_star = solve_pi_star(limits);
    report.pi_residual =
        (report.pi_star * limits.chain - report.pi_star).cwiseAbs().maxCoeff();
    report.drift_numerical = numerical_drift(limits, report.pi_star);
    report.has_numerical_drift = true;
    report.drift_sign_conflict =
        (report.drift_numerical > 0.0) != (report.drift_closed > 0.0) &&
        std::abs(report.drift_numerical) > kBoundaryBand &&
        std::abs(report.drift_closed) > kBoundaryBand;
  }
  return report;
}

}  // namespace qinv
