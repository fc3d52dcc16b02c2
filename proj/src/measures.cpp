#include "qinv/measures.hpp"

#include <string>

#include "qinv/model.hpp"

namespace qinv {

Vector env_stationary(const Matrix& Q) {
  const int m = static_cast<int>(Q.rows());
  if (m == 1) return Vector::Ones(1);
  if (!is_irreducible(Q))
    throw DegenerateSolveError("environment generator is reducible");
  Matrix system = Q.transpose();
  system.row(m - 1).setOnes();
  Vector rhs = Vector::Zero(m);
  rhs(m - 1) = 1.0;
  Vector p = Eigen::PartialPivLU<Matrix>(system).solve(rhs);
  const double residual = (p.transpose() * Q).cwiseAbs().maxCoeff();
  if (!p.allFinite() || residual > 1e-10 || p.minCoeff() < -1e-12)
    throw DegenerateSolveError("environment stationary solve failed (residual " +
                               std::to_string(residual) + ")");
  return p.cwiseMax(0.0) / p.cwiseMax(0.0).sum();
}

PerformanceReport compute_report(const SteadyState& steady,
                                 const ModelSpec& spec) {
  const int m = spec.env.m;
  const int span = spec.policy.span();

  PerformanceReport report;
  report.truncation_level = steady.truncation_level;
  report.tail_mass_bound = steady.tail_mass_bound;
  report.orbit_marginal = Vector::Zero(steady.levels.size());
  report.inventory_marginal = Vector::Zero(span);

  for (std::size_t r = 0; r < steady.levels.size(); ++r) {
    const RowVector& level = steady.levels[r];
    report.orbit_marginal(r) = level.sum();
    report.L_R += double(r) * report.orbit_marginal(r);
    for (int k = 0; k < span; ++k) {
      const auto block = level.segment(k * 3 * m, 3 * m);
      report.p_idle += block.segment(0, m).sum();
      report.p_busy += block.segment(m, m).sum();
      report.p_failed += block.segment(2 * m, m).sum();
      report.inventory_marginal(k) += block.sum();
    }
  }

  report.env_stationary = env_stationary(spec.env.Q);
  report.lambda_bar = spec.env.lambda.dot(report.env_stationary);
  report.L = report.L_R + report.p_busy;
  report.W_R = report.L_R / report.lambda_bar;
  report.W = report.L / report.lambda_bar;
  for (int k = 0; k < span; ++k)
    report.B_inv += double(spec.policy.s + 1 + k) * report.inventory_marginal(k);
  report.D_S = double(span) * report.W;
  return report;
}

}  // namespace qinv
