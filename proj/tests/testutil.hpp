#ifndef QINV_TESTS_TESTUTIL_HPP
#define QINV_TESTS_TESTUTIL_HPP

#include <random>
#include <string>

#include "qinv/scenario.hpp"
#include "qinv/solver.hpp"
#include "qinv/stability.hpp"

namespace qinv::test {

inline std::string scenario_path(const std::string& name) {
  return std::string(QINV_SCENARIO_DIR) + "/" + name;
}

inline Scenario load_bundled(const std::string& name) {
  return load_scenario(scenario_path(name));
}

inline ModelSpec make_spec(std::vector<double> lambda, std::vector<double> mu,
                           std::vector<double> xi, std::vector<double> alpha,
                           std::vector<double> theta,
                           std::vector<std::vector<double>> q_rows, int s, int S) {
  const int m = static_cast<int>(lambda.size());
  auto vec = [](const std::vector<double>& v) {
    return Eigen::Map<const Vector>(v.data(), v.size()).eval();
  };
  Matrix q_matrix(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) q_matrix(i, j) = q_rows[i][j];
  ModelSpec spec;
  spec.env = EnvironmentParams::make(vec(lambda), vec(mu), vec(xi), vec(alpha),
                                     vec(theta), q_matrix);
  spec.policy = {s, S};
  return spec;
}

enum class Load { any, stable, unstable };

inline ModelSpec random_spec(std::mt19937_64& rng, int m_max = 5,
                             int span_max = 4, Load load = Load::any) {
  std::uniform_int_distribution<int> m_dist(1, m_max), span_dist(1, span_max),
      s_dist(0, 5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int m = m_dist(rng);
  auto draw = [&](double lo, double hi) {
    Vector v(m);
    for (int z = 0; z < m; ++z) v(z) = lo + (hi - lo) * unit(rng);
    return v;
  };
  Vector lambda = draw(0.2, 4.0), mu = draw(0.5, 6.0), xi = draw(0.01, 2.0),
         alpha = draw(0.5, 5.0), theta = draw(0.1, 4.0);
  Matrix Q = Matrix::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j)
      if (i != j) Q(i, j) = 0.1 + 2.9 * unit(rng);
    Q(i, i) = -Q.row(i).sum();
  }
  const int s = s_dist(rng);
  ModelSpec spec;
  spec.env = EnvironmentParams::make(lambda, mu, xi, alpha, theta, Q);
  spec.policy = {s, s + span_dist(rng)};

  if (load != Load::any) {
    const double rho = traffic_intensity(spec).first;
    const double target = load == Load::stable ? 0.3 + 0.5 * unit(rng)
                                               : 1.2 + 1.0 * unit(rng);
    spec.env.lambda *= target / rho;
  }
  return spec;
}

// Independent steady-state oracle: dense left-null solve of the full capped
// generator assembled straight from the level blocks (one big linear system).
inline std::vector<RowVector> direct_stationary(const LevelBlockProvider& blocks,
                                                int truncation) {
  const int dim = blocks.dim();
  const int n = (truncation + 1) * dim;
  Matrix generator = Matrix::Zero(n, n);
  for (int level = 0; level <= truncation; ++level) {
    Matrix same = blocks.level_same(level);
    if (level == truncation)
      same.diagonal() += blocks.level_up(level).rowwise().sum();
    generator.block(level * dim, level * dim, dim, dim) = same;
    if (level >= 1)
      generator.block(level * dim, (level - 1) * dim, dim, dim) =
          blocks.level_down(level);
    if (level < truncation)
      generator.block(level * dim, (level + 1) * dim, dim, dim) =
          blocks.level_up(level);
  }
  Matrix system = generator.transpose();
  system.row(n - 1).setOnes();
  Vector rhs = Vector::Zero(n);
  rhs(n - 1) = 1.0;
  Vector p = Eigen::PartialPivLU<Matrix>(system).solve(rhs);
  std::vector<RowVector> levels(truncation + 1);
  for (int level = 0; level <= truncation; ++level)
    levels[level] = p.segment(level * dim, dim).transpose();
  return levels;
}

}  // namespace qinv::test

#endif
