#include "qinv/jump_chain.hpp"

#include <string>

namespace qinv {

JumpBlocks embed_jump_blocks(const GeneratorBuilder& generator, int level) {
  if (level < 0) throw std::out_of_range("jump blocks: level must be >= 0");
  const Vector d = generator.diagonal_magnitudes(level);
  if (d.minCoeff() <= 0.0)
    throw DegenerateSolveError("jump embedding: zero exit rate at level " +
                               std::to_string(level));
  const auto scale = d.cwiseInverse().asDiagonal();
  JumpBlocks jump;
  jump.down = scale * generator.level_down(level);
  jump.same = scale * generator.level_same(level);
  jump.same.diagonal().setZero();
  jump.up = scale * generator.level_up(level);
  return jump;
}

JumpChainLimits compute_limits(const ModelSpec& spec) {
  const auto& env = spec.env;
  const int m = env.m;
  for (int z = 0; z < m; ++z)
    if (env.theta(z) <= 0.0)
      throw LimitStructureError(
          "jump-chain limits need theta > 0 in every environment state; "
          "theta[" + std::to_string(z + 1) + "] = 0");

  JumpChainLimits limits;
  limits.span = spec.policy.span();
  limits.m = m;

  const Vector d_busy = env.q + env.lambda + env.mu + env.xi;
  const Vector d_failed = env.q + env.lambda + env.alpha;
  const auto inv_busy = d_busy.cwiseInverse().asDiagonal();
  const auto inv_failed = d_failed.cwiseInverse().asDiagonal();

  // Zero-diagonal environment moves; the diagonal of the busy/failed
  // sub-blocks comes from the same-phase level-up jump instead.
  Matrix env_moves = env.Q;
  env_moves.diagonal() += env.q;

  Matrix within = Matrix::Zero(3 * m, 3 * m);
  within.block(0, m, m, m) = Matrix::Identity(m, m);  // retrial dominance
  within.block(m, m, m, m) = inv_busy * (Matrix(env.lambda.asDiagonal()) + env_moves);
  within.block(m, 2 * m, m, m) = inv_busy * Matrix(env.xi.asDiagonal());
  within.block(2 * m, 0, m, m) = inv_failed * Matrix(env.alpha.asDiagonal());
  within.block(2 * m, 2 * m, m, m) =
      inv_failed * (Matrix(env.lambda.asDiagonal()) + env_moves);
  limits.within_limit = within;

  Matrix service = Matrix::Zero(3 * m, 3 * m);
  service.block(m, 0, m, m) = inv_busy * Matrix(env.mu.asDiagonal());
  limits.service_limit = service;

  Matrix up = Matrix::Zero(3 * m, 3 * m);
  up.block(m, m, m, m) = inv_busy * Matrix(env.lambda.asDiagonal());
  up.block(m, 2 * m, m, m) = inv_busy * Matrix(env.xi.asDiagonal());
  up.block(2 * m, 2 * m, m, m) = inv_failed * Matrix(env.lambda.asDiagonal());

  Matrix down = Matrix::Zero(3 * m, 3 * m);
  down.block(0, m, m, m) = Matrix::Identity(m, m);

  const int span = limits.span;
  const int n = limits.dim();
  limits.chain = Matrix::Zero(n, n);
  limits.up_limit = Matrix::Zero(n, n);
  limits.down_limit = Matrix::Zero(n, n);
  auto place = [](Matrix& big, int row, int col, const Matrix& inner) {
    big.block(row * inner.rows(), col * inner.cols(), inner.rows(),
              inner.cols()) += inner;
  };
  for (int k = 0; k < span; ++k) {
    place(limits.chain, k, k, within);
    place(limits.up_limit, k, k, up);
    place(limits.down_limit, k, k, down);
    if (k >= 1) place(limits.chain, k, k - 1, service);
  }
  place(limits.chain, 0, span - 1, service);

  const double stochastic_err =
      (limits.chain.rowwise().sum() - Vector::Ones(n)).cwiseAbs().maxCoeff();
  if (stochastic_err > 1e-10)
    throw DegenerateSolveError("limiting jump matrix is not stochastic (err " +
                               std::to_string(stochastic_err) + ")");
  return limits;
}

}  // namespace qinv
