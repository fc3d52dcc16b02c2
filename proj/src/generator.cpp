#include "qinv/generator.hpp"

#include <ostream>

namespace qinv {

namespace {

// Writes `inner` into the (row, col) inventory-block slot of `big`,
// accumulating so the restock wrap also works when S - s = 1.
void place(Matrix& big, int row, int col, const Matrix& inner) {
  const auto b = inner.rows();
  big.block(row * b, col * b, b, b) += inner;
}

}  // namespace

GeneratorBuilder::GeneratorBuilder(ModelSpec spec) : spec_(std::move(spec)) {
  const auto& env = spec_.env;
  const int m = env.m;
  Matrix lam = env.lambda.asDiagonal();
  Matrix xi = env.xi.asDiagonal();

  // Level-up inner block: arrivals while busy/failed, failure while busy.
  Matrix up = Matrix::Zero(3 * m, 3 * m);
  up.block(m, m, m, m) = lam;
  up.block(m, 2 * m, m, m) = xi;
  up.block(2 * m, 2 * m, m, m) = lam;

  const int span = spec_.policy.span();
  level_up_cached_ = Matrix::Zero(dim(), dim());
  for (int k = 0; k < span; ++k) place(level_up_cached_, k, k, up);
}

InnerBlocks GeneratorBuilder::inner_blocks(int level) const {
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = cache_.find(level);
    if (it != cache_.end()) return it->second;
  }

  const auto& env = spec_.env;
  const int m = env.m;
  InnerBlocks blocks;
  blocks.d_idle = env.q + env.lambda + env.xi + double(level) * env.theta;
  blocks.d_busy = env.q + env.lambda + env.mu + env.xi;
  blocks.d_failed = env.q + env.lambda + env.alpha;

  blocks.retrial = Matrix::Zero(3 * m, 3 * m);
  blocks.retrial.block(0, m, m, m) =
      (double(level) * env.theta).asDiagonal().toDenseMatrix();

  // Within-level rates: the three diagonal sub-blocks are Q minus the full
  // exit rates, so a row of retrial + within + level_up (+ service placed
  // elsewhere) sums to zero.
  blocks.within = Matrix::Zero(3 * m, 3 * m);
  blocks.within.block(0, 0, m, m) =
      env.Q - Matrix((env.lambda + env.xi + double(level) * env.theta).asDiagonal());
  blocks.within.block(0, m, m, m) = env.lambda.asDiagonal();
  blocks.within.block(0, 2 * m, m, m) = env.xi.asDiagonal();
  blocks.within.block(m, m, m, m) =
      env.Q - Matrix((env.lambda + env.mu + env.xi).asDiagonal());
  blocks.within.block(2 * m, 0, m, m) = env.alpha.asDiagonal();
  blocks.within.block(2 * m, 2 * m, m, m) =
      env.Q - Matrix((env.lambda + env.alpha).asDiagonal());

  blocks.level_up = Matrix::Zero(3 * m, 3 * m);
  blocks.level_up.block(m, m, m, m) = env.lambda.asDiagonal();
  blocks.level_up.block(m, 2 * m, m, m) = env.xi.asDiagonal();
  blocks.level_up.block(2 * m, 2 * m, m, m) = env.lambda.asDiagonal();

  blocks.service = Matrix::Zero(3 * m, 3 * m);
  blocks.service.block(m, 0, m, m) = env.mu.asDiagonal();

  std::lock_guard<std::mutex> lock(cache_mutex_);
  return cache_.emplace(level, std::move(blocks)).first->second;
}

Matrix GeneratorBuilder::level_down(int level) const {
  Matrix big = Matrix::Zero(dim(), dim());
  if (level < 1) return big;  // no orbit to retry from
  const InnerBlocks& inner = inner_blocks(level);
  const int span = spec_.policy.span();
  for (int k = 0; k < span; ++k) place(big, k, k, inner.retrial);
  return big;
}

Matrix GeneratorBuilder::level_same(int level) const {
  const InnerBlocks& inner = inner_blocks(level);
  const int span = spec_.policy.span();
  Matrix big = Matrix::Zero(dim(), dim());
  for (int k = 0; k < span; ++k) {
    place(big, k, k, inner.within);
    if (k >= 1) place(big, k, k - 1, inner.service);  // demand, I-1 > s
  }
  place(big, 0, span - 1, inner.service);  // demand at s+1, restocked to S
  return big;
}

Matrix GeneratorBuilder::level_up(int level) const {
  (void)level;  // arrivals and busy failures do not depend on the orbit
  return level_up_cached_;
}

Vector GeneratorBuilder::diagonal_magnitudes(int level) const {
  const InnerBlocks& inner = inner_blocks(level);
  const int m = spec_.env.m;
  const int span = spec_.policy.span();
  Vector d(dim());
  for (int k = 0; k < span; ++k) {
    d.segment((k * 3 + 0) * m, m) = inner.d_idle;
    d.segment((k * 3 + 1) * m, m) = inner.d_busy;
    d.segment((k * 3 + 2) * m, m) = inner.d_failed;
  }
  return d;
}

void write_block_csv(std::ostream& out, const Matrix& block,
                     const PhaseIndex& index) {
  const int n = static_cast<int>(block.rows());
  out << "phase";
  for (int j = 0; j < n; ++j) out << "," << index.label(j);
  out << "\n";
  out.precision(17);
  for (int i = 0; i < n; ++i) {
    out << index.label(i);
    for (int j = 0; j < n; ++j) out << "," << block(i, j);
    out << "\n";
  }
}

}  // namespace qinv
