#ifndef QINV_GENERATOR_HPP
#define QINV_GENERATOR_HPP

#include <iosfwd>
#include <mutex>
#include <unordered_map>

#include "qinv/model.hpp"

namespace qinv {

// The 3m x 3m constituents of one level of the generator, with the
// per-status diagonal magnitude vectors.
//
//   retrial:   (idle -> busy) sub-block = R * diag(theta), level down
//   within:    environment moves, arrival/failure while idle, repair,
//              and the negative diagonal
//   level_up:  arrival while busy/failed, failure while busy
//   service:   (busy -> idle) sub-block = diag(mu), appears one inventory
//              block down (or on the restock wrap)
struct InnerBlocks {
  Matrix retrial;
  Matrix within;
  Matrix level_up;
  Matrix service;
  Vector d_idle, d_busy, d_failed;
};

// Provider of the level-indexed generator triple A2/A1/A0. The steady-state
// solver works against this interface so tests can substitute synthetic
// (e.g. level-independent) block families.
class LevelBlockProvider {
 public:
  virtual ~LevelBlockProvider() = default;
  virtual int dim() const = 0;
  virtual Matrix level_down(int level) const = 0;  // A2(R), zero for R = 0
  virtual Matrix level_same(int level) const = 0;  // A1(R)
  virtual Matrix level_up(int level) const = 0;    // A0(R)
};

// Assembles the block-tridiagonal generator of the orbit chain. Inner
// blocks are memoized per level (only the retrial block and the idle
// diagonal vary with the level); the full matrices are built on demand,
// which keeps memory flat when the solver walks hundreds of levels.
class GeneratorBuilder final : public LevelBlockProvider {
 public:
  explicit GeneratorBuilder(ModelSpec spec);

  const ModelSpec& spec() const { return spec_; }
  PhaseIndex phase_index() const {
    return PhaseIndex(spec_.policy, spec_.env.m);
  }

  int dim() const override { return spec_.phase_count(); }

  InnerBlocks inner_blocks(int level) const;

  Matrix level_down(int level) const override;
  Matrix level_same(int level) const override;
  Matrix level_up(int level) const override;

  // Per-phase exit-rate magnitudes at the given level, phase order.
  Vector diagonal_magnitudes(int level) const;

 private:
  ModelSpec spec_;
  Matrix level_up_cached_;  // level-invariant
  mutable std::mutex cache_mutex_;
  mutable std::unordered_map<int, InnerBlocks> cache_;
};

// Dense CSV dump with phase labels, for inspecting block structure.
void write_block_csv(std::ostream& out, const Matrix& block,
                     const PhaseIndex& index);

}  // namespace qinv

#endif
