#ifndef QINV_JUMP_CHAIN_HPP
#define QINV_JUMP_CHAIN_HPP

#include "qinv/generator.hpp"

namespace qinv {

// One level of the embedded jump chain: each generator row divided by its
// exit rate, with the within-level diagonal zeroed. Rows of
// down + same + up sum to one for every level >= 1.
struct JumpBlocks {
  Matrix down, same, up;
};

JumpBlocks embed_jump_blocks(const GeneratorBuilder& generator, int level);

// Element-wise limits of the jump blocks as the orbit size grows. In the
// limit a retrial wins every competition out of an idle state, so the idle
// rows concentrate on the same-environment busy phase. Built from closed
// forms, not numerical limiting; requires theta_z > 0 for every z.
struct JumpChainLimits {
  int span = 0;
  int m = 0;
  Matrix within_limit;   // 3m x 3m, combined within/up/down limit per block
  Matrix service_limit;  // 3m x 3m, (busy -> idle) = mu_z / d_busy_z
  Matrix chain;          // full limiting stochastic matrix
  Matrix up_limit;       // element-wise limit of the up blocks
  Matrix down_limit;     // element-wise limit of the down blocks

  int dim() const { return span * 3 * m; }
};

JumpChainLimits compute_limits(const ModelSpec& spec);

}  // namespace qinv

#endif
