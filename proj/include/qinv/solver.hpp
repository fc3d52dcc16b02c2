#ifndef QINV_SOLVER_HPP
#define QINV_SOLVER_HPP

#include <vector>

#include "qinv/generator.hpp"

namespace qinv {

// Truncated steady state. The orbit is capped at the truncation level: the
// top level keeps its rows conservative by dropping the blocked level-up
// rates, so the capped chain is a genuine finite CTMC and the level vectors
// are its exact stationary distribution. tail_mass_bound is a geometric
// estimate of the probability mass the cap excludes; a value that is not
// small means the truncation level should be raised.
struct SteadyState {
  std::vector<Matrix> rate_matrices;  // R_0 .. R_{T-1}
  std::vector<RowVector> levels;      // p_0 .. p_T, total mass 1
  int truncation_level = 0;
  double tail_mass_bound = 0.0;
};

// Backward recursion R_l = -A0(l) [A1(l+1) + R_{l+1} A2(l+2)]^{-1} from the
// capped top level down. Every bracket is checked for row diagonal
// dominance before factorization; rate-matrix entries are clamped to zero
// when they are negative within roundoff.
std::vector<Matrix> compute_rate_matrices(const LevelBlockProvider& blocks,
                                          int truncation);

// p_0 spans the one-dimensional left null space of A1(0) + R_0 A2(1);
// sign-normalized non-negative (unnormalized mass).
RowVector solve_boundary(const LevelBlockProvider& blocks, const Matrix& r0);

SteadyState assemble_steady_state(const LevelBlockProvider& blocks,
                                  std::vector<Matrix> rate_matrices);

// Full pipeline; refuses specs whose traffic intensity is not < 1.
SteadyState solve_steady_state(const ModelSpec& spec, int truncation);

// Largest-modulus eigenvalue estimate of a non-negative matrix.
double spectral_radius(const Matrix& m);

}  // namespace qinv

#endif
