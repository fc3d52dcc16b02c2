#ifndef QINV_MEASURES_HPP
#define QINV_MEASURES_HPP

#include "qinv/solver.hpp"

namespace qinv {

// Long-run performance measures derived from a normalized steady state.
// L = L_R + p_busy and D_S = (S - s) W hold by construction; W and W_R come
// from Little's Law with the environment-averaged arrival rate.
struct PerformanceReport {
  double p_idle = 0.0, p_busy = 0.0, p_failed = 0.0;
  double L_R = 0.0, L = 0.0;
  double W_R = 0.0, W = 0.0;
  double B_inv = 0.0, D_S = 0.0;
  double lambda_bar = 0.0;
  Vector orbit_marginal;      // index R = 0..truncation
  Vector inventory_marginal;  // index 0 -> inventory s+1, .. span-1 -> S
  Vector env_stationary;
  double tail_mass_bound = 0.0;
  int truncation_level = 0;
};

// Stationary probability vector of an irreducible generator Q.
Vector env_stationary(const Matrix& Q);

PerformanceReport compute_report(const SteadyState& steady,
                                 const ModelSpec& spec);

}  // namespace qinv

#endif
