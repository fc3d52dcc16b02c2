#ifndef QINV_SIMULATOR_HPP
#define QINV_SIMULATOR_HPP

#include <cstdint>
#include <vector>

#include "qinv/model.hpp"

namespace qinv {

struct SimConfig {
  double horizon = 2e5;
  double warmup = 1e4;
  int replications = 20;
  std::uint64_t seed = 1;
  long orbit_cap = 100000;  // abort signal, not a model feature
  int threads = 0;          // 0 = hardware concurrency
};

struct Estimate {
  double mean = 0.0;
  double halfwidth = 0.0;  // 95%, across replications
};

// Time-average estimates from one replication.
struct ReplicationStats {
  double p_idle = 0.0, p_busy = 0.0, p_failed = 0.0;
  double L_R = 0.0, L = 0.0, B_inv = 0.0;
  std::vector<double> orbit_frac;      // time fraction per orbit size
  std::vector<double> inventory_frac;  // time fraction per inventory level
};

struct SimEstimates {
  Estimate p_idle, p_busy, p_failed, L_R, L, B_inv;
  std::vector<Estimate> orbit_marginal;      // up to the observed max
  std::vector<Estimate> inventory_marginal;  // s+1 .. S
  std::vector<ReplicationStats> replications;
};

// Exact competing-exponential-clock simulation of the orbit chain.
// Replications run concurrently, each on its own xoshiro256++ stream seeded
// via SplitMix64 from (seed, replication index); results are merged in
// replication order, so output is bit-identical for a fixed config
// regardless of thread count. Throws SimulationDivergedError if any
// replication exceeds the orbit cap.
SimEstimates simulate(const ModelSpec& spec, const SimConfig& config);

// Two-sided 97.5% Student-t quantile used for the confidence halfwidths.
double student_t_975(int dof);

}  // namespace qinv

#endif
