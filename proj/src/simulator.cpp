#include "qinv/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <string>
#include <thread>

namespace qinv {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97f4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// xoshiro256++; uniform doubles come straight from the high 53 bits so the
// stream is identical across platforms and standard libraries.
class Xoshiro256pp {
 public:
  explicit Xoshiro256pp(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& word : state_) {
      x = splitmix64(x);
      word = x;
    }
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  double uniform() { return double(next() >> 11) * 0x1.0p-53; }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::uint64_t state_[4];
};

struct DivergenceInfo {
  bool hit = false;
  int replication = 0;
  double time = 0.0;
};

ReplicationStats run_replication(const ModelSpec& spec, const SimConfig& cfg,
                                 std::uint64_t stream_seed,
                                 DivergenceInfo& divergence) {
  const auto& env = spec.env;
  const int m = env.m;
  const int span = spec.policy.span();
  Xoshiro256pp rng(stream_seed);

  // idle server, full inventory, empty orbit, environment state 1
  SystemState state;
  state.inventory = spec.policy.S;
  state.env = 1;

  double clock = 0.0;
  const double observed = cfg.horizon - cfg.warmup;
  double status_time[3] = {0.0, 0.0, 0.0};
  double orbit_integral = 0.0;
  double inventory_integral = 0.0;
  std::vector<double> orbit_time;
  std::vector<double> inventory_time(span, 0.0);

  while (clock < cfg.horizon) {
    const int z = state.env - 1;
    const bool idle = state.status == ServerStatus::idle;
    const bool busy = state.status == ServerStatus::busy;
    const bool failed = state.status == ServerStatus::failed;

    const double rate_env = env.q(z);
    const double rate_arrival = env.lambda(z);
    const double rate_service = busy ? env.mu(z) : 0.0;
    const double rate_failure = failed ? 0.0 : env.xi(z);
    const double rate_repair = failed ? env.alpha(z) : 0.0;
    const double rate_retrial =
        (idle && state.orbit > 0) ? double(state.orbit) * env.theta(z) : 0.0;
    const double total = rate_env + rate_arrival + rate_service +
                         rate_failure + rate_repair + rate_retrial;

    const double dt = -std::log1p(-rng.uniform()) / total;
    const double t_next = clock + dt;

    // accumulate the slice of [clock, t_next] inside [warmup, horizon]
    const double lo = std::max(clock, cfg.warmup);
    const double hi = std::min(t_next, cfg.horizon);
    if (hi > lo) {
      const double weight = hi - lo;
      status_time[static_cast<int>(state.status)] += weight;
      orbit_integral += weight * double(state.orbit);
      inventory_integral += weight * double(state.inventory);
      if (orbit_time.size() <= std::size_t(state.orbit))
        orbit_time.resize(state.orbit + 1, 0.0);
      orbit_time[state.orbit] += weight;
      inventory_time[state.inventory - spec.policy.s - 1] += weight;
    }
    clock = t_next;
    if (clock >= cfg.horizon) break;

    double pick = rng.uniform() * total;
    if (pick < rate_env) {
      // environment jump, destination by the Q row
      for (int w = 0; w < m; ++w) {
        if (w == z) continue;
        pick -= env.Q(z, w);
        if (pick < 0.0) {
          state.env = w + 1;
          break;
        }
      }
      continue;
    }
    pick -= rate_env;
    if (pick < rate_arrival) {
      if (idle) {
        state.status = ServerStatus::busy;
      } else {
        ++state.orbit;  // blocked demand joins the orbit
      }
    } else if (pick < rate_arrival + rate_service) {
      state.status = ServerStatus::idle;
      state.inventory =
          state.inventory - 1 > spec.policy.s ? state.inventory - 1 : spec.policy.S;
    } else if (pick < rate_arrival + rate_service + rate_failure) {
      if (busy) ++state.orbit;  // in-service demand is displaced
      state.status = ServerStatus::failed;
    } else if (pick < rate_arrival + rate_service + rate_failure + rate_repair) {
      state.status = ServerStatus::idle;
    } else {
      --state.orbit;  // successful retrial
      state.status = ServerStatus::busy;
    }

    if (state.orbit > cfg.orbit_cap) {
      divergence.hit = true;
      divergence.time = clock;
      return {};
    }
  }

  ReplicationStats stats;
  stats.p_idle = status_time[0] / observed;
  stats.p_busy = status_time[1] / observed;
  stats.p_failed = status_time[2] / observed;
  stats.L_R = orbit_integral / observed;
  stats.L = stats.L_R + stats.p_busy;
  stats.B_inv = inventory_integral / observed;
  stats.orbit_frac = std::move(orbit_time);
  for (double& t : stats.orbit_frac) t /= observed;
  stats.inventory_frac = std::move(inventory_time);
  for (double& t : stats.inventory_frac) t /= observed;
  return stats;
}

Estimate combine(const std::vector<double>& values) {
  const int n = static_cast<int>(values.size());
  Estimate estimate;
  for (double v : values) estimate.mean += v;
  estimate.mean /= n;
  if (n < 2) return estimate;
  double ss = 0.0;
  for (double v : values) ss += (v - estimate.mean) * (v - estimate.mean);
  const double sd = std::sqrt(ss / (n - 1));
  estimate.halfwidth = student_t_975(n - 1) * sd / std::sqrt(double(n));
  return estimate;
}

}  // namespace

double student_t_975(int dof) {
  static const double table[30] = {
      12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365, 2.306, 2.262, 2.228,
      2.201,  2.179, 2.160, 2.145, 2.131, 2.120, 2.110, 2.101, 2.093, 2.086,
      2.080,  2.074, 2.069, 2.064, 2.060, 2.056, 2.052, 2.048, 2.045, 2.042};
  if (dof < 1) return std::numeric_limits<double>::quiet_NaN();
  if (dof <= 30) return table[dof - 1];
  if (dof >= 120) return 1.960;
  // interpolate in 1/dof between the df = 30 and df = 120 anchors
  const double f = (1.0 / dof - 1.0 / 120.0) / (1.0 / 30.0 - 1.0 / 120.0);
  return 1.960 + f * (2.042 - 1.960);
}

SimEstimates simulate(const ModelSpec& spec, const SimConfig& config) {
  if (config.replications < 1)
    throw std::invalid_argument("replications must be >= 1");
  if (!(config.warmup < config.horizon))
    throw std::invalid_argument("warmup must be below the horizon");

  const int reps = config.replications;
  std::vector<ReplicationStats> results(reps);
  std::vector<DivergenceInfo> divergences(reps);

  int workers = config.threads > 0
                    ? config.threads
                    : int(std::max(1u, std::thread::hardware_concurrency()));
  workers = std::min(workers, reps);

  std::atomic<int> cursor{0};
  auto work = [&] {
    for (int r = cursor.fetch_add(1); r < reps; r = cursor.fetch_add(1)) {
      const std::uint64_t stream =
          splitmix64(config.seed ^ (0x9E3779B97f4A7C15ull * std::uint64_t(r + 1)));
      divergences[r].replication = r;
      results[r] = run_replication(spec, config, stream, divergences[r]);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int i = 0; i < workers; ++i) pool.emplace_back(work);
  for (auto& thread : pool) thread.join();

  for (const auto& divergence : divergences)
    if (divergence.hit)
      throw SimulationDivergedError(
          "orbit cap " + std::to_string(config.orbit_cap) +
          " exceeded in replication " + std::to_string(divergence.replication) +
          " at simulated time " + std::to_string(divergence.time) +
          "; the model looks unstable");

  SimEstimates estimates;
  estimates.replications = std::move(results);
  const auto& reps_data = estimates.replications;

  auto scalar = [&](auto member) {
    std::vector<double> values(reps);
    for (int r = 0; r < reps; ++r) values[r] = reps_data[r].*member;
    return combine(values);
  };
  estimates.p_idle = scalar(&ReplicationStats::p_idle);
  estimates.p_busy = scalar(&ReplicationStats::p_busy);
  estimates.p_failed = scalar(&ReplicationStats::p_failed);
  estimates.L_R = scalar(&ReplicationStats::L_R);
  estimates.L = scalar(&ReplicationStats::L);
  estimates.B_inv = scalar(&ReplicationStats::B_inv);

  std::size_t orbit_len = 0;
  for (const auto& rep : reps_data)
    orbit_len = std::max(orbit_len, rep.orbit_frac.size());
  estimates.orbit_marginal.resize(orbit_len);
  std::vector<double> column(reps);
  for (std::size_t k = 0; k < orbit_len; ++k) {
    for (int r = 0; r < reps; ++r)
      column[r] = k < reps_data[r].orbit_frac.size() ? reps_data[r].orbit_frac[k] : 0.0;
    estimates.orbit_marginal[k] = combine(column);
  }
  const std::size_t span = reps_data.front().inventory_frac.size();
  estimates.inventory_marginal.resize(span);
  for (std::size_t k = 0; k < span; ++k) {
    for (int r = 0; r < reps; ++r) column[r] = reps_data[r].inventory_frac[k];
    estimates.inventory_marginal[k] = combine(column);
  }
  return estimates;
}

}  // namespace qinv
