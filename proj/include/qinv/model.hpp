#ifndef QINV_MODEL_HPP
#define QINV_MODEL_HPP

#include <string>
#include <tuple>
#include <vector>

#include "qinv/common.hpp"

namespace qinv {

// Markov-modulated exponential rates plus the environment generator Q.
// All rate vectors have length m; q caches the exit rates q_z = -Q(z,z).
struct EnvironmentParams {
  int m = 0;
  Vector lambda;  // arrival
  Vector mu;      // service
  Vector xi;      // server failure
  Vector alpha;   // repair
  Vector theta;   // per-customer retrial
  Matrix Q;       // environment generator, row sums zero
  Vector q;

  static EnvironmentParams make(Vector lambda, Vector mu, Vector xi,
                                Vector alpha, Vector theta, Matrix Q);
};

// (s,S) policy with instantaneous replenishment: a service completion at
// inventory s+1 restocks to S, so reachable levels are s+1..S.
struct InventoryPolicy {
  int s = 0;
  int S = 1;
  int span() const { return S - s; }
};

struct ModelSpec {
  EnvironmentParams env;
  InventoryPolicy policy;
  int phase_count() const { return policy.span() * 3 * env.m; }
};

// Full chain state: orbit size, inventory level, server status, environment.
struct SystemState {
  long orbit = 0;
  int inventory = 0;
  ServerStatus status = ServerStatus::idle;
  int env = 1;  // 1-based
};

// Bijection between (inventory, status, environment) and the flat per-level
// phase index: inventory-major, then status (idle, busy, failed), then
// environment. This ordering is normative; every block matrix relies on it.
class PhaseIndex {
 public:
  PhaseIndex(InventoryPolicy policy, int m) : policy_(policy), m_(m) {}

  int count() const { return policy_.span() * 3 * m_; }

  // env is 1-based. Out-of-range components throw std::out_of_range.
  int operator()(int inventory, ServerStatus status, int env) const;
  std::tuple<int, ServerStatus, int> unindex(int k) const;

  std::string label(int k) const;  // "I{I}-{idle|busy|failed}-z{Z}"

  const InventoryPolicy& policy() const { return policy_; }
  int env_count() const { return m_; }

 private:
  InventoryPolicy policy_;
  int m_;
};

struct ValidationResult {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Checks rate signs and lengths, Q row sums and irreducibility, policy
// bounds, and rejects an all-zero retrial vector (the orbit could never
// drain). Violations are data, not exceptions.
ValidationResult validate_spec(const ModelSpec& spec);

// Strong connectivity of the nonzero off-diagonal pattern of a generator.
bool is_irreducible(const Matrix& Q);

}  // namespace qinv

#endif
