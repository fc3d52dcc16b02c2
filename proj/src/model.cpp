#include "qinv/model.hpp"

#include <cmath>
#include <deque>
#include <sstream>

namespace qinv {

namespace {
constexpr double kRowSumTol = 1e-12;

std::string fmt_entry(const char* name, int z, double v) {
  std::ostringstream os;
  os << name << "[" << z + 1 << "] = " << v;
  return os.str();
}
}  // namespace

EnvironmentParams EnvironmentParams::make(Vector lambda, Vector mu, Vector xi,
                                          Vector alpha, Vector theta, Matrix Q) {
  EnvironmentParams env;
  env.m = static_cast<int>(lambda.size());
  env.lambda = std::move(lambda);
  env.mu = std::move(mu);
  env.xi = std::move(xi);
  env.alpha = std::move(alpha);
  env.theta = std::move(theta);
  env.Q = std::move(Q);
  if (env.Q.rows() == env.Q.cols() && env.Q.rows() > 0)
    env.q = -env.Q.diagonal();
  else
    env.q = Vector::Zero(env.m);
  return env;
}

int PhaseIndex::operator()(int inventory, ServerStatus status, int env) const {
  if (inventory < policy_.s + 1 || inventory > policy_.S)
    throw std::out_of_range("phase index: inventory out of [s+1, S]");
  if (env < 1 || env > m_)
    throw std::out_of_range("phase index: environment state out of [1, m]");
  const int x = static_cast<int>(status);
  return ((inventory - (policy_.s + 1)) * 3 + x) * m_ + (env - 1);
}

std::tuple<int, ServerStatus, int> PhaseIndex::unindex(int k) const {
  if (k < 0 || k >= count()) throw std::out_of_range("phase index out of range");
  const int z = k % m_;
  const int x = (k / m_) % 3;
  const int i = k / (3 * m_);
  return {policy_.s + 1 + i, static_cast<ServerStatus>(x), z + 1};
}

std::string PhaseIndex::label(int k) const {
  auto [inventory, status, env] = unindex(k);
  std::ostringstream os;
  os << "I" << inventory << "-" << to_string(status) << "-z" << env;
  return os.str();
}

bool is_irreducible(const Matrix& Q) {
  const int n = static_cast<int>(Q.rows());
  if (n <= 1) return true;
  // forward and backward reachability from state 0
  auto reach = [&](bool transpose) {
    std::vector<char> seen(n, 0);
    std::deque<int> frontier{0};
    seen[0] = 1;
    while (!frontier.empty()) {
      const int u = frontier.front();
      frontier.pop_front();
      for (int v = 0; v < n; ++v) {
        const double w = transpose ? Q(v, u) : Q(u, v);
        if (v != u && w > 0.0 && !seen[v]) {
          seen[v] = 1;
          frontier.push_back(v);
        }
      }
    }
    for (char c : seen)
      if (!c) return false;
    return true;
  };
  return reach(false) && reach(true);
}

ValidationResult validate_spec(const ModelSpec& spec) {
  ValidationResult result;
  auto add = [&](const std::string& msg) { result.violations.push_back(msg); };

  const auto& env = spec.env;
  if (env.m < 1) {
    add("environment state count m must be >= 1");
    return result;
  }

  struct Field {
    const char* name;
    const Vector* v;
    bool strictly_positive;
  };
  const Field fields[] = {{"lambda", &env.lambda, true}, {"mu", &env.mu, true},
                          {"xi", &env.xi, false},        {"alpha", &env.alpha, true},
                          {"theta", &env.theta, false}};
  for (const auto& f : fields) {
    if (f.v->size() != env.m) {
      add(std::string(f.name) + " length mismatch (expected " +
          std::to_string(env.m) + ", got " + std::to_string(f.v->size()) + ")");
      continue;
    }
    for (int z = 0; z < env.m; ++z) {
      const double v = (*f.v)(z);
      if (!std::isfinite(v)) add(fmt_entry(f.name, z, v) + " is not finite");
      else if (f.strictly_positive && v <= 0.0)
        add(fmt_entry(f.name, z, v) + " must be > 0");
      else if (!f.strictly_positive && v < 0.0)
        add(fmt_entry(f.name, z, v) + " must be >= 0");
    }
  }
  if (env.theta.size() == env.m && env.theta.maxCoeff() <= 0.0)
    add("all retrial rates are zero: the orbit can never drain");

  if (env.Q.rows() != env.m || env.Q.cols() != env.m) {
    add("Q must be " + std::to_string(env.m) + "x" + std::to_string(env.m));
  } else {
    for (int z = 0; z < env.m; ++z) {
      double row_sum = 0.0;
      for (int w = 0; w < env.m; ++w) {
        row_sum += env.Q(z, w);
        if (w != z && env.Q(z, w) < 0.0)
          add("generator off-diagonal Q(" + std::to_string(z + 1) + "," +
              std::to_string(w + 1) + ") is negative");
      }
      if (std::abs(row_sum) > kRowSumTol)
        add("generator row sum nonzero in row " + std::to_string(z + 1) +
            " (sum = " + std::to_string(row_sum) + ")");
      if (env.q.size() == env.m &&
          std::abs(env.q(z) + env.Q(z, z)) > kRowSumTol)
        add("cached exit rate q[" + std::to_string(z + 1) +
            "] does not match -Q(z,z)");
    }
    if (!is_irreducible(env.Q)) add("environment generator Q is reducible");
  }

  if (spec.policy.s < 0) add("reorder threshold s must be >= 0");
  if (spec.policy.s >= spec.policy.S) add("s must be strictly less than S");

  return result;
}

}  // namespace qinv
