#include "qinv/solver.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "qinv/stability.hpp"

namespace qinv {

namespace {

constexpr double kNegativeTol = 1e-9;

// A1 at the cap keeps its rows conservative: the level-up rates that the cap
// blocks are removed from the diagonal as well.
Matrix capped_top(const LevelBlockProvider& blocks, int level) {
  Matrix top = blocks.level_same(level);
  top.diagonal() += blocks.level_up(level).rowwise().sum();
  return top;
}

void check_bracket(const Matrix& bracket, int level) {
  const int n = static_cast<int>(bracket.rows());
  for (int i = 0; i < n; ++i) {
    double off = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      if (bracket(i, j) < -kNegativeTol)
        throw DegenerateSolveError(
            "rate recursion: negative off-diagonal in bracket at level " +
            std::to_string(level));
      off += std::max(bracket(i, j), 0.0);
    }
    if (bracket(i, i) >= 0.0 || -bracket(i, i) < off - 1e-7 * std::abs(bracket(i, i)))
      throw DegenerateSolveError(
          "rate recursion: bracket lost diagonal dominance at level " +
          std::to_string(level) + " row " + std::to_string(i));
  }
}

// R = -A0 B^{-1}, solved as B^T R^T = -A0^T.
Matrix solve_rate(const Matrix& level_up, const Matrix& bracket, int level) {
  Eigen::PartialPivLU<Matrix> lu(bracket.transpose());
  Matrix rate = -lu.solve(level_up.transpose()).transpose();
  if (!rate.allFinite())
    throw DegenerateSolveError("rate recursion: singular bracket at level " +
                               std::to_string(level));
  const double min_entry = rate.minCoeff();
  if (min_entry < -kNegativeTol)
    throw DegenerateSolveError(
        "rate recursion: rate matrix entry " + std::to_string(min_entry) +
        " below zero at level " + std::to_string(level));
  return rate.cwiseMax(0.0);
}

}  // namespace

std::vector<Matrix> compute_rate_matrices(const LevelBlockProvider& blocks,
                                          int truncation) {
  if (truncation < 1)
    throw std::invalid_argument("truncation level must be >= 1");
  std::vector<Matrix> rates(truncation);
  Matrix bracket = capped_top(blocks, truncation);
  check_bracket(bracket, truncation);
  for (int level = truncation - 1; level >= 0; --level) {
    rates[level] = solve_rate(blocks.level_up(level), bracket, level);
    if (level > 0) {
      bracket = blocks.level_same(level) + rates[level] * blocks.level_down(level + 1);
      check_bracket(bracket, level);
    }
  }
  return rates;
}

RowVector solve_boundary(const LevelBlockProvider& blocks, const Matrix& r0) {
  const int n = blocks.dim();
  const Matrix boundary = blocks.level_same(0) + r0 * blocks.level_down(1);
  Matrix system = boundary.transpose();
  system.row(n - 1).setOnes();
  Vector rhs = Vector::Zero(n);
  rhs(n - 1) = 1.0;
  Vector p = Eigen::PartialPivLU<Matrix>(system).solve(rhs);
  RowVector p0 = p.transpose();
  if (p0.sum() < 0.0) p0 = -p0;
  const double residual = (p0 * boundary).cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, boundary.cwiseAbs().maxCoeff());
  if (!p0.allFinite() || residual > 1e-7 * scale) {
    std::ostringstream os;
    os << "boundary system does not have a one-dimensional null space "
          "(residual " << residual << ")";
    throw DegenerateSolveError(os.str());
  }
  if (p0.minCoeff() < -kNegativeTol)
    throw DegenerateSolveError("boundary vector has negative mass");
  return p0.cwiseMax(0.0);
}

SteadyState assemble_steady_state(const LevelBlockProvider& blocks,
                                  std::vector<Matrix> rate_matrices) {
  SteadyState state;
  state.truncation_level = static_cast<int>(rate_matrices.size());
  state.rate_matrices = std::move(rate_matrices);

  RowVector p = solve_boundary(blocks, state.rate_matrices.front());
  state.levels.reserve(state.truncation_level + 1);
  state.levels.push_back(p);
  for (const Matrix& rate : state.rate_matrices) {
    p = p * rate;
    state.levels.push_back(p);
  }
  double total = 0.0;
  for (const RowVector& level : state.levels) total += level.sum();
  for (RowVector& level : state.levels) level /= total;

  // Geometric tail estimate. The rate matrix a few levels below the cap is
  // used for the decay factor: the capped top block inflates the last one.
  const int probe =
      std::max(0, state.truncation_level - 5);
  const double decay = spectral_radius(state.rate_matrices[probe]);
  const double top_mass = state.levels.back().sum();
  state.tail_mass_bound = decay < 1.0
                              ? top_mass * decay / (1.0 - decay)
                              : std::numeric_limits<double>::infinity();
  return state;
}

SteadyState solve_steady_state(const ModelSpec& spec, int truncation) {
  const auto [rho, per_state] = traffic_intensity(spec);
  (void)per_state;
  if (!(rho < 1.0 - 1e-9))
    throw UnstableModelError("traffic intensity rho = " + std::to_string(rho) +
                             " is not < 1; steady state does not exist");
  GeneratorBuilder generator(spec);
  return assemble_steady_state(generator,
                               compute_rate_matrices(generator, truncation));
}

double spectral_radius(const Matrix& m) {
  Eigen::EigenSolver<Matrix> eigen(m, /*computeEigenvectors=*/false);
  return eigen.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace qinv
