#pragma once

#include "cluspath/solvers.hpp"

#include <chrono>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

namespace cluspath::detail {

using Clock = std::chrono::steady_clock;

inline double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct GapState {
  double f_p = 0.0;
  double f_d = 0.0;
  double gap = 0.0;
  double kkt = 0.0;

  /// The shared convergence test: small relative duality gap plus a small
  /// relative KKT residual (the latter keeps the iterate error linear in
  /// epsilon rather than O(sqrt(epsilon))).
  bool accepts(const SolverConfig& config) const {
    return gap <= config.epsilon && kkt <= config.kkt_factor * config.epsilon;
  }
};

inline GapState evaluate_gap(const ProblemInstance& inst, const Matrix& X, const Matrix& Z) {
  GapState g;
  g.f_p = primal_objective(inst, X);
  g.f_d = dual_objective(inst, Z);
  g.gap = duality_gap(g.f_p, g.f_d);
  g.kkt = kkt_residual(inst, X, Z);
  return g;
}

/// gamma = 0 and the edgeless graph both have the analytic solution X = A,
/// Z = 0 with zero duality gap.
inline std::optional<Solution> trivial_solution(const ProblemInstance& inst) {
  if (inst.gamma > 0.0 && inst.edge_count() > 0) return std::nullopt;
  Solution sol;
  sol.X = inst.A();
  sol.Z = Matrix::Zero(inst.d(), inst.edge_count());
  sol.termination.converged = true;
  return sol;
}

/// Initial primal/dual pair: the warm start when shapes match (dual columns
/// re-projected onto the current radii), else X = A, Z = 0. A warm start with
/// wrong shapes is a caller bug and throws.
inline void initial_point(const ProblemInstance& inst, const Solution* warm, Matrix& X,
                          Matrix& Z) {
  if (warm) {
    if (warm->X.rows() != inst.d() || warm->X.cols() != inst.n() ||
        warm->Z.rows() != inst.d() || warm->Z.cols() != inst.edge_count())
      throw std::invalid_argument("warm start does not match the instance shapes");
    X = warm->X;
    Z = project_columns(warm->Z, inst.penalty_radii(), inst.norm);
  } else {
    X = inst.A();
    Z = Matrix::Zero(inst.d(), inst.edge_count());
  }
}

/// Keeps the best-gap iterate seen so a non-converged solve still returns a
/// usable point.
struct BestIterate {
  Matrix X, Z;
  GapState state;
  double best_gap = std::numeric_limits<double>::infinity();

  void offer(const Matrix& X_, const Matrix& Z_, const GapState& s) {
    if (s.gap < best_gap) {
      best_gap = s.gap;
      X = X_;
      Z = Z_;
      state = s;
    }
  }
};

inline Solution finish(Matrix X, Matrix Z, const GapState& s, Index iterations,
                       bool converged, double wall_time, std::vector<TraceRow> trace) {
  Solution sol;
  sol.X = std::move(X);
  sol.Z = std::move(Z);
  sol.termination.f_primal = s.f_p;
  sol.termination.f_dual = s.f_d;
  sol.termination.gap = s.gap;
  sol.termination.iterations = iterations;
  sol.termination.converged = converged;
  sol.termination.wall_time = wall_time;
  sol.trace = std::move(trace);
  return sol;
}

}  // namespace cluspath::detail
