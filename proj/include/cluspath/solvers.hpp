#pragma once

#include "cluspath/graph.hpp"
#include "cluspath/linalg.hpp"
#include "cluspath/prox.hpp"
#include "cluspath/types.hpp"

#include <memory>
#include <optional>
#include <string_view>
#include <vector>

namespace cluspath {

enum class Algorithm { ADMM, FastAMA, SSNAL };

const char* algorithm_name(Algorithm a);
Algorithm algorithm_from_name(std::string_view name);  // "admm" | "ama" | "ssnal"

/// One clustering problem: data A (d x n), weighted graph over the samples,
/// penalty level gamma >= 0 and the fusion norm. The objective solved is
///
///   min_X  1/2 ||X - A||_F^2  +  gamma * sum_l w_l ||x_i(l) - x_j(l)||_q .
///
/// References the data and graph; both must outlive the instance.
struct ProblemInstance {
  const DataMatrix* data = nullptr;
  const WeightedGraph* graph = nullptr;
  IncidenceOperator B;
  double gamma = 0.0;
  PenaltyNorm norm = PenaltyNorm::l2;

  ProblemInstance(const DataMatrix& data_, const WeightedGraph& graph_,
                  double gamma_, PenaltyNorm norm_);

  const Matrix& A() const { return data->values; }
  Index d() const { return data->d(); }
  Index n() const { return data->n(); }
  Index edge_count() const { return graph->edge_count(); }

  /// Per-edge dual-ball radii gamma * w_l.
  Vector penalty_radii() const;
};

struct TerminationRecord {
  double f_primal = 0.0;
  double f_dual = 0.0;
  double gap = 0.0;
  Index iterations = 0;
  bool converged = false;
  double wall_time = 0.0;  // seconds
};

struct TraceRow {
  Index iter = 0;
  double f_p = 0.0;
  double f_d = 0.0;
  double gap = 0.0;
  double elapsed_s = 0.0;
};

/// Primal iterate X (d x n), dual-feasible certificate Z (d x |E|) and the
/// termination summary. Z always satisfies ||z_l||_q' <= gamma * w_l up to
/// rounding; the gap in `termination` can be recomputed from X and Z.
struct Solution {
  Matrix X;
  Matrix Z;
  TerminationRecord termination;
  std::vector<TraceRow> trace;  // filled when SolverConfig::collect_trace
};

struct SolverConfig {
  Algorithm algorithm = Algorithm::SSNAL;
  double epsilon = 1e-6;    // relative duality-gap tolerance
  double kkt_factor = 10.0;  // convergence also needs kkt_residual <= kkt_factor * epsilon
  Index max_iter = 0;       // 0 -> per-algorithm default
  std::optional<double> time_limit;  // seconds

  double admm_rho = 1.0;

  double ama_step_safety = 0.99;  // step = safety / lambda_max(B B^T)

  double ssnal_sigma0 = 1.0;
  double armijo_mu = 1e-4;
  double backtrack_beta = 0.5;
  Index ssnal_newton_max = 50;  // Newton steps per subproblem
  Index pcg_max_iter = 500;

  bool collect_trace = false;

  Index resolved_max_iter() const;  // 20000 (ADMM, AMA) or 100 outer (SSNAL)
  void validate() const;
};

/// 1/2 ||X - A||_F^2 + gamma * sum_l w_l ||(X B)_l||_q.
double primal_objective(const ProblemInstance& inst, const Matrix& X);

/// -1/2 ||Z B^T||_F^2 + <Z B^T, A>. Z must lie in the product of dual-norm
/// balls of radii gamma * w_l (tolerance 1e-9); infeasible input throws.
double dual_objective(const ProblemInstance& inst, const Matrix& Z);

/// |f_p - f_d| / (1 + |f_p| + |f_d|).
double duality_gap(double f_p, double f_d);

/// KKT map X = A - Z B^T.
Matrix recover_primal(const ProblemInstance& inst, const Matrix& Z);

/// Relative KKT residual of a primal/dual pair: the larger of the
/// stationarity mismatch ||X - A + Z B^T||_F / (1 + ||A||_F) and the
/// subgradient-alignment mismatch ||X B - prox(X B + Z)||_F /
/// (1 + ||X B||_F + ||Z||_F), the prox taken edge-columnwise at thresholds
/// gamma * w_l. Both vanish exactly at the optimum and shrink linearly with
/// the iterate error, unlike the duality gap, which is quadratic in the
/// primal error and so certifies far less accuracy per digit.
double kkt_residual(const ProblemInstance& inst, const Matrix& X, const Matrix& Z);

/// State shared across solves on the same (data, graph, norm): the ADMM
/// factor for a given rho and the Laplacian spectral bound for the AMA step.
struct SolveCache {
  std::shared_ptr<const CholeskyFactor> admm_factor;
  double admm_factor_rho = -1.0;
  double laplacian_lambda_max = -1.0;
};

/// All solvers stop once the relative duality gap drops to config.epsilon
/// and the relative KKT residual to kkt_factor * epsilon (the gap alone
/// stops at iterates whose distance to the optimum is only O(sqrt(gap));
/// the paired test restores a linear error-per-epsilon scale). They return
/// converged=false (with the best iterate seen) when max_iter or the time
/// limit is exhausted, and accept a warm start whose shapes match the
/// instance; the warm dual is re-projected onto the current radii.
Solution solve_admm(const ProblemInstance& inst, const SolverConfig& config,
                    const Solution* warm = nullptr, SolveCache* cache = nullptr);
Solution solve_fast_ama(const ProblemInstance& inst, const SolverConfig& config,
                        const Solution* warm = nullptr, SolveCache* cache = nullptr);
Solution solve_ssnal(const ProblemInstance& inst, const SolverConfig& config,
                     const Solution* warm = nullptr, SolveCache* cache = nullptr);

/// Dispatch on config.algorithm.
Solution solve(const ProblemInstance& inst, const SolverConfig& config,
               const Solution* warm = nullptr, SolveCache* cache = nullptr);

/// Augmented-Lagrangian subproblem pieces of the SSNAL inner minimization,
/// exposed so derivative checks can probe them directly. With
/// V = X B + Z / sigma and P(V) the columnwise prox at thresholds
/// gamma * w_l / sigma:
///   phi(X)      = 1/2||X - A||^2 + sum_l [ gamma w_l ||P(V)_l||_q
///                 + sigma/2 ||P(V)_l - V_l||^2 ] - ||Z||^2 / (2 sigma)
///   grad phi(X) = X - A + sigma (V - P(V)) B^T
///   H[D]        = D + sigma (D B (I - M)) B^T,  M = blockdiag prox Jacobians.
double ssnal_phi_value(const ProblemInstance& inst, const Matrix& Z, double sigma,
                       const Matrix& X);
Matrix ssnal_phi_gradient(const ProblemInstance& inst, const Matrix& Z, double sigma,
                          const Matrix& X);
Matrix ssnal_hessian_apply(const ProblemInstance& inst, const Matrix& Z, double sigma,
                           const Matrix& X, const Matrix& D);

}  // namespace cluspath
