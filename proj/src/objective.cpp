#include "cluspath/solvers.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cluspath {

const char* algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::ADMM: return "admm";
    case Algorithm::FastAMA: return "ama";
    case Algorithm::SSNAL: return "ssnal";
  }
  return "?";
}

Algorithm algorithm_from_name(std::string_view name) {
  if (name == "admm") return Algorithm::ADMM;
  if (name == "ama" || name == "fast-ama" || name == "fastama") return Algorithm::FastAMA;
  if (name == "ssnal") return Algorithm::SSNAL;
  throw std::invalid_argument("unknown solver '" + std::string(name) +
                              "' (expected ssnal, admm or ama)");
}

ProblemInstance::ProblemInstance(const DataMatrix& data_, const WeightedGraph& graph_,
                                 double gamma_, PenaltyNorm norm_)
    : data(&data_), graph(&graph_), B(graph_), gamma(gamma_), norm(norm_) {
  if (data_.n() != graph_.nodes())
    throw std::invalid_argument("instance: graph has " + std::to_string(graph_.nodes()) +
                                " nodes for " + std::to_string(data_.n()) + " samples");
  if (!(gamma >= 0.0) || !std::isfinite(gamma))
    throw std::invalid_argument("instance: gamma must be finite and >= 0");
}

Vector ProblemInstance::penalty_radii() const { return gamma * graph->weights(); }

Index SolverConfig::resolved_max_iter() const {
  if (max_iter > 0) return max_iter;
  return algorithm == Algorithm::SSNAL ? 100 : 20000;
}

void SolverConfig::validate() const {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw std::invalid_argument("config: epsilon must be positive and finite");
  if (!(kkt_factor > 0.0) || !std::isfinite(kkt_factor))
    throw std::invalid_argument("config: kkt_factor must be positive and finite");
  if (max_iter < 0) throw std::invalid_argument("config: max_iter must be >= 0");
  if (time_limit && !(*time_limit > 0.0))
    throw std::invalid_argument("config: time_limit must be positive when set");
  if (!(admm_rho > 0.0)) throw std::invalid_argument("config: admm_rho must be positive");
  if (!(ama_step_safety > 0.0) || ama_step_safety >= 1.0)
    throw std::invalid_argument("config: ama_step_safety must lie in (0, 1)");
  if (!(ssnal_sigma0 > 0.0)) throw std::invalid_argument("config: ssnal_sigma0 must be positive");
  if (!(armijo_mu > 0.0) || armijo_mu >= 0.5)
    throw std::invalid_argument("config: armijo_mu must lie in (0, 0.5)");
  if (!(backtrack_beta > 0.0) || backtrack_beta >= 1.0)
    throw std::invalid_argument("config: backtrack_beta must lie in (0, 1)");
  if (ssnal_newton_max < 1) throw std::invalid_argument("config: ssnal_newton_max must be >= 1");
  if (pcg_max_iter < 1) throw std::invalid_argument("config: pcg_max_iter must be >= 1");
}

double primal_objective(const ProblemInstance& inst, const Matrix& X) {
  if (X.rows() != inst.d() || X.cols() != inst.n())
    throw std::invalid_argument("primal_objective: X has the wrong shape");
  double value = 0.5 * (X - inst.A()).squaredNorm();
  if (inst.edge_count() == 0 || inst.gamma == 0.0) return value;
  Matrix D = inst.B.apply(X);
  double penalty = 0.0;
  const auto& edges = inst.graph->edges();
  for (Index l = 0; l < D.cols(); ++l)
    penalty += edges[static_cast<size_t>(l)].w * norm_value(D.col(l), inst.norm);
  return value + inst.gamma * penalty;
}

double dual_objective(const ProblemInstance& inst, const Matrix& Z) {
  if (Z.rows() != inst.d() || Z.cols() != inst.edge_count())
    throw std::invalid_argument("dual_objective: Z has the wrong shape");
  const auto& edges = inst.graph->edges();
  for (Index l = 0; l < Z.cols(); ++l) {
    double radius = inst.gamma * edges[static_cast<size_t>(l)].w;
    if (dual_norm_value(Z.col(l), inst.norm) > radius + 1e-9)
      throw std::invalid_argument("dual_objective: Z violates the dual-ball constraint on edge " +
                                  std::to_string(l));
  }
  Matrix ZBt = inst.B.apply_transpose(Z);
  return -0.5 * ZBt.squaredNorm() + ZBt.cwiseProduct(inst.A()).sum();
}

double duality_gap(double f_p, double f_d) {
  return std::abs(f_p - f_d) / (1.0 + std::abs(f_p) + std::abs(f_d));
}

Matrix recover_primal(const ProblemInstance& inst, const Matrix& Z) {
  if (Z.rows() != inst.d() || Z.cols() != inst.edge_count())
    throw std::invalid_argument("recover_primal: Z has the wrong shape");
  return inst.A() - inst.B.apply_transpose(Z);
}

double kkt_residual(const ProblemInstance& inst, const Matrix& X, const Matrix& Z) {
  if (X.rows() != inst.d() || X.cols() != inst.n())
    throw std::invalid_argument("kkt_residual: X has the wrong shape");
  if (Z.rows() != inst.d() || Z.cols() != inst.edge_count())
    throw std::invalid_argument("kkt_residual: Z has the wrong shape");
  const double stationarity =
      (X - inst.A() + inst.B.apply_transpose(Z)).norm() / (1.0 + inst.A().norm());
  if (inst.edge_count() == 0 || inst.gamma == 0.0) return stationarity;
  Matrix XB = inst.B.apply(X);
  Matrix P;
  prox_columns_into(XB + Z, inst.penalty_radii(), inst.norm, P);
  const double alignment = (XB - P).norm() / (1.0 + XB.norm() + Z.norm());
  return std::max(stationarity, alignment);
}

Solution solve(const ProblemInstance& inst, const SolverConfig& config,
               const Solution* warm, SolveCache* cache) {
  switch (config.algorithm) {
    case Algorithm::ADMM: return solve_admm(inst, config, warm, cache);
    case Algorithm::FastAMA: return solve_fast_ama(inst, config, warm, cache);
    case Algorithm::SSNAL: return solve_ssnal(inst, config, warm, cache);
  }
  throw std::invalid_argument("solve: unknown algorithm");
}

}  // namespace cluspath
