#include "cluspath/solvers.hpp"

#include "solver_util.hpp"

#include <memory>
#include <utility>

namespace cluspath {

// Splitting X B = U with multiplier L ("Lambda") on <Lambda, XB - U>. The
// X update solves X (I + rho B B^T) = A + (rho U - Lambda) B^T against a
// cached sparse Cholesky factor, the U update is a per-edge prox at
// thresholds gamma w_l / rho, and the duality gap is evaluated every
// iteration at the projected multiplier, which converges to the dual optimum
// under this sign convention.
Solution solve_admm(const ProblemInstance& inst, const SolverConfig& config,
                    const Solution* warm, SolveCache* cache) {
  config.validate();
  const auto t0 = detail::Clock::now();

  if (auto trivial = detail::trivial_solution(inst)) return std::move(*trivial);

  Matrix X, Lambda;
  detail::initial_point(inst, warm, X, Lambda);

  std::vector<TraceRow> trace;

  {
    auto s0 = detail::evaluate_gap(inst, X, Lambda);
    if (config.collect_trace)
      trace.push_back({0, s0.f_p, s0.f_d, s0.gap, detail::seconds_since(t0)});
    if (s0.accepts(config))
      return detail::finish(std::move(X), std::move(Lambda), s0, 0, true,
                            detail::seconds_since(t0), std::move(trace));
  }

  const double rho = config.admm_rho;
  std::shared_ptr<const CholeskyFactor> factor;
  if (cache && cache->admm_factor && cache->admm_factor_rho == rho &&
      cache->admm_factor->size() == inst.n()) {
    factor = cache->admm_factor;
  } else {
    factor = std::make_shared<CholeskyFactor>(inst.B.laplacian(), rho);
    if (cache) {
      cache->admm_factor = factor;
      cache->admm_factor_rho = rho;
    }
  }

  const Vector radii = inst.penalty_radii();
  const Vector thresholds = radii / rho;
  const Matrix& A = inst.A();

  Matrix XB = inst.B.apply(X);
  Matrix U = XB;  // feasible start: U = X B
  Matrix V, RHS, Zc;
  detail::BestIterate best;

  const Index max_iter = config.resolved_max_iter();
  for (Index k = 1; k <= max_iter; ++k) {
    RHS = A + inst.B.apply_transpose(rho * U - Lambda);
    X = factor->solve(RHS.transpose()).transpose();
    inst.B.apply_into(X, XB);

    V = XB + Lambda / rho;
    prox_columns_into(V, thresholds, inst.norm, U);

    Lambda += rho * (XB - U);

    Zc = project_columns(Lambda, radii, inst.norm);
    auto s = detail::evaluate_gap(inst, X, Zc);
    if (config.collect_trace)
      trace.push_back({k, s.f_p, s.f_d, s.gap, detail::seconds_since(t0)});
    if (s.accepts(config))
      return detail::finish(std::move(X), std::move(Zc), s, k, true,
                            detail::seconds_since(t0), std::move(trace));
    best.offer(X, Zc, s);

    if (config.time_limit && detail::seconds_since(t0) > *config.time_limit) {
      return detail::finish(std::move(best.X), std::move(best.Z), best.state, k, false,
                            detail::seconds_since(t0), std::move(trace));
    }
  }

  return detail::finish(std::move(best.X), std::move(best.Z), best.state, max_iter, false,
                        detail::seconds_since(t0), std::move(trace));
}

}  // namespace cluspath
