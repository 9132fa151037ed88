#include "cluspath/solvers.hpp"

#include "solver_util.hpp"

#include <cmath>
#include <utility>

namespace cluspath {

// Accelerated projected gradient ascent on the dual
//   max_Z -1/2 ||Z B^T||_F^2 + <Z B^T, A>   s.t.  ||z_l||_q' <= gamma w_l,
// whose gradient (A - Z B^T) B has Lipschitz constant lambda_max(B B^T); the
// step is a safety fraction of its inverse, estimated once per graph by
// power iteration and cached. Momentum follows the standard t-sequence; the
// duality gap is evaluated on the first iteration and every 10th after that,
// at the (always feasible) projected iterate.
Solution solve_fast_ama(const ProblemInstance& inst, const SolverConfig& config,
                        const Solution* warm, SolveCache* cache) {
  config.validate();
  const auto t0 = detail::Clock::now();

  if (auto trivial = detail::trivial_solution(inst)) return std::move(*trivial);

  Matrix X, Z;
  detail::initial_point(inst, warm, X, Z);

  std::vector<TraceRow> trace;

  {
    auto s0 = detail::evaluate_gap(inst, X, Z);
    if (config.collect_trace)
      trace.push_back({0, s0.f_p, s0.f_d, s0.gap, detail::seconds_since(t0)});
    if (s0.accepts(config))
      return detail::finish(std::move(X), std::move(Z), s0, 0, true,
                            detail::seconds_since(t0), std::move(trace));
  }

  double lambda_max;
  if (cache && cache->laplacian_lambda_max > 0.0) {
    lambda_max = cache->laplacian_lambda_max;
  } else {
    lambda_max = power_iteration(LinearOperator::sparse(inst.B.laplacian(), true));
    if (cache) cache->laplacian_lambda_max = lambda_max;
  }
  if (!(lambda_max > 0.0))
    throw std::runtime_error("fast AMA: spectral bound of B B^T is not positive");
  const double step = config.ama_step_safety / lambda_max;

  const Vector radii = inst.penalty_radii();
  const Matrix& A = inst.A();

  Matrix Zhat = Z;       // extrapolated point
  Matrix Zprev = Z;      // previous accepted iterate
  Matrix ZBt, G, Znew;
  double t = 1.0;
  detail::BestIterate best;

  const Index max_iter = config.resolved_max_iter();
  Index k = 0;
  while (k < max_iter) {
    ++k;
    inst.B.apply_transpose_into(Zhat, ZBt);
    ZBt = A - ZBt;
    inst.B.apply_into(ZBt, G);  // gradient of the dual at Zhat
    Znew = Zhat + step * G;
    project_columns_inplace(Znew, radii, inst.norm);

    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    Zhat = Znew + ((t - 1.0) / t_next) * (Znew - Zprev);
    Zprev = Znew;
    t = t_next;

    const bool evaluate = (k == 1) || (k % 10 == 0) || (k == max_iter);
    if (evaluate) {
      X = recover_primal(inst, Znew);
      auto s = detail::evaluate_gap(inst, X, Znew);
      if (config.collect_trace)
        trace.push_back({k, s.f_p, s.f_d, s.gap, detail::seconds_since(t0)});
      if (s.accepts(config))
        return detail::finish(std::move(X), std::move(Znew), s, k, true,
                              detail::seconds_since(t0), std::move(trace));
      best.offer(X, Znew, s);
    }
    if (config.time_limit && detail::seconds_since(t0) > *config.time_limit) break;
  }

  return detail::finish(std::move(best.X), std::move(best.Z), best.state, k, false,
                        detail::seconds_since(t0), std::move(trace));
}

}  // namespace cluspath
