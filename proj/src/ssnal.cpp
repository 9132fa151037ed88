#include "cluspath/solvers.hpp"

#include "solver_util.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

namespace cluspath {

namespace {

// Shared evaluation state for the augmented-Lagrangian subproblem
//   phi(X) = 1/2||X - A||^2 + sigma * env(V) - ||Z||^2/(2 sigma),
// where V = X B + Z / sigma and env is the columnwise Moreau envelope of the
// weighted norms at thresholds gamma w_l / sigma.
struct PhiEval {
  Matrix V;   // d x |E|
  Matrix PV;  // prox of V, columnwise
  double value = 0.0;
};

PhiEval eval_phi(const ProblemInstance& inst, const Matrix& A, const Matrix& Z,
                 double sigma, const Vector& thresholds, const Matrix& X) {
  PhiEval e;
  inst.B.apply_into(X, e.V);
  e.V += Z / sigma;
  prox_columns_into(e.V, thresholds, inst.norm, e.PV);
  double envelope = 0.0;
  const auto& edges = inst.graph->edges();
  for (Index l = 0; l < e.V.cols(); ++l) {
    const double w = edges[static_cast<size_t>(l)].w;
    envelope += inst.gamma * w * norm_value(e.PV.col(l), inst.norm) +
                0.5 * sigma * (e.PV.col(l) - e.V.col(l)).squaredNorm();
  }
  e.value = 0.5 * (X - A).squaredNorm() + envelope - Z.squaredNorm() / (2.0 * sigma);
  return e;
}

Matrix phi_gradient_from(const ProblemInstance& inst, const Matrix& A, double sigma,
                         const Matrix& X, const PhiEval& e) {
  return X - A + sigma * inst.B.apply_transpose(e.V - e.PV);
}

std::vector<ProxJacobian> edge_jacobians(const ProblemInstance& inst, const Matrix& V,
                                         const Vector& thresholds) {
  std::vector<ProxJacobian> J;
  J.reserve(static_cast<size_t>(V.cols()));
  for (Index l = 0; l < V.cols(); ++l)
    J.push_back(prox_jacobian(V.col(l), thresholds[l], inst.norm));
  return J;
}

// H[D] = D + sigma * (D B (I - M)) B^T with M the structural prox Jacobians.
Matrix hessian_apply_from(const ProblemInstance& inst, double sigma, const Matrix& D,
                          const std::vector<ProxJacobian>& J) {
  Matrix W = inst.B.apply(D);
  for (Index l = 0; l < W.cols(); ++l) {
    Vector w = W.col(l);
    W.col(l) = w - J[static_cast<size_t>(l)].apply(w);
  }
  return D + sigma * inst.B.apply_transpose(W);
}

// Diagonal of H in the entry space, assembled from the structural Jacobians:
// the (r, i) entry is 1 + sigma * sum over incident edges of (I - M_l)_rr.
Matrix hessian_diagonal(const ProblemInstance& inst, double sigma,
                        const std::vector<ProxJacobian>& J, Index d, Index n) {
  Matrix diag = Matrix::Ones(d, n);
  const auto& edges = inst.graph->edges();
  for (Index l = 0; l < inst.edge_count(); ++l) {
    const Edge& e = edges[static_cast<size_t>(l)];
    const ProxJacobian& Jl = J[static_cast<size_t>(l)];
    for (Index r = 0; r < d; ++r) {
      const double c = sigma * (1.0 - Jl.diag(r));
      diag(r, e.i) += c;
      diag(r, e.j) += c;
    }
  }
  return diag;
}

}  // namespace

double ssnal_phi_value(const ProblemInstance& inst, const Matrix& Z, double sigma,
                       const Matrix& X) {
  const Vector thresholds = inst.penalty_radii() / sigma;
  return eval_phi(inst, inst.A(), Z, sigma, thresholds, X).value;
}

Matrix ssnal_phi_gradient(const ProblemInstance& inst, const Matrix& Z, double sigma,
                          const Matrix& X) {
  const Vector thresholds = inst.penalty_radii() / sigma;
  PhiEval e = eval_phi(inst, inst.A(), Z, sigma, thresholds, X);
  return phi_gradient_from(inst, inst.A(), sigma, X, e);
}

Matrix ssnal_hessian_apply(const ProblemInstance& inst, const Matrix& Z, double sigma,
                           const Matrix& X, const Matrix& D) {
  const Vector thresholds = inst.penalty_radii() / sigma;
  PhiEval e = eval_phi(inst, inst.A(), Z, sigma, thresholds, X);
  auto J = edge_jacobians(inst, e.V, thresholds);
  return hessian_apply_from(inst, sigma, D, J);
}

// Outer loop: augmented Lagrangian in the multiplier Z with penalty sigma,
// updated as Z <- Pi_C(Z + sigma X B); sigma grows tenfold (capped at 1e6)
// whenever the primal-feasibility residual fails to halve. Inner loop:
// semismooth Newton on phi with directions from Jacobi-preconditioned CG and
// Armijo backtracking. The inner tolerance max(eps/10, 0.5^k) tightens with
// the outer iteration count.
Solution solve_ssnal(const ProblemInstance& inst, const SolverConfig& config,
                     const Solution* warm, SolveCache* cache) {
  (void)cache;  // nothing to share: the Newton systems change with sigma and Z
  config.validate();
  const auto t0 = detail::Clock::now();

  if (auto trivial = detail::trivial_solution(inst)) return std::move(*trivial);

  Matrix X, Z;
  detail::initial_point(inst, warm, X, Z);

  const double eps = config.epsilon;
  std::vector<TraceRow> trace;

  {
    auto s0 = detail::evaluate_gap(inst, X, Z);
    if (config.collect_trace)
      trace.push_back({0, s0.f_p, s0.f_d, s0.gap, detail::seconds_since(t0)});
    if (s0.accepts(config))
      return detail::finish(std::move(X), std::move(Z), s0, 0, true,
                            detail::seconds_since(t0), std::move(trace));
  }

  const Matrix& A = inst.A();
  const Vector radii = inst.penalty_radii();
  const Index d = inst.d(), n = inst.n();

  double sigma = config.ssnal_sigma0;
  double feas_prev = std::numeric_limits<double>::infinity();
  detail::BestIterate best;
  Index iterations_done = 0;

  const Index max_outer = config.resolved_max_iter();
  for (Index k = 1; k <= max_outer; ++k) {
    const double eps_k = std::max(eps / 10.0, std::pow(0.5, static_cast<double>(k)));
    const Vector thresholds = radii / sigma;

    PhiEval e = eval_phi(inst, A, Z, sigma, thresholds, X);
    for (Index j = 0; j < config.ssnal_newton_max; ++j) {
      Matrix G = phi_gradient_from(inst, A, sigma, X, e);
      const double gnorm = G.norm();
      if (gnorm <= eps_k) break;

      auto J = edge_jacobians(inst, e.V, thresholds);
      LinearOperator H(
          d,
          [&](const Matrix& D) { return hessian_apply_from(inst, sigma, D, J); },
          true, true);
      LinearOperator precond = LinearOperator::jacobi(hessian_diagonal(inst, sigma, J, d, n));
      const double cg_tol = std::min(0.1, std::sqrt(gnorm));
      PcgResult dir = pcg(H, -G, &precond, std::max(cg_tol, 1e-12), config.pcg_max_iter);

      Matrix D = std::move(dir.x);
      double descent = G.cwiseProduct(D).sum();
      if (!(descent < 0.0)) {  // inexact CG returned a non-descent direction
        D = -G;
        descent = -gnorm * gnorm;
      }

      double alpha = 1.0;
      PhiEval trial;
      for (int bt = 0; bt < 60; ++bt) {
        trial = eval_phi(inst, A, Z, sigma, thresholds, X + alpha * D);
        if (trial.value <= e.value + config.armijo_mu * alpha * descent) break;
        alpha *= config.backtrack_beta;
      }
      X += alpha * D;
      e = std::move(trial);
    }

    // Multiplier step. By the Moreau identity sigma*(V - P(V)) equals the
    // projection of Z + sigma X B onto the dual balls; both forms are
    // computed and must agree up to rounding at the scale of Z + sigma X B.
    const Matrix XB = inst.B.apply(X);
    {
      Matrix Zenv = sigma * (e.V - e.PV);
      Matrix Zsum = Z + sigma * XB;
      const double scale = 1.0 + Zsum.lpNorm<Eigen::Infinity>();
      project_columns_inplace(Zsum, radii, inst.norm);
      if ((Zenv - Zsum).lpNorm<Eigen::Infinity>() > 1e-10 * scale)
        throw std::runtime_error("ssnal: multiplier self-check failed");
      Z = std::move(Zsum);  // keep the exactly feasible form
    }

    auto s = detail::evaluate_gap(inst, X, Z);
    if (config.collect_trace)
      trace.push_back({k, s.f_p, s.f_d, s.gap, detail::seconds_since(t0)});
    if (s.accepts(config))
      return detail::finish(std::move(X), std::move(Z), s, k, true,
                            detail::seconds_since(t0), std::move(trace));
    best.offer(X, Z, s);

    const double feas_res = (XB - e.PV).norm() / (1.0 + XB.norm());
    if (feas_res > 0.5 * feas_prev) sigma = std::min(10.0 * sigma, 1e6);
    feas_prev = feas_res;

    iterations_done = k;
    if (config.time_limit && detail::seconds_since(t0) > *config.time_limit) break;
  }

  return detail::finish(std::move(best.X), std::move(best.Z), best.state, iterations_done,
                        false, detail::seconds_since(t0), std::move(trace));
}

}  // namespace cluspath
