#pragma once

#include "cluspath/types.hpp"

namespace cluspath {

/// Fusion penalty norm: q = 1 or q = 2. The dual exponents are inf and 2.
enum class PenaltyNorm { l1, l2 };

/// Accepts exactly 1 or 2; anything else is rejected.
PenaltyNorm penalty_norm_from_q(int q);
int penalty_q(PenaltyNorm norm);

double norm_value(const Vector& v, PenaltyNorm norm);       // ||v||_q
double dual_norm_value(const Vector& v, PenaltyNorm norm);  // ||v||_q'

/// prox_{t*||.||_q}(v): block soft-threshold for q=2, componentwise
/// soft-threshold for q=1. Requires t >= 0.
Vector prox_norm(const Vector& v, double t, PenaltyNorm norm);
void prox_norm_into(Eigen::Ref<const Vector> v, double t, PenaltyNorm norm,
                    Eigen::Ref<Vector> out);

/// Euclidean projection onto the dual-norm ball of radius r >= 0.
Vector project_dual_ball(const Vector& z, double r, PenaltyNorm norm);
void project_dual_ball_into(Eigen::Ref<const Vector> z, double r, PenaltyNorm norm,
                            Eigen::Ref<Vector> out);

/// Columnwise helpers used by the solvers: thresholds/radii are per column.
void prox_columns_into(const Matrix& V, const Vector& thresholds, PenaltyNorm norm,
                       Matrix& out);
Matrix project_columns(const Matrix& Z, const Vector& radii, PenaltyNorm norm);
void project_columns_inplace(Matrix& Z, const Vector& radii, PenaltyNorm norm);

/// Element of the Clarke generalized Jacobian of v -> prox_norm(v, t),
/// stored structurally. For q=2 it is alpha*I + beta*v*v^T; for q=1 a 0/1
/// diagonal. At kinks (||v||_2 == t, or |v_r| == t componentwise) the
/// zero-map element is chosen.
struct ProxJacobian {
  PenaltyNorm norm = PenaltyNorm::l2;
  double alpha = 0.0;
  double beta = 0.0;
  Vector direction;  // q=2 rank-one direction (= v); empty when beta == 0
  Eigen::Array<bool, Eigen::Dynamic, 1> active;  // q=1 mask

  Vector apply(const Vector& w) const;
  double diag(Index r) const;
};

ProxJacobian prox_jacobian(const Vector& v, double t, PenaltyNorm norm);

/// Max-norm residual of the Moreau identity
///   prox_norm(v, t) + project_dual_ball(v, t) - v,
/// which is zero in exact arithmetic.
double moreau_check(const Vector& v, double t, PenaltyNorm norm);

}  // namespace cluspath
