#include "cluspath/prox.hpp"

#include <cmath>
#include <stdexcept>

namespace cluspath {

namespace {

void check_threshold(double t, const char* what) {
  if (!(t >= 0.0) || !std::isfinite(t))
    throw std::invalid_argument(std::string(what) + ": threshold must be finite and >= 0");
}

}  // namespace

PenaltyNorm penalty_norm_from_q(int q) {
  if (q == 1) return PenaltyNorm::l1;
  if (q == 2) return PenaltyNorm::l2;
  throw std::invalid_argument("penalty norm exponent must be 1 or 2, got " + std::to_string(q));
}

int penalty_q(PenaltyNorm norm) { return norm == PenaltyNorm::l1 ? 1 : 2; }

double norm_value(const Vector& v, PenaltyNorm norm) {
  return norm == PenaltyNorm::l1 ? v.lpNorm<1>() : v.norm();
}

double dual_norm_value(const Vector& v, PenaltyNorm norm) {
  return norm == PenaltyNorm::l1 ? v.lpNorm<Eigen::Infinity>() : v.norm();
}

void prox_norm_into(Eigen::Ref<const Vector> v, double t, PenaltyNorm norm,
                    Eigen::Ref<Vector> out) {
  check_threshold(t, "prox_norm");
  if (norm == PenaltyNorm::l2) {
    const double nv = v.norm();
    if (nv <= t)
      out.setZero();
    else
      out = (1.0 - t / nv) * v;
  } else {
    out = v.array().sign() * (v.array().abs() - t).max(0.0);
  }
}

Vector prox_norm(const Vector& v, double t, PenaltyNorm norm) {
  Vector out(v.size());
  prox_norm_into(v, t, norm, out);
  return out;
}

void project_dual_ball_into(Eigen::Ref<const Vector> z, double r, PenaltyNorm norm,
                            Eigen::Ref<Vector> out) {
  check_threshold(r, "project_dual_ball");
  if (norm == PenaltyNorm::l2) {
    const double nz = z.norm();
    if (nz <= r)
      out = z;
    else
      out = (r / nz) * z;
  } else {
    out = z.array().min(r).max(-r);  // dual of l1 is the sup-norm ball
  }
}

Vector project_dual_ball(const Vector& z, double r, PenaltyNorm norm) {
  Vector out(z.size());
  project_dual_ball_into(z, r, norm, out);
  return out;
}

void prox_columns_into(const Matrix& V, const Vector& thresholds, PenaltyNorm norm,
                       Matrix& out) {
  if (thresholds.size() != V.cols())
    throw std::invalid_argument("prox_columns: one threshold per column required");
  out.resize(V.rows(), V.cols());
  for (Index l = 0; l < V.cols(); ++l)
    prox_norm_into(V.col(l), thresholds[l], norm, out.col(l));
}

Matrix project_columns(const Matrix& Z, const Vector& radii, PenaltyNorm norm) {
  Matrix out = Z;
  project_columns_inplace(out, radii, norm);
  return out;
}

void project_columns_inplace(Matrix& Z, const Vector& radii, PenaltyNorm norm) {
  if (radii.size() != Z.cols())
    throw std::invalid_argument("project_columns: one radius per column required");
  for (Index l = 0; l < Z.cols(); ++l)
    project_dual_ball_into(Z.col(l), radii[l], norm, Z.col(l));
}

Vector ProxJacobian::apply(const Vector& w) const {
  if (norm == PenaltyNorm::l2) {
    Vector out = alpha * w;
    if (beta != 0.0) out += (beta * direction.dot(w)) * direction;
    return out;
  }
  if (active.size() != w.size())
    throw std::invalid_argument("ProxJacobian::apply: size mismatch");
  return active.select(w.array(), 0.0).matrix();
}

double ProxJacobian::diag(Index r) const {
  if (norm == PenaltyNorm::l2)
    return alpha + (beta != 0.0 ? beta * direction[r] * direction[r] : 0.0);
  return active[r] ? 1.0 : 0.0;
}

ProxJacobian prox_jacobian(const Vector& v, double t, PenaltyNorm norm) {
  check_threshold(t, "prox_jacobian");
  ProxJacobian J;
  J.norm = norm;
  if (norm == PenaltyNorm::l2) {
    if (t == 0.0) {
      J.alpha = 1.0;  // prox is the identity
      return J;
    }
    const double nv = v.norm();
    if (nv > t) {
      J.alpha = 1.0 - t / nv;
      J.beta = t / (nv * nv * nv);
      J.direction = v;
    }
    // ||v|| <= t (kink included): the zero map
  } else {
    J.active = v.array().abs() > t;  // |v_r| == t counts as inactive
  }
  return J;
}

double moreau_check(const Vector& v, double t, PenaltyNorm norm) {
  Vector p = prox_norm(v, t, norm);
  Vector q = project_dual_ball(v, t, norm);
  return (p + q - v).lpNorm<Eigen::Infinity>();
}

}  // namespace cluspath
