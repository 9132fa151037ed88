#pragma once

#include "cluspath/types.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include <functional>
#include <memory>

namespace cluspath {

/// Factor-once / solve-many sparse Cholesky of M = I + rho * L, with L a
/// symmetric positive semidefinite sparse matrix (a graph Laplacian in this
/// codebase). Uses a fill-reducing AMD ordering; handles are cheap to copy
/// and solves are reentrant.
class CholeskyFactor {
 public:
  CholeskyFactor(const Eigen::SparseMatrix<double>& L, double rho);

  Index size() const { return size_; }
  double rho() const { return rho_; }

  /// M^{-1} * rhs for one or many right-hand-side columns.
  Matrix solve(const Matrix& rhs) const;

 private:
  using Factor = Eigen::SimplicialLLT<Eigen::SparseMatrix<double>>;
  std::shared_ptr<const Factor> factor_;
  Index size_ = 0;
  double rho_ = 0.0;
};

/// A (possibly matrix-free) linear map together with its structural flags.
/// The operand is a rows() x k block; for k > 1 the block is treated as one
/// element of the Frobenius inner-product space. Flags are declarative --
/// tests probe symmetry, they are not verified on construction.
class LinearOperator {
 public:
  using ApplyFn = std::function<Matrix(const Matrix&)>;

  LinearOperator(Index rows, ApplyFn fn, bool symmetric = true,
                 bool positive_definite = false);

  Index rows() const { return rows_; }
  bool symmetric() const { return symmetric_; }
  bool positive_definite() const { return positive_definite_; }
  Matrix apply(const Matrix& x) const;

  static LinearOperator identity(Index n);
  static LinearOperator dense(Matrix M, bool positive_definite = false);
  static LinearOperator sparse(Eigen::SparseMatrix<double> M,
                               bool positive_definite = false);
  /// Jacobi-style preconditioner application z = r ./ diag. All entries of
  /// diag must be positive. The matrix overload divides entrywise, matching
  /// operators whose operand is a full matrix block.
  static LinearOperator jacobi(Vector diag);
  static LinearOperator jacobi(Matrix diag);

 private:
  Index rows_;
  ApplyFn fn_;
  bool symmetric_;
  bool positive_definite_;
};

struct PcgResult {
  Matrix x;
  Index iterations = 0;
  double residual = 0.0;  // relative, recomputed from op at exit
  bool converged = false;
};

/// Preconditioned conjugate gradients from x0 = 0 in the Frobenius geometry.
/// A single-column rhs stops on ||r||_2 <= tol * ||b||_2; a multi-column
/// block shares one Krylov sequence and stops on the max relative residual
/// over rows (the rows of a Newton system share one operator here).
/// Passing preconditioner = nullptr means identity. Throws when a
/// non-positive curvature p'Ap <= 0 is detected.
PcgResult pcg(const LinearOperator& op, const Matrix& rhs,
              const LinearOperator* preconditioner, double tol, Index max_iter);

/// Largest eigenvalue of a symmetric PSD operator by power iteration with a
/// deterministic start (normalized all-ones, perturbed if annihilated).
/// Returns 0 for the zero operator.
double power_iteration(const LinearOperator& op, double tol = 1e-9,
                       Index max_iter = 10000);

}  // namespace cluspath
