#pragma once

#include "cluspath/types.hpp"

#include <Eigen/SparseCore>

#include <optional>
#include <vector>

namespace cluspath {

/// One undirected edge (i, j) with i < j and weight w > 0. Each unordered
/// pair is stored exactly once, which encodes the symmetric weight w_ij.
struct Edge {
  Index i = 0;
  Index j = 0;
  double w = 0.0;
};

/// Sparse symmetric weight support over n nodes. Edges are kept sorted
/// lexicographically by (i, j), so the position of an edge -- and with it the
/// column order of the incidence operator -- is deterministic.
class WeightedGraph {
 public:
  WeightedGraph() = default;

  /// Takes an arbitrary-order edge list, sorts it and validates:
  /// 0 <= i < j < n, w > 0 and finite, no duplicate pairs.
  WeightedGraph(Index n, std::vector<Edge> edges);

  Index nodes() const { return n_; }
  Index edge_count() const { return static_cast<Index>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(Index l) const { return edges_.at(static_cast<size_t>(l)); }

  /// Position of edge (i, j) in the sorted list; accepts either endpoint
  /// order. Empty when the pair is not present.
  std::optional<Index> find_edge(Index i, Index j) const;

  /// Number of incident edges.
  Index degree(Index v) const;
  Index max_degree() const;

  /// Edge weights in list order.
  Vector weights() const;

 private:
  Index n_ = 0;
  std::vector<Edge> edges_;
  std::vector<Index> degree_;
};

/// Builds the symmetrized k-nearest-neighbour graph of the samples with
/// Gaussian weights w_ij = exp(-phi * ||a_i - a_j||_2^2). The union of the
/// directed k-NN relations is taken, ties at the k-th neighbour break toward
/// the smaller index, and weights that underflow to zero are dropped.
/// Requires 1 <= k <= n-1 and phi >= 0.
WeightedGraph compute_knn_weights(const DataMatrix& data, Index k, double phi);

/// The node-by-edge incidence map B with one column e_i - e_j per edge.
/// Applications run in O(d * |E|); B is never materialized.
class IncidenceOperator {
 public:
  explicit IncidenceOperator(const WeightedGraph& g) : graph_(&g) {}

  Index nodes() const { return graph_->nodes(); }
  Index edge_count() const { return graph_->edge_count(); }
  const WeightedGraph& graph() const { return *graph_; }

  /// X * B: maps d x n to the d x |E| matrix of column differences
  /// x_i - x_j, one column per edge.
  Matrix apply(const Matrix& X) const;
  void apply_into(const Matrix& X, Matrix& out) const;

  /// Z * B^T: maps d x |E| back to d x n; the adjoint of apply under the
  /// Frobenius inner product.
  Matrix apply_transpose(const Matrix& Z) const;
  void apply_transpose_into(const Matrix& Z, Matrix& out) const;

  /// B * B^T, the (unweighted) graph Laplacian: degree on the diagonal,
  /// -1 per edge. Weights enter the model through penalty radii, not here.
  Eigen::SparseMatrix<double> laplacian() const;

 private:
  const WeightedGraph* graph_;
};

/// Component labels in order of first appearance: node 0 always gets label 0,
/// and a node's label never exceeds its index.
std::vector<Index> connected_components(const WeightedGraph& g);

Index component_count(const std::vector<Index>& labels);

}  // namespace cluspath
