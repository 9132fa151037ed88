#include "cluspath/graph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cluspath {

DataMatrix make_data_matrix(Matrix values, std::vector<std::string> feature_names) {
  if (values.rows() < 1 || values.cols() < 1)
    throw std::invalid_argument("data matrix must have at least one feature and one sample");
  if (!values.allFinite())
    throw std::invalid_argument("data matrix contains non-finite entries");
  if (!feature_names.empty()) {
    if (static_cast<Index>(feature_names.size()) != values.rows())
      throw std::invalid_argument("feature_names size does not match feature count");
    for (const auto& name : feature_names)
      if (name.empty())
        throw std::invalid_argument("feature_names entries must be non-empty");
  }
  return DataMatrix{std::move(values), std::move(feature_names)};
}

WeightedGraph::WeightedGraph(Index n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  if (n_ < 0) throw std::invalid_argument("graph node count must be nonnegative");
  std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  });
  degree_.assign(static_cast<size_t>(n_), 0);
  for (size_t l = 0; l < edges_.size(); ++l) {
    const Edge& e = edges_[l];
    if (e.i < 0 || e.j < 0 || e.i >= n_ || e.j >= n_)
      throw std::invalid_argument("edge endpoint out of range");
    if (e.i >= e.j)
      throw std::invalid_argument("edges must satisfy i < j");
    if (!(e.w > 0.0) || !std::isfinite(e.w))
      throw std::invalid_argument("edge weights must be positive and finite");
    if (l > 0 && edges_[l - 1].i == e.i && edges_[l - 1].j == e.j)
      throw std::invalid_argument("duplicate edge (" + std::to_string(e.i) + ", " +
                                  std::to_string(e.j) + ")");
    ++degree_[static_cast<size_t>(e.i)];
    ++degree_[static_cast<size_t>(e.j)];
  }
}

std::optional<Index> WeightedGraph::find_edge(Index i, Index j) const {
  if (i > j) std::swap(i, j);
  Edge probe{i, j, 1.0};
  auto it = std::lower_bound(edges_.begin(), edges_.end(), probe,
                             [](const Edge& a, const Edge& b) {
                               return a.i != b.i ? a.i < b.i : a.j < b.j;
                             });
  if (it == edges_.end() || it->i != i || it->j != j) return std::nullopt;
  return static_cast<Index>(it - edges_.begin());
}

Index WeightedGraph::degree(Index v) const {
  if (v < 0 || v >= n_) throw std::invalid_argument("node index out of range");
  return degree_[static_cast<size_t>(v)];
}

Index WeightedGraph::max_degree() const {
  Index best = 0;
  for (Index d : degree_) best = std::max(best, d);
  return best;
}

Vector WeightedGraph::weights() const {
  Vector w(edge_count());
  for (Index l = 0; l < edge_count(); ++l) w[l] = edges_[static_cast<size_t>(l)].w;
  return w;
}

WeightedGraph compute_knn_weights(const DataMatrix& data, Index k, double phi) {
  const Index n = data.n();
  if (!data.values.allFinite())
    throw std::invalid_argument("compute_knn_weights: non-finite data");
  if (k < 1 || k > n - 1)
    throw std::invalid_argument("compute_knn_weights: k must satisfy 1 <= k <= n-1, got k=" +
                                std::to_string(k) + " with n=" + std::to_string(n));
  if (!(phi >= 0.0) || !std::isfinite(phi))
    throw std::invalid_argument("compute_knn_weights: phi must be finite and nonnegative");

  const Matrix& A = data.values;
  std::vector<std::pair<Index, Index>> pairs;
  pairs.reserve(static_cast<size_t>(n) * static_cast<size_t>(k));

  std::vector<std::pair<double, Index>> cand;
  for (Index i = 0; i < n; ++i) {
    cand.clear();
    cand.reserve(static_cast<size_t>(n - 1));
    for (Index j = 0; j < n; ++j) {
      if (j == i) continue;
      cand.emplace_back((A.col(i) - A.col(j)).squaredNorm(), j);
    }
    // ties at the k-th neighbour break toward the smaller index
    std::partial_sort(cand.begin(), cand.begin() + k, cand.end());
    for (Index m = 0; m < k; ++m) {
      Index j = cand[static_cast<size_t>(m)].second;
      pairs.emplace_back(std::min(i, j), std::max(i, j));
    }
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (auto [i, j] : pairs) {
    double w = std::exp(-phi * (A.col(i) - A.col(j)).squaredNorm());
    if (w > 0.0) edges.push_back(Edge{i, j, w});  // underflowed weights are dropped
  }
  return WeightedGraph(n, std::move(edges));
}

Matrix IncidenceOperator::apply(const Matrix& X) const {
  Matrix out(X.rows(), edge_count());
  apply_into(X, out);
  return out;
}

void IncidenceOperator::apply_into(const Matrix& X, Matrix& out) const {
  if (X.cols() != nodes())
    throw std::invalid_argument("incidence apply: operand has " + std::to_string(X.cols()) +
                                " columns, graph has " + std::to_string(nodes()) + " nodes");
  out.resize(X.rows(), edge_count());
  const auto& edges = graph_->edges();
  for (Index l = 0; l < edge_count(); ++l) {
    const Edge& e = edges[static_cast<size_t>(l)];
    out.col(l) = X.col(e.i) - X.col(e.j);
  }
}

Matrix IncidenceOperator::apply_transpose(const Matrix& Z) const {
  Matrix out(Z.rows(), nodes());
  apply_transpose_into(Z, out);
  return out;
}

void IncidenceOperator::apply_transpose_into(const Matrix& Z, Matrix& out) const {
  if (Z.cols() != edge_count())
    throw std::invalid_argument("incidence adjoint: operand has " + std::to_string(Z.cols()) +
                                " columns, graph has " + std::to_string(edge_count()) + " edges");
  out.resize(Z.rows(), nodes());
  out.setZero();
  const auto& edges = graph_->edges();
  for (Index l = 0; l < edge_count(); ++l) {
    const Edge& e = edges[static_cast<size_t>(l)];
    out.col(e.i) += Z.col(l);
    out.col(e.j) -= Z.col(l);
  }
}

Eigen::SparseMatrix<double> IncidenceOperator::laplacian() const {
  const Index n = nodes();
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<size_t>(4 * edge_count()));
  for (const Edge& e : graph_->edges()) {
    trip.emplace_back(e.i, e.i, 1.0);
    trip.emplace_back(e.j, e.j, 1.0);
    trip.emplace_back(e.i, e.j, -1.0);
    trip.emplace_back(e.j, e.i, -1.0);
  }
  Eigen::SparseMatrix<double> L(n, n);
  L.setFromTriplets(trip.begin(), trip.end());
  return L;
}

std::vector<Index> connected_components(const WeightedGraph& g) {
  const Index n = g.nodes();
  std::vector<std::vector<Index>> adj(static_cast<size_t>(n));
  for (const Edge& e : g.edges()) {
    adj[static_cast<size_t>(e.i)].push_back(e.j);
    adj[static_cast<size_t>(e.j)].push_back(e.i);
  }
  std::vector<Index> label(static_cast<size_t>(n), -1);
  std::vector<Index> stack;
  Index next = 0;
  for (Index s = 0; s < n; ++s) {
    if (label[static_cast<size_t>(s)] != -1) continue;
    label[static_cast<size_t>(s)] = next;
    stack.assign(1, s);
    while (!stack.empty()) {
      Index v = stack.back();
      stack.pop_back();
      for (Index u : adj[static_cast<size_t>(v)]) {
        if (label[static_cast<size_t>(u)] == -1) {
          label[static_cast<size_t>(u)] = next;
          stack.push_back(u);
        }
      }
    }
    ++next;
  }
  return label;
}

Index component_count(const std::vector<Index>& labels) {
  Index best = -1;
  for (Index l : labels) best = std::max(best, l);
  return best + 1;
}

}  // namespace cluspath
