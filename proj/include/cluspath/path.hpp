#pragma once

#include "cluspath/solvers.hpp"

#include <string>
#include <utility>
#include <vector>

namespace cluspath {

enum class Spacing { linear, geometric };

const char* spacing_name(Spacing s);
Spacing spacing_from_name(std::string_view name);

/// Strictly increasing penalty levels spanning [min(start,end), max(start,end)]
/// inclusive. Endpoints must be positive; count = 1 yields just {start}.
struct GammaSchedule {
  std::vector<double> values;
  double start = 0.0;
  double end = 0.0;
  Index count = 0;
  Spacing spacing = Spacing::geometric;
};

GammaSchedule make_schedule(double start, double end, Index count, Spacing spacing);

/// Labels in order of first appearance, cluster count K and the d x K matrix
/// of cluster centroids (means of member columns).
struct ClusterAssignment {
  std::vector<Index> labels;
  Index K = 0;
  Matrix centroids;
};

/// Clusters = connected components of the subgraph of edges whose solution
/// columns have fused: ||x_i - x_j||_2 <= fuse_tol * (1 + max_i ||x_i||_2).
/// The default tolerance sits well above the iterate error of a solve at the
/// default epsilon, so borderline pairs resolve the same way regardless of
/// which solver produced X; exact fusions land many orders below it.
ClusterAssignment extract_clusters(const Matrix& X, const WeightedGraph& graph,
                                   double fuse_tol = 1e-3);

/// Exact minimizer for two points joined by one edge of weight w under the
/// q = 2 penalty: with c = a1 - a2 and s = min(2*gamma*w / ||c||, 1),
///   x1 = a1 - s*c/2,  x2 = a2 + s*c/2.
/// The points fuse exactly when gamma*w >= ||c||/2.
std::pair<Vector, Vector> two_point_closed_form(const Vector& a1, const Vector& a2,
                                                double w, double gamma);

struct PathOptions {
  bool warm_start = true;
  bool require_connected = false;  // error out before solving when disconnected
  double fuse_tol = 1e-3;
};

struct PathResult {
  GammaSchedule schedule;
  std::vector<Solution> solutions;
  std::vector<ClusterAssignment> assignments;
  std::vector<TerminationRecord> stats;
  SolverConfig solver;

  bool all_converged() const;
};

/// Sweeps the schedule in increasing order, warm-starting each solve from the
/// previous solution (dual re-projected onto the new radii). A solve that
/// fails to converge is recorded as such and the sweep continues from its
/// best iterate.
PathResult run_path(const DataMatrix& data, const WeightedGraph& graph,
                    PenaltyNorm norm, const GammaSchedule& schedule,
                    const SolverConfig& config, const PathOptions& options = {});

/// JSON document with the schedule, the solver configuration and one record
/// per gamma: {gamma, converged, iterations, gap, f_p, f_d, wall_time_s,
/// labels, K}.
std::string path_result_to_json(const PathResult& result, int indent = 2);

}  // namespace cluspath
