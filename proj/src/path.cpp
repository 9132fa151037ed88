#include "cluspath/path.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cluspath {

const char* spacing_name(Spacing s) { return s == Spacing::linear ? "linear" : "geometric"; }

Spacing spacing_from_name(std::string_view name) {
  if (name == "linear") return Spacing::linear;
  if (name == "geometric") return Spacing::geometric;
  throw std::invalid_argument("unknown spacing '" + std::string(name) +
                              "' (expected linear or geometric)");
}

GammaSchedule make_schedule(double start, double end, Index count, Spacing spacing) {
  if (!(start > 0.0) || !(end > 0.0) || !std::isfinite(start) || !std::isfinite(end))
    throw std::invalid_argument("schedule endpoints must be positive and finite");
  if (count < 1) throw std::invalid_argument("schedule count must be >= 1");
  if (count > 1 && start == end)
    throw std::invalid_argument("schedule with count > 1 needs distinct endpoints");

  GammaSchedule s;
  s.start = start;
  s.end = end;
  s.count = count;
  s.spacing = spacing;

  if (count == 1) {
    s.values = {start};
    return s;
  }

  const double lo = std::min(start, end);
  const double hi = std::max(start, end);
  s.values.resize(static_cast<size_t>(count));
  if (spacing == Spacing::linear) {
    for (Index t = 0; t < count; ++t)
      s.values[static_cast<size_t>(t)] =
          lo + (hi - lo) * static_cast<double>(t) / static_cast<double>(count - 1);
  } else {
    const double log_ratio = std::log(hi / lo) / static_cast<double>(count - 1);
    for (Index t = 0; t < count; ++t)
      s.values[static_cast<size_t>(t)] = lo * std::exp(static_cast<double>(t) * log_ratio);
  }
  s.values.front() = lo;
  s.values.back() = hi;

  for (size_t t = 1; t < s.values.size(); ++t)
    if (!(s.values[t] > s.values[t - 1]))
      throw std::invalid_argument("schedule endpoints too close: values are not strictly increasing");
  return s;
}

ClusterAssignment extract_clusters(const Matrix& X, const WeightedGraph& graph,
                                   double fuse_tol) {
  if (X.cols() != graph.nodes())
    throw std::invalid_argument("extract_clusters: X column count != node count");
  if (!(fuse_tol > 0.0))
    throw std::invalid_argument("extract_clusters: fuse_tol must be positive");

  double max_norm = 0.0;
  for (Index i = 0; i < X.cols(); ++i) max_norm = std::max(max_norm, X.col(i).norm());
  const double threshold = fuse_tol * (1.0 + max_norm);

  std::vector<Edge> fused;
  for (const Edge& e : graph.edges())
    if ((X.col(e.i) - X.col(e.j)).norm() <= threshold) fused.push_back(Edge{e.i, e.j, 1.0});

  WeightedGraph sub(graph.nodes(), std::move(fused));
  ClusterAssignment out;
  out.labels = connected_components(sub);
  out.K = component_count(out.labels);

  out.centroids = Matrix::Zero(X.rows(), out.K);
  std::vector<Index> sizes(static_cast<size_t>(out.K), 0);
  for (Index i = 0; i < X.cols(); ++i) {
    out.centroids.col(out.labels[static_cast<size_t>(i)]) += X.col(i);
    ++sizes[static_cast<size_t>(out.labels[static_cast<size_t>(i)])];
  }
  for (Index c = 0; c < out.K; ++c)
    out.centroids.col(c) /= static_cast<double>(sizes[static_cast<size_t>(c)]);
  return out;
}

std::pair<Vector, Vector> two_point_closed_form(const Vector& a1, const Vector& a2,
                                                double w, double gamma) {
  if (a1.size() != a2.size())
    throw std::invalid_argument("two_point_closed_form: dimension mismatch");
  if (!(w > 0.0)) throw std::invalid_argument("two_point_closed_form: weight must be positive");
  if (!(gamma >= 0.0)) throw std::invalid_argument("two_point_closed_form: gamma must be >= 0");

  const Vector c = a1 - a2;
  const double nc = c.norm();
  if (nc == 0.0) return {a1, a2};
  const double s = std::min(2.0 * gamma * w / nc, 1.0);
  return {a1 - 0.5 * s * c, a2 + 0.5 * s * c};
}

bool PathResult::all_converged() const {
  return std::all_of(stats.begin(), stats.end(),
                     [](const TerminationRecord& t) { return t.converged; });
}

PathResult run_path(const DataMatrix& data, const WeightedGraph& graph, PenaltyNorm norm,
                    const GammaSchedule& schedule, const SolverConfig& config,
                    const PathOptions& options) {
  if (schedule.values.empty()) throw std::invalid_argument("run_path: empty schedule");
  if (data.n() != graph.nodes())
    throw std::invalid_argument("run_path: graph size does not match the data");
  if (options.require_connected) {
    auto comps = connected_components(graph);
    Index c = component_count(comps);
    if (c > 1)
      throw std::runtime_error("run_path: graph has " + std::to_string(c) +
                               " connected components; full fusion is unreachable");
  }

  PathResult result;
  result.schedule = schedule;
  result.solver = config;
  // reserved up front so the warm-start pointer into the vector stays valid
  result.solutions.reserve(schedule.values.size());

  SolveCache cache;
  const Solution* warm = nullptr;
  for (double gamma : schedule.values) {
    ProblemInstance inst(data, graph, gamma, norm);
    Solution sol = solve(inst, config, warm, &cache);
    result.assignments.push_back(extract_clusters(sol.X, graph, options.fuse_tol));
    result.stats.push_back(sol.termination);
    result.solutions.push_back(std::move(sol));
    // next solve continues from this one, converged or not
    warm = options.warm_start ? &result.solutions.back() : nullptr;
  }
  return result;
}

std::string path_result_to_json(const PathResult& result, int indent) {
  nlohmann::json j;
  j["schedule"] = {{"start", result.schedule.start},
                   {"end", result.schedule.end},
                   {"count", result.schedule.count},
                   {"spacing", spacing_name(result.schedule.spacing)},
                   {"values", result.schedule.values}};
  nlohmann::json solver = {{"algorithm", algorithm_name(result.solver.algorithm)},
                           {"epsilon", result.solver.epsilon},
                           {"kkt_factor", result.solver.kkt_factor},
                           {"max_iter", result.solver.resolved_max_iter()},
                           {"admm_rho", result.solver.admm_rho},
                           {"ssnal_sigma0", result.solver.ssnal_sigma0},
                           {"ama_step_safety", result.solver.ama_step_safety}};
  if (result.solver.time_limit) solver["time_limit"] = *result.solver.time_limit;
  j["solver"] = std::move(solver);

  nlohmann::json per_gamma = nlohmann::json::array();
  for (size_t t = 0; t < result.stats.size(); ++t) {
    const TerminationRecord& rec = result.stats[t];
    const ClusterAssignment& asg = result.assignments[t];
    per_gamma.push_back({{"gamma", result.schedule.values[t]},
                         {"converged", rec.converged},
                         {"iterations", rec.iterations},
                         {"gap", rec.gap},
                         {"f_p", rec.f_primal},
                         {"f_d", rec.f_dual},
                         {"wall_time_s", rec.wall_time},
                         {"labels", asg.labels},
                         {"K", asg.K}});
  }
  j["per_gamma"] = std::move(per_gamma);
  return j.dump(indent);
}

}  // namespace cluspath
