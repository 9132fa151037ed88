#pragma once

#include "cluspath/path.hpp"
#include "cluspath/solvers.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cluspath {

/// One benchmark workload: a dataset, its graph and a gamma schedule. Every
/// schedule entry counts as one problem.
struct BenchTask {
  const DataMatrix* data = nullptr;
  const WeightedGraph* graph = nullptr;
  PenaltyNorm norm = PenaltyNorm::l2;
  GammaSchedule schedule;
};

struct MethodCurve {
  Algorithm method;
  /// (tau, problems solved within tau * T), tau = 1..tau_max.
  std::vector<std::pair<double, Index>> points;
  Index solved_total = 0;
  double full_time = 0.0;  // uncapped full-sweep wall time
};

struct PerfProfile {
  double baseline_T = 0.0;
  Index problem_count = 0;
  std::vector<MethodCurve> curves;
};

struct BenchOptions {
  double epsilon = 1e-6;
  Index tau_max = 10;
  /// Replaces the 10 * T budget of the capped pass (testing hook; 0 means no
  /// problem may start).
  std::optional<double> cutoff_override;
  SolverConfig base_config;  // algorithm field is overridden per method
  bool warm_start = true;
};

/// Two passes per method: an uncapped sweep of every task to establish the
/// baseline T (the best-performing method's full time, ranked by problems
/// solved then speed), then a capped sweep with wall-clock budget 10 * T from
/// which the profile curves are read. Throws when no method solves a single
/// problem in the first pass.
PerfProfile run_bench(const std::vector<BenchTask>& tasks,
                      const std::vector<Algorithm>& methods,
                      const BenchOptions& options);

/// CSV rendition: header "method,tau,solved", one row per curve point.
std::string perf_profile_csv(const PerfProfile& profile);

}  // namespace cluspath
