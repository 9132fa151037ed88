#include "cluspath/cli.hpp"

#include "cluspath/bench.hpp"
#include "cluspath/io.hpp"
#include "cluspath/manifest.hpp"
#include "cluspath/path.hpp"
#include "cluspath/svg.hpp"

#include "CLI11.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace cluspath {

namespace {

std::string fmt_g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string trim(const std::string& s) {
  const char* ws = " \t";
  const auto first = s.find_first_not_of(ws);
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(ws);
  return s.substr(first, last - first + 1);
}

double parse_coord(const std::string& tok, const std::string& text) {
  const std::string t = trim(tok);
  double v = 0.0;
  const char* end = t.data() + t.size();
  auto [p, ec] = std::from_chars(t.data(), end, v);
  if (t.empty() || ec != std::errc() || p != end)
    throw std::invalid_argument("bad center coordinate '" + tok + "' in '" + text + "'");
  return v;
}

// "x,y;x,y;..." -> one vector per ';' group; all groups must share a dimension.
std::vector<Vector> parse_centers(const std::string& text) {
  std::vector<Vector> centers;
  std::stringstream groups(text);
  std::string group;
  while (std::getline(groups, group, ';')) {
    std::vector<double> coords;
    std::stringstream fields(group);
    std::string field;
    while (std::getline(fields, field, ',')) coords.push_back(parse_coord(field, text));
    if (coords.empty())
      throw std::invalid_argument("empty center in '" + text + "'");
    Vector c(static_cast<Index>(coords.size()));
    for (size_t i = 0; i < coords.size(); ++i) c[static_cast<Index>(i)] = coords[i];
    centers.push_back(std::move(c));
  }
  if (centers.empty()) throw std::invalid_argument("no centers in '" + text + "'");
  for (const Vector& c : centers)
    if (c.size() != centers.front().size())
      throw std::invalid_argument("centers of mixed dimension in '" + text + "'");
  return centers;
}

SampleOrientation orientation_from(const std::string& s) {
  if (s == "rows") return SampleOrientation::rows;
  if (s == "cols") return SampleOrientation::cols;
  throw std::invalid_argument("samples_as must be 'rows' or 'cols', got '" + s + "'");
}

SyntheticData make_synthetic(const RunManifest& m) {
  if (m.synth == "gaussian_mixture")
    return generate_gaussian_mixture(parse_centers(m.centers), m.spread, m.per_center,
                                     m.seed);
  if (m.synth == "two_moons") return generate_two_moons(m.moons_n, m.moons_noise, m.seed);
  throw std::invalid_argument("unknown synthetic spec '" + m.synth +
                              "' (gaussian_mixture or two_moons)");
}

DataMatrix make_input(const RunManifest& m) {
  if (!m.data_path.empty())
    return load_matrix(m.data_path, orientation_from(m.samples_as), m.header);
  return make_synthetic(m).data;
}

WeightedGraph make_graph(const DataMatrix& data, const RunManifest& m) {
  if (data.n() < 2)
    throw std::invalid_argument("need at least 2 samples, got " +
                                std::to_string(data.n()));
  const Index k = std::min(m.knn, data.n() - 1);
  WeightedGraph graph = compute_knn_weights(data, k, m.phi);
  const Index comps = component_count(connected_components(graph));
  if (comps > 1) {
    if (m.require_connected)
      throw std::runtime_error("k-NN graph has " + std::to_string(comps) +
                               " connected components (require_connected is set)");
    std::cerr << "warning: k-NN graph has " << comps
              << " components; clusters never merge across components\n";
  }
  return graph;
}

SolverConfig make_config(const RunManifest& m) {
  SolverConfig config;
  config.algorithm = algorithm_from_name(m.solver);
  config.epsilon = m.tol;
  config.max_iter = m.max_iter;
  if (m.time_limit > 0.0) config.time_limit = m.time_limit;
  config.admm_rho = m.admm_rho;
  config.ssnal_sigma0 = m.ssnal_sigma0;
  config.ama_step_safety = m.ama_safety;
  config.collect_trace = m.trace;
  config.validate();
  return config;
}

std::string output_file(const std::string& out_dir, const std::string& name) {
  return (std::filesystem::path(out_dir) / name).string();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

// `solve` is a one-entry path: gamma_override pins the schedule to a single
// value and forces the X dump.
int run_path_command(RunManifest m, const double* gamma_override) {
  if (gamma_override) {
    m.gamma_start = *gamma_override;
    m.gamma_end = *gamma_override;
    m.num_gammas = 1;
    m.save_x = true;
  }
  const DataMatrix data = make_input(m);
  const WeightedGraph graph = make_graph(data, m);
  const GammaSchedule schedule =
      make_schedule(m.gamma_start, m.gamma_end, m.num_gammas, spacing_from_name(m.spacing));
  const SolverConfig config = make_config(m);
  PathOptions options;
  options.warm_start = m.warm_start;

  const PathResult result =
      run_path(data, graph, penalty_norm_from_q(m.q), schedule, config, options);

  std::filesystem::create_directories(m.out_dir);
  write_text_file(output_file(m.out_dir, "result.json"), path_result_to_json(result) + "\n");
  m.save(output_file(m.out_dir, "manifest.txt"));
  if (m.export_graph) export_graph_csv(output_file(m.out_dir, "graph.csv"), graph);
  if (m.plot) write_path_svg(output_file(m.out_dir, "path.svg"), result, data);
  for (size_t t = 0; t < result.solutions.size(); ++t) {
    if (m.save_x)
      write_matrix_csv(output_file(m.out_dir, "X_" + std::to_string(t) + ".csv"),
                       result.solutions[t].X.transpose());
    if (m.trace) {
      std::string csv = "iter,f_p,f_d,gap,elapsed_s\n";
      for (const TraceRow& row : result.solutions[t].trace) {
        csv += std::to_string(row.iter) + ',' + format_double(row.f_p) + ',' +
               format_double(row.f_d) + ',' + format_double(row.gap) + ',' +
               format_double(row.elapsed_s) + '\n';
      }
      write_text_file(output_file(m.out_dir, "trace_" + std::to_string(t) + ".csv"), csv);
    }
  }

  Index failures = 0;
  for (size_t t = 0; t < result.stats.size(); ++t) {
    const TerminationRecord& st = result.stats[t];
    std::cout << "gamma=" << fmt_g(result.schedule.values[t])
              << "  K=" << result.assignments[t].K << "  iters=" << st.iterations
              << "  gap=" << fmt_g(st.gap) << (st.converged ? "" : "  [not converged]")
              << '\n';
    if (!st.converged) ++failures;
  }
  std::cout << "wrote " << output_file(m.out_dir, "result.json") << '\n';
  if (failures > 0) {
    std::cout << failures << " of " << result.stats.size()
              << " penalty levels did not converge\n";
    return 2;
  }
  return 0;
}

int run_bench_command(const RunManifest& m, const std::vector<std::string>& method_names,
                      Index tau_max, double cutoff) {
  const DataMatrix data = make_input(m);
  const WeightedGraph graph = make_graph(data, m);
  BenchTask task;
  task.data = &data;
  task.graph = &graph;
  task.norm = penalty_norm_from_q(m.q);
  task.schedule =
      make_schedule(m.gamma_start, m.gamma_end, m.num_gammas, spacing_from_name(m.spacing));

  std::vector<Algorithm> methods;
  for (const std::string& name : method_names) methods.push_back(algorithm_from_name(name));

  BenchOptions options;
  options.epsilon = m.tol;
  options.tau_max = tau_max;
  if (cutoff >= 0.0) options.cutoff_override = cutoff;
  options.base_config = make_config(m);
  options.warm_start = m.warm_start;

  const PerfProfile profile = run_bench({task}, methods, options);

  std::filesystem::create_directories(m.out_dir);
  write_text_file(output_file(m.out_dir, "profile.csv"), perf_profile_csv(profile));
  m.save(output_file(m.out_dir, "manifest.txt"));

  std::cout << "baseline T=" << fmt_g(profile.baseline_T) << "s over "
            << profile.problem_count << " problems\n";
  bool all_solved = true;
  for (const MethodCurve& curve : profile.curves) {
    std::cout << algorithm_name(curve.method) << ": solved " << curve.solved_total << '/'
              << profile.problem_count << " *(" << curve.solved_total << "), full sweep "
              << fmt_g(curve.full_time) << "s\n";
    if (curve.solved_total != profile.problem_count) all_solved = false;
  }
  std::cout << "wrote " << output_file(m.out_dir, "profile.csv") << '\n';
  return all_solved ? 0 : 2;
}

int run_synth_command(const RunManifest& m, const std::string& out,
                      const std::string& labels_out) {
  const SyntheticData synth = make_synthetic(m);
  write_matrix_csv(out, synth.data.values.transpose());
  if (!labels_out.empty()) {
    std::string text;
    for (Index label : synth.labels) text += std::to_string(label) + '\n';
    write_text_file(labels_out, text);
  }
  std::cout << "wrote " << synth.data.n() << " samples of dimension " << synth.data.d()
            << " to " << out << '\n';
  return 0;
}

}  // namespace

int main_cli(int argc, const char* const* argv) {
  try {
    RunManifest m;
    // The manifest file loads first so explicit flags always win; CLI11 only
    // touches a bound field when its flag is actually present.
    for (int i = 1; i < argc; ++i) {
      const std::string arg = argv[i];
      if (arg == "--manifest" && i + 1 < argc) {
        m = RunManifest::load(argv[i + 1]);
        break;
      }
      if (arg.rfind("--manifest=", 0) == 0) {
        m = RunManifest::load(arg.substr(std::string("--manifest=").size()));
        break;
      }
    }

    double gamma = 0.0;
    std::string manifest_path;
    std::vector<std::string> method_names = {"ssnal", "admm", "ama"};
    Index tau_max = 10;
    double cutoff = -1.0;
    std::string synth_out = "synth.csv";
    std::string labels_out;

    CLI::App app{"convex clustering: solve fused-penalty clustering problems over a "
                 "penalty path, benchmark the solvers and generate synthetic data"};
    app.set_help_all_flag("--help-all", "print help for every subcommand");
    app.require_subcommand(1);

    auto add_synth_flags = [&](CLI::App* cmd) {
      cmd->add_option("--spec", m.synth, "synthetic generator when no --data is given")
          ->check(CLI::IsMember({"gaussian_mixture", "two_moons"}));
      cmd->add_option("--centers", m.centers, "mixture centers as 'x,y;x,y;...'");
      cmd->add_option("--spread", m.spread, "mixture noise standard deviation");
      cmd->add_option("--per-center", m.per_center, "samples per mixture center");
      cmd->add_option("--n", m.moons_n, "two-moons sample count");
      cmd->add_option("--noise", m.moons_noise, "two-moons noise standard deviation");
      cmd->add_option("--seed", m.seed, "seed for synthetic data");
    };
    auto add_run_flags = [&](CLI::App* cmd) {
      cmd->add_option("--manifest", manifest_path,
                      "key=value manifest file loaded before the flags");
      cmd->add_option("--data", m.data_path,
                      "numeric CSV / whitespace table; omit to use synthetic data");
      cmd->add_option("--samples-as", m.samples_as, "file rows or columns are samples")
          ->check(CLI::IsMember({"rows", "cols"}));
      cmd->add_flag("--header,!--no-header", m.header, "skip one header line in --data");
      add_synth_flags(cmd);
      cmd->add_option("--knn", m.knn, "neighbours per sample (capped at n-1)");
      cmd->add_option("--phi", m.phi, "Gaussian weight decay exp(-phi*dist^2)");
      cmd->add_flag("--require-connected,!--no-require-connected", m.require_connected,
                    "error out when the k-NN graph is disconnected");
      cmd->add_option("--q", m.q, "fusion norm: 2 (groupwise) or 1 (componentwise)")
          ->check(CLI::IsMember({1, 2}));
      cmd->add_option("--gamma-start", m.gamma_start, "first penalty level");
      cmd->add_option("--gamma-end", m.gamma_end, "last penalty level");
      cmd->add_option("--num-gammas", m.num_gammas, "penalty levels in the schedule");
      cmd->add_option("--spacing", m.spacing, "schedule spacing")
          ->check(CLI::IsMember({"linear", "geometric"}));
      cmd->add_option("--solver", m.solver, "ssnal, admm or ama")
          ->check(CLI::IsMember({"ssnal", "admm", "ama"}));
      cmd->add_option("--tol", m.tol, "relative duality-gap tolerance");
      cmd->add_option("--max-iter", m.max_iter, "iteration cap (0 = solver default)");
      cmd->add_option("--time-limit", m.time_limit, "per-solve seconds (0 = none)");
      cmd->add_flag("--warm-start,!--no-warm-start", m.warm_start,
                    "start each solve from the previous penalty level");
      cmd->add_option("--out-dir", m.out_dir, "output directory");
      cmd->add_flag("--plot,!--no-plot", m.plot, "render the clustering path to path.svg");
      cmd->add_flag("--save-x,!--no-save-x", m.save_x, "dump X_<i>.csv per penalty level");
      cmd->add_flag("--trace,!--no-trace", m.trace, "dump trace_<i>.csv per penalty level");
      cmd->add_flag("--export-graph,!--no-export-graph", m.export_graph,
                    "dump the weighted graph to graph.csv");
    };

    CLI::App* solve_cmd = app.add_subcommand("solve", "solve one penalty level");
    add_run_flags(solve_cmd);
    solve_cmd->add_option("--gamma", gamma, "penalty level")->required();

    CLI::App* path_cmd =
        app.add_subcommand("path", "sweep the penalty schedule and extract clusters");
    add_run_flags(path_cmd);

    CLI::App* bench_cmd = app.add_subcommand(
        "bench", "time every solver over the schedule and write a performance profile");
    add_run_flags(bench_cmd);
    bench_cmd->add_option("--methods", method_names, "solvers to compare")
        ->delimiter(',')
        ->check(CLI::IsMember({"ssnal", "admm", "ama"}));
    bench_cmd->add_option("--tau-max", tau_max, "largest budget multiple in the profile");
    bench_cmd->add_option("--cutoff", cutoff,
                          "wall-clock budget in seconds for the capped pass "
                          "(default 10x the baseline)");

    CLI::App* synth_cmd = app.add_subcommand("synth", "generate a synthetic dataset");
    add_synth_flags(synth_cmd);
    synth_cmd->add_option("--out", synth_out, "output CSV (samples as rows)");
    synth_cmd->add_option("--labels-out", labels_out, "ground-truth labels, one per line");

    try {
      app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
      return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
      return app.exit(e);
    } catch (const CLI::ParseError& e) {
      app.exit(e);
      return 1;
    }

    if (solve_cmd->parsed()) return run_path_command(m, &gamma);
    if (path_cmd->parsed()) return run_path_command(m, nullptr);
    if (bench_cmd->parsed()) return run_bench_command(m, method_names, tau_max, cutoff);
    if (synth_cmd->parsed()) return run_synth_command(m, synth_out, labels_out);
    std::cerr << "error: no subcommand\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

int main_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("cluspath");
  for (const std::string& a : args) argv.push_back(a.c_str());
  return main_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace cluspath
