#pragma once

#include "cluspath/types.hpp"

#include <cstdint>
#include <string>

namespace cluspath {

/// Everything needed to reproduce a run, serialized as flat "key=value" lines
/// in a fixed order. serialize -> parse -> serialize is byte-identical, and a
/// manifest plus its input files pins every output bit except wall times.
struct RunManifest {
  // input: a file, or a synthetic spec when data_path is empty
  std::string data_path;
  std::string samples_as = "rows";  // rows | cols
  bool header = false;
  std::string synth = "gaussian_mixture";  // gaussian_mixture | two_moons
  std::string centers = "-2,0;2,0";        // mixture centers "x,y;x,y;..."
  double spread = 0.5;
  Index per_center = 50;
  Index moons_n = 200;
  double moons_noise = 0.05;
  std::uint64_t seed = 42;

  // graph
  Index knn = 10;
  double phi = 0.5;
  bool require_connected = false;

  // model
  int q = 2;

  // schedule
  double gamma_start = 0.01;
  double gamma_end = 10.0;
  Index num_gammas = 100;
  std::string spacing = "geometric";  // linear | geometric

  // solver
  std::string solver = "ssnal";  // ssnal | admm | ama
  double tol = 1e-6;
  Index max_iter = 0;      // 0 -> per-algorithm default
  double time_limit = 0.0;  // seconds; 0 -> none
  double admm_rho = 1.0;
  double ssnal_sigma0 = 1.0;
  double ama_safety = 0.99;
  bool warm_start = true;

  // outputs
  std::string out_dir = "out";
  bool plot = false;
  bool save_x = false;
  bool trace = false;
  bool export_graph = false;

  std::string serialize() const;
  static RunManifest parse(const std::string& text);  // unknown keys rejected
  static RunManifest load(const std::string& path);
  void save(const std::string& path) const;
};

}  // namespace cluspath
