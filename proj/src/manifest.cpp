#include "cluspath/manifest.hpp"

#include "cluspath/io.hpp"

#include <charconv>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace cluspath {

namespace {

std::string trim(const std::string& s) {
  const char* ws = " \t";
  const auto first = s.find_first_not_of(ws);
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(ws);
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(const std::string& key, const char* want,
                            const std::string& got) {
  throw std::invalid_argument("manifest: key '" + key + "' expects " + want +
                              ", got '" + got + "'");
}

double parse_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const char* end = v.data() + v.size();
  auto [p, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || p != end) bad_value(key, "a number", v);
  return out;
}

long long parse_int(const std::string& key, const std::string& v) {
  long long out = 0;
  const char* end = v.data() + v.size();
  auto [p, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || p != end) bad_value(key, "an integer", v);
  return out;
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  const char* end = v.data() + v.size();
  auto [p, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || p != end) bad_value(key, "an unsigned integer", v);
  return out;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  bad_value(key, "true or false", v);
}

struct Field {
  const char* key;
  std::string (*get)(const RunManifest&);
  void (*set)(RunManifest&, const std::string&);
};

std::string bool_str(bool b) { return b ? "true" : "false"; }

// One entry per manifest field, in serialization order.
const std::vector<Field>& fields() {
  static const std::vector<Field> table = {
      {"data_path", [](const RunManifest& m) { return m.data_path; },
       [](RunManifest& m, const std::string& v) { m.data_path = v; }},
      {"samples_as", [](const RunManifest& m) { return m.samples_as; },
       [](RunManifest& m, const std::string& v) { m.samples_as = v; }},
      {"header", [](const RunManifest& m) { return bool_str(m.header); },
       [](RunManifest& m, const std::string& v) { m.header = parse_bool("header", v); }},
      {"synth", [](const RunManifest& m) { return m.synth; },
       [](RunManifest& m, const std::string& v) { m.synth = v; }},
      {"centers", [](const RunManifest& m) { return m.centers; },
       [](RunManifest& m, const std::string& v) { m.centers = v; }},
      {"spread", [](const RunManifest& m) { return format_double(m.spread); },
       [](RunManifest& m, const std::string& v) { m.spread = parse_double("spread", v); }},
      {"per_center", [](const RunManifest& m) { return std::to_string(m.per_center); },
       [](RunManifest& m, const std::string& v) {
         m.per_center = static_cast<Index>(parse_int("per_center", v));
       }},
      {"moons_n", [](const RunManifest& m) { return std::to_string(m.moons_n); },
       [](RunManifest& m, const std::string& v) {
         m.moons_n = static_cast<Index>(parse_int("moons_n", v));
       }},
      {"moons_noise", [](const RunManifest& m) { return format_double(m.moons_noise); },
       [](RunManifest& m, const std::string& v) {
         m.moons_noise = parse_double("moons_noise", v);
       }},
      {"seed", [](const RunManifest& m) { return std::to_string(m.seed); },
       [](RunManifest& m, const std::string& v) { m.seed = parse_u64("seed", v); }},
      {"knn", [](const RunManifest& m) { return std::to_string(m.knn); },
       [](RunManifest& m, const std::string& v) {
         m.knn = static_cast<Index>(parse_int("knn", v));
       }},
      {"phi", [](const RunManifest& m) { return format_double(m.phi); },
       [](RunManifest& m, const std::string& v) { m.phi = parse_double("phi", v); }},
      {"require_connected",
       [](const RunManifest& m) { return bool_str(m.require_connected); },
       [](RunManifest& m, const std::string& v) {
         m.require_connected = parse_bool("require_connected", v);
       }},
      {"q", [](const RunManifest& m) { return std::to_string(m.q); },
       [](RunManifest& m, const std::string& v) {
         m.q = static_cast<int>(parse_int("q", v));
       }},
      {"gamma_start", [](const RunManifest& m) { return format_double(m.gamma_start); },
       [](RunManifest& m, const std::string& v) {
         m.gamma_start = parse_double("gamma_start", v);
       }},
      {"gamma_end", [](const RunManifest& m) { return format_double(m.gamma_end); },
       [](RunManifest& m, const std::string& v) {
         m.gamma_end = parse_double("gamma_end", v);
       }},
      {"num_gammas", [](const RunManifest& m) { return std::to_string(m.num_gammas); },
       [](RunManifest& m, const std::string& v) {
         m.num_gammas = static_cast<Index>(parse_int("num_gammas", v));
       }},
      {"spacing", [](const RunManifest& m) { return m.spacing; },
       [](RunManifest& m, const std::string& v) { m.spacing = v; }},
      {"solver", [](const RunManifest& m) { return m.solver; },
       [](RunManifest& m, const std::string& v) { m.solver = v; }},
      {"tol", [](const RunManifest& m) { return format_double(m.tol); },
       [](RunManifest& m, const std::string& v) { m.tol = parse_double("tol", v); }},
      {"max_iter", [](const RunManifest& m) { return std::to_string(m.max_iter); },
       [](RunManifest& m, const std::string& v) {
         m.max_iter = static_cast<Index>(parse_int("max_iter", v));
       }},
      {"time_limit", [](const RunManifest& m) { return format_double(m.time_limit); },
       [](RunManifest& m, const std::string& v) {
         m.time_limit = parse_double("time_limit", v);
       }},
      {"admm_rho", [](const RunManifest& m) { return format_double(m.admm_rho); },
       [](RunManifest& m, const std::string& v) {
         m.admm_rho = parse_double("admm_rho", v);
       }},
      {"ssnal_sigma0", [](const RunManifest& m) { return format_double(m.ssnal_sigma0); },
       [](RunManifest& m, const std::string& v) {
         m.ssnal_sigma0 = parse_double("ssnal_sigma0", v);
       }},
      {"ama_safety", [](const RunManifest& m) { return format_double(m.ama_safety); },
       [](RunManifest& m, const std::string& v) {
         m.ama_safety = parse_double("ama_safety", v);
       }},
      {"warm_start", [](const RunManifest& m) { return bool_str(m.warm_start); },
       [](RunManifest& m, const std::string& v) {
         m.warm_start = parse_bool("warm_start", v);
       }},
      {"out_dir", [](const RunManifest& m) { return m.out_dir; },
       [](RunManifest& m, const std::string& v) { m.out_dir = v; }},
      {"plot", [](const RunManifest& m) { return bool_str(m.plot); },
       [](RunManifest& m, const std::string& v) { m.plot = parse_bool("plot", v); }},
      {"save_x", [](const RunManifest& m) { return bool_str(m.save_x); },
       [](RunManifest& m, const std::string& v) { m.save_x = parse_bool("save_x", v); }},
      {"trace", [](const RunManifest& m) { return bool_str(m.trace); },
       [](RunManifest& m, const std::string& v) { m.trace = parse_bool("trace", v); }},
      {"export_graph", [](const RunManifest& m) { return bool_str(m.export_graph); },
       [](RunManifest& m, const std::string& v) {
         m.export_graph = parse_bool("export_graph", v);
       }},
  };
  return table;
}

const Field* find_field(const std::string& key) {
  for (const Field& f : fields())
    if (key == f.key) return &f;
  return nullptr;
}

}  // namespace

std::string RunManifest::serialize() const {
  std::string out;
  for (const Field& f : fields()) {
    out += f.key;
    out += '=';
    out += f.get(*this);
    out += '\n';
  }
  return out;
}

RunManifest RunManifest::parse(const std::string& text) {
  RunManifest m;
  std::istringstream in(text);
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("manifest: line " + std::to_string(lineno) +
                                  " is not key=value: '" + t + "'");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    const Field* f = find_field(key);
    if (!f)
      throw std::invalid_argument("manifest: unknown key '" + key + "' at line " +
                                  std::to_string(lineno));
    f->set(m, value);
  }
  return m;
}

RunManifest RunManifest::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open manifest '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

void RunManifest::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << serialize();
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace cluspath
