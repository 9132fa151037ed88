#include "cluspath/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace cluspath {

std::string format_double(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

namespace {

std::vector<std::string> split_fields(const std::string& line, bool comma) {
  std::vector<std::string> out;
  if (comma) {
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
  } else {
    std::stringstream ss(line);
    std::string field;
    while (ss >> field) out.push_back(field);
  }
  return out;
}

double parse_field(const std::string& raw, size_t row, size_t col) {
  std::string s = raw;
  // trim surrounding blanks so "1, 2" parses
  s.erase(0, s.find_first_not_of(" \t\r"));
  auto last = s.find_last_not_of(" \t\r");
  s.erase(last == std::string::npos ? 0 : last + 1);
  if (s.empty())
    throw std::runtime_error("empty field at row " + std::to_string(row) + ", column " +
                             std::to_string(col));
  double value = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), value);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw std::runtime_error("non-numeric field '" + raw + "' at row " + std::to_string(row) +
                             ", column " + std::to_string(col));
  return value;
}

}  // namespace

DataMatrix load_matrix(const std::string& path, SampleOrientation orientation,
                       bool skip_header) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");

  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;  // blank
    lines.push_back(line);
  }
  std::vector<std::string> header_fields;
  if (skip_header) {
    if (lines.empty()) throw std::runtime_error("'" + path + "' has a header but no data rows");
    bool comma = lines.front().find(',') != std::string::npos;
    header_fields = split_fields(lines.front(), comma);
    lines.erase(lines.begin());
  }
  if (lines.empty()) throw std::runtime_error("'" + path + "' contains no data");

  const bool comma = lines.front().find(',') != std::string::npos;
  std::vector<std::vector<double>> rows;
  rows.reserve(lines.size());
  size_t width = 0;
  for (size_t r = 0; r < lines.size(); ++r) {
    auto fields = split_fields(lines[r], comma);
    if (r == 0) {
      width = fields.size();
      if (width == 0) throw std::runtime_error("'" + path + "' first row is empty");
    } else if (fields.size() != width) {
      throw std::runtime_error("ragged table in '" + path + "': row " + std::to_string(r + 1) +
                               " has " + std::to_string(fields.size()) + " fields, expected " +
                               std::to_string(width));
    }
    std::vector<double> vals(width);
    for (size_t c = 0; c < width; ++c) vals[c] = parse_field(fields[c], r + 1, c + 1);
    rows.push_back(std::move(vals));
  }

  Matrix table(static_cast<Index>(rows.size()), static_cast<Index>(width));
  for (size_t r = 0; r < rows.size(); ++r)
    for (size_t c = 0; c < width; ++c)
      table(static_cast<Index>(r), static_cast<Index>(c)) = rows[r][c];

  Matrix values = orientation == SampleOrientation::rows
                      ? Matrix(table.transpose())
                      : std::move(table);
  std::vector<std::string> names;
  if (skip_header && orientation == SampleOrientation::rows &&
      static_cast<Index>(header_fields.size()) == values.rows()) {
    names = header_fields;
    for (auto& nme : names) {
      nme.erase(0, nme.find_first_not_of(" \t\r"));
      auto last = nme.find_last_not_of(" \t\r");
      nme.erase(last == std::string::npos ? 0 : last + 1);
    }
    if (std::any_of(names.begin(), names.end(),
                    [](const std::string& s) { return s.empty(); }))
      names.clear();
  }
  return make_data_matrix(std::move(values), std::move(names));
}

void write_matrix_csv(const std::string& path, const Matrix& M) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  for (Index r = 0; r < M.rows(); ++r) {
    for (Index c = 0; c < M.cols(); ++c) {
      if (c) out << ',';
      out << format_double(M(r, c));
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

void export_graph_csv(const std::string& path, const WeightedGraph& graph) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << "i,j,w\n";
  for (const Edge& e : graph.edges())
    out << e.i << ',' << e.j << ',' << format_double(e.w) << '\n';
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

SyntheticData generate_gaussian_mixture(const std::vector<Vector>& centers, double spread,
                                        Index per_center, std::uint64_t seed) {
  if (centers.empty()) throw std::invalid_argument("mixture needs at least one center");
  if (per_center < 1) throw std::invalid_argument("mixture needs per_center >= 1");
  if (!(spread >= 0.0)) throw std::invalid_argument("mixture spread must be >= 0");
  const Index d = centers.front().size();
  for (const Vector& c : centers)
    if (c.size() != d) throw std::invalid_argument("mixture centers differ in dimension");

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  const Index n = static_cast<Index>(centers.size()) * per_center;
  Matrix values(d, n);
  std::vector<Index> labels(static_cast<size_t>(n));
  Index col = 0;
  for (size_t c = 0; c < centers.size(); ++c) {
    for (Index s = 0; s < per_center; ++s, ++col) {
      for (Index r = 0; r < d; ++r) values(r, col) = centers[c][r] + spread * gauss(rng);
      labels[static_cast<size_t>(col)] = static_cast<Index>(c);
    }
  }
  return SyntheticData{make_data_matrix(std::move(values)), std::move(labels)};
}

SyntheticData generate_two_moons(Index n, double noise, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("two moons need n >= 2");
  if (!(noise >= 0.0)) throw std::invalid_argument("two moons noise must be >= 0");

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  const Index n_outer = (n + 1) / 2;
  const Index n_inner = n - n_outer;
  Matrix values(2, n);
  std::vector<Index> labels(static_cast<size_t>(n));

  constexpr double pi = 3.14159265358979323846;
  for (Index i = 0; i < n_outer; ++i) {
    double theta = n_outer > 1 ? pi * static_cast<double>(i) / static_cast<double>(n_outer - 1) : 0.0;
    values(0, i) = std::cos(theta) + noise * gauss(rng);
    values(1, i) = std::sin(theta) + noise * gauss(rng);
    labels[static_cast<size_t>(i)] = 0;
  }
  for (Index i = 0; i < n_inner; ++i) {
    double theta = n_inner > 1 ? pi * static_cast<double>(i) / static_cast<double>(n_inner - 1) : 0.0;
    Index col = n_outer + i;
    values(0, col) = 1.0 - std::cos(theta) + noise * gauss(rng);
    values(1, col) = 0.5 - std::sin(theta) + noise * gauss(rng);
    labels[static_cast<size_t>(col)] = 1;
  }
  return SyntheticData{make_data_matrix(std::move(values)), std::move(labels)};
}

}  // namespace cluspath
