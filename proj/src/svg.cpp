#include "cluspath/svg.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace cluspath {

namespace {

// Top-2 principal directions of the mean-centered data as a 2 x d map plus
// the center. d = 1 pads a zero row; d = 2 is the identity with no centering.
struct Projection {
  Eigen::Matrix<double, 2, Eigen::Dynamic> P;
  Vector center;
};

void fix_sign(Vector& u) {
  Index best = 0;
  double best_abs = 0.0;
  for (Index r = 0; r < u.size(); ++r) {
    if (std::abs(u[r]) > best_abs) {
      best_abs = std::abs(u[r]);
      best = r;
    }
  }
  if (u[best] < 0.0) u = -u;
}

Projection make_projection(const Matrix& A) {
  const Index d = A.rows();
  Projection proj;
  proj.center = Vector::Zero(d);
  proj.P.resize(2, d);
  proj.P.setZero();
  if (d == 1) {
    proj.P(0, 0) = 1.0;
    return proj;
  }
  if (d == 2) {
    proj.P.setIdentity();
    return proj;
  }

  proj.center = A.rowwise().mean();
  Matrix C = A.colwise() - proj.center;
  Vector u1, u2;
  if (d <= A.cols()) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(C * C.transpose());
    u1 = eig.eigenvectors().col(d - 1);  // eigenvalues ascend
    u2 = eig.eigenvectors().col(d - 2);
  } else {
    // Gram trick for wide-and-short data: eigenvectors of C^T C lift to
    // directions C v / ||C v||.
    Eigen::SelfAdjointEigenSolver<Matrix> eig(C.transpose() * C);
    const Index n = A.cols();
    auto lift = [&](Index which) -> Vector {
      Vector v = C * eig.eigenvectors().col(which);
      double nv = v.norm();
      return nv > 0.0 ? Vector(v / nv) : Vector(Vector::Unit(d, which % d));
    };
    u1 = lift(n - 1);
    u2 = lift(n - 2);
  }
  fix_sign(u1);
  fix_sign(u2);
  proj.P.row(0) = u1.transpose();
  proj.P.row(1) = u2.transpose();
  return proj;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

const char* const kPalette[] = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#393b79", "#ad494a",
    "#637939", "#7b4173", "#3182bd", "#e6550d",
};
constexpr size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

}  // namespace

std::string render_path_svg(const PathResult& result, const DataMatrix& data) {
  if (result.solutions.empty())
    throw std::invalid_argument("render_path_svg: empty path result");
  const Index n = data.n();
  if (result.solutions.front().X.cols() != n)
    throw std::invalid_argument("render_path_svg: result does not match the data");

  const Projection proj = make_projection(data.values);
  auto project = [&](const Vector& x) -> Eigen::Vector2d {
    return proj.P * (x - proj.center);
  };

  const size_t T = result.solutions.size();
  std::vector<std::vector<Eigen::Vector2d>> tracks(static_cast<size_t>(n));
  for (Index i = 0; i < n; ++i) {
    auto& tr = tracks[static_cast<size_t>(i)];
    tr.reserve(T);
    for (size_t t = 0; t < T; ++t) tr.push_back(project(result.solutions[t].X.col(i)));
  }
  std::vector<Eigen::Vector2d> points(static_cast<size_t>(n));
  for (Index i = 0; i < n; ++i) points[static_cast<size_t>(i)] = project(data.values.col(i));

  const ClusterAssignment& final_clusters = result.assignments.back();
  std::vector<Eigen::Vector2d> centroids;
  for (Index c = 0; c < final_clusters.K; ++c)
    centroids.push_back(project(final_clusters.centroids.col(c)));

  double lo_x = points[0].x(), hi_x = lo_x, lo_y = points[0].y(), hi_y = lo_y;
  auto grow = [&](const Eigen::Vector2d& p) {
    lo_x = std::min(lo_x, p.x());
    hi_x = std::max(hi_x, p.x());
    lo_y = std::min(lo_y, p.y());
    hi_y = std::max(hi_y, p.y());
  };
  for (const auto& tr : tracks)
    for (const auto& p : tr) grow(p);
  for (const auto& p : points) grow(p);

  constexpr double W = 800.0, H = 600.0, margin = 50.0;
  const double range_x = std::max(hi_x - lo_x, 1e-12);
  const double range_y = std::max(hi_y - lo_y, 1e-12);
  const double scale = std::min((W - 2 * margin) / range_x, (H - 2 * margin) / range_y);
  const double cx = 0.5 * (lo_x + hi_x), cy = 0.5 * (lo_y + hi_y);
  auto to_canvas = [&](const Eigen::Vector2d& p) -> Eigen::Vector2d {
    return {W / 2 + scale * (p.x() - cx), H / 2 - scale * (p.y() - cy)};
  };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" "
         "viewBox=\"0 0 800 600\">\n";
  svg += "<rect width=\"800\" height=\"600\" fill=\"#ffffff\"/>\n";

  svg += "<g fill=\"none\" stroke-width=\"1.2\" stroke-opacity=\"0.75\">\n";
  for (Index i = 0; i < n; ++i) {
    const char* color =
        kPalette[static_cast<size_t>(final_clusters.labels[static_cast<size_t>(i)]) % kPaletteSize];
    svg += "<polyline stroke=\"";
    svg += color;
    svg += "\" points=\"";
    const auto& tr = tracks[static_cast<size_t>(i)];
    for (size_t t = 0; t < tr.size(); ++t) {
      if (t) svg += ' ';
      Eigen::Vector2d p = to_canvas(tr[t]);
      svg += fmt(p.x());
      svg += ',';
      svg += fmt(p.y());
    }
    svg += "\"/>\n";
  }
  svg += "</g>\n";

  svg += "<g stroke=\"none\">\n";
  for (Index i = 0; i < n; ++i) {
    const char* color =
        kPalette[static_cast<size_t>(final_clusters.labels[static_cast<size_t>(i)]) % kPaletteSize];
    Eigen::Vector2d p = to_canvas(points[static_cast<size_t>(i)]);
    svg += "<circle cx=\"" + fmt(p.x()) + "\" cy=\"" + fmt(p.y()) + "\" r=\"3\" fill=\"";
    svg += color;
    svg += "\" fill-opacity=\"0.9\"/>\n";
  }
  svg += "</g>\n";

  svg += "<g stroke=\"#111111\" stroke-width=\"1.5\">\n";
  for (Index c = 0; c < final_clusters.K; ++c) {
    const char* color = kPalette[static_cast<size_t>(c) % kPaletteSize];
    Eigen::Vector2d p = to_canvas(centroids[static_cast<size_t>(c)]);
    svg += "<circle cx=\"" + fmt(p.x()) + "\" cy=\"" + fmt(p.y()) + "\" r=\"6\" fill=\"";
    svg += color;
    svg += "\"/>\n";
  }
  svg += "</g>\n";
  svg += "</svg>\n";
  return svg;
}

void write_path_svg(const std::string& path, const PathResult& result,
                    const DataMatrix& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << render_path_svg(result, data);
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace cluspath
