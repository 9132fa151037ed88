#pragma once

#include "cluspath/path.hpp"
#include "cluspath/types.hpp"

#include <string>

namespace cluspath {

/// Renders the clustering path on a fixed 800 x 600 canvas: one polyline per
/// sample through its solution positions across the schedule, colored by the
/// final cluster, plus markers for the original points and final centroids.
/// Coordinates come from the top-2 principal components of the mean-centered
/// data (identity for d = 2, a padded zero coordinate for d = 1); component
/// signs are fixed so the largest-magnitude loading is positive. Output is
/// byte-deterministic for identical inputs.
std::string render_path_svg(const PathResult& result, const DataMatrix& data);

void write_path_svg(const std::string& path, const PathResult& result,
                    const DataMatrix& data);

}  // namespace cluspath
