#pragma once

#include "cluspath/graph.hpp"
#include "cluspath/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace cluspath {

enum class SampleOrientation { rows, cols };

/// Reads a CSV or whitespace-delimited numeric table. orientation picks
/// whether file rows are samples (default) or features. skip_header drops the
/// first line; with rows-as-samples its tokens become feature names.
/// Non-numeric fields and ragged rows are rejected with the offending row and
/// column in the message.
DataMatrix load_matrix(const std::string& path,
                       SampleOrientation orientation = SampleOrientation::rows,
                       bool skip_header = false);

/// Writes M row by row, comma separated, shortest exact decimal form
/// (round-trips bit-for-bit, always at least 12 significant digits of
/// information).
void write_matrix_csv(const std::string& path, const Matrix& M);

/// Edge list as lines "i,j,w" with 0-based endpoints.
void export_graph_csv(const std::string& path, const WeightedGraph& graph);

std::string format_double(double value);  // shortest exact decimal form

struct SyntheticData {
  DataMatrix data;
  std::vector<Index> labels;  // ground truth, per sample
};

/// per_center samples around each center with isotropic Gaussian noise of the
/// given spread. Deterministic for a fixed seed; spread = 0 reproduces the
/// centers exactly.
SyntheticData generate_gaussian_mixture(const std::vector<Vector>& centers,
                                        double spread, Index per_center,
                                        std::uint64_t seed);

/// Two interleaved half circles in the plane with Gaussian noise; angles lie
/// on a deterministic grid, so only the noise consumes randomness.
SyntheticData generate_two_moons(Index n, double noise, std::uint64_t seed);

}  // namespace cluspath
