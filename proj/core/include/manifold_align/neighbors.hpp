#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "manifold_align/feature_matrix.hpp"
#include "manifold_align/kernel_types.hpp"

namespace manifold_align {

// Symmetric N x N Euclidean distance matrix with zero diagonal.
struct DistanceMatrix {
    std::size_t n = 0;
    std::vector<double> values;

    double operator()(std::size_t i, std::size_t j) const noexcept { return values[i * n + j]; }
    std::span<const double> row(std::size_t i) const noexcept { return {values.data() + i * n, n}; }
};

// Exact k-NN graph. Per-row arrays are flattened row-major (n * k).
struct KnnGraph {
    std::size_t n = 0;
    std::size_t k = 0;
    std::vector<std::uint32_t> neighbors;  // ascending distance, ties by lower index
    std::vector<double> distances;
    std::vector<double> rho;    // distance to the nearest neighbor
    std::vector<double> sigma;  // 0 until calibrate_graph runs
    std::vector<std::uint8_t> clamped;

    std::span<const std::uint32_t> row_neighbors(std::size_t i) const noexcept {
        return {neighbors.data() + i * k, k};
    }
    std::span<const double> row_distances(std::size_t i) const noexcept {
        return {distances.data() + i * k, k};
    }
};

namespace calibration {
inline constexpr double kSigmaMin = 1e-12;
inline constexpr double kSigmaMax = 1e3;
inline constexpr double kSigmaCeiling = 1e9;  // upper bracket may grow to here
inline constexpr double kTolerance = 1e-12;
inline constexpr int kMaxIterations = 256;
}  // namespace calibration

struct RowCalibration {
    double rho = 0.0;
    double sigma = 0.0;
    bool clamped = false;
};

DistanceMatrix pairwise_distances(const FeatureMatrix& x);

// Requires 2 <= k <= n - 1. sigma is left at zero.
KnnGraph knn_graph(const DistanceMatrix& d, std::size_t k);

// Solves sum_j exp(-(d_j - rho) / sigma) = target for sigma by bisection,
// with rho = d_0. Rows where no sigma in the bracket reaches the target are
// clamped to the nearest bracket end and flagged.
RowCalibration calibrate_row(std::span<const double> neighbor_distances, double target);

// Fills sigma/clamped for every row with target log2(k).
void calibrate_graph(KnnGraph& graph);

// Manifold-approximated kernel: diagonal 1, exp(-(d_ij - rho_i) / sigma_i)
// on each row's k nearest neighbors, 0 elsewhere. Rows sum to 1 + log2(k)
// unless flagged as clamped.
SparseRowKernel manifold_kernel(const KnnGraph& calibrated_graph);
SparseRowKernel manifold_kernel(const DistanceMatrix& d, std::size_t k);
SparseRowKernel manifold_kernel(const FeatureMatrix& x, std::size_t k);

inline double manifold_row_sum(std::size_t k) { return 1.0 + std::log2(static_cast<double>(k)); }

// "row,neighbor,distance,rho,sigma,clamped" lines, header included.
void write_knn_graph_csv(const KnnGraph& graph, std::ostream& out);

}  // namespace manifold_align
