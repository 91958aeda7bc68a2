#include "manifold_align/neighbors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <string>

#include "manifold_align/error.hpp"
#include "manifold_align/matrix_io.hpp"
#include "manifold_align/parallel.hpp"

namespace manifold_align {

namespace {

double neighbor_sum(std::span<const double> dists, double rho, double sigma) {
    double sum = 0.0;
    for (double d : dists) sum += std::exp(-(d - rho) / sigma);
    return sum;
}

}  // namespace

DistanceMatrix pairwise_distances(const FeatureMatrix& x) {
    const std::size_t n = x.n_samples();
    DistanceMatrix out{n, std::vector<double>(n * n, 0.0)};
    parallel_for(0, n, [&](std::size_t i) {
        const auto xi = x.row(i);
        for (std::size_t j = i + 1; j < n; ++j) {
            const auto xj = x.row(j);
            double acc = 0.0;
            for (std::size_t f = 0; f < xi.size(); ++f) {
                const double diff = xi[f] - xj[f];
                acc += diff * diff;
            }
            const double dist = std::sqrt(acc);
            out.values[i * n + j] = dist;
            out.values[j * n + i] = dist;
        }
    });
    return out;
}

KnnGraph knn_graph(const DistanceMatrix& d, std::size_t k) {
    const std::size_t n = d.n;
    if (k < 2 || n < 3 || k > n - 1) {
        fail(ErrorCode::KOutOfRange,
             "k = " + std::to_string(k) + " outside [2, n - 1] for n = " + std::to_string(n));
    }
    KnnGraph g;
    g.n = n;
    g.k = k;
    g.neighbors.resize(n * k);
    g.distances.resize(n * k);
    g.rho.resize(n);
    g.sigma.assign(n, 0.0);
    g.clamped.assign(n, 0);

    parallel_for(0, n, [&](std::size_t i) {
        const auto row = d.row(i);
        std::vector<std::uint32_t> order;
        order.reserve(n - 1);
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) order.push_back(static_cast<std::uint32_t>(j));
        }
        std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                          [&](std::uint32_t a, std::uint32_t b) {
                              return row[a] < row[b] || (row[a] == row[b] && a < b);
                          });
        for (std::size_t r = 0; r < k; ++r) {
            g.neighbors[i * k + r] = order[r];
            g.distances[i * k + r] = row[order[r]];
        }
        g.rho[i] = g.distances[i * k];
    });
    return g;
}

RowCalibration calibrate_row(std::span<const double> dists, double target) {
    using namespace calibration;
    RowCalibration out;
    out.rho = dists.front();

    const double at_min = neighbor_sum(dists, out.rho, kSigmaMin);
    if (at_min >= target - kTolerance) {
        // Already at or above the target with the sharpest admissible bandwidth.
        out.sigma = kSigmaMin;
        out.clamped = at_min > target + kTolerance;
        return out;
    }

    double lo = kSigmaMin;
    double hi = kSigmaMax;
    double at_hi = neighbor_sum(dists, out.rho, hi);
    while (at_hi < target - kTolerance && hi < kSigmaCeiling) {
        lo = hi;
        hi = std::min(2.0 * hi, kSigmaCeiling);
        at_hi = neighbor_sum(dists, out.rho, hi);
    }
    if (at_hi < target - kTolerance) {
        out.sigma = hi;
        out.clamped = true;
        return out;
    }

    double best_sigma = hi;
    double best_gap = std::abs(at_hi - target);
    for (int iter = 0; iter < kMaxIterations; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double value = neighbor_sum(dists, out.rho, mid);
        const double gap = std::abs(value - target);
        if (gap < best_gap) {
            best_gap = gap;
            best_sigma = mid;
        }
        if (gap <= kTolerance) break;
        if (value < target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    out.sigma = best_sigma;
    return out;
}

void calibrate_graph(KnnGraph& graph) {
    const double target = std::log2(static_cast<double>(graph.k));
    parallel_for(0, graph.n, [&](std::size_t i) {
        const auto cal = calibrate_row(graph.row_distances(i), target);
        graph.rho[i] = cal.rho;
        graph.sigma[i] = cal.sigma;
        graph.clamped[i] = cal.clamped ? 1 : 0;
    });
}

SparseRowKernel manifold_kernel(const KnnGraph& g) {
    SparseRowKernel kernel;
    kernel.n = g.n;
    kernel.k = g.k;
    kernel.diagonal = 1.0;
    kernel.columns.resize(g.n * g.k);
    kernel.weights.resize(g.n * g.k);
    kernel.declared_row_sum = manifold_row_sum(g.k);
    kernel.clamped = g.clamped;

    parallel_for(0, g.n, [&](std::size_t i) {
        const auto nbrs = g.row_neighbors(i);
        const auto dists = g.row_distances(i);
        std::vector<std::pair<std::uint32_t, double>> entries(g.k);
        for (std::size_t r = 0; r < g.k; ++r) {
            entries[r] = {nbrs[r], std::exp(-(dists[r] - g.rho[i]) / g.sigma[i])};
        }
        std::sort(entries.begin(), entries.end());
        for (std::size_t r = 0; r < g.k; ++r) {
            kernel.columns[i * g.k + r] = entries[r].first;
            kernel.weights[i * g.k + r] = entries[r].second;
        }
    });
    return kernel;
}

SparseRowKernel manifold_kernel(const DistanceMatrix& d, std::size_t k) {
    auto graph = knn_graph(d, k);
    calibrate_graph(graph);
    return manifold_kernel(graph);
}

SparseRowKernel manifold_kernel(const FeatureMatrix& x, std::size_t k) {
    return manifold_kernel(pairwise_distances(x), k);
}

void write_knn_graph_csv(const KnnGraph& g, std::ostream& out) {
    out << "row,neighbor,distance,rho,sigma,clamped\n";
    for (std::size_t i = 0; i < g.n; ++i) {
        for (std::size_t r = 0; r < g.k; ++r) {
            out << i << ',' << g.neighbors[i * g.k + r] << ',' << format_double(g.distances[i * g.k + r]) << ','
                << format_double(g.rho[i]) << ',' << format_double(g.sigma[i]) << ','
                << static_cast<int>(g.clamped[i]) << '\n';
        }
    }
}

}  // namespace manifold_align
