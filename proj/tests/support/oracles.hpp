#pragma once

// Independent reference computations for the test suites. Nothing here calls
// into the library's numerical code; everything is plain loops over dense
// matrices so the two routes share no implementation.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

#include "manifold_align/feature_matrix.hpp"

namespace oracle {

using Dense = std::vector<std::vector<double>>;

inline manifold_align::FeatureMatrix random_cloud(std::size_t n, std::size_t d, std::uint64_t seed,
                                                  double scale = 1.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, scale);
    std::vector<double> data(n * d);
    for (auto& v : data) v = normal(rng);
    return manifold_align::FeatureMatrix(n, d, std::move(data));
}

inline manifold_align::FeatureMatrix points_1d(const std::vector<double>& xs) {
    return manifold_align::FeatureMatrix(xs.size(), 1, xs);
}

inline Dense distances(const manifold_align::FeatureMatrix& x) {
    const std::size_t n = x.n_samples();
    Dense d(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double acc = 0.0;
            for (std::size_t f = 0; f < x.n_features(); ++f) acc += std::pow(x(i, f) - x(j, f), 2);
            d[i][j] = std::sqrt(acc);
        }
    }
    return d;
}

// Full sort of every off-diagonal entry by (distance, index).
inline std::vector<std::vector<std::size_t>> knn_full_sort(const Dense& d, std::size_t k) {
    const std::size_t n = d.size();
    std::vector<std::vector<std::size_t>> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::pair<double, std::size_t>> all;
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) all.emplace_back(d[i][j], j);
        }
        std::sort(all.begin(), all.end());
        for (std::size_t r = 0; r < k; ++r) out[i].push_back(all[r].second);
    }
    return out;
}

// Plain bisection on sum_j exp(-(d_j - d_0) / s) = target over [lo, hi].
inline double bisect_sigma(const std::vector<double>& dists, double target, double lo = 1e-6, double hi = 1e4) {
    const auto f = [&](double s) {
        double sum = 0.0;
        for (double dj : dists) sum += std::exp(-(dj - dists.front()) / s);
        return sum - target;
    };
    for (int i = 0; i < 400; ++i) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

inline Dense identity(std::size_t n) {
    Dense m(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1.0;
    return m;
}

inline Dense centering(std::size_t n) {
    Dense h(n, std::vector<double>(n, -1.0 / static_cast<double>(n)));
    for (std::size_t i = 0; i < n; ++i) h[i][i] += 1.0;
    return h;
}

inline Dense matmul(const Dense& a, const Dense& b) {
    const std::size_t n = a.size();
    const std::size_t m = b.front().size();
    Dense c(n, std::vector<double>(m, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t l = 0; l < b.size(); ++l) {
            for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
        }
    }
    return c;
}

inline double trace(const Dense& a) {
    double t = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) t += a[i][i];
    return t;
}

inline double frobenius(const Dense& a, const Dense& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < a[i].size(); ++j) s += a[i][j] * b[i][j];
    }
    return s;
}

// trace(K H L H) / (n - 1)^2 with H materialized.
inline double hsic(const Dense& k, const Dense& l) {
    const auto h = centering(k.size());
    const double n1 = static_cast<double>(k.size() - 1);
    return trace(matmul(matmul(matmul(k, h), l), h)) / (n1 * n1);
}

inline double cka(const Dense& k, const Dense& l) { return hsic(k, l) / std::sqrt(hsic(k, k) * hsic(l, l)); }

// <K H, L H> / sqrt(<K H, K H> <L H, L H>) with H materialized.
inline double mka(const Dense& k, const Dense& l) {
    const auto h = centering(k.size());
    const auto kh = matmul(k, h);
    const auto lh = matmul(l, h);
    return frobenius(kh, lh) / std::sqrt(frobenius(kh, kh) * frobenius(lh, lh));
}

// Manifold kernel from scratch: brute-force k-NN, own bisection.
inline Dense manifold_kernel(const manifold_align::FeatureMatrix& x, std::size_t k) {
    const auto d = distances(x);
    const auto nbrs = knn_full_sort(d, k);
    const std::size_t n = d.size();
    Dense kern = identity(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> dists;
        for (std::size_t j : nbrs[i]) dists.push_back(d[i][j]);
        const double sigma = bisect_sigma(dists, std::log2(static_cast<double>(k)));
        for (std::size_t j : nbrs[i]) kern[i][j] = std::exp(-(d[i][j] - dists.front()) / sigma);
    }
    return kern;
}

// kCKA kernel from scratch: brute-force k-NN, sorted-median bandwidth.
inline Dense knn_rbf_kernel(const manifold_align::FeatureMatrix& x, std::size_t k, double diagonal = 1.0) {
    const auto d = distances(x);
    const auto nbrs = knn_full_sort(d, k);
    std::vector<double> retained;
    for (std::size_t i = 0; i < d.size(); ++i) {
        for (std::size_t j : nbrs[i]) retained.push_back(d[i][j]);
    }
    std::sort(retained.begin(), retained.end());
    const std::size_t m = retained.size();
    const double sigma = m % 2 == 1 ? retained[m / 2] : 0.5 * (retained[m / 2 - 1] + retained[m / 2]);
    Dense kern(d.size(), std::vector<double>(d.size(), 0.0));
    for (std::size_t i = 0; i < d.size(); ++i) {
        kern[i][i] = diagonal;
        for (std::size_t j : nbrs[i]) kern[i][j] = std::exp(-d[i][j] / (2.0 * sigma));
    }
    return kern;
}

}  // namespace oracle
