#include "manifold_align/alignment.hpp"

#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "manifold_align/error.hpp"
#include "manifold_align/parallel.hpp"

namespace manifold_align {

namespace {

void require_same_n(std::size_t a, std::size_t b) {
    if (a != b) {
        fail(ErrorCode::DimensionMismatch,
             "kernel sizes differ: n = " + std::to_string(a) + " vs n = " + std::to_string(b));
    }
}

// Per-row partials are reduced in row order so the result does not depend on
// how rows were scheduled.
double ordered_sum(const std::vector<double>& parts) {
    return std::accumulate(parts.begin(), parts.end(), 0.0);
}

double merged_row_dot(const SparseRowKernel& a, const SparseRowKernel& b, std::size_t i) {
    const auto ca = a.row_columns(i);
    const auto wa = a.row_weights(i);
    const auto cb = b.row_columns(i);
    const auto wb = b.row_weights(i);
    double dot = a.diagonal * b.diagonal;
    std::size_t p = 0;
    std::size_t q = 0;
    while (p < ca.size() && q < cb.size()) {
        if (ca[p] < cb[q]) {
            ++p;
        } else if (cb[q] < ca[p]) {
            ++q;
        } else {
            dot += wa[p] * wb[q];
            ++p;
            ++q;
        }
    }
    return dot;
}

double sparse_inner(const SparseRowKernel& a, const SparseRowKernel& b) {
    std::vector<double> parts(a.n);
    parallel_for(0, a.n, [&](std::size_t i) { parts[i] = merged_row_dot(a, b, i); });
    return ordered_sum(parts);
}

double cosine(double kl, double kk, double ll) {
    if (!(kk > 0.0) || !(ll > 0.0)) {
        fail(ErrorCode::DegenerateKernel, "centered kernel has zero norm");
    }
    return kl / std::sqrt(kk * ll);
}

// H M H for a dense n x n kernel.
std::vector<double> double_centered(const DenseKernel& m) {
    const std::size_t n = m.n;
    std::vector<double> row_mean(n, 0.0);
    std::vector<double> col_mean(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            row_mean[i] += m(i, j);
            col_mean[j] += m(i, j);
        }
    }
    double grand = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        grand += row_mean[i];
        row_mean[i] /= static_cast<double>(n);
        col_mean[i] /= static_cast<double>(n);
    }
    grand /= static_cast<double>(n) * static_cast<double>(n);

    std::vector<double> out(n * n);
    parallel_for(0, n, [&](std::size_t i) {
        for (std::size_t j = 0; j < n; ++j) out[i * n + j] = m(i, j) - row_mean[i] - col_mean[j] + grand;
    });
    return out;
}

}  // namespace

double hsic(const DenseKernel& k, const DenseKernel& l) {
    require_same_n(k.n, l.n);
    const std::size_t n = k.n;
    if (n < 2) fail(ErrorCode::InvalidParameter, "HSIC needs n >= 2");

    const auto kc = double_centered(k);
    const auto lc = double_centered(l);
    // trace(K H L H) = sum_ij (HKH)_ij (HLH)_ji, with each (i, j) and (j, i)
    // pair added together so swapping K and L yields identical bits.
    std::vector<double> parts(n, 0.0);
    parallel_for(0, n, [&](std::size_t i) {
        double acc = kc[i * n + i] * lc[i * n + i];
        for (std::size_t j = i + 1; j < n; ++j) {
            acc += kc[i * n + j] * lc[j * n + i] + kc[j * n + i] * lc[i * n + j];
        }
        parts[i] = acc;
    });
    const double scale = static_cast<double>(n - 1);
    return ordered_sum(parts) / (scale * scale);
}

double cka(const DenseKernel& k, const DenseKernel& l) {
    require_same_n(k.n, l.n);
    const auto frob_scaled = [](const DenseKernel& m) {
        double s = 0.0;
        for (double v : m.values) s += v * v;
        const double scale = static_cast<double>(m.n - 1);
        return s / (scale * scale);
    };
    const double kk = hsic(k, k);
    const double ll = hsic(l, l);
    // Self-HSIC of a constant kernel is zero up to rounding on the order of
    // eps * ||K||_F^2.
    constexpr double kDegenerate = 1e-12;
    if (!(kk > kDegenerate * frob_scaled(k)) || !(ll > kDegenerate * frob_scaled(l))) {
        fail(ErrorCode::DegenerateKernel, "CKA undefined: a kernel has zero self-HSIC");
    }
    return hsic(k, l) / std::sqrt(kk * ll);
}

std::string_view to_string(MkaPath path) noexcept {
    switch (path) {
        case MkaPath::Fast: return "fast";
        case MkaPath::Naive: return "naive";
        case MkaPath::RowCentered: return "row-centered";
    }
    return "unknown";
}

MkaResult mka_fast(const SparseRowKernel& k, const SparseRowKernel& l) {
    require_same_n(k.n, l.n);
    if (k.k != l.k || (k.declared_row_sum && l.declared_row_sum && *k.declared_row_sum != *l.declared_row_sum)) {
        fail(ErrorCode::MismatchedK, "kernels were built with different k (k = " + std::to_string(k.k) +
                                         " vs k = " + std::to_string(l.k) + "); use mka_naive");
    }

    const bool constant_rows = k.declared_row_sum && l.declared_row_sum &&
                               k.max_row_sum_deviation() <= limits::kRowSumTolerance * *k.declared_row_sum &&
                               l.max_row_sum_deviation() <= limits::kRowSumTolerance * *l.declared_row_sum;
    if (!constant_rows) {
        if (k.n <= limits::kDenseGuard) return {mka_naive(k, l), MkaPath::Naive};
        return {mka_row_centered(k, l), MkaPath::RowCentered};
    }

    const double d = *k.declared_row_sum;
    const double d2 = d * d;
    const double kl = sparse_inner(k, l);
    const double kk = sparse_inner(k, k);
    const double ll = sparse_inner(l, l);
    return {cosine(kl - d2, kk - d2, ll - d2), MkaPath::Fast};
}

double mka_naive(const SparseRowKernel& k, const SparseRowKernel& l) {
    require_same_n(k.n, l.n);
    const std::size_t n = k.n;
    if (n > limits::kDenseGuard) {
        fail(ErrorCode::GuardExceeded, "dense MKA limited to n <= " + std::to_string(limits::kDenseGuard) +
                                           ", got n = " + std::to_string(n));
    }
    auto kd = to_dense(k);
    auto ld = to_dense(l);
    const auto center_rows = [n](DenseKernel& m) {
        for (std::size_t i = 0; i < n; ++i) {
            double mean = 0.0;
            for (std::size_t j = 0; j < n; ++j) mean += m(i, j);
            mean /= static_cast<double>(n);
            for (std::size_t j = 0; j < n; ++j) m(i, j) -= mean;
        }
    };
    center_rows(kd);
    center_rows(ld);
    double kl = 0.0;
    double kk = 0.0;
    double ll = 0.0;
    for (std::size_t idx = 0; idx < n * n; ++idx) {
        kl += kd.values[idx] * ld.values[idx];
        kk += kd.values[idx] * kd.values[idx];
        ll += ld.values[idx] * ld.values[idx];
    }
    return cosine(kl, kk, ll);
}

double mka_row_centered(const SparseRowKernel& k, const SparseRowKernel& l) {
    require_same_n(k.n, l.n);
    const double n = static_cast<double>(k.n);
    const auto centered = [&](const SparseRowKernel& a, const SparseRowKernel& b) {
        std::vector<double> parts(a.n);
        parallel_for(0, a.n, [&](std::size_t i) {
            parts[i] = merged_row_dot(a, b, i) - a.row_sum(i) * b.row_sum(i) / n;
        });
        return ordered_sum(parts);
    };
    return cosine(centered(k, l), centered(k, k), centered(l, l));
}

double kcka(const FeatureMatrix& x, const FeatureMatrix& y, std::size_t k, KnnRbfOptions options) {
    require_same_n(x.n_samples(), y.n_samples());
    return cka(to_dense(knn_rbf_kernel(x, k, options)), to_dense(knn_rbf_kernel(y, k, options)));
}

double cka_sym_manifold(const FeatureMatrix& x, const FeatureMatrix& y, std::size_t k) {
    require_same_n(x.n_samples(), y.n_samples());
    return cka(symmetrize_tconorm(manifold_kernel(x, k)), symmetrize_tconorm(manifold_kernel(y, k)));
}

double scale_divergence(double value, double gamma) {
    if (!(value >= 0.0) || !(gamma > 0.0)) {
        fail(ErrorCode::InvalidParameter, "scale_divergence needs value >= 0 and gamma > 0");
    }
    return std::exp(-value / gamma);
}

double kendall_tau(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        fail(ErrorCode::LengthMismatch, "sequence lengths differ: " + std::to_string(a.size()) + " vs " +
                                            std::to_string(b.size()));
    }
    const std::size_t m = a.size();
    if (m < 2) fail(ErrorCode::LengthMismatch, "Kendall tau needs at least two observations");

    long long concordant = 0;
    long long discordant = 0;
    long long tied_a = 0;
    long long tied_b = 0;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            const double da = a[j] - a[i];
            const double db = b[j] - b[i];
            if (da == 0.0) ++tied_a;
            if (db == 0.0) ++tied_b;
            if (da == 0.0 || db == 0.0) continue;
            if ((da > 0.0) == (db > 0.0)) {
                ++concordant;
            } else {
                ++discordant;
            }
        }
    }
    const auto pairs = static_cast<long long>(m * (m - 1) / 2);
    const double denom = std::sqrt(static_cast<double>(pairs - tied_a) * static_cast<double>(pairs - tied_b));
    if (!(denom > 0.0)) fail(ErrorCode::AllTies, "Kendall tau undefined: a sequence is constant");
    return static_cast<double>(concordant - discordant) / denom;
}

}  // namespace manifold_align
