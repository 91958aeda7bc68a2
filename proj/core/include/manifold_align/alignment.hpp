#pragma once

#include <cstddef>
#include <span>
#include <string_view>

#include "manifold_align/feature_matrix.hpp"
#include "manifold_align/kernel_types.hpp"
#include "manifold_align/kernels.hpp"

namespace manifold_align {

namespace limits {
// Largest n for which dense N x N fallbacks are materialized.
inline constexpr std::size_t kDenseGuard = 5000;
// Relative tolerance on the constant row sum before the closed form is used.
inline constexpr double kRowSumTolerance = 1e-6;
}  // namespace limits

// trace(K H L H) / (n - 1)^2 with H = I - 11^T / n. H is never formed: both
// kernels are double-centered and contracted as sum_ij (HKH)_ij (HLH)_ji,
// which also covers the non-symmetric kernels kCKA produces.
double hsic(const DenseKernel& k, const DenseKernel& l);

// HSIC(K, L) / sqrt(HSIC(K, K) HSIC(L, L)). Throws DegenerateKernel when a
// self-HSIC vanishes (e.g. constant kernels).
double cka(const DenseKernel& k, const DenseKernel& l);

enum class MkaPath {
    Fast,         // closed form with constant row sums
    Naive,        // dense row-centered inner products
    RowCentered,  // sparse row-centered inner products (n above the dense guard)
};

std::string_view to_string(MkaPath path) noexcept;

struct MkaResult {
    double value = 0.0;
    MkaPath path = MkaPath::Fast;
};

// Closed form (<K,L> - D^2) / sqrt((<K,K> - D^2)(<L,L> - D^2)) over sparse
// rows, O(n k). When either kernel's rows miss D by more than
// kRowSumTolerance * D (clamped rows), the exact row-centered value is
// computed instead and the path says so.
MkaResult mka_fast(const SparseRowKernel& k, const SparseRowKernel& l);

// Materializes both kernels, subtracts each row's mean, and returns the
// cosine of the centered matrices. n <= kDenseGuard.
double mka_naive(const SparseRowKernel& k, const SparseRowKernel& l);

// Row-centered cosine from sparse rows without assuming constant row sums:
// <K H, L H> = <K, L> - sum_i r_i s_i / n.
double mka_row_centered(const SparseRowKernel& k, const SparseRowKernel& l);

double kcka(const FeatureMatrix& x, const FeatureMatrix& y, std::size_t k, KnnRbfOptions options = {});

// CKA between t-conorm-symmetrized manifold kernels.
double cka_sym_manifold(const FeatureMatrix& x, const FeatureMatrix& y, std::size_t k);

// exp(-value / gamma), maps a divergence in [0, inf) onto (0, 1].
double scale_divergence(double value, double gamma);

// Kendall's tau-b by pair enumeration.
double kendall_tau(std::span<const double> a, std::span<const double> b);

}  // namespace manifold_align
