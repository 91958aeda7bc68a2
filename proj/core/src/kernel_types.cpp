#include "manifold_align/kernel_types.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "manifold_align/error.hpp"
#include "manifold_align/matrix_io.hpp"

namespace manifold_align {

double SparseRowKernel::row_sum(std::size_t i) const noexcept {
    double sum = diagonal;
    for (double w : row_weights(i)) sum += w;
    return sum;
}

double SparseRowKernel::max_row_sum_deviation() const {
    if (!declared_row_sum) fail(ErrorCode::InvalidParameter, "kernel has no declared row sum");
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(row_sum(i) - *declared_row_sum));
    return worst;
}

std::size_t SparseRowKernel::clamped_count() const noexcept {
    return static_cast<std::size_t>(std::count(clamped.begin(), clamped.end(), std::uint8_t{1}));
}

double SparseRowKernel::at(std::size_t i, std::size_t j) const noexcept {
    if (i == j) return diagonal;
    const auto cols = row_columns(i);
    const auto it = std::lower_bound(cols.begin(), cols.end(), static_cast<std::uint32_t>(j));
    if (it == cols.end() || *it != j) return 0.0;
    return row_weights(i)[static_cast<std::size_t>(it - cols.begin())];
}

DenseKernel to_dense(const SparseRowKernel& kernel) {
    DenseKernel dense(kernel.n);
    for (std::size_t i = 0; i < kernel.n; ++i) {
        dense(i, i) = kernel.diagonal;
        const auto cols = kernel.row_columns(i);
        const auto w = kernel.row_weights(i);
        for (std::size_t r = 0; r < kernel.k; ++r) dense(i, cols[r]) = w[r];
    }
    return dense;
}

void write_kernel_csv(const SparseRowKernel& kernel, std::ostream& out) {
    out << "i,j,value\n";
    for (std::size_t i = 0; i < kernel.n; ++i) {
        // Merge the diagonal into the sorted column order.
        bool diagonal_done = false;
        const auto cols = kernel.row_columns(i);
        const auto w = kernel.row_weights(i);
        for (std::size_t r = 0; r <= kernel.k; ++r) {
            if (!diagonal_done && (r == kernel.k || cols[r] > i)) {
                out << i << ',' << i << ',' << format_double(kernel.diagonal) << '\n';
                diagonal_done = true;
            }
            if (r < kernel.k) out << i << ',' << cols[r] << ',' << format_double(w[r]) << '\n';
        }
    }
}

void write_kernel_csv(const DenseKernel& kernel, std::ostream& out) {
    out << "i,j,value\n";
    for (std::size_t i = 0; i < kernel.n; ++i) {
        for (std::size_t j = 0; j < kernel.n; ++j) {
            out << i << ',' << j << ',' << format_double(kernel(i, j)) << '\n';
        }
    }
}

}  // namespace manifold_align
