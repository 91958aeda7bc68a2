#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace manifold_align {

// Dense N x N kernel, row-major.
struct DenseKernel {
    std::size_t n = 0;
    std::vector<double> values;

    DenseKernel() = default;
    explicit DenseKernel(std::size_t size) : n(size), values(size * size, 0.0) {}

    double& operator()(std::size_t i, std::size_t j) noexcept { return values[i * n + j]; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return values[i * n + j]; }
    std::span<const double> row(std::size_t i) const noexcept { return {values.data() + i * n, n}; }
};

// Row-sparse, generally non-symmetric kernel: a shared diagonal value plus
// exactly k off-diagonal entries per row. Row entries are stored CSR-style
// with strictly increasing column indices.
struct SparseRowKernel {
    std::size_t n = 0;
    std::size_t k = 0;
    double diagonal = 1.0;
    std::vector<std::uint32_t> columns;  // n * k
    std::vector<double> weights;         // n * k
    // Constant row sum the construction targets (manifold kernels only).
    std::optional<double> declared_row_sum;
    // Rows whose bandwidth hit a clamp and may miss declared_row_sum.
    std::vector<std::uint8_t> clamped;

    std::span<const std::uint32_t> row_columns(std::size_t i) const noexcept {
        return {columns.data() + i * k, k};
    }
    std::span<const double> row_weights(std::size_t i) const noexcept {
        return {weights.data() + i * k, k};
    }

    double row_sum(std::size_t i) const noexcept;
    // max_i |row_sum(i) - D|; requires declared_row_sum.
    double max_row_sum_deviation() const;
    std::size_t clamped_count() const noexcept;
    double at(std::size_t i, std::size_t j) const noexcept;
};

DenseKernel to_dense(const SparseRowKernel& kernel);

// Debug dumps: one "i,j,value" line per stored entry (sparse) or per cell (dense).
void write_kernel_csv(const SparseRowKernel& kernel, std::ostream& out);
void write_kernel_csv(const DenseKernel& kernel, std::ostream& out);

}  // namespace manifold_align
