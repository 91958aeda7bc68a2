#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace manifold_align {

// Dense row-major N x d matrix, one row per sample. Construction validates
// shape and finiteness, so every live FeatureMatrix satisfies its invariants.
class FeatureMatrix {
public:
    FeatureMatrix(std::size_t n_samples, std::size_t n_features, std::vector<double> data);

    // All-zero matrix.
    static FeatureMatrix zeros(std::size_t n_samples, std::size_t n_features);

    std::size_t n_samples() const noexcept { return n_samples_; }
    std::size_t n_features() const noexcept { return n_features_; }

    double operator()(std::size_t i, std::size_t f) const noexcept {
        return data_[i * n_features_ + f];
    }

    std::span<const double> row(std::size_t i) const noexcept {
        return {data_.data() + i * n_features_, n_features_};
    }

    std::span<const double> data() const noexcept { return data_; }

    friend bool operator==(const FeatureMatrix&, const FeatureMatrix&) = default;

private:
    std::size_t n_samples_;
    std::size_t n_features_;
    std::vector<double> data_;
};

}  // namespace manifold_align
