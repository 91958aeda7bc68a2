#include "manifold_align/feature_matrix.hpp"

#include <cmath>
#include <string>

#include "manifold_align/error.hpp"

namespace manifold_align {

FeatureMatrix::FeatureMatrix(std::size_t n_samples, std::size_t n_features, std::vector<double> data)
    : n_samples_(n_samples), n_features_(n_features), data_(std::move(data)) {
    if (n_samples_ == 0 || n_features_ == 0) {
        fail(ErrorCode::InvalidParameter, "feature matrix needs at least one sample and one feature");
    }
    if (data_.size() != n_samples_ * n_features_) {
        fail(ErrorCode::DimensionMismatch,
             "feature matrix data length " + std::to_string(data_.size()) + " != " +
                 std::to_string(n_samples_) + " x " + std::to_string(n_features_));
    }
    for (std::size_t idx = 0; idx < data_.size(); ++idx) {
        if (!std::isfinite(data_[idx])) {
            fail(ErrorCode::NonFiniteValue, "non-finite value at row " + std::to_string(idx / n_features_) +
                                                ", column " + std::to_string(idx % n_features_));
        }
    }
}

FeatureMatrix FeatureMatrix::zeros(std::size_t n_samples, std::size_t n_features) {
    return FeatureMatrix(n_samples, n_features, std::vector<double>(n_samples * n_features, 0.0));
}

}  // namespace manifold_align
