#pragma once

#include <cstddef>
#include <string>

#include "manifold_align/feature_matrix.hpp"
#include "manifold_align/kernel_types.hpp"
#include "manifold_align/neighbors.hpp"

namespace manifold_align {

// Bandwidth selection for RBF kernels. M is the median pairwise distance.
struct SigmaPolicy {
    enum class Kind { Median, ScaledMedian, Explicit };

    Kind kind = Kind::Median;
    double value = 1.0;  // delta for ScaledMedian, sigma for Explicit

    static SigmaPolicy median() { return {Kind::Median, 1.0}; }
    static SigmaPolicy scaled_median(double delta);
    static SigmaPolicy explicit_sigma(double sigma);

    // Parses "median", "delta:<d>" or a positive number.
    static SigmaPolicy parse(const std::string& text);
    std::string describe() const;
};

// Exponent form of the Gaussian. Unsquared is exp(-d / (2 sigma^2)), the
// form the alignment literature writes; Squared is the textbook
// exp(-d^2 / (2 sigma^2)).
enum class RbfForm { Unsquared, Squared };

DenseKernel linear_kernel(const FeatureMatrix& x);

// Median of the strict upper triangle; n >= 2.
double median_distance(const DistanceMatrix& d);

// Resolves the policy against the distances; throws ZeroMedian when a
// median-based policy meets all-identical points.
double resolve_sigma(const DistanceMatrix& d, const SigmaPolicy& policy);

DenseKernel rbf_kernel(const DistanceMatrix& d, double sigma, RbfForm form = RbfForm::Unsquared);
DenseKernel rbf_kernel(const FeatureMatrix& x, const SigmaPolicy& policy, RbfForm form = RbfForm::Unsquared);

struct KnnRbfOptions {
    RbfForm form = RbfForm::Unsquared;
    bool zero_diagonal = false;
};

// Sparsified RBF used by kCKA: exp(-d / (2 sigma)) on each row's k nearest
// neighbors with sigma the median of all retained neighbor distances.
// Under RbfForm::Squared the entry is exp(-d^2 / (2 sigma^2)).
SparseRowKernel knn_rbf_kernel(const KnnGraph& graph, KnnRbfOptions options = {});
SparseRowKernel knn_rbf_kernel(const FeatureMatrix& x, std::size_t k, KnnRbfOptions options = {});

// Probabilistic t-conorm a + b - ab of K and its transpose.
DenseKernel symmetrize_tconorm(const SparseRowKernel& kernel);

}  // namespace manifold_align
