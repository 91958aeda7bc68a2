#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "manifold_align/feature_matrix.hpp"
#include "manifold_align/kernels.hpp"
#include "manifold_align/neighbors.hpp"

namespace manifold_align {

enum class Metric {
    Cka,     // linear-kernel CKA
    CkaRbf,  // dense RBF CKA with a sigma policy
    Kcka,    // CKA on k-NN sparsified RBF kernels
    Mka,     // manifold-approximated kernel alignment
    CkaSym,  // CKA on t-conorm-symmetrized manifold kernels
};

// Accepts "cka", "cka-rbf", "kcka", "mka", "cka-sym" (underscores allowed).
Metric parse_metric(std::string_view name);
std::string_view to_string(Metric metric) noexcept;
bool uses_k(Metric metric) noexcept;

struct MetricParams {
    std::size_t k = 15;
    SigmaPolicy sigma = SigmaPolicy::median();
    RbfForm rbf_form = RbfForm::Unsquared;
    bool kcka_zero_diagonal = false;
};

struct AlignmentReport {
    Metric metric = Metric::Mka;
    MetricParams params;
    double value = 0.0;
    std::string path;  // "fast" / "naive" / "row-centered" for MKA, "dense" otherwise
};

// Features plus their distance matrix, so several metrics over the same data
// share one O(n^2 d) pass.
struct Representation {
    explicit Representation(FeatureMatrix x);

    FeatureMatrix features;
    DistanceMatrix distances;
};

AlignmentReport align(const Representation& x, const Representation& y, Metric metric,
                      const MetricParams& params = {});
AlignmentReport align(const FeatureMatrix& x, const FeatureMatrix& y, Metric metric,
                      const MetricParams& params = {});

}  // namespace manifold_align
