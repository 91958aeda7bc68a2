#include "manifold_align/metric.hpp"

#include <algorithm>
#include <string>

#include "manifold_align/alignment.hpp"
#include "manifold_align/error.hpp"

namespace manifold_align {

Metric parse_metric(std::string_view name) {
    std::string key(name);
    std::replace(key.begin(), key.end(), '_', '-');
    if (key == "cka" || key == "cka-linear") return Metric::Cka;
    if (key == "cka-rbf") return Metric::CkaRbf;
    if (key == "kcka") return Metric::Kcka;
    if (key == "mka") return Metric::Mka;
    if (key == "cka-sym" || key == "cka-sym-manifold") return Metric::CkaSym;
    fail(ErrorCode::InvalidParameter, "unknown metric '" + std::string(name) + "'");
}

std::string_view to_string(Metric metric) noexcept {
    switch (metric) {
        case Metric::Cka: return "cka";
        case Metric::CkaRbf: return "cka-rbf";
        case Metric::Kcka: return "kcka";
        case Metric::Mka: return "mka";
        case Metric::CkaSym: return "cka-sym";
    }
    return "unknown";
}

bool uses_k(Metric metric) noexcept {
    return metric == Metric::Kcka || metric == Metric::Mka || metric == Metric::CkaSym;
}

Representation::Representation(FeatureMatrix x) : features(std::move(x)), distances(pairwise_distances(features)) {}

AlignmentReport align(const Representation& x, const Representation& y, Metric metric, const MetricParams& params) {
    const auto nx = x.features.n_samples();
    const auto ny = y.features.n_samples();
    if (nx != ny) {
        fail(ErrorCode::DimensionMismatch,
             "row counts differ: x has n = " + std::to_string(nx) + ", y has n = " + std::to_string(ny));
    }
    AlignmentReport report{metric, params, 0.0, "dense"};
    switch (metric) {
        case Metric::Cka:
            report.value = cka(linear_kernel(x.features), linear_kernel(y.features));
            break;
        case Metric::CkaRbf: {
            const auto kx = rbf_kernel(x.distances, resolve_sigma(x.distances, params.sigma), params.rbf_form);
            const auto ky = rbf_kernel(y.distances, resolve_sigma(y.distances, params.sigma), params.rbf_form);
            report.value = cka(kx, ky);
            break;
        }
        case Metric::Kcka: {
            const KnnRbfOptions options{params.rbf_form, params.kcka_zero_diagonal};
            const auto kx = knn_rbf_kernel(knn_graph(x.distances, params.k), options);
            const auto ky = knn_rbf_kernel(knn_graph(y.distances, params.k), options);
            report.value = cka(to_dense(kx), to_dense(ky));
            break;
        }
        case Metric::Mka: {
            const auto result = mka_fast(manifold_kernel(x.distances, params.k), manifold_kernel(y.distances, params.k));
            report.value = result.value;
            report.path = std::string(to_string(result.path));
            break;
        }
        case Metric::CkaSym:
            report.value = cka(symmetrize_tconorm(manifold_kernel(x.distances, params.k)),
                               symmetrize_tconorm(manifold_kernel(y.distances, params.k)));
            break;
    }
    return report;
}

AlignmentReport align(const FeatureMatrix& x, const FeatureMatrix& y, Metric metric, const MetricParams& params) {
    if (x.n_samples() != y.n_samples()) {
        fail(ErrorCode::DimensionMismatch, "row counts differ: x has n = " + std::to_string(x.n_samples()) +
                                               ", y has n = " + std::to_string(y.n_samples()));
    }
    return align(Representation(x), Representation(y), metric, params);
}

}  // namespace manifold_align
