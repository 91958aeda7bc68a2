#include "manifold_align/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "manifold_align/error.hpp"
#include "manifold_align/matrix_io.hpp"
#include "manifold_align/parallel.hpp"

namespace manifold_align {

namespace {

double median_of(std::vector<double> values) {
    const std::size_t m = values.size();
    const auto mid = values.begin() + static_cast<std::ptrdiff_t>(m / 2);
    std::nth_element(values.begin(), mid, values.end());
    const double upper = *mid;
    if (m % 2 == 1) return upper;
    const double lower = *std::max_element(values.begin(), mid);
    return 0.5 * (lower + upper);
}

double rbf_entry(double dist, double sigma, RbfForm form) {
    const double two_sigma_sq = 2.0 * sigma * sigma;
    return form == RbfForm::Squared ? std::exp(-dist * dist / two_sigma_sq) : std::exp(-dist / two_sigma_sq);
}

}  // namespace

SigmaPolicy SigmaPolicy::scaled_median(double delta) {
    if (!(delta > 0.0) || !std::isfinite(delta)) {
        fail(ErrorCode::InvalidParameter, "median scale delta must be positive");
    }
    return {Kind::ScaledMedian, delta};
}

SigmaPolicy SigmaPolicy::explicit_sigma(double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) fail(ErrorCode::InvalidParameter, "sigma must be positive");
    return {Kind::Explicit, sigma};
}

SigmaPolicy SigmaPolicy::parse(const std::string& text) {
    if (text == "median") return median();
    const auto number = [&](const std::string& s) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != s.size() || s.empty()) fail(ErrorCode::InvalidParameter, "cannot parse sigma policy '" + text + "'");
        return v;
    };
    if (text.rfind("delta:", 0) == 0) return scaled_median(number(text.substr(6)));
    return explicit_sigma(number(text));
}

std::string SigmaPolicy::describe() const {
    switch (kind) {
        case Kind::Median: return "median";
        case Kind::ScaledMedian: return "delta:" + format_double(value);
        case Kind::Explicit: return format_double(value);
    }
    return {};
}

DenseKernel linear_kernel(const FeatureMatrix& x) {
    const std::size_t n = x.n_samples();
    DenseKernel k(n);
    parallel_for(0, n, [&](std::size_t i) {
        const auto xi = x.row(i);
        for (std::size_t j = i; j < n; ++j) {
            const auto xj = x.row(j);
            double dot = 0.0;
            for (std::size_t f = 0; f < xi.size(); ++f) dot += xi[f] * xj[f];
            k(i, j) = dot;
            k(j, i) = dot;
        }
    });
    return k;
}

double median_distance(const DistanceMatrix& d) {
    if (d.n < 2) fail(ErrorCode::InvalidParameter, "median distance needs at least two points");
    std::vector<double> upper;
    upper.reserve(d.n * (d.n - 1) / 2);
    for (std::size_t i = 0; i < d.n; ++i) {
        for (std::size_t j = i + 1; j < d.n; ++j) upper.push_back(d(i, j));
    }
    return median_of(std::move(upper));
}

double resolve_sigma(const DistanceMatrix& d, const SigmaPolicy& policy) {
    if (policy.kind == SigmaPolicy::Kind::Explicit) return policy.value;
    const double m = median_distance(d);
    if (!(m > 0.0)) fail(ErrorCode::ZeroMedian, "median pairwise distance is zero (all points identical)");
    return policy.kind == SigmaPolicy::Kind::Median ? m : policy.value * m;
}

DenseKernel rbf_kernel(const DistanceMatrix& d, double sigma, RbfForm form) {
    if (!(sigma > 0.0)) fail(ErrorCode::InvalidParameter, "sigma must be positive");
    DenseKernel k(d.n);
    parallel_for(0, d.n, [&](std::size_t i) {
        for (std::size_t j = 0; j < d.n; ++j) k(i, j) = i == j ? 1.0 : rbf_entry(d(i, j), sigma, form);
    });
    return k;
}

DenseKernel rbf_kernel(const FeatureMatrix& x, const SigmaPolicy& policy, RbfForm form) {
    const auto d = pairwise_distances(x);
    return rbf_kernel(d, resolve_sigma(d, policy), form);
}

SparseRowKernel knn_rbf_kernel(const KnnGraph& g, KnnRbfOptions options) {
    const double sigma = median_of(g.distances);
    if (!(sigma > 0.0)) fail(ErrorCode::ZeroMedian, "median retained neighbor distance is zero");

    SparseRowKernel kernel;
    kernel.n = g.n;
    kernel.k = g.k;
    kernel.diagonal = options.zero_diagonal ? 0.0 : 1.0;
    kernel.columns.resize(g.n * g.k);
    kernel.weights.resize(g.n * g.k);
    kernel.clamped.assign(g.n, 0);

    parallel_for(0, g.n, [&](std::size_t i) {
        std::vector<std::pair<std::uint32_t, double>> entries(g.k);
        const auto nbrs = g.row_neighbors(i);
        const auto dists = g.row_distances(i);
        for (std::size_t r = 0; r < g.k; ++r) {
            const double w = options.form == RbfForm::Squared ? rbf_entry(dists[r], sigma, RbfForm::Squared)
                                                              : std::exp(-dists[r] / (2.0 * sigma));
            entries[r] = {nbrs[r], w};
        }
        std::sort(entries.begin(), entries.end());
        for (std::size_t r = 0; r < g.k; ++r) {
            kernel.columns[i * g.k + r] = entries[r].first;
            kernel.weights[i * g.k + r] = entries[r].second;
        }
    });
    return kernel;
}

SparseRowKernel knn_rbf_kernel(const FeatureMatrix& x, std::size_t k, KnnRbfOptions options) {
    return knn_rbf_kernel(knn_graph(pairwise_distances(x), k), options);
}

DenseKernel symmetrize_tconorm(const SparseRowKernel& kernel) {
    const auto a = to_dense(kernel);
    DenseKernel s(kernel.n);
    for (std::size_t i = 0; i < kernel.n; ++i) {
        for (std::size_t j = i; j < kernel.n; ++j) {
            const double forward = a(i, j);
            const double backward = a(j, i);
            const double v = forward + backward - forward * backward;
            s(i, j) = v;
            s(j, i) = v;
        }
    }
    return s;
}

}  // namespace manifold_align
