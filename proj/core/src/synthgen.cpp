#include "manifold_align/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "manifold_align/error.hpp"

namespace manifold_align::synth {

namespace {

using Engine = std::mt19937_64;

void require(bool ok, const std::string& what) {
    if (!ok) fail(ErrorCode::InvalidParameter, what);
}

std::vector<double> uniform_parameters(std::size_t n, std::uint64_t seed) {
    Engine rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> t(n);
    for (auto& v : t) v = unit(rng);
    return t;
}

double signum(double z) { return z > 0.0 ? 1.0 : (z < 0.0 ? -1.0 : 0.0); }

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
    // splitmix64 finalizer over the combined key
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

FeatureMatrix swiss_roll_from(const std::vector<double>& t) {
    std::vector<double> data;
    data.reserve(2 * t.size());
    for (double ti : t) {
        const double z = 1.5 * std::numbers::pi * (1.0 + 2.0 * ti);
        data.push_back(z * std::cos(z));
        data.push_back(z * std::sin(z));
    }
    return FeatureMatrix(t.size(), 2, std::move(data));
}

FeatureMatrix s_curve_from(const std::vector<double>& t, double r) {
    require(r >= 0.0 && r <= 1.0, "s-curve shape parameter r must lie in [0, 1]");
    std::vector<double> data;
    data.reserve(2 * t.size());
    for (double ti : t) {
        const double z = 3.0 * std::numbers::pi * (ti - r);
        data.push_back(std::sin(z));
        data.push_back(signum(z) * (std::cos(z) - 1.0));
    }
    return FeatureMatrix(t.size(), 2, std::move(data));
}

CurveSample swiss_roll(std::size_t n, std::uint64_t seed) {
    require(n >= 1, "swiss roll needs n >= 1");
    auto t = uniform_parameters(n, seed);
    auto points = swiss_roll_from(t);
    return {std::move(points), std::move(t)};
}

CurveSample s_curve(std::size_t n, double r, std::uint64_t seed) {
    require(n >= 1, "s-curve needs n >= 1");
    auto t = uniform_parameters(n, seed);
    auto points = s_curve_from(t, r);
    return {std::move(points), std::move(t)};
}

FeatureMatrix gaussian_spot(std::size_t n, std::size_t d, std::uint64_t seed) {
    require(n >= 1 && d >= 1, "gaussian spot needs n >= 1 and d >= 1");
    Engine rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> data(n * d);
    for (auto& v : data) v = normal(rng);
    return FeatureMatrix(n, d, std::move(data));
}

FeatureMatrix perturb(const FeatureMatrix& x, double scale, std::uint64_t seed) {
    require(scale >= 0.0 && std::isfinite(scale), "perturbation scale must be >= 0");
    if (scale == 0.0) return x;
    Engine rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> data(x.data().begin(), x.data().end());
    for (auto& v : data) v += scale * normal(rng);
    return FeatureMatrix(x.n_samples(), x.n_features(), std::move(data));
}

std::pair<FeatureMatrix, FeatureMatrix> lost_correspondence(std::size_t n, std::size_t d, std::uint64_t seed_a,
                                                            std::uint64_t seed_b) {
    require(seed_a != seed_b, "lost correspondence needs two distinct seeds");
    return {gaussian_spot(n, d, seed_a), gaussian_spot(n, d, seed_b)};
}

FeatureMatrix uniform_two_spots(std::size_t n_per, std::size_t d, double t, std::uint64_t seed) {
    require(n_per >= 1 && d >= 1, "two spots need n_per >= 1 and d >= 1");
    require(t >= 0.0 && std::isfinite(t), "translation t must be >= 0");
    Engine rng(seed);
    std::uniform_real_distribution<double> centered(-0.5, 0.5);
    std::vector<double> data(2 * n_per * d);
    for (auto& v : data) v = centered(rng);
    const double shift = 1.1 + t;
    for (std::size_t i = n_per; i < 2 * n_per; ++i) data[i * d] += shift;
    return FeatureMatrix(2 * n_per, d, std::move(data));
}

FeatureMatrix rings(std::size_t n, int stage, std::uint64_t seed) {
    require(n >= static_cast<std::size_t>(kRingCount), "rings need n >= 5");
    require(stage >= 1 && stage <= kRingCount, "ring stage must lie in 1..5, got " + std::to_string(stage));
    Engine rng(seed);
    std::uniform_int_distribution<int> label(1, kRingCount);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::vector<double> data;
    data.reserve(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        const int ring = label(rng);
        const double theta = angle(rng);
        const double radius = 0.5 + 0.25 * static_cast<double>(std::min(ring, stage) - 1);
        data.push_back(radius * std::cos(theta));
        data.push_back(radius * std::sin(theta));
    }
    return FeatureMatrix(n, 2, std::move(data));
}

FeatureMatrix clusters(std::size_t n, int c, std::uint64_t seed) {
    require(c >= 1 && c <= kMaxClusters, "cluster count must lie in 1..12, got " + std::to_string(c));
    require(n >= static_cast<std::size_t>(c), "clusters need n >= c");
    auto base = gaussian_spot(n, 2, seed);
    if (c == 1) return base;
    std::vector<double> data(base.data().begin(), base.data().end());
    const auto groups = static_cast<std::size_t>(c);
    for (std::size_t g = 0; g < groups; ++g) {
        const std::size_t lo = g * n / groups;
        const std::size_t hi = (g + 1) * n / groups;
        const double phi = 2.0 * std::numbers::pi * static_cast<double>(g) / static_cast<double>(c);
        for (std::size_t i = lo; i < hi; ++i) {
            data[2 * i] += kClusterRadius * std::cos(phi);
            data[2 * i + 1] += kClusterRadius * std::sin(phi);
        }
    }
    return FeatureMatrix(n, 2, std::move(data));
}

}  // namespace manifold_align::synth
