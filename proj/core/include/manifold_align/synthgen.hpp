#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "manifold_align/feature_matrix.hpp"

namespace manifold_align::synth {

// Points on a 1-D curve together with the curve parameter of each point.
struct CurveSample {
    FeatureMatrix points;
    std::vector<double> t;
};

// Derives an independent stream seed from (seed, stream).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

// t ~ U[0, 1]; z = (3 pi / 2)(1 + 2t); (z cos z, z sin z).
CurveSample swiss_roll(std::size_t n, std::uint64_t seed);
// Same t draws as swiss_roll(n, seed); z = 3 pi (t - r); (sin z, sgn(z)(cos z - 1)).
CurveSample s_curve(std::size_t n, double r, std::uint64_t seed);

// Curve maps on an explicit parameter vector.
FeatureMatrix swiss_roll_from(const std::vector<double>& t);
FeatureMatrix s_curve_from(const std::vector<double>& t, double r);

// n x d i.i.d. N(0, 1).
FeatureMatrix gaussian_spot(std::size_t n, std::size_t d, std::uint64_t seed);

// x + scale * N(0, I), noise drawn from `seed` alone.
FeatureMatrix perturb(const FeatureMatrix& x, double scale, std::uint64_t seed);

// Two independent Gaussian spots.
std::pair<FeatureMatrix, FeatureMatrix> lost_correspondence(std::size_t n, std::size_t d, std::uint64_t seed_a,
                                                            std::uint64_t seed_b);

// 2 n_per x d: U(-0.5, 0.5)^d followed by U(-0.5, 0.5)^d + (1.1 + t, 0, ..., 0).
// The uniform draws do not depend on t.
FeatureMatrix uniform_two_spots(std::size_t n_per, std::size_t d, double t, std::uint64_t seed);

inline constexpr int kRingCount = 5;

// Five concentric rings of radius 0.5 .. 1.5. Each point carries a seeded ring
// label l in 1..5 and angle; at `stage` its radius is 0.5 + 0.25 (min(l, stage) - 1).
FeatureMatrix rings(std::size_t n, int stage, std::uint64_t seed);

inline constexpr int kMaxClusters = 12;
inline constexpr double kClusterRadius = 10.0;

// N(0, I_2) base draws; for c >= 2 contiguous index blocks are shifted to c
// centers spaced evenly on a circle of radius 10 starting at angle 0.
FeatureMatrix clusters(std::size_t n, int c, std::uint64_t seed);

}  // namespace manifold_align::synth
