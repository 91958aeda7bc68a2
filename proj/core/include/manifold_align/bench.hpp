#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "manifold_align/metric.hpp"

namespace manifold_align::bench {

enum class Experiment {
    SwissS,            // swiss roll vs s-curve over r
    Rings,             // collapsing rings vs the five-ring reference
    Clusters,          // c clusters vs the single-cluster reference
    GaussPerturb,      // gaussian spot vs its perturbation
    GaussLost,         // two independent gaussian spots
    UniformTranslate,  // two uniform spots at t = 0 vs translated by t
    SigmaConvergence,  // squared-RBF CKA at c * M vs linear CKA
};

Experiment parse_experiment(std::string_view name);
std::string_view to_string(Experiment experiment) noexcept;

// Comma-separated items, each a number or an inclusive "start:stop:step"
// range (stop admitted within 1e-12).
std::vector<double> parse_grid(std::string_view text);
std::vector<std::size_t> parse_count_grid(std::string_view text);

struct BenchOptions {
    Experiment experiment = Experiment::SwissS;
    // Unset fields fall back to the experiment's defaults (see defaults_for).
    std::optional<std::size_t> n;
    std::optional<std::size_t> d;
    std::optional<std::size_t> n_per;
    std::vector<std::size_t> ks;
    std::vector<Metric> metrics;
    std::vector<double> deltas;       // cka-rbf median multipliers
    std::vector<double> r_grid;       // swiss-s
    std::vector<double> t_grid;       // uniform-translate
    std::vector<double> multipliers;  // sigma-convergence
    std::optional<double> scale;      // gauss-perturb noise scale
    std::vector<std::uint64_t> seeds;
    RbfForm rbf_form = RbfForm::Unsquared;
    bool kcka_zero_diagonal = false;
};

// Fills every unset field with the experiment's default.
BenchOptions with_defaults(BenchOptions options);

enum class RowKind { Score, Mean, Std, Tau };
std::string_view to_string(RowKind kind) noexcept;

struct ResultRow {
    Experiment experiment = Experiment::SwissS;
    RowKind kind = RowKind::Score;
    Metric metric = Metric::Mka;
    std::optional<std::size_t> k;
    std::optional<double> delta;
    std::optional<double> r;
    std::optional<double> t;
    std::optional<std::size_t> d;
    std::size_t n = 0;
    std::optional<int> stage;
    std::optional<int> c;
    std::optional<std::uint64_t> seed;
    double score = 0.0;
    std::string path;
    std::optional<double> elapsed_ms;
};

// Runs the full (seed, configuration, metric, k/delta) grid. Score rows come
// in seed-major grid order, followed by per-configuration mean/std rows and,
// for rings and clusters, Kendall tau rows per (metric, k/delta): one per seed
// and one over the seed-averaged scores.
std::vector<ResultRow> run(const BenchOptions& options);

inline constexpr std::string_view kCsvColumns =
    "experiment,kind,metric,k,delta,r,t,d,n,stage,c,seed,score,path,elapsed_ms";

// "# manifold-align v1 <experiment>" comment, column header, then rows.
void write_csv(const std::vector<ResultRow>& rows, Experiment experiment, std::ostream& out);

}  // namespace manifold_align::bench
