// manifold-align: compute alignment metrics, generate synthetic datasets and
// run experiment sweeps.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "manifold_align/bench.hpp"
#include "manifold_align/error.hpp"
#include "manifold_align/matrix_io.hpp"
#include "manifold_align/metric.hpp"
#include "manifold_align/synthgen.hpp"

namespace ma = manifold_align;
namespace fs = std::filesystem;

namespace {

struct AlignArgs {
    std::string x_path;
    std::string y_path;
    std::string metric = "mka";
    std::size_t k = 15;
    std::string sigma = "median";
    std::optional<double> delta;
    bool rbf_squared = false;
    bool kcka_zero_diagonal = false;
    std::string format = "auto";
    bool header = false;
};

struct GenArgs {
    std::string kind;
    std::size_t n = 1000;
    std::size_t d = 2;
    std::size_t n_per = 500;
    double r = 0.5;
    double t = 0.0;
    double scale = 0.5;
    int stage = 5;
    int c = 1;
    std::uint64_t seed = 0;
    std::optional<std::uint64_t> seed_b;
    std::string in_path;
    std::string out_path;
    std::string out_b_path;
    std::string format = "auto";
    bool header = false;
};

struct BenchArgs {
    std::string experiment;
    std::optional<std::size_t> n;
    std::optional<std::size_t> d;
    std::optional<std::size_t> n_per;
    std::string ks;
    std::string metrics;
    std::string deltas;
    std::string r_grid;
    std::string t_grid;
    std::string multipliers;
    std::optional<double> scale;
    std::optional<std::size_t> seeds;
    std::string seed_list;
    bool rbf_squared = false;
    bool kcka_zero_diagonal = false;
    std::string out_path;
};

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

void write_matrix(const ma::FeatureMatrix& m, const std::string& path, const std::string& format) {
    if (path.empty() || path == "-") {
        if (format == "bin") {
            ma::write_bin(m, std::cout);
        } else {
            ma::write_csv(m, std::cout);
        }
        return;
    }
    ma::save_matrix(m, path, ma::parse_matrix_format(format));
}

int run_align(const AlignArgs& a) {
    const auto format = ma::parse_matrix_format(a.format);
    const ma::CsvOptions csv{a.header};
    const auto x = ma::load_matrix(a.x_path, format, csv);
    const auto y = ma::load_matrix(a.y_path, format, csv);

    ma::MetricParams params;
    params.k = a.k;
    params.sigma = a.delta ? ma::SigmaPolicy::scaled_median(*a.delta) : ma::SigmaPolicy::parse(a.sigma);
    params.rbf_form = a.rbf_squared ? ma::RbfForm::Squared : ma::RbfForm::Unsquared;
    params.kcka_zero_diagonal = a.kcka_zero_diagonal;

    const auto report = ma::align(x, y, ma::parse_metric(a.metric), params);
    std::printf("%.12f\n", report.value);
    return 0;
}

int run_gen(const GenArgs& g) {
    namespace synth = ma::synth;
    const auto& kind = g.kind;
    if (kind == "swiss") {
        write_matrix(synth::swiss_roll(g.n, g.seed).points, g.out_path, g.format);
    } else if (kind == "s-curve") {
        write_matrix(synth::s_curve(g.n, g.r, g.seed).points, g.out_path, g.format);
    } else if (kind == "gauss") {
        write_matrix(synth::gaussian_spot(g.n, g.d, g.seed), g.out_path, g.format);
    } else if (kind == "perturb") {
        if (g.in_path.empty()) ma::fail(ma::ErrorCode::InvalidParameter, "gen perturb needs --in");
        const auto x = ma::load_matrix(g.in_path, ma::MatrixFormat::Auto, {g.header});
        write_matrix(synth::perturb(x, g.scale, g.seed), g.out_path, g.format);
    } else if (kind == "lost") {
        if (g.out_b_path.empty()) ma::fail(ma::ErrorCode::InvalidParameter, "gen lost needs --out-b");
        const auto [a, b] = synth::lost_correspondence(g.n, g.d, g.seed, g.seed_b.value_or(g.seed + 1));
        write_matrix(a, g.out_path, g.format);
        write_matrix(b, g.out_b_path, g.format);
    } else if (kind == "two-spots") {
        write_matrix(synth::uniform_two_spots(g.n_per, g.d, g.t, g.seed), g.out_path, g.format);
    } else if (kind == "rings") {
        write_matrix(synth::rings(g.n, g.stage, g.seed), g.out_path, g.format);
    } else if (kind == "clusters") {
        write_matrix(synth::clusters(g.n, g.c, g.seed), g.out_path, g.format);
    } else {
        ma::fail(ma::ErrorCode::InvalidParameter, "unknown dataset kind '" + kind + "'");
    }
    return 0;
}

int run_bench(const BenchArgs& b) {
    ma::bench::BenchOptions o;
    o.experiment = ma::bench::parse_experiment(b.experiment);
    o.n = b.n;
    o.d = b.d;
    o.n_per = b.n_per;
    o.scale = b.scale;
    if (!b.ks.empty()) o.ks = ma::bench::parse_count_grid(b.ks);
    for (const auto& m : split_list(b.metrics)) o.metrics.push_back(ma::parse_metric(m));
    if (!b.deltas.empty()) o.deltas = ma::bench::parse_grid(b.deltas);
    if (!b.r_grid.empty()) o.r_grid = ma::bench::parse_grid(b.r_grid);
    if (!b.t_grid.empty()) o.t_grid = ma::bench::parse_grid(b.t_grid);
    if (!b.multipliers.empty()) o.multipliers = ma::bench::parse_grid(b.multipliers);
    if (!b.seed_list.empty()) {
        for (auto s : ma::bench::parse_count_grid(b.seed_list)) o.seeds.push_back(s);
    } else if (b.seeds) {
        for (std::uint64_t s = 1; s <= *b.seeds; ++s) o.seeds.push_back(s);
    }
    o.rbf_form = b.rbf_squared ? ma::RbfForm::Squared : ma::RbfForm::Unsquared;
    o.kcka_zero_diagonal = b.kcka_zero_diagonal;

    if (b.out_path.empty() || b.out_path == "-") {
        const auto rows = ma::bench::run(o);
        ma::bench::write_csv(rows, o.experiment, std::cout);
        return 0;
    }

    // Rows land in a sibling file first so a failed run leaves nothing behind.
    const fs::path out(b.out_path);
    const fs::path partial = fs::path(b.out_path + ".partial");
    try {
        const auto rows = ma::bench::run(o);
        {
            std::ofstream file(partial, std::ios::binary | std::ios::trunc);
            if (!file) ma::fail(ma::ErrorCode::IoFailure, "cannot open '" + partial.string() + "' for writing");
            ma::bench::write_csv(rows, o.experiment, file);
            file.flush();
            if (!file) ma::fail(ma::ErrorCode::IoFailure, "write to '" + partial.string() + "' failed");
        }
        fs::rename(partial, out);
    } catch (...) {
        std::error_code ignored;
        fs::remove(partial, ignored);
        fs::remove(out, ignored);
        throw;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Manifold-approximated kernel alignment and CKA variants"};
    app.name("manifold-align");
    app.require_subcommand(1);

    AlignArgs align_args;
    auto* align = app.add_subcommand("align", "Alignment score between two feature matrices");
    align->add_option("--x", align_args.x_path, "First matrix (.csv or .mkaf)")->required();
    align->add_option("--y", align_args.y_path, "Second matrix")->required();
    align->add_option("--metric", align_args.metric, "mka | cka | cka-rbf | kcka | cka-sym")->capture_default_str();
    align->add_option("--k", align_args.k, "Neighbors for mka / kcka / cka-sym")->capture_default_str();
    align->add_option("--sigma", align_args.sigma, "RBF bandwidth: median | delta:<d> | <value>")
        ->capture_default_str();
    align->add_option("--delta", align_args.delta, "Shorthand for --sigma delta:<d>");
    align->add_flag("--rbf-squared", align_args.rbf_squared, "Use exp(-d^2 / 2 sigma^2)");
    align->add_flag("--kcka-zero-diagonal", align_args.kcka_zero_diagonal, "Zero the kCKA kernel diagonal");
    align->add_option("--format", align_args.format, "csv | bin | auto")->capture_default_str();
    align->add_flag("--header", align_args.header, "Skip the first CSV line");

    GenArgs gen_args;
    auto* gen = app.add_subcommand("gen", "Generate a synthetic dataset");
    gen->add_option("kind", gen_args.kind, "swiss | s-curve | gauss | perturb | lost | two-spots | rings | clusters")
        ->required();
    gen->add_option("--n", gen_args.n, "Sample count")->capture_default_str();
    gen->add_option("--d", gen_args.d, "Dimension (gauss, lost, two-spots)")->capture_default_str();
    gen->add_option("--n-per", gen_args.n_per, "Samples per spot (two-spots)")->capture_default_str();
    gen->add_option("--r", gen_args.r, "S-curve shape parameter in [0, 1]")->capture_default_str();
    gen->add_option("--t", gen_args.t, "Spot translation (two-spots)")->capture_default_str();
    gen->add_option("--scale", gen_args.scale, "Noise scale (perturb)")->capture_default_str();
    gen->add_option("--stage", gen_args.stage, "Ring stage 1..5")->capture_default_str();
    gen->add_option("--c", gen_args.c, "Cluster count 1..12")->capture_default_str();
    gen->add_option("--seed", gen_args.seed, "PRNG seed")->capture_default_str();
    gen->add_option("--seed-b", gen_args.seed_b, "Second seed (lost; default seed + 1)");
    gen->add_option("--in", gen_args.in_path, "Input matrix (perturb)");
    gen->add_option("--out", gen_args.out_path, "Output path (default: CSV on stdout)");
    gen->add_option("--out-b", gen_args.out_b_path, "Second output path (lost)");
    gen->add_option("--format", gen_args.format, "csv | bin | auto")->capture_default_str();
    gen->add_flag("--header", gen_args.header, "Skip the first line of the --in CSV");

    BenchArgs bench_args;
    auto* bench = app.add_subcommand("bench", "Run an experiment sweep and emit a result CSV");
    bench->add_option("experiment", bench_args.experiment,
                      "swiss-s | rings | clusters | gauss-perturb | gauss-lost | uniform-translate | "
                      "sigma-convergence")
        ->required();
    bench->add_option("--n", bench_args.n, "Sample count");
    bench->add_option("--d", bench_args.d, "Dimension");
    bench->add_option("--n-per", bench_args.n_per, "Samples per spot (uniform-translate)");
    bench->add_option("--k", bench_args.ks, "k grid, e.g. 10,50,100 or 10:100:10");
    bench->add_option("--metrics", bench_args.metrics, "Comma list of metrics");
    bench->add_option("--delta", bench_args.deltas, "cka-rbf median multipliers");
    bench->add_option("--r", bench_args.r_grid, "S-curve r grid (swiss-s)");
    bench->add_option("--t", bench_args.t_grid, "Translation grid (uniform-translate)");
    bench->add_option("--multipliers", bench_args.multipliers, "Median multipliers (sigma-convergence)");
    bench->add_option("--scale", bench_args.scale, "Perturbation scale (gauss-perturb)");
    bench->add_option("--seeds", bench_args.seeds, "Run seeds 1..N (default 5)");
    bench->add_option("--seed-list", bench_args.seed_list, "Explicit seed list, overrides --seeds");
    bench->add_flag("--rbf-squared", bench_args.rbf_squared, "Use exp(-d^2 / 2 sigma^2) for RBF kernels");
    bench->add_flag("--kcka-zero-diagonal", bench_args.kcka_zero_diagonal, "Zero the kCKA kernel diagonal");
    bench->add_option("--out", bench_args.out_path, "Result CSV (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*align) return run_align(align_args);
        if (*gen) return run_gen(gen_args);
        if (*bench) return run_bench(bench_args);
    } catch (const ma::Error& e) {
        std::cerr << "manifold-align: " << ma::to_string(e.code()) << ": " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "manifold-align: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
