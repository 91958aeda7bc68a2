#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "manifold_align/alignment.hpp"
#include "manifold_align/bench.hpp"
#include "manifold_align/kernels.hpp"
#include "manifold_align/metric.hpp"
#include "manifold_align/neighbors.hpp"
#include "manifold_align/synthgen.hpp"

namespace ma = manifold_align;
namespace bench = manifold_align::bench;
namespace synth = manifold_align::synth;
namespace fs = std::filesystem;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id;
    std::string name;
    double budget_s;
    std::function<Verdict()> check;
};

std::string fmt(const char* format, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, format, v);
    return buf;
}

std::vector<bench::ResultRow> select(const std::vector<bench::ResultRow>& rows, bench::RowKind kind,
                                     std::optional<ma::Metric> metric = std::nullopt) {
    std::vector<bench::ResultRow> out;
    for (const auto& r : rows) {
        if (r.kind == kind && (!metric || r.metric == *metric)) out.push_back(r);
    }
    return out;
}

Verdict fast_matches_naive() {
    double worst = 0.0;
    int instances = 0;
    std::size_t clamped = 0;
    for (std::size_t k : {5U, 15U, 50U}) {
        for (std::size_t d : {2U, 50U}) {
            for (std::uint64_t rep = 0; rep < 4; ++rep, ++instances) {
                const std::uint64_t seed = 100 * k + 10 * d + rep;
                const auto kx = ma::manifold_kernel(synth::gaussian_spot(200, d, synth::derive_seed(seed, 0)), k);
                const auto ky = ma::manifold_kernel(synth::gaussian_spot(200, d, synth::derive_seed(seed, 1)), k);
                clamped += kx.clamped_count() + ky.clamped_count();
                const auto fast = ma::mka_fast(kx, ky);
                if (fast.path != ma::MkaPath::Fast) return {false, "fast path not taken"};
                worst = std::max(worst, std::abs(fast.value - ma::mka_naive(kx, ky)));
            }
        }
    }
    return {instances >= 20 && clamped == 0 && worst <= 1e-9,
            std::to_string(instances) + " instances, clamped rows " + std::to_string(clamped) +
                ", max |fast - naive| = " + fmt("%.3e", worst)};
}

Verdict strict_unit_interval() {
    double lo = 1.0;
    double hi = 0.0;
    bool ok = true;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const auto [x, y] = synth::lost_correspondence(1000, 100, synth::derive_seed(seed, 0), synth::derive_seed(seed, 1));
        const double v = ma::mka_fast(ma::manifold_kernel(x, 100), ma::manifold_kernel(y, 100)).value;
        ok = ok && v > 0.0 && v < 1.0;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return {ok, "50 pairs, MKA in [" + fmt("%.6f", lo) + ", " + fmt("%.6f", hi) + "]"};
}

Verdict self_and_symmetry() {
    const auto x = synth::gaussian_spot(300, 10, 1);
    const auto y = synth::perturb(x, 1.0, 2);
    const ma::Representation rx(x);
    const ma::Representation ry(y);
    ma::MetricParams params;
    params.k = 15;
    double self_err = 0.0;
    double sym_err = 0.0;
    for (auto metric : {ma::Metric::Mka, ma::Metric::Cka, ma::Metric::CkaRbf, ma::Metric::Kcka, ma::Metric::CkaSym}) {
        self_err = std::max(self_err, std::abs(ma::align(rx, rx, metric, params).value - 1.0));
        self_err = std::max(self_err, std::abs(ma::align(ry, ry, metric, params).value - 1.0));
        sym_err = std::max(sym_err, std::abs(ma::align(rx, ry, metric, params).value -
                                             ma::align(ry, rx, metric, params).value));
    }
    return {self_err <= 1e-12 && sym_err <= 1e-12,
            "max |self - 1| = " + fmt("%.3e", self_err) + ", max asymmetry = " + fmt("%.3e", sym_err)};
}

Verdict row_sums() {
    double worst = 0.0;
    std::size_t rows = 0;
    std::size_t clamped = 0;
    for (std::size_t k : {15U, 100U}) {
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            const auto kernel = ma::manifold_kernel(synth::gaussian_spot(500, 10, seed), k);
            const double target = ma::manifold_row_sum(k);
            for (std::size_t i = 0; i < kernel.n; ++i) {
                ++rows;
                if (kernel.clamped[i] != 0) {
                    ++clamped;
                    continue;
                }
                worst = std::max(worst, std::abs(kernel.row_sum(i) - target));
            }
        }
    }
    const double share = 1.0 - static_cast<double>(clamped) / static_cast<double>(rows);
    return {worst <= 1e-6 && share >= 0.99,
            "max |row sum - D| = " + fmt("%.3e", worst) + ", non-clamped " + fmt("%.4f", 100.0 * share) + "%"};
}

Verdict swiss_s_peak() {
    bench::BenchOptions o;
    o.experiment = bench::Experiment::SwissS;
    o.n = 1000;
    o.ks = {15, 100, 300};
    o.seeds = {1, 2, 3};
    const auto rows = bench::run(o);
    bool ok = true;
    std::string detail = "argmax r of seed-mean MKA:";
    for (std::size_t k : o.ks) {
        double best = -1.0;
        double best_r = 0.0;
        for (const auto& r : select(rows, bench::RowKind::Mean)) {
            if (*r.k == k && r.score > best) {
                best = r.score;
                best_r = *r.r;
            }
        }
        ok = ok && std::abs(best_r - 0.5) <= 0.05 + 1e-9;
        detail += " k=" + std::to_string(k) + " -> " + fmt("%.2f", best_r);
    }
    std::map<std::pair<std::size_t, std::uint64_t>, std::pair<double, double>> per_seed;
    for (const auto& r : select(rows, bench::RowKind::Score)) {
        auto& slot = per_seed[{*r.k, *r.seed}];
        if (slot.second == 0.0 || r.score > slot.first) slot = {r.score, *r.r};
    }
    detail += "; per seed:";
    for (const auto& [key, value] : per_seed) detail += " " + fmt("%.2f", value.second);
    return {ok, detail};
}

Verdict ranking(bench::Experiment experiment, std::size_t n, std::vector<std::size_t> ks, double threshold) {
    bench::BenchOptions o;
    o.experiment = experiment;
    o.n = n;
    o.ks = std::move(ks);
    o.seeds = {1, 2, 3};
    const auto rows = bench::run(o);
    double weakest = 1.0;
    std::string detail;
    for (std::size_t k : o.ks) {
        double weakest_k = 1.0;
        for (const auto& r : select(rows, bench::RowKind::Tau)) {
            if (*r.k == k) weakest_k = std::min(weakest_k, std::abs(r.score));
        }
        weakest = std::min(weakest, weakest_k);
        detail += (detail.empty() ? "" : " ") + ("k=" + std::to_string(k) + " min|tau|=" + fmt("%.3f", weakest_k));
    }
    return {weakest >= threshold, detail};
}

Verdict clusters_ranking() {
    auto v = ranking(bench::Experiment::Clusters, 300, {10, 50, 100, 200, 299}, 0.8);
    v.detail += "; k=400 exceeds n - 1 = 299, largest admissible k used";
    return v;
}

std::vector<bench::ResultRow> perturbation_sweep(std::vector<ma::Metric> metrics) {
    bench::BenchOptions o;
    o.experiment = bench::Experiment::GaussPerturb;
    o.n = 1000;
    o.d = 100;
    o.scale = 0.5;
    o.ks = {10, 25, 50, 100, 200};
    o.seeds = {1, 2, 3, 4, 5};
    o.metrics = std::move(metrics);
    return bench::run(o);
}

Verdict k_robustness() {
    const auto rows = perturbation_sweep({ma::Metric::Mka});
    std::vector<double> means;
    std::string detail = "mean MKA per k:";
    for (const auto& r : select(rows, bench::RowKind::Mean)) {
        means.push_back(r.score);
        detail += " " + fmt("%.4f", r.score);
    }
    double mu = 0.0;
    for (double m : means) mu += m;
    mu /= static_cast<double>(means.size());
    double var = 0.0;
    for (double m : means) var += (m - mu) * (m - mu);
    const double sd = std::sqrt(var / static_cast<double>(means.size() - 1));
    return {means.size() == 5 && sd <= 0.05, detail + "; std = " + fmt("%.4f", sd)};
}

Verdict translation() {
    bench::BenchOptions o;
    o.experiment = bench::Experiment::UniformTranslate;
    o.n_per = 500;
    o.d = 100;
    o.t_grid = {1, 10, 50};
    o.ks = {100};
    o.seeds = {1, 2, 3, 4, 5};
    o.metrics = {ma::Metric::Mka, ma::Metric::CkaRbf};
    o.deltas = {1.0};
    const auto rows = bench::run(o);
    std::map<double, double> mka;
    std::map<double, double> cka;
    for (const auto& r : select(rows, bench::RowKind::Mean)) {
        (r.metric == ma::Metric::Mka ? mka : cka)[*r.t] = r.score;
    }
    double lo = 1.0;
    double hi = 0.0;
    std::string detail = "mean MKA per t:";
    for (const auto& [t, v] : mka) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        detail += " " + fmt("%.4f", v);
    }
    detail += "; range " + fmt("%.4f", hi - lo) + "; at t=50 MKA " + fmt("%.4f", mka[50.0]) + " vs CKA(sigma=M) " +
              fmt("%.4f", cka[50.0]);
    return {mka.size() == 3 && hi - lo <= 0.05 && mka[50.0] > cka[50.0], detail};
}

Verdict bandwidth_convergence() {
    const auto [x, y] = synth::lost_correspondence(300, 20, 11, 12);
    const ma::Representation rx(x);
    const ma::Representation ry(y);
    const double linear = ma::align(rx, ry, ma::Metric::Cka).value;
    std::map<double, double> gap;
    for (double c : {1.0, 10.0, 100.0}) {
        ma::MetricParams params;
        params.sigma = ma::SigmaPolicy::scaled_median(c);
        params.rbf_form = ma::RbfForm::Squared;
        gap[c] = std::abs(ma::align(rx, ry, ma::Metric::CkaRbf, params).value - linear);
    }
    return {gap[100.0] <= gap[1.0] && gap[100.0] <= 0.02,
            "|CKA_rbf - CKA_lin| at c=1,10,100: " + fmt("%.3e", gap[1.0]) + " " + fmt("%.3e", gap[10.0]) + " " +
                fmt("%.3e", gap[100.0])};
}

Verdict symmetrized_consistency() {
    const auto rows = perturbation_sweep({ma::Metric::Mka, ma::Metric::CkaSym});
    std::map<std::pair<std::size_t, std::uint64_t>, double> mka;
    std::map<std::pair<std::size_t, std::uint64_t>, double> sym;
    for (const auto& r : select(rows, bench::RowKind::Score)) {
        (r.metric == ma::Metric::Mka ? mka : sym)[{*r.k, *r.seed}] = r.score;
    }
    std::vector<double> a;
    std::vector<double> b;
    for (const auto& [key, v] : mka) {
        a.push_back(v);
        b.push_back(sym.at(key));
    }
    const auto mean = [](const std::vector<double>& v) {
        double s = 0.0;
        for (double x : v) s += x;
        return s / static_cast<double>(v.size());
    };
    const double ma_ = mean(a);
    const double mb = mean(b);
    double sab = 0.0;
    double saa = 0.0;
    double sbb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sab += (a[i] - ma_) * (b[i] - mb);
        saa += (a[i] - ma_) * (a[i] - ma_);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    const double r = sab / std::sqrt(saa * sbb);
    return {r >= 0.9, std::to_string(a.size()) + " (k, seed) cells, Pearson r = " + fmt("%.4f", r)};
}

int run_shell(const std::string& command) {
    const int raw = std::system(command.c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

std::string score_columns(const fs::path& csv) {
    std::ifstream in(csv);
    std::string line;
    std::string kept;
    while (std::getline(in, line)) kept += line.substr(0, line.rfind(',')) + "\n";
    return kept;
}

Verdict cli_determinism() {
    const fs::path dir = fs::temp_directory_path() / "manifold_align_acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const std::string cli = MANIFOLD_ALIGN_CLI_PATH;
    const std::vector<std::string> invocations = {
        "bench rings --n 200 --k 10,50 --seeds 2",
        "bench gauss-perturb --n 300 --d 20 --k 10,25 --seeds 3 --metrics mka,cka,cka-rbf,kcka,cka-sym",
        "bench swiss-s --n 300 --k 15 --seeds 2 --r 0.3:0.7:0.1",
    };
    bool ok = true;
    std::size_t lines = 0;
    for (std::size_t i = 0; i < invocations.size(); ++i) {
        const auto a = dir / ("a" + std::to_string(i) + ".csv");
        const auto b = dir / ("b" + std::to_string(i) + ".csv");
        const int sa = run_shell("MANIFOLD_ALIGN_THREADS=1 " + cli + " " + invocations[i] + " --out " + a.string());
        const int sb = run_shell("MANIFOLD_ALIGN_THREADS=3 " + cli + " " + invocations[i] + " --out " + b.string());
        const auto ca = score_columns(a);
        ok = ok && sa == 0 && sb == 0 && !ca.empty() && ca == score_columns(b);
        lines += static_cast<std::size_t>(std::count(ca.begin(), ca.end(), '\n'));
    }
    fs::remove_all(dir);
    return {ok, std::to_string(invocations.size()) + " invocations run twice (1 and 3 threads), " +
                    std::to_string(lines) + " lines compared"};
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "fast closed-form MKA equals dense row-centered MKA", 10, fast_matches_naive},
        {2, "MKA strictly inside (0, 1) when D < sqrt(N)", 60, strict_unit_interval},
        {3, "self-alignment and symmetry across metrics", 5, self_and_symmetry},
        {4, "calibrated rows sum to 1 + log2(k)", 10, row_sums},
        {5, "swiss roll vs s-curve peaks at r = 0.5", 180, swiss_s_peak},
        {6, "rings ranking |tau| >= 0.9", 120,
         [] { return ranking(bench::Experiment::Rings, 500, {10, 50, 100, 200, 400}, 0.9); }},
        {7, "clusters ranking |tau| >= 0.8", 120, clusters_ranking},
        {8, "k-robustness under perturbation", 180, k_robustness},
        {9, "translation robustness of uniform spots", 180, translation},
        {10, "RBF CKA approaches linear CKA as bandwidth grows", 30, bandwidth_convergence},
        {11, "CKA on t-conorm-symmetrized kernels tracks MKA", 180, symmetrized_consistency},
        {12, "bench CLI is deterministic", 60, cli_determinism},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.check();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_budget = seconds <= c.budget_s;
        const bool pass = v.pass && in_budget;
        failures += pass ? 0 : 1;
        std::printf("[%s] %2d %s: %s (%.1f s, budget %.0f s%s)\n", pass ? "PASS" : "FAIL", c.id, c.name.c_str(),
                    v.detail.c_str(), seconds, c.budget_s, in_budget ? "" : ", over budget");
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
