#include "manifold_align/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <algorithm>
#include <ostream>
#include <string>

#include "manifold_align/alignment.hpp"
#include "manifold_align/error.hpp"
#include "manifold_align/matrix_io.hpp"
#include "manifold_align/synthgen.hpp"

namespace manifold_align::bench {

namespace {

constexpr double kGridSlack = 1e-12;

// One point of an experiment's configuration axis.
struct Config {
    std::optional<double> r = std::nullopt;
    std::optional<double> t = std::nullopt;
    std::optional<int> stage = std::nullopt;
    std::optional<int> c = std::nullopt;
};

struct Job {
    Metric metric;
    MetricParams params;
    std::optional<std::size_t> k;
    std::optional<double> delta;
};

struct Plan {
    std::vector<Config> configs;
    // Either a reference shared by every configuration of a seed plus a
    // per-configuration target, or an independent (x, y) pair per cell.
    std::function<FeatureMatrix(std::uint64_t)> reference;
    std::function<FeatureMatrix(std::uint64_t, const Config&)> target;
    std::function<std::pair<FeatureMatrix, FeatureMatrix>(std::uint64_t, const Config&)> pair;
};

double parse_number(std::string_view token) {
    const std::string s(token);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (s.empty() || used != s.size() || !std::isfinite(v)) {
        fail(ErrorCode::InvalidParameter, "cannot parse grid value '" + s + "'");
    }
    return v;
}

std::vector<int> int_range(int first, int last, int step) {
    std::vector<int> out;
    for (int v = first; step > 0 ? v <= last : v >= last; v += step) out.push_back(v);
    return out;
}

void require(bool ok, const std::string& what) {
    if (!ok) fail(ErrorCode::InvalidParameter, what);
}

Plan make_plan(const BenchOptions& o) {
    Plan plan;
    const std::size_t n = *o.n;
    switch (o.experiment) {
        case Experiment::SwissS:
            for (double r : o.r_grid) plan.configs.push_back({.r = r});
            plan.reference = [n](std::uint64_t seed) { return synth::swiss_roll(n, seed).points; };
            plan.target = [n](std::uint64_t seed, const Config& cfg) { return synth::s_curve(n, *cfg.r, seed).points; };
            break;
        case Experiment::Rings:
            for (int stage : int_range(synth::kRingCount, 1, -1)) plan.configs.push_back({.stage = stage});
            plan.reference = [n](std::uint64_t seed) { return synth::rings(n, synth::kRingCount, seed); };
            plan.target = [n](std::uint64_t seed, const Config& cfg) { return synth::rings(n, *cfg.stage, seed); };
            break;
        case Experiment::Clusters:
            for (int c : int_range(1, synth::kMaxClusters, 1)) plan.configs.push_back({.c = c});
            plan.reference = [n](std::uint64_t seed) { return synth::clusters(n, 1, seed); };
            plan.target = [n](std::uint64_t seed, const Config& cfg) { return synth::clusters(n, *cfg.c, seed); };
            break;
        case Experiment::UniformTranslate: {
            const std::size_t n_per = *o.n_per;
            const std::size_t d = *o.d;
            for (double t : o.t_grid) plan.configs.push_back({.t = t});
            plan.reference = [n_per, d](std::uint64_t seed) { return synth::uniform_two_spots(n_per, d, 0.0, seed); };
            plan.target = [n_per, d](std::uint64_t seed, const Config& cfg) { return synth::uniform_two_spots(n_per, d, *cfg.t, seed); };
            break;
        }
        case Experiment::GaussPerturb: {
            const std::size_t d = *o.d;
            const double scale = *o.scale;
            plan.configs.push_back({});
            plan.pair = [n, d, scale](std::uint64_t seed, const Config&) {
                auto x = synth::gaussian_spot(n, d, synth::derive_seed(seed, 0));
                auto y = synth::perturb(x, scale, synth::derive_seed(seed, 1));
                return std::pair{std::move(x), std::move(y)};
            };
            break;
        }
        case Experiment::GaussLost:
        case Experiment::SigmaConvergence: {
            const std::size_t d = *o.d;
            plan.configs.push_back({});
            plan.pair = [n, d](std::uint64_t seed, const Config&) {
                return synth::lost_correspondence(n, d, synth::derive_seed(seed, 0), synth::derive_seed(seed, 1));
            };
            break;
        }
    }
    return plan;
}

std::vector<Job> make_jobs(const BenchOptions& o) {
    std::vector<Job> jobs;
    for (Metric metric : o.metrics) {
        MetricParams base;
        base.rbf_form = o.rbf_form;
        base.kcka_zero_diagonal = o.kcka_zero_diagonal;
        if (uses_k(metric)) {
            for (std::size_t k : o.ks) {
                auto params = base;
                params.k = k;
                jobs.push_back({metric, params, k, std::nullopt});
            }
        } else if (metric == Metric::CkaRbf) {
            for (double delta : o.deltas) {
                auto params = base;
                params.sigma = SigmaPolicy::scaled_median(delta);
                jobs.push_back({metric, params, std::nullopt, delta});
            }
        } else {
            jobs.push_back({metric, base, std::nullopt, std::nullopt});
        }
    }
    return jobs;
}

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double sample_std(const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    const double m = mean_of(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
}

template <typename T>
std::string optional_cell(const std::optional<T>& value) {
    if (!value) return {};
    if constexpr (std::is_floating_point_v<T>) {
        return format_double(*value);
    } else {
        return std::to_string(*value);
    }
}

}  // namespace

Experiment parse_experiment(std::string_view name) {
    if (name == "swiss-s") return Experiment::SwissS;
    if (name == "rings") return Experiment::Rings;
    if (name == "clusters") return Experiment::Clusters;
    if (name == "gauss-perturb") return Experiment::GaussPerturb;
    if (name == "gauss-lost") return Experiment::GaussLost;
    if (name == "uniform-translate") return Experiment::UniformTranslate;
    if (name == "sigma-convergence") return Experiment::SigmaConvergence;
    fail(ErrorCode::InvalidParameter, "unknown experiment '" + std::string(name) + "'");
}

std::string_view to_string(Experiment experiment) noexcept {
    switch (experiment) {
        case Experiment::SwissS: return "swiss-s";
        case Experiment::Rings: return "rings";
        case Experiment::Clusters: return "clusters";
        case Experiment::GaussPerturb: return "gauss-perturb";
        case Experiment::GaussLost: return "gauss-lost";
        case Experiment::UniformTranslate: return "uniform-translate";
        case Experiment::SigmaConvergence: return "sigma-convergence";
    }
    return "unknown";
}

std::string_view to_string(RowKind kind) noexcept {
    switch (kind) {
        case RowKind::Score: return "score";
        case RowKind::Mean: return "mean";
        case RowKind::Std: return "std";
        case RowKind::Tau: return "tau";
    }
    return "unknown";
}

std::vector<double> parse_grid(std::string_view text) {
    std::vector<double> out;
    while (true) {
        const auto comma = text.find(',');
        const auto item = text.substr(0, comma);
        if (item.find(':') == std::string_view::npos) {
            out.push_back(parse_number(item));
        } else {
            const auto c1 = item.find(':');
            const auto c2 = item.find(':', c1 + 1);
            require(c2 != std::string_view::npos && item.find(':', c2 + 1) == std::string_view::npos,
                    "range '" + std::string(item) + "' must be start:stop:step");
            const double start = parse_number(item.substr(0, c1));
            const double stop = parse_number(item.substr(c1 + 1, c2 - c1 - 1));
            const double step = parse_number(item.substr(c2 + 1));
            require(step > 0.0 && stop >= start, "range '" + std::string(item) + "' needs step > 0 and stop >= start");
            for (std::size_t i = 0;; ++i) {
                const double v = start + static_cast<double>(i) * step;
                if (v > stop + kGridSlack) break;
                out.push_back(v);
            }
        }
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return out;
}

std::vector<std::size_t> parse_count_grid(std::string_view text) {
    std::vector<std::size_t> out;
    for (double v : parse_grid(text)) {
        const double rounded = std::round(v);
        require(v >= 0.0 && std::abs(v - rounded) <= kGridSlack, "expected a non-negative integer, got " + format_double(v));
        out.push_back(static_cast<std::size_t>(rounded));
    }
    return out;
}

BenchOptions with_defaults(BenchOptions o) {
    const auto set_if_empty = [](auto& field, auto value) {
        if (field.empty()) field = std::move(value);
    };
    switch (o.experiment) {
        case Experiment::SwissS:
            if (!o.n) o.n = 1000;
            set_if_empty(o.r_grid, parse_grid("0.3:0.7:0.05"));
            set_if_empty(o.ks, std::vector<std::size_t>{10, 15, 25, 50, 100, 200, 300, 400});
            break;
        case Experiment::Rings:
            if (!o.n) o.n = 500;
            set_if_empty(o.ks, std::vector<std::size_t>{10, 50, 100, 200, 400});
            break;
        case Experiment::Clusters:
            if (!o.n) o.n = 300;
            set_if_empty(o.ks, std::vector<std::size_t>{10, 50, 100, 200});
            break;
        case Experiment::GaussPerturb:
        case Experiment::GaussLost:
            if (!o.n) o.n = 1000;
            if (!o.d) o.d = 100;
            set_if_empty(o.ks, std::vector<std::size_t>{10, 25, 50, 100, 200});
            break;
        case Experiment::UniformTranslate:
            if (!o.n_per) o.n_per = o.n ? *o.n / 2 : 500;
            o.n = 2 * *o.n_per;
            if (!o.d) o.d = 100;
            set_if_empty(o.t_grid, std::vector<double>{1.0, 10.0, 50.0});
            set_if_empty(o.ks, std::vector<std::size_t>{100});
            break;
        case Experiment::SigmaConvergence:
            if (!o.n) o.n = 300;
            if (!o.d) o.d = 20;
            set_if_empty(o.multipliers, std::vector<double>{1.0, 3.0, 10.0, 30.0, 100.0});
            set_if_empty(o.metrics, std::vector<Metric>{Metric::Cka, Metric::CkaRbf});
            o.deltas = o.multipliers;
            o.rbf_form = RbfForm::Squared;
            break;
    }
    if (!o.scale) o.scale = 0.5;
    if (!o.d) o.d = 2;
    set_if_empty(o.metrics, std::vector<Metric>{Metric::Mka});
    set_if_empty(o.deltas, std::vector<double>{1.0});
    if (o.seeds.empty()) {
        for (std::uint64_t s = 1; s <= 5; ++s) o.seeds.push_back(s);
    }
    return o;
}

std::vector<ResultRow> run(const BenchOptions& raw) {
    const BenchOptions o = with_defaults(raw);
    for (std::size_t k : o.ks) {
        const bool needs_k = std::any_of(o.metrics.begin(), o.metrics.end(), uses_k);
        if (needs_k && (k < 2 || k + 1 > *o.n)) {
            fail(ErrorCode::KOutOfRange,
                 "k = " + std::to_string(k) + " outside [2, n - 1] for n = " + std::to_string(*o.n));
        }
    }
    const Plan plan = make_plan(o);
    const auto jobs = make_jobs(o);
    const bool sets_d = o.experiment == Experiment::GaussPerturb || o.experiment == Experiment::GaussLost ||
                        o.experiment == Experiment::UniformTranslate ||
                        o.experiment == Experiment::SigmaConvergence;

    const auto base_row = [&](const Config& cfg, const Job& job) {
        ResultRow row;
        row.experiment = o.experiment;
        row.metric = job.metric;
        row.k = job.k;
        row.delta = job.delta;
        row.r = cfg.r;
        row.t = cfg.t;
        if (sets_d) row.d = o.d;
        row.n = *o.n;
        row.stage = cfg.stage;
        row.c = cfg.c;
        return row;
    };

    std::vector<ResultRow> rows;
    // scores[job][config][seed index]
    std::vector<std::vector<std::vector<double>>> scores(
        jobs.size(), std::vector<std::vector<double>>(plan.configs.size()));

    for (std::uint64_t seed : o.seeds) {
        std::optional<Representation> shared;
        if (plan.reference) shared.emplace(plan.reference(seed));
        for (std::size_t ci = 0; ci < plan.configs.size(); ++ci) {
            const auto& cfg = plan.configs[ci];
            std::optional<Representation> own_x;
            std::optional<Representation> ry;
            if (shared) {
                ry.emplace(plan.target(seed, cfg));
            } else {
                auto [x, y] = plan.pair(seed, cfg);
                own_x.emplace(std::move(x));
                ry.emplace(std::move(y));
            }
            const Representation& rx = shared ? *shared : *own_x;
            for (std::size_t ji = 0; ji < jobs.size(); ++ji) {
                const auto start = std::chrono::steady_clock::now();
                const auto report = align(rx, *ry, jobs[ji].metric, jobs[ji].params);
                const auto stop = std::chrono::steady_clock::now();
                auto row = base_row(cfg, jobs[ji]);
                row.seed = seed;
                row.score = report.value;
                row.path = report.path;
                row.elapsed_ms = std::chrono::duration<double, std::milli>(stop - start).count();
                rows.push_back(std::move(row));
                scores[ji][ci].push_back(report.value);
            }
        }
    }

    for (std::size_t ci = 0; ci < plan.configs.size(); ++ci) {
        for (std::size_t ji = 0; ji < jobs.size(); ++ji) {
            auto mean_row = base_row(plan.configs[ci], jobs[ji]);
            mean_row.kind = RowKind::Mean;
            mean_row.score = mean_of(scores[ji][ci]);
            rows.push_back(mean_row);
            auto std_row = base_row(plan.configs[ci], jobs[ji]);
            std_row.kind = RowKind::Std;
            std_row.score = sample_std(scores[ji][ci]);
            rows.push_back(std_row);
        }
    }

    if (o.experiment == Experiment::Rings || o.experiment == Experiment::Clusters) {
        std::vector<double> order(plan.configs.size());
        for (std::size_t ci = 0; ci < order.size(); ++ci) order[ci] = static_cast<double>(ci);
        for (std::size_t ji = 0; ji < jobs.size(); ++ji) {
            auto tau_row = base_row(Config{}, jobs[ji]);
            tau_row.kind = RowKind::Tau;
            for (std::size_t si = 0; si < o.seeds.size(); ++si) {
                std::vector<double> seq(plan.configs.size());
                for (std::size_t ci = 0; ci < seq.size(); ++ci) seq[ci] = scores[ji][ci][si];
                tau_row.seed = o.seeds[si];
                tau_row.score = kendall_tau(seq, order);
                rows.push_back(tau_row);
            }
            std::vector<double> means(plan.configs.size());
            for (std::size_t ci = 0; ci < means.size(); ++ci) means[ci] = mean_of(scores[ji][ci]);
            tau_row.seed.reset();
            tau_row.score = kendall_tau(means, order);
            rows.push_back(tau_row);
        }
    }
    return rows;
}

void write_csv(const std::vector<ResultRow>& rows, Experiment experiment, std::ostream& out) {
    out << "# manifold-align v1 " << to_string(experiment) << '\n' << kCsvColumns << '\n';
    for (const auto& row : rows) {
        std::string elapsed;
        if (row.elapsed_ms) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.3f", *row.elapsed_ms);
            elapsed = buf;
        }
        out << to_string(row.experiment) << ',' << to_string(row.kind) << ',' << to_string(row.metric) << ','
            << optional_cell(row.k) << ',' << optional_cell(row.delta) << ',' << optional_cell(row.r) << ','
            << optional_cell(row.t) << ',' << optional_cell(row.d) << ',' << row.n << ','
            << optional_cell(row.stage) << ',' << optional_cell(row.c) << ',' << optional_cell(row.seed) << ','
            << format_double(row.score) << ',' << row.path << ',' << elapsed << '\n';
    }
}

}  // namespace manifold_align::bench
