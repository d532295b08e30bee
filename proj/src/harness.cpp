#include "xab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <set>
#include <thread>

#include "xab/csv.hpp"
#include "xab/discrete.hpp"
#include "xab/errors.hpp"
#include "xab/gpo.hpp"
#include "xab/measures.hpp"
#include "xab/medzo.hpp"
#include "xab/rng.hpp"
#include "xab/theory.hpp"

#ifndef XAB_VERSION
#define XAB_VERSION "0.0.0"
#endif

namespace xab {

namespace fs = std::filesystem;

AlgorithmSpec AlgorithmSpec::cab1(HolderParams assumed) {
    assumed.validate();
    AlgorithmSpec s;
    s.kind = AlgorithmKind::cab1;
    s.assumed = assumed;
    return s;
}

AlgorithmSpec AlgorithmSpec::medzo(std::optional<double> B, bool force) {
    if (B && !(*B >= 2.0)) throw ConfigError("MeDZO needs B >= 2");
    AlgorithmSpec s;
    s.kind = AlgorithmKind::medzo;
    s.B = B;
    s.force = force;
    return s;
}

AlgorithmSpec AlgorithmSpec::medzo_anytime(double m) {
    if (!(m >= 0.5 && m <= 1.0)) throw ConfigError("anytime MeDZO needs m in [1/2, 1]");
    AlgorithmSpec s;
    s.kind = AlgorithmKind::medzo_anytime;
    s.m = m;
    return s;
}

AlgorithmSpec AlgorithmSpec::gpo() {
    AlgorithmSpec s;
    s.kind = AlgorithmKind::gpo;
    return s;
}

std::string AlgorithmSpec::name() const {
    switch (kind) {
    case AlgorithmKind::cab1: return "cab1";
    case AlgorithmKind::medzo: return "medzo";
    case AlgorithmKind::medzo_anytime: return "medzo-anytime";
    case AlgorithmKind::gpo: return "gpo";
    }
    return "unknown";
}

OutputPaths OutputPaths::in_directory(const fs::path& dir, AlgorithmKind kind) {
    OutputPaths p;
    p.aggregate = dir / "aggregate.csv";
    p.runs = dir / "runs.csv";
    p.meta = dir / "meta.csv";
    if (kind == AlgorithmKind::medzo) p.regimes = dir / "regimes.csv";
    if (kind == AlgorithmKind::gpo) p.simple = dir / "simple.csv";
    return p;
}

OutputPaths OutputPaths::beside(const fs::path& aggregate_csv, AlgorithmKind kind) {
    const fs::path dir = aggregate_csv.parent_path();
    const std::string stem = aggregate_csv.stem().string();
    auto sibling = [&](const char* suffix) { return dir / (stem + suffix); };
    OutputPaths p;
    p.aggregate = aggregate_csv;
    p.runs = sibling("_runs.csv");
    p.meta = sibling("_meta.csv");
    if (kind == AlgorithmKind::medzo) p.regimes = sibling("_regimes.csv");
    if (kind == AlgorithmKind::gpo) p.simple = sibling("_simple.csv");
    return p;
}

std::vector<fs::path> OutputPaths::all() const {
    std::vector<fs::path> out;
    for (const auto* p : {&aggregate, &runs, &meta, &regimes, &simple})
        if (*p) out.push_back(**p);
    return out;
}

void ExperimentConfig::validate() const {
    if (runs < 1) throw ConfigError("experiment needs runs >= 1");
    if (T < 1) throw ConfigError("experiment needs T >= 1");
    if (algorithm.kind == AlgorithmKind::cab1) algorithm.assumed.validate();
    if (algorithm.kind == AlgorithmKind::gpo && T < 8) throw ConfigError("GPO needs T >= 8");
}

std::uint64_t ExperimentConfig::effective_stride() const noexcept {
    return stride != 0 ? stride : std::max<std::uint64_t>(1, T / 100);
}

std::vector<std::uint64_t> checkpoints(std::uint64_t T, std::uint64_t stride) {
    if (T < 1) throw ConfigError("checkpoints need T >= 1");
    if (stride < 1) throw ConfigError("checkpoints need stride >= 1");
    std::set<std::uint64_t> ts;
    for (std::uint64_t t = 1; t <= T; t <<= 1) {
        ts.insert(t);
        if (t > T / 2) break;
    }
    for (std::uint64_t t = stride; t <= T; t += stride) ts.insert(t);
    ts.insert(T);
    return {ts.begin(), ts.end()};
}

CheckpointStats summarize(std::uint64_t t, const std::vector<double>& xs) {
    if (xs.empty()) throw ConfigError("summarize needs at least one value");
    CheckpointStats s;
    s.t = t;
    s.n = xs.size();
    const auto n = static_cast<double>(xs.size());
    double sum = 0.0;
    for (double x : xs) sum += x;
    s.mean = sum / n;
    if (xs.size() > 1) {
        double ss = 0.0;
        for (double x : xs) ss += (x - s.mean) * (x - s.mean);
        s.std = std::sqrt(ss / (n - 1.0));
    }
    s.se = s.std / std::sqrt(n);
    return s;
}

unsigned resolve_threads(unsigned threads) noexcept {
    if (threads != 0) return threads;
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads), std::max<std::size_t>(n, 1)));
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(n);
                return;
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    if (error) std::rethrow_exception(error);
}

namespace {

BanditProblem problem_for(const ExperimentConfig& config) {
    return make_problem(make_test_function(config.env),
                        config.noise ? NoiseModel::gaussian_quarter() : NoiseModel::disabled());
}

double medzo_B(const AlgorithmSpec& spec, std::uint64_t T) {
    return spec.B.value_or(std::max(2.0, std::sqrt(static_cast<double>(T))));
}

std::vector<double> sample_at(const RunTrace& trace, const std::vector<std::uint64_t>& ts) {
    std::vector<double> out;
    out.reserve(ts.size());
    for (std::uint64_t t : ts) out.push_back(trace.cum_regret[t - 1]);
    return out;
}

} // namespace

RunOutcome run_single(const ExperimentConfig& config, const BanditProblem& problem, std::uint64_t run_index) {
    const auto ts = checkpoints(config.T, config.effective_stride());
    RunOutcome out;
    out.seed = derive_run_seed(config.base_seed, run_index);
    Rng rng(out.seed);
    const AlgorithmSpec& spec = config.algorithm;
    switch (spec.kind) {
    case AlgorithmKind::cab1: {
        out.regret_at = sample_at(cab11_nonadaptive(spec.assumed, config.T, problem, rng), ts);
        break;
    }
    case AlgorithmKind::medzo: {
        const MedzoResult r = medzo_run(medzo_B(spec, config.T), config.T, problem, rng, spec.force);
        out.regret_at = sample_at(r.trace, ts);
        for (const auto& g : r.regimes) out.regimes.push_back({g.index, g.cells, g.length, g.regret, g.memory_mean});
        break;
    }
    case AlgorithmKind::medzo_anytime: {
        out.regret_at = sample_at(anytime_medzo(spec.m, config.T, problem, rng).trace, ts);
        break;
    }
    case AlgorithmKind::gpo: {
        const GpoResult r = gpo_run(config.T, problem, rng);
        out.regret_at = sample_at(r.trace, ts);
        out.gpo = GpoRunSummary{r.chosen, r.recommendation, r.simple_regret};
        break;
    }
    }
    return out;
}

namespace {

std::vector<std::pair<std::string, std::string>> build_meta(const ExperimentConfig& config, const BanditProblem& problem,
                                                            const AggregateResult& agg) {
    std::vector<std::pair<std::string, std::string>> meta;
    auto put = [&](std::string key, std::string value) { meta.emplace_back(std::move(key), std::move(value)); };
    const AlgorithmSpec& spec = config.algorithm;
    put("version", XAB_VERSION);
    put("env", config.env);
    put("noise", config.noise ? "gaussian_0.25" : "off");
    put("algorithm", spec.name());
    put("T", std::to_string(config.T));
    put("runs", std::to_string(config.runs));
    put("base_seed", std::to_string(config.base_seed));
    put("stride", std::to_string(config.effective_stride()));
    put("seed_scheme", "splitmix64_mix(base_seed + 0x9e3779b97f4a7c15 * (run_index + 1))");
    switch (spec.kind) {
    case AlgorithmKind::cab1:
        put("assumed_L", format_number(spec.assumed.L));
        put("assumed_alpha", format_number(spec.assumed.alpha));
        put("K", std::to_string(kstar(spec.assumed, config.T)));
        break;
    case AlgorithmKind::medzo:
        put("B", format_number(medzo_B(spec, config.T)));
        put("B_mode", spec.B ? "explicit" : "sqrtT");
        put("force", spec.force ? "1" : "0");
        break;
    case AlgorithmKind::medzo_anytime: put("m", format_number(spec.m)); break;
    case AlgorithmKind::gpo: break;
    }
    put("max_value", format_number(problem.max_value));
    put("argmax", format_number(problem.argmax));
    put("clamp_count", std::to_string(problem.payoff.clamp_count()));
    put("final_mean", format_number(agg.final_regret.mean));
    put("final_std", format_number(agg.final_regret.std));
    put("final_stderr", format_number(agg.final_regret.se));
    if (agg.simple_regret) {
        put("simple_regret_mean", format_number(agg.simple_regret->mean));
        put("simple_regret_std", format_number(agg.simple_regret->std));
        put("simple_regret_stderr", format_number(agg.simple_regret->se));
    }
    return meta;
}

void write_outputs(const ExperimentConfig& config, const std::vector<std::uint64_t>& ts,
                   const std::vector<RunOutcome>& outcomes, const AggregateResult& agg) {
    const OutputPaths& out = config.out;
    if (out.aggregate) {
        CsvWriter w(*out.aggregate);
        w.header({"t", "mean", "std", "stderr", "n"});
        for (const auto& c : agg.checkpoints) {
            w.field(c.t).field(c.mean).field(c.std).field(c.se).field(c.n);
            w.end_row();
        }
        w.close();
    }
    if (out.runs) {
        CsvWriter w(*out.runs);
        w.header({"run_id", "t", "cum_regret"});
        for (std::size_t r = 0; r < outcomes.size(); ++r)
            for (std::size_t k = 0; k < ts.size(); ++k) {
                w.field(std::uint64_t{r}).field(ts[k]).field(outcomes[r].regret_at[k]);
                w.end_row();
            }
        w.close();
    }
    if (out.meta) {
        CsvWriter w(*out.meta);
        w.header({"key", "value"});
        for (const auto& [k, v] : agg.meta) {
            w.field(k).field(v);
            w.end_row();
        }
        w.close();
    }
    if (out.regimes && config.algorithm.kind == AlgorithmKind::medzo) {
        CsvWriter w(*out.regimes);
        w.header({"run_id", "regime", "K", "length", "regime_regret", "nu_mean"});
        for (std::size_t r = 0; r < outcomes.size(); ++r)
            for (const auto& g : outcomes[r].regimes) {
                w.field(std::uint64_t{r}).field(g.index).field(g.cells).field(g.length).field(g.regret).field(g.nu_mean);
                w.end_row();
            }
        w.close();
    }
    if (out.simple && config.algorithm.kind == AlgorithmKind::gpo) {
        CsvWriter w(*out.simple);
        w.header({"run_id", "chosen", "recommendation", "simple_regret"});
        for (std::size_t r = 0; r < outcomes.size(); ++r) {
            const auto& g = *outcomes[r].gpo;
            w.field(std::uint64_t{r}).field(std::uint64_t{g.chosen + 1}).field(g.recommendation).field(g.simple_regret);
            w.end_row();
        }
        w.close();
    }
}

} // namespace

AggregateResult run_experiment(const ExperimentConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    config.validate();
    for (const auto& p : config.out.all()) ensure_writable(p);

    const BanditProblem problem = problem_for(config);
    const auto ts = checkpoints(config.T, config.effective_stride());
    std::vector<RunOutcome> outcomes(config.runs);
    parallel_for(outcomes.size(), config.threads,
                 [&](std::size_t r) { outcomes[r] = run_single(config, problem, r); });

    AggregateResult agg;
    std::vector<double> column(outcomes.size());
    for (std::size_t k = 0; k < ts.size(); ++k) {
        for (std::size_t r = 0; r < outcomes.size(); ++r) column[r] = outcomes[r].regret_at[k];
        agg.checkpoints.push_back(summarize(ts[k], column));
    }
    agg.final_regret = agg.checkpoints.back();
    agg.final_regrets = column;
    if (config.algorithm.kind == AlgorithmKind::gpo) {
        std::vector<double> simple;
        for (const auto& o : outcomes) simple.push_back(o.gpo->simple_regret);
        agg.simple_regret = summarize(config.T, simple);
    }
    agg.meta = build_meta(config, problem, agg);
    write_outputs(config, ts, outcomes, agg);
    agg.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return agg;
}

std::vector<SuiteRow> appendix_e_suite(const SuiteConfig& config) {
    if (config.T < 1) throw ConfigError("appendix E suite needs T >= 1");
    if (config.alpha_grid.empty()) throw ConfigError("appendix E suite needs a nonempty alpha grid");
    for (double a : config.alpha_grid) HolderParams{1.0, a}.validate();

    std::vector<SuiteRow> rows;
    for (const auto& problem : config.problems) {
        const std::size_t first = rows.size();
        auto series = [&](AlgorithmSpec spec, const std::string& tag, std::optional<double> alpha, std::uint64_t cells) {
            ExperimentConfig ec;
            ec.env = problem;
            ec.algorithm = spec;
            ec.T = config.T;
            ec.runs = config.runs;
            ec.base_seed = config.seed;
            ec.threads = config.threads;
            if (config.out_dir) ec.out = OutputPaths::in_directory(*config.out_dir / problem / tag, spec.kind);
            const AggregateResult agg = run_experiment(ec);
            rows.push_back({problem, spec.name(), alpha, cells, agg.final_regret});
        };
        const double B = std::max(2.0, std::sqrt(static_cast<double>(config.T)));
        series(AlgorithmSpec::medzo(), "medzo", std::nullopt, schedule(B).regimes.front().cells);
        for (double a : config.alpha_grid) {
            const HolderParams assumed{1.0, a};
            series(AlgorithmSpec::cab1(assumed), "cab1_alpha_" + format_number(a), a, kstar(assumed, config.T));
        }

        if (config.out_dir) {
            CsvWriter w(*config.out_dir / ("appendix_e_" + problem + ".csv"));
            w.header({"problem", "algorithm", "assumed_alpha", "K", "final_mean", "final_std", "final_stderr", "n"});
            for (std::size_t i = first; i < rows.size(); ++i) {
                const SuiteRow& r = rows[i];
                w.field(r.problem).field(r.algorithm);
                if (r.assumed_alpha) w.field(*r.assumed_alpha);
                else w.field(std::string_view{});
                w.field(r.cells).field(r.final_regret.mean).field(r.final_regret.std).field(r.final_regret.se)
                    .field(r.final_regret.n);
                w.end_row();
            }
            w.close();
        }
    }
    return rows;
}

void rate_curve_export(const std::vector<double>& m_list, const std::vector<double>& alpha_grid, const fs::path& out) {
    if (m_list.empty() || alpha_grid.empty()) throw ConfigError("rate curve export needs m values and an alpha grid");
    for (double m : m_list)
        if (!(m >= 0.5 && m <= 1.0)) throw ConfigError("rate curve export needs every m in [1/2, 1]");
    CsvWriter w(out);
    w.header({"m", "alpha", "theta", "minimax"});
    for (double m : m_list)
        for (double a : alpha_grid) {
            w.field(m).field(a).field(theta(m, a)).field(minimax_exponent(a));
            w.end_row();
        }
    w.close();
}

std::vector<double> log_grid(double lo, double hi, std::size_t count) {
    if (!(lo > 0.0 && hi > lo)) throw ConfigError("log grid needs 0 < lo < hi");
    if (count < 2) throw ConfigError("log grid needs at least 2 points");
    std::vector<double> out(count);
    const double a = std::log10(lo);
    const double b = std::log10(hi);
    for (std::size_t i = 0; i < count; ++i)
        out[i] = std::pow(10.0, a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
    out.front() = lo;
    out.back() = hi;
    return out;
}

MossBenchResult moss_bench(const std::vector<double>& means, std::uint64_t T, std::uint64_t runs, std::uint64_t seed,
                           unsigned threads, bool noise) {
    if (runs < 1) throw ConfigError("moss bench needs runs >= 1");
    std::vector<double> finals(runs);
    parallel_for(runs, threads, [&](std::size_t r) {
        Rng rng(derive_run_seed(seed, r));
        finals[r] = moss_run(means, T, rng, noise ? 0.25 : 0.0).total_regret();
    });
    MossBenchResult out;
    out.final_regret = summarize(T, finals);
    out.bound = 18.0 * std::sqrt(static_cast<double>(means.size()) * static_cast<double>(T));
    return out;
}

} // namespace xab
