#pragma once

// Monte Carlo experiment orchestration: N independently seeded runs of one
// algorithm on one environment, deterministic aggregation in run-index order
// and CSV persistence.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "xab/env.hpp"

namespace xab {

enum class AlgorithmKind { cab1, medzo, medzo_anytime, gpo };

struct AlgorithmSpec {
    AlgorithmKind kind{AlgorithmKind::medzo};
    HolderParams assumed{1.0, 1.0}; // cab1
    std::optional<double> B;        // medzo; nullopt means B = sqrt(T)
    bool force{false};              // medzo, accept B < sqrt(T)
    double m{0.5};                  // medzo-anytime

    static AlgorithmSpec cab1(HolderParams assumed);
    static AlgorithmSpec medzo(std::optional<double> B = std::nullopt, bool force = false);
    static AlgorithmSpec medzo_anytime(double m);
    static AlgorithmSpec gpo();

    std::string name() const; // "cab1", "medzo", "medzo-anytime", "gpo"
};

// Where run_experiment writes. Unset paths are skipped.
struct OutputPaths {
    std::optional<std::filesystem::path> aggregate; // t, mean, std, stderr, n
    std::optional<std::filesystem::path> runs;      // run_id, t, cum_regret
    std::optional<std::filesystem::path> meta;      // key, value
    std::optional<std::filesystem::path> regimes;   // medzo only, per-run regime records
    std::optional<std::filesystem::path> simple;    // gpo only, per-run simple regret

    // dir/aggregate.csv, dir/runs.csv, dir/meta.csv (+ regimes.csv / simple.csv when relevant).
    static OutputPaths in_directory(const std::filesystem::path& dir, AlgorithmKind kind);
    // X.csv for the aggregate, with X_runs.csv, X_meta.csv (+ X_regimes.csv / X_simple.csv) beside it.
    static OutputPaths beside(const std::filesystem::path& aggregate_csv, AlgorithmKind kind);

    std::vector<std::filesystem::path> all() const;
};

struct ExperimentConfig {
    std::string env{"f"};          // make_test_function spec
    bool noise{true};              // N(0, 1/4) rewards, or the mean itself when false
    AlgorithmSpec algorithm;
    std::uint64_t T{100000};
    std::uint64_t runs{20};
    std::uint64_t base_seed{0};
    std::uint64_t stride{0};       // 0 means max(1, T/100)
    unsigned threads{1};           // 0 means hardware concurrency
    OutputPaths out;

    // Throws ConfigError unless runs >= 1 and T >= 1.
    void validate() const;
    std::uint64_t effective_stride() const noexcept;
};

// Checkpoints at every power of two, every stride multiple and T; strictly increasing.
std::vector<std::uint64_t> checkpoints(std::uint64_t T, std::uint64_t stride);

struct CheckpointStats {
    std::uint64_t t{0};
    double mean{0.0};
    double std{0.0};    // sample standard deviation (n - 1), 0 for n = 1
    double se{0.0};     // standard error, std / sqrt(n)
    std::uint64_t n{0};
};

// Mean, sample std and standard error of `xs` (nonempty).
CheckpointStats summarize(std::uint64_t t, const std::vector<double>& xs);

struct GpoRunSummary {
    std::size_t chosen{0};
    double recommendation{0.0};
    double simple_regret{0.0};
};

struct RegimeSummary {
    unsigned index{0};
    std::uint64_t cells{0};
    std::uint64_t length{0};
    double regret{0.0};
    double nu_mean{0.0};
};

struct RunOutcome {
    std::uint64_t seed{0};
    std::vector<double> regret_at;             // cumulative regret at each checkpoint
    std::vector<RegimeSummary> regimes;        // medzo only
    std::optional<GpoRunSummary> gpo;
};

struct AggregateResult {
    std::vector<CheckpointStats> checkpoints;
    CheckpointStats final_regret;
    std::vector<double> final_regrets;         // per run, index order
    std::optional<CheckpointStats> simple_regret; // gpo only
    std::vector<std::pair<std::string, std::string>> meta;
    double wall_seconds{0.0}; // not written to CSV, so output stays byte-reproducible
};

// Runs config.runs independent runs with seeds derive_run_seed(base_seed, r),
// aggregates in run order and writes the configured CSVs. Output paths are
// checked before the first run (IoError). Results do not depend on `threads`.
AggregateResult run_experiment(const ExperimentConfig& config);

// Runs one seeded run; exposed for tests.
RunOutcome run_single(const ExperimentConfig& config, const BanditProblem& problem, std::uint64_t run_index);

// Calls fn(i) for i in [0, n) on `threads` workers (0 = hardware concurrency).
// The first exception thrown by any call is rethrown after all workers stop.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);
unsigned resolve_threads(unsigned threads) noexcept;

struct SuiteRow {
    std::string problem;
    std::string algorithm;        // "medzo" or "cab1"
    std::optional<double> assumed_alpha;
    std::uint64_t cells{0};       // K* for cab1, K_1 of the first regime for medzo
    CheckpointStats final_regret;
};

struct SuiteConfig {
    std::uint64_t T{100000};
    std::uint64_t runs{20};
    std::vector<double> alpha_grid{0.1, 0.5, 1.0, 2.0, 5.0};
    std::uint64_t seed{0};
    unsigned threads{1};
    std::vector<std::string> problems{"f", "g", "garland"};
    std::optional<std::filesystem::path> out_dir; // <dir>/appendix_e_<problem>.csv + per-series run dirs
};

// For each problem: one MeDZO (B = sqrt(T)) series and one CAB1 series per
// assumed alpha with L = 1. Rows come out in problem order, MeDZO first.
std::vector<SuiteRow> appendix_e_suite(const SuiteConfig& config);

// Long format: m, alpha, theta, minimax, with minimax = (alpha+1)/(2alpha+1).
void rate_curve_export(const std::vector<double>& m_list, const std::vector<double>& alpha_grid,
                       const std::filesystem::path& out);

// `count` points log-spaced on [lo, hi], endpoints included.
std::vector<double> log_grid(double lo, double hi, std::size_t count);

struct MossBenchResult {
    CheckpointStats final_regret;
    double bound{0.0}; // 18 sqrt(K T)
};

// moss_run on fixed means over `runs` derived seeds.
MossBenchResult moss_bench(const std::vector<double>& means, std::uint64_t T, std::uint64_t runs,
                           std::uint64_t seed, unsigned threads, bool noise = true);

} // namespace xab
