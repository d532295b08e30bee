#pragma once

// MeDZO (Memorize, Discretize, Zoom Out). With p = ceil(log2 B), regime
// i = 1..p lasts 2^{p+i} rounds and runs CAB1.1 + a fresh MOSS over the
// uniform discretization in 2^{p+2-i} cells plus the empirical measures of the
// arms played in every earlier regime. Later regimes use coarser grids; the
// memorized measures keep the approximation error below the regret already paid.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "xab/env.hpp"
#include "xab/measures.hpp"
#include "xab/rng.hpp"

namespace xab {

struct Regime {
    std::uint64_t cells{0};  // K_i
    std::uint64_t length{0}; // Delta T_i
    std::uint64_t end{0};    // T_i, cumulative
};

struct MedzoSchedule {
    double B{0.0};
    unsigned p{0};
    std::vector<Regime> regimes; // regimes[i-1] is regime i
};

// ceil(log2 x) with the integer guard of guarded_ceil, for x > 0.
unsigned guarded_ceil_log2(double x);

// Throws ConfigError for B < 2 (or a schedule too long for 64-bit round counts).
MedzoSchedule schedule(double B);

struct RegimeRecord {
    unsigned index{0};          // i, 1-based
    std::uint64_t cells{0};     // K_i
    std::size_t n_measures{0};  // K_i + i - 1
    std::uint64_t length{0};    // rounds actually played
    double regret{0.0};         // sum of M(f) - f(X_t) over the regime
    ArmMeasure memory;          // empirical measure of the regime's plays
    double memory_mean{0.0};    // measure_mean(memory, f)
};

struct MedzoResult {
    MedzoSchedule plan;
    RunTrace trace;
    std::vector<RegimeRecord> regimes; // executed regimes only
    bool forced{false};                // B < sqrt(T) accepted through `force`
};

// Runs MeDZO for T rounds. Throws ConfigError for T = 0 or B < 2, and
// PreconditionError for B < sqrt(T) unless `force` is set. When forced and the
// schedule ends before T, the last regime absorbs the remaining rounds.
MedzoResult medzo_run(double B, std::uint64_t T, const BanditProblem& problem, Rng& rng, bool force = false);

// 412 (log2 B)^{3/2} max(B, T L^{1/(a+1)} B^{-a/(a+1)}).
double medzo_bound(double B, std::uint64_t T, const HolderParams& params);

// Bound for B = sqrt(T): 146 (log2 T)^{3/2} L^{1/(a+1)} T^{(a+2)/(2a+2)}.
double medzo_sqrt_bound(std::uint64_t T, const HolderParams& params);

struct DoublingEpoch {
    unsigned index{0};   // i, the epoch nominally lasts 2^i rounds
    double B{0.0};       // max(2, 2^{i m})
    std::uint64_t length{0};
};

struct AnytimeResult {
    RunTrace trace;
    std::vector<DoublingEpoch> epochs;
};

// Doubling-trick MeDZO: epoch i runs medzo_run(max(2, 2^{im}), 2^i) on fresh
// state; the last epoch is cut at T. Throws ConfigError unless m in [1/2, 1], T >= 1.
AnytimeResult anytime_medzo(double m, std::uint64_t T, const BanditProblem& problem, Rng& rng);

// 4000 (log2 T^m)^{3/2} max(T^m, T L^{1/(a+1)} (T^m)^{-a/(a+1)}).
double anytime_bound(double m, std::uint64_t T, const HolderParams& params);

} // namespace xab
