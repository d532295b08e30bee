#pragma once

// Simple regret. GPO cross-validates p = ceil(log2 T) CAB1.1 explorers on the
// grids 2^1, ..., 2^p: each explorer runs floor(T/(2p)) rounds and recommends
// one of its plays uniformly at random, then every recommendation is replayed
// floor(T/(2p)) times and the best empirical mean wins.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "xab/env.hpp"
#include "xab/measures.hpp"
#include "xab/rng.hpp"

namespace xab {

// M(f) - (1/T) sum_t f(X_t), i.e. total pseudo-regret / T. Throws DomainError on an empty trace.
double cum_to_simple(const RunTrace& trace);

struct GpoResult {
    unsigned p{0};
    std::uint64_t phase_length{0};          // floor(T/(2p))
    std::vector<double> recommendations;    // X^(i), i = 1..p
    std::vector<double> validation_means;   // mu^(i)
    std::size_t chosen{0};                  // 0-based index of the argmax, ties to the lowest
    double recommendation{0.0};             // X_T = X^(chosen)
    double simple_regret{0.0};              // M(f) - f(X_T)
    double best_candidate_regret{0.0};      // min_i M(f) - f(X^(i))
    RunTrace trace;                         // all T rounds: exploration, validation, leftover
};

// Throws ConfigError for T < 8. Rounds left after 2p floor(T/(2p)) replay X_T.
GpoResult gpo_run(std::uint64_t T, const BanditProblem& problem, Rng& rng);

// (54 + (sqrt(pi)/2) log2 T) L^{1/(2a+1)} (ceil(log2 T)/T)^{a/(2a+1)}; not capped at 1.
double gpo_bound(std::uint64_t T, const HolderParams& params);
// Set when L < 2^{a+1/2} sqrt(ceil(log2 T)/T), below the range the bound is stated for.
std::optional<std::string> gpo_bound_warning(std::uint64_t T, const HolderParams& params);

// The three alternatives in the case analysis behind the GPO bound; at least one holds.
struct GpoCaseAnalysis {
    bool too_smooth{false};    // L < 2^{a+1/2} sqrt(p/T)
    bool too_rough{false};     // L >= T^a sqrt(p)
    bool balanced{false};      // min_i L/K_i^a + 36 sqrt(p K_i/T) <= 53 L^{1/(2a+1)} (p/T)^{a/(2a+1)}
    bool any() const noexcept { return too_smooth || too_rough || balanced; }
};
GpoCaseAnalysis gpo_case_analysis(std::uint64_t T, const HolderParams& params);

// ceil(log2 T) for integers, exact.
unsigned ceil_log2(std::uint64_t n);

} // namespace xab
