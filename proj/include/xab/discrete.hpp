#pragma once

// MOSS: the minimax-optimal finite-armed index policy for a known horizon.
// Index of arm i after n_i > 0 pulls:
//     mean_i + sqrt( max(ln(horizon / (K * n_i)), 0) / n_i )
// Unpulled arms are played first, lowest index first; ties go to the lowest index.
// The index of an arm depends only on its own statistics, so the argmax is kept
// in a tournament tree and a round costs O(log K).

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "xab/rng.hpp"

namespace xab {

class MossState {
public:
    // Throws ConfigError when n_arms or horizon is zero.
    MossState(std::size_t n_arms, std::uint64_t horizon);

    // Throws SequenceExhausted once `rounds() == horizon()`.
    std::size_t select() const;
    // Throws DomainError for an unknown arm, SequenceExhausted past the horizon.
    void update(std::size_t arm, double reward);

    double index(std::size_t arm) const;
    double mean(std::size_t arm) const;

    std::size_t n_arms() const noexcept { return counts_.size(); }
    std::uint64_t horizon() const noexcept { return horizon_; }
    std::uint64_t rounds() const noexcept { return t_; }
    std::span<const std::uint64_t> pull_counts() const noexcept { return counts_; }
    std::span<const double> reward_sums() const noexcept { return sums_; }

private:
    void refresh(std::size_t arm);
    bool beats(std::size_t a, std::size_t b) const;

    std::uint64_t horizon_;
    std::uint64_t t_{0};
    std::vector<std::uint64_t> counts_;
    std::vector<double> sums_;
    std::vector<double> index_;
    std::size_t leaves_{1};
    std::vector<std::size_t> tree_; // winner arm of each subtree, heap layout
};

struct DiscreteTrace {
    std::vector<std::size_t> arms;
    std::vector<double> rewards;
    std::vector<double> cum_regret; // against the best arm mean
    std::vector<std::uint64_t> pull_counts;

    double total_regret() const { return cum_regret.empty() ? 0.0 : cum_regret.back(); }
};

// Select/sample/update loop on a K-armed problem with the given arm means and
// N(0, noise_variance) rewards (noise_variance = 0 disables noise).
DiscreteTrace moss_run(std::span<const double> means, std::uint64_t horizon, Rng& rng, double noise_variance = 0.25);

} // namespace xab
