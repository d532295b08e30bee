#include "xab/discrete.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "xab/errors.hpp"

namespace xab {

MossState::MossState(std::size_t n_arms, std::uint64_t horizon)
    : horizon_(horizon),
      counts_(n_arms, 0),
      sums_(n_arms, 0.0) {
    if (n_arms == 0) throw ConfigError("MOSS needs at least one arm");
    if (horizon == 0) throw ConfigError("MOSS needs a horizon of at least one round");
    while (leaves_ < n_arms) leaves_ *= 2;
    // Padding leaves never win.
    index_.assign(leaves_, -std::numeric_limits<double>::infinity());
    std::fill_n(index_.begin(), n_arms, std::numeric_limits<double>::infinity());
    tree_.assign(2 * leaves_, 0);
    for (std::size_t i = 0; i < leaves_; ++i) tree_[leaves_ + i] = i;
    for (std::size_t node = leaves_ - 1; node >= 1; --node) {
        const std::size_t l = tree_[2 * node];
        const std::size_t r = tree_[2 * node + 1];
        tree_[node] = beats(r, l) ? r : l;
    }
}

bool MossState::beats(std::size_t a, std::size_t b) const {
    return index_[a] > index_[b] || (index_[a] == index_[b] && a < b);
}

double MossState::mean(std::size_t arm) const {
    if (arm >= counts_.size()) throw DomainError("arm index out of range");
    return counts_[arm] == 0 ? 0.0 : sums_[arm] / static_cast<double>(counts_[arm]);
}

double MossState::index(std::size_t arm) const {
    if (arm >= counts_.size()) throw DomainError("arm index out of range");
    return index_[arm];
}

std::size_t MossState::select() const {
    if (t_ >= horizon_) throw SequenceExhausted("MOSS horizon of " + std::to_string(horizon_) + " rounds exhausted");
    return tree_[1];
}

void MossState::refresh(std::size_t arm) {
    const auto n = static_cast<double>(counts_[arm]);
    const double ratio = static_cast<double>(horizon_) / (static_cast<double>(counts_.size()) * n);
    index_[arm] = sums_[arm] / n + std::sqrt(std::max(std::log(ratio), 0.0) / n);
    std::size_t node = (leaves_ + arm) / 2;
    while (node >= 1) {
        const std::size_t l = tree_[2 * node];
        const std::size_t r = tree_[2 * node + 1];
        tree_[node] = beats(r, l) ? r : l;
        node /= 2;
    }
}

void MossState::update(std::size_t arm, double reward) {
    if (arm >= counts_.size()) throw DomainError("arm index " + std::to_string(arm) + " out of range");
    if (t_ >= horizon_) throw SequenceExhausted("MOSS horizon of " + std::to_string(horizon_) + " rounds exhausted");
    counts_[arm] += 1;
    sums_[arm] += reward;
    t_ += 1;
    refresh(arm);
}

DiscreteTrace moss_run(std::span<const double> means, std::uint64_t horizon, Rng& rng, double noise_variance) {
    MossState state(means.size(), horizon);
    const double best = *std::max_element(means.begin(), means.end());
    const double sd = std::sqrt(noise_variance);

    DiscreteTrace trace;
    trace.arms.reserve(horizon);
    trace.rewards.reserve(horizon);
    trace.cum_regret.reserve(horizon);
    double regret = 0.0;
    for (std::uint64_t t = 0; t < horizon; ++t) {
        const std::size_t arm = state.select();
        const double reward = noise_variance > 0.0 ? means[arm] + rng.gaussian(sd) : means[arm];
        state.update(arm, reward);
        regret += best - means[arm];
        trace.arms.push_back(arm);
        trace.rewards.push_back(reward);
        trace.cum_regret.push_back(regret);
    }
    trace.pull_counts.assign(state.pull_counts().begin(), state.pull_counts().end());
    return trace;
}

} // namespace xab
