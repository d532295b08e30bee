#pragma once

// Bandit environments on the arm space [0,1]: mean-payoff functions, the
// Gaussian reward noise, maximum oracles and Hölder-class membership checks.

#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "xab/rng.hpp"

namespace xab {

struct HolderParams {
    double L{1.0};
    double alpha{1.0};

    // Throws ConfigError unless L > 0 and alpha > 0.
    void validate() const;
};

struct MaxPoint {
    double value{0.0};
    double argmax{0.0};
};

// A deterministic map [0,1] -> [0,1]. Values are clamped to [0,1] and every
// clamp is counted; the count is shared between copies of the same function.
class MeanPayoffFunction {
public:
    using Eval = std::function<double(double)>;

    MeanPayoffFunction(std::string label, Eval eval, std::optional<MaxPoint> closed_form_max = std::nullopt);

    double operator()(double x) const {
        double y = eval_(x);
        if (y < 0.0 || y > 1.0) [[unlikely]] {
            clamps_->fetch_add(1, std::memory_order_relaxed);
            y = y < 0.0 ? 0.0 : 1.0;
        }
        return y;
    }

    const std::string& label() const noexcept { return label_; }
    const std::optional<MaxPoint>& closed_form_max() const noexcept { return closed_form_max_; }
    std::uint64_t clamp_count() const noexcept { return clamps_->load(std::memory_order_relaxed); }

private:
    std::string label_;
    Eval eval_;
    std::optional<MaxPoint> closed_form_max_;
    std::shared_ptr<std::atomic<std::uint64_t>> clamps_;
};

// Built-in payoffs.
MeanPayoffFunction sine_product_function(); // x -> sin(13x) sin(27x)/2 + 1/2
MeanPayoffFunction two_peak_function();     // x -> max(3.6 x(1-x), 1 - |x - 0.05|/0.05)
MeanPayoffFunction garland_function();      // x -> x(1-x)(4 - sqrt|sin 60x|)
// x -> M - L|x - xstar|^alpha clipped to [0,1]; carries closed_form_max = (M, xstar).
MeanPayoffFunction single_peak(double L, double alpha, double xstar, double M = 1.0);

// Parses "f", "g", "garland" or "peak:L,alpha,xstar,M" (M optional, default 1).
// Numbers are parsed locale-independently. Throws ConfigError on anything else.
MeanPayoffFunction make_test_function(std::string_view spec);

inline constexpr std::size_t kGridOraclePoints = 2'000'001;

// Closed-form maximum when present; otherwise the maximum over kGridOraclePoints
// equispaced points, ties to the smallest x. For f in H(L, alpha) the grid error
// is at most L * (2.5e-7)^alpha.
MaxPoint global_max(const MeanPayoffFunction& fn);

struct HolderCheck {
    bool holds{true};
    double worst_ratio{0.0}; // max of (f(x*) - f(x)) / |x* - x|^alpha over the grid
    double reference_x{0.0}; // the x* used
};

// Tests f(x*) - f(x) <= L |x* - x|^alpha + 1e-12 at the points j/(grid_size-1).
// x* is the closed-form argmax when the function carries one, else the grid argmax.
HolderCheck holder_check(const MeanPayoffFunction& fn, const HolderParams& params, std::size_t grid_size);

struct NoiseModel {
    double variance{0.25};
    bool enabled{true};

    static NoiseModel gaussian_quarter() { return {}; }
    static NoiseModel disabled() { return {0.25, false}; }
};

struct BanditProblem {
    MeanPayoffFunction payoff;
    NoiseModel noise;
    double max_value{0.0};
    double argmax{0.0};
};

// Builds a problem and resolves M(f) with global_max.
BanditProblem make_problem(MeanPayoffFunction payoff, NoiseModel noise = NoiseModel::gaussian_quarter());

// f(x) plus a N(0, variance) draw from `rng`; rewards are not clipped.
double sample_reward(const BanditProblem& problem, double x, Rng& rng);

// Reward for an arm whose mean payoff is already known.
inline double observe(const BanditProblem& problem, double mean, Rng& rng) {
    return problem.noise.enabled ? mean + rng.gaussian(std::sqrt(problem.noise.variance)) : mean;
}

} // namespace xab
