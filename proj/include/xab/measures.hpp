#pragma once

// Probability measures over arms and CAB1.1: a finite-armed learner (MOSS)
// picks one measure per round and the played arm is drawn from it. The
// pseudo-regret then splits into an approximation error and a cost of learning:
//     T (M(f) - max_i pi_i(f)) + sum_t (max_i pi_i(f) - pi_{I_t}(f)).

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "xab/env.hpp"
#include "xab/rng.hpp"

namespace xab {

struct UniformInterval {
    double a{0.0};
    double b{1.0};
};

// Uniform distribution over a list of played arms. The list is shared and immutable.
struct Empirical {
    std::shared_ptr<const std::vector<double>> arms;
};

class ArmMeasure {
public:
    // Throws ConfigError unless 0 <= a < b <= 1.
    static ArmMeasure uniform(double a, double b, std::string label = {});
    // Throws ConfigError if `arms` is empty or has an entry outside [0,1].
    static ArmMeasure empirical(std::vector<double> arms, std::string label = {});

    const std::variant<UniformInterval, Empirical>& variant() const noexcept { return variant_; }
    const std::string& label() const noexcept { return label_; }

private:
    ArmMeasure(std::variant<UniformInterval, Empirical> v, std::string label)
        : variant_(std::move(v)), label_(std::move(label)) {}

    std::variant<UniformInterval, Empirical> variant_;
    std::string label_;
};

using MeasureSet = std::vector<ArmMeasure>;

// Uniform measures over [(i-1)/K, i/K], i = 1..K. Throws ConfigError for K = 0.
MeasureSet disc(std::size_t K);

double sample_measure(const ArmMeasure& m, Rng& rng);

inline constexpr std::size_t kSimpsonPanels = 4096;

// pi(f): exact mean over the stored arms for Empirical, composite Simpson with
// kSimpsonPanels panels for UniformInterval.
double measure_mean(const ArmMeasure& m, const MeanPayoffFunction& fn);

// One record per round. `measure_index` is I_t; `payoff` is f(X_t).
struct RunTrace {
    double max_value{0.0};
    std::vector<std::uint32_t> measure_index;
    std::vector<double> arm;
    std::vector<double> reward;
    std::vector<double> payoff;
    std::vector<double> cum_regret; // t M(f) - sum_{s<=t} f(X_s), accumulated per step

    std::size_t size() const noexcept { return arm.size(); }
    bool empty() const noexcept { return arm.empty(); }
    double total_regret() const noexcept { return cum_regret.empty() ? 0.0 : cum_regret.back(); }

    void reserve(std::size_t n);
    void push(std::uint32_t index, double x, double y, double fx);
    // Appends `other`, continuing the cumulative regret from this trace's total.
    void append(const RunTrace& other);
};

// CAB1.1 with MOSS for `horizon` rounds over `measures`. Throws ConfigError for
// horizon = 0 or an empty measure set.
RunTrace cab11_run(std::uint64_t horizon, const MeasureSet& measures, const BanditProblem& problem, Rng& rng);

// ceil(x), except that x within 1e-9 of an integer is taken as that integer.
double guarded_ceil(double x);

// K* = min(ceil(L^{2/(2a+1)} T^{1/(2a+1)}), T).
std::uint64_t kstar(const HolderParams& params, std::uint64_t horizon);
// Set when L <= 1/sqrt(T), outside the regime where K* is minimax-tuned.
std::optional<std::string> kstar_warning(const HolderParams& params, std::uint64_t horizon);

// CAB1.1 on disc(kstar(params, horizon)).
RunTrace cab11_nonadaptive(const HolderParams& params, std::uint64_t horizon, const BanditProblem& problem, Rng& rng);

// 28 L^{1/(2a+1)} T^{(a+1)/(2a+1)}.
double nonadaptive_bound(const HolderParams& params, std::uint64_t horizon);

} // namespace xab
