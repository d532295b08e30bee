#include "xab/measures.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "xab/discrete.hpp"
#include "xab/errors.hpp"

namespace xab {

ArmMeasure ArmMeasure::uniform(double a, double b, std::string label) {
    if (!(a >= 0.0 && b <= 1.0 && a < b)) throw ConfigError("uniform measure needs 0 <= a < b <= 1");
    return ArmMeasure(UniformInterval{a, b}, std::move(label));
}

ArmMeasure ArmMeasure::empirical(std::vector<double> arms, std::string label) {
    if (arms.empty()) throw ConfigError("empirical measure needs at least one arm");
    for (double x : arms)
        if (!(x >= 0.0 && x <= 1.0)) throw ConfigError("empirical measure arm outside [0,1]");
    return ArmMeasure(Empirical{std::make_shared<const std::vector<double>>(std::move(arms))}, std::move(label));
}

MeasureSet disc(std::size_t K) {
    if (K == 0) throw ConfigError("disc(K) needs K >= 1");
    MeasureSet out;
    out.reserve(K);
    const auto k = static_cast<double>(K);
    for (std::size_t i = 0; i < K; ++i) {
        std::ostringstream label;
        label << "U[" << i << '/' << K << ',' << (i + 1) << '/' << K << ']';
        out.push_back(ArmMeasure::uniform(static_cast<double>(i) / k, static_cast<double>(i + 1) / k, label.str()));
    }
    return out;
}

double sample_measure(const ArmMeasure& m, Rng& rng) {
    if (const auto* u = std::get_if<UniformInterval>(&m.variant())) return u->a + (u->b - u->a) * rng.uniform01();
    const auto& arms = *std::get<Empirical>(m.variant()).arms;
    return arms[rng.index(arms.size())];
}

double measure_mean(const ArmMeasure& m, const MeanPayoffFunction& fn) {
    if (const auto* e = std::get_if<Empirical>(&m.variant())) {
        double sum = 0.0;
        for (double x : *e->arms) sum += fn(x);
        return sum / static_cast<double>(e->arms->size());
    }
    const auto& u = std::get<UniformInterval>(m.variant());
    constexpr std::size_t n = 2 * kSimpsonPanels; // subintervals
    const double h = (u.b - u.a) / static_cast<double>(n);
    double odd = 0.0;
    double even = 0.0;
    for (std::size_t j = 1; j < n; ++j) {
        const double x = u.a + static_cast<double>(j) * h;
        (j % 2 == 1 ? odd : even) += fn(x);
    }
    const double integral = h / 3.0 * (fn(u.a) + 4.0 * odd + 2.0 * even + fn(u.b));
    return integral / (u.b - u.a);
}

void RunTrace::reserve(std::size_t n) {
    measure_index.reserve(n);
    arm.reserve(n);
    reward.reserve(n);
    payoff.reserve(n);
    cum_regret.reserve(n);
}

void RunTrace::push(std::uint32_t index, double x, double y, double fx) {
    measure_index.push_back(index);
    arm.push_back(x);
    reward.push_back(y);
    payoff.push_back(fx);
    cum_regret.push_back(total_regret() + (max_value - fx));
}

void RunTrace::append(const RunTrace& other) {
    const double offset = total_regret();
    measure_index.insert(measure_index.end(), other.measure_index.begin(), other.measure_index.end());
    arm.insert(arm.end(), other.arm.begin(), other.arm.end());
    reward.insert(reward.end(), other.reward.begin(), other.reward.end());
    payoff.insert(payoff.end(), other.payoff.begin(), other.payoff.end());
    for (double r : other.cum_regret) cum_regret.push_back(offset + r);
}

RunTrace cab11_run(std::uint64_t horizon, const MeasureSet& measures, const BanditProblem& problem, Rng& rng) {
    if (measures.empty()) throw ConfigError("CAB1.1 needs a nonempty measure set");
    MossState learner(measures.size(), horizon);
    RunTrace trace;
    trace.max_value = problem.max_value;
    trace.reserve(horizon);
    for (std::uint64_t t = 0; t < horizon; ++t) {
        const std::size_t i = learner.select();
        const double x = sample_measure(measures[i], rng);
        const double fx = problem.payoff(x);
        const double y = observe(problem, fx, rng);
        learner.update(i, y);
        trace.push(static_cast<std::uint32_t>(i), x, y, fx);
    }
    return trace;
}

double guarded_ceil(double x) {
    const double r = std::round(x);
    if (std::abs(x - r) <= 1e-9) return r;
    return std::ceil(x);
}

std::uint64_t kstar(const HolderParams& params, std::uint64_t horizon) {
    params.validate();
    if (horizon == 0) throw ConfigError("kstar needs T >= 1");
    const double e = 2.0 * params.alpha + 1.0;
    const double x = std::pow(params.L, 2.0 / e) * std::pow(static_cast<double>(horizon), 1.0 / e);
    const double k = guarded_ceil(x);
    if (!(k < static_cast<double>(horizon))) return horizon;
    return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(k));
}

std::optional<std::string> kstar_warning(const HolderParams& params, std::uint64_t horizon) {
    if (params.L <= 1.0 / std::sqrt(static_cast<double>(horizon))) {
        std::ostringstream msg;
        msg << "L = " << params.L << " <= 1/sqrt(T); the K* tuning and its regret bound assume L > 1/sqrt(T)";
        return msg.str();
    }
    return std::nullopt;
}

RunTrace cab11_nonadaptive(const HolderParams& params, std::uint64_t horizon, const BanditProblem& problem, Rng& rng) {
    return cab11_run(horizon, disc(kstar(params, horizon)), problem, rng);
}

double nonadaptive_bound(const HolderParams& params, std::uint64_t horizon) {
    const double e = 2.0 * params.alpha + 1.0;
    return 28.0 * std::pow(params.L, 1.0 / e) * std::pow(static_cast<double>(horizon), (params.alpha + 1.0) / e);
}

} // namespace xab
