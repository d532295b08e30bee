#include "xab/gpo.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "xab/errors.hpp"

namespace xab {

double cum_to_simple(const RunTrace& trace) {
    if (trace.empty()) throw DomainError("simple regret of an empty trace");
    return trace.total_regret() / static_cast<double>(trace.size());
}

unsigned ceil_log2(std::uint64_t n) {
    if (n <= 1) return 0;
    return static_cast<unsigned>(std::bit_width(n - 1));
}

GpoResult gpo_run(std::uint64_t T, const BanditProblem& problem, Rng& rng) {
    if (T < 8) throw ConfigError("GPO needs T >= 8");
    GpoResult out;
    out.p = ceil_log2(T);
    out.phase_length = T / (2 * out.p);
    out.trace.max_value = problem.max_value;
    out.trace.reserve(T);

    for (unsigned i = 1; i <= out.p; ++i) {
        RunTrace phase = cab11_run(out.phase_length, disc(std::size_t{1} << i), problem, rng);
        out.recommendations.push_back(phase.arm[rng.index(phase.size())]);
        out.trace.append(phase);
    }

    for (unsigned i = 0; i < out.p; ++i) {
        const double x = out.recommendations[i];
        const double fx = problem.payoff(x);
        // Centred accumulation: without noise the mean is exactly f(x).
        double deviation = 0.0;
        for (std::uint64_t s = 0; s < out.phase_length; ++s) {
            const double y = observe(problem, fx, rng);
            deviation += y - fx;
            out.trace.push(i, x, y, fx);
        }
        out.validation_means.push_back(fx + deviation / static_cast<double>(out.phase_length));
    }

    for (std::size_t i = 1; i < out.validation_means.size(); ++i)
        if (out.validation_means[i] > out.validation_means[out.chosen]) out.chosen = i;
    out.recommendation = out.recommendations[out.chosen];

    const double f_rec = problem.payoff(out.recommendation);
    while (out.trace.size() < T)
        out.trace.push(static_cast<std::uint32_t>(out.chosen), out.recommendation, observe(problem, f_rec, rng), f_rec);

    out.simple_regret = problem.max_value - f_rec;
    out.best_candidate_regret = out.simple_regret;
    for (double x : out.recommendations)
        out.best_candidate_regret = std::min(out.best_candidate_regret, problem.max_value - problem.payoff(x));
    return out;
}

double gpo_bound(std::uint64_t T, const HolderParams& params) {
    const double a = params.alpha;
    const auto t = static_cast<double>(T);
    const auto p = static_cast<double>(ceil_log2(T));
    return (54.0 + std::sqrt(std::numbers::pi) / 2.0 * std::log2(t)) * std::pow(params.L, 1.0 / (2.0 * a + 1.0)) *
           std::pow(p / t, a / (2.0 * a + 1.0));
}

std::optional<std::string> gpo_bound_warning(std::uint64_t T, const HolderParams& params) {
    const double floor_L =
        std::exp2(params.alpha + 0.5) * std::sqrt(static_cast<double>(ceil_log2(T)) / static_cast<double>(T));
    if (params.L < floor_L) {
        std::ostringstream msg;
        msg << "L = " << params.L << " is below 2^(alpha+1/2) sqrt(ceil(log2 T)/T) = " << floor_L
            << "; the simple-regret bound is not guaranteed there";
        return msg.str();
    }
    return std::nullopt;
}

GpoCaseAnalysis gpo_case_analysis(std::uint64_t T, const HolderParams& params) {
    const double a = params.alpha;
    const double L = params.L;
    const auto t = static_cast<double>(T);
    const unsigned p = ceil_log2(T);
    const auto pd = static_cast<double>(p);

    GpoCaseAnalysis out;
    out.too_smooth = L < std::exp2(a + 0.5) * std::sqrt(pd / t);
    out.too_rough = L >= std::pow(t, a) * std::sqrt(pd);
    double best = std::numeric_limits<double>::infinity();
    for (unsigned i = 1; i <= p; ++i) {
        const double k = std::exp2(static_cast<double>(i));
        best = std::min(best, L / std::pow(k, a) + 36.0 * std::sqrt(pd * k / t));
    }
    out.balanced = best <= 53.0 * std::pow(L, 1.0 / (2.0 * a + 1.0)) * std::pow(pd / t, a / (2.0 * a + 1.0));
    return out;
}

} // namespace xab
