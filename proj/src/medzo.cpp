#include "xab/medzo.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "xab/errors.hpp"

namespace xab {

unsigned guarded_ceil_log2(double x) {
    if (!(x > 0.0)) throw ConfigError("log2 of a non-positive value");
    const double p = guarded_ceil(std::log2(x));
    return p <= 0.0 ? 0u : static_cast<unsigned>(p);
}

MedzoSchedule schedule(double B) {
    if (!(B >= 2.0)) throw ConfigError("MeDZO needs B >= 2");
    const unsigned p = guarded_ceil_log2(B);
    if (p > 30) throw ConfigError("MeDZO schedule for B = " + std::to_string(B) + " overflows 64-bit round counts");

    MedzoSchedule s;
    s.B = B;
    s.p = p;
    std::uint64_t end = 0;
    for (unsigned i = 1; i <= p; ++i) {
        const std::uint64_t cells = std::uint64_t{1} << (p + 2 - i);
        const std::uint64_t length = std::uint64_t{1} << (p + i);
        end += length;
        s.regimes.push_back({cells, length, end});
    }
    return s;
}

MedzoResult medzo_run(double B, std::uint64_t T, const BanditProblem& problem, Rng& rng, bool force) {
    if (T == 0) throw ConfigError("MeDZO needs T >= 1");
    MedzoResult out;
    out.plan = schedule(B);
    // Relative slack so that B = 2^{i/2} is not rejected against sqrt(2^i) by rounding.
    if (B < std::sqrt(static_cast<double>(T)) * (1.0 - 1e-12)) {
        if (!force)
            throw PreconditionError("MeDZO requires B >= sqrt(T) (B = " + std::to_string(B) +
                                    ", T = " + std::to_string(T) + "); pass force to override");
        out.forced = true;
    }

    out.trace.max_value = problem.max_value;
    out.trace.reserve(T);
    MeasureSet memories;
    std::uint64_t played = 0;
    for (unsigned i = 1; i <= out.plan.p && played < T; ++i) {
        const Regime& r = out.plan.regimes[i - 1];
        std::uint64_t length = std::min(r.length, T - played);
        if (out.forced && i == out.plan.p) length = T - played;

        MeasureSet measures = disc(r.cells);
        measures.insert(measures.end(), memories.begin(), memories.end());
        RunTrace part = cab11_run(length, measures, problem, rng);

        ArmMeasure memory = ArmMeasure::empirical(part.arm, "nu_" + std::to_string(i));
        const double memory_mean = measure_mean(memory, problem.payoff);
        out.regimes.push_back(RegimeRecord{i, r.cells, measures.size(), length, part.total_regret(), memory, memory_mean});
        memories.push_back(std::move(memory));
        out.trace.append(part);
        played += length;
    }
    return out;
}

double medzo_bound(double B, std::uint64_t T, const HolderParams& params) {
    const double a = params.alpha;
    const double rate = static_cast<double>(T) * std::pow(params.L, 1.0 / (a + 1.0)) * std::pow(B, -a / (a + 1.0));
    return 412.0 * std::pow(std::log2(B), 1.5) * std::max(B, rate);
}

double medzo_sqrt_bound(std::uint64_t T, const HolderParams& params) {
    const double a = params.alpha;
    const auto t = static_cast<double>(T);
    return 146.0 * std::pow(std::log2(t), 1.5) * std::pow(params.L, 1.0 / (a + 1.0)) *
           std::pow(t, (a + 2.0) / (2.0 * a + 2.0));
}

AnytimeResult anytime_medzo(double m, std::uint64_t T, const BanditProblem& problem, Rng& rng) {
    if (!(m >= 0.5 && m <= 1.0)) throw ConfigError("anytime MeDZO needs m in [1/2, 1]");
    if (T == 0) throw ConfigError("anytime MeDZO needs T >= 1");
    AnytimeResult out;
    out.trace.max_value = problem.max_value;
    out.trace.reserve(T);
    std::uint64_t played = 0;
    for (unsigned i = 0; played < T; ++i) {
        const std::uint64_t length = std::min(std::uint64_t{1} << i, T - played);
        const double B = std::max(2.0, std::exp2(static_cast<double>(i) * m));
        MedzoResult epoch = medzo_run(B, length, problem, rng);
        out.trace.append(epoch.trace);
        out.epochs.push_back({i, B, length});
        played += length;
    }
    return out;
}

double anytime_bound(double m, std::uint64_t T, const HolderParams& params) {
    const double a = params.alpha;
    const auto t = static_cast<double>(T);
    const double tm = std::pow(t, m);
    const double rate = t * std::pow(params.L, 1.0 / (a + 1.0)) * std::pow(tm, -a / (a + 1.0));
    return 4000.0 * std::pow(std::log2(tm), 1.5) * std::max(tm, rate);
}

} // namespace xab
