#include "xab/env.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <vector>

#include "xab/errors.hpp"

namespace xab {

void HolderParams::validate() const {
    if (!(L > 0.0)) throw ConfigError("Hölder constant L must be > 0");
    if (!(alpha > 0.0)) throw ConfigError("Hölder exponent alpha must be > 0");
}

MeanPayoffFunction::MeanPayoffFunction(std::string label, Eval eval, std::optional<MaxPoint> closed_form_max)
    : label_(std::move(label)),
      eval_(std::move(eval)),
      closed_form_max_(closed_form_max),
      clamps_(std::make_shared<std::atomic<std::uint64_t>>(0)) {}

MeanPayoffFunction sine_product_function() {
    return {"f", [](double x) { return 0.5 * std::sin(13.0 * x) * std::sin(27.0 * x) + 0.5; }};
}

MeanPayoffFunction two_peak_function() {
    return {"g", [](double x) {
                return std::max(3.6 * x * (1.0 - x), 1.0 - (1.0 / 0.05) * std::abs(x - 0.05));
            }};
}

MeanPayoffFunction garland_function() {
    return {"garland",
            [](double x) { return x * (1.0 - x) * (4.0 - std::sqrt(std::abs(std::sin(60.0 * x)))); }};
}

MeanPayoffFunction single_peak(double L, double alpha, double xstar, double M) {
    HolderParams{L, alpha}.validate();
    if (!(xstar >= 0.0 && xstar <= 1.0)) throw ConfigError("single_peak: xstar must lie in [0,1]");
    if (!(M >= 0.0 && M <= 1.0)) throw ConfigError("single_peak: M must lie in [0,1]");
    std::ostringstream label;
    label << "peak:" << L << ',' << alpha << ',' << xstar << ',' << M;
    return {label.str(),
            [=](double x) {
                const double y = M - L * std::pow(std::abs(x - xstar), alpha);
                return y < 0.0 ? 0.0 : y;
            },
            MaxPoint{M, xstar}};
}

namespace {

double parse_number(std::string_view token, std::string_view spec) {
    double value = 0.0;
    const auto* first = token.data();
    const auto* last = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || token.empty())
        throw ConfigError("malformed number '" + std::string(token) + "' in environment '" + std::string(spec) + "'");
    return value;
}

} // namespace

MeanPayoffFunction make_test_function(std::string_view spec) {
    if (spec == "f") return sine_product_function();
    if (spec == "g") return two_peak_function();
    if (spec == "garland") return garland_function();
    constexpr std::string_view prefix = "peak:";
    if (spec.starts_with(prefix)) {
        std::vector<double> args;
        std::string_view rest = spec.substr(prefix.size());
        while (true) {
            const auto comma = rest.find(',');
            args.push_back(parse_number(rest.substr(0, comma), spec));
            if (comma == std::string_view::npos) break;
            rest = rest.substr(comma + 1);
        }
        if (args.size() == 3) return single_peak(args[0], args[1], args[2]);
        if (args.size() == 4) return single_peak(args[0], args[1], args[2], args[3]);
        throw ConfigError("peak environment expects 'peak:L,alpha,xstar[,M]', got '" + std::string(spec) + "'");
    }
    throw ConfigError("unknown environment '" + std::string(spec) + "' (expected f, g, garland or peak:L,alpha,xstar,M)");
}

namespace {

MaxPoint grid_max(const MeanPayoffFunction& fn, std::size_t points) {
    const double step_den = static_cast<double>(points - 1);
    MaxPoint best{fn(0.0), 0.0};
    for (std::size_t j = 1; j < points; ++j) {
        const double x = static_cast<double>(j) / step_den;
        const double y = fn(x);
        if (y > best.value) best = {y, x};
    }
    return best;
}

} // namespace

MaxPoint global_max(const MeanPayoffFunction& fn) {
    if (fn.closed_form_max()) return *fn.closed_form_max();
    return grid_max(fn, kGridOraclePoints);
}

HolderCheck holder_check(const MeanPayoffFunction& fn, const HolderParams& params, std::size_t grid_size) {
    params.validate();
    if (grid_size < 2) throw ConfigError("holder_check: grid_size must be >= 2");
    const MaxPoint ref = fn.closed_form_max() ? *fn.closed_form_max() : grid_max(fn, grid_size);
    const double fstar = fn(ref.argmax);
    const double den = static_cast<double>(grid_size - 1);

    HolderCheck out;
    out.reference_x = ref.argmax;
    for (std::size_t j = 0; j < grid_size; ++j) {
        const double x = static_cast<double>(j) / den;
        const double gap = fstar - fn(x);
        const double dist = std::pow(std::abs(ref.argmax - x), params.alpha);
        if (gap > params.L * dist + 1e-12) out.holds = false;
        if (dist > 0.0) out.worst_ratio = std::max(out.worst_ratio, gap / dist);
    }
    return out;
}

BanditProblem make_problem(MeanPayoffFunction payoff, NoiseModel noise) {
    const MaxPoint m = global_max(payoff);
    return BanditProblem{std::move(payoff), noise, m.value, m.argmax};
}

double sample_reward(const BanditProblem& problem, double x, Rng& rng) {
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("arm outside [0,1]");
    return observe(problem, problem.payoff(x), rng);
}

} // namespace xab
