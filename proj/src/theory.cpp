#include "xab/theory.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "xab/errors.hpp"

namespace xab {

double theta(double m, double alpha) {
    if (!(m >= 0.5 && m <= 1.0)) throw DomainError("theta_m needs m in [1/2, 1]");
    if (!(alpha > 0.0)) throw DomainError("theta_m needs alpha > 0");
    if (std::isinf(alpha)) return m;
    return std::max(m, 1.0 - m * alpha / (alpha + 1.0));
}

double m_of_gamma(double gamma) {
    if (!(gamma > 0.0)) throw DomainError("m_of_gamma needs gamma > 0");
    if (std::isinf(gamma)) return 0.5;
    return (gamma + 1.0) / (2.0 * gamma + 1.0);
}

double minimax_exponent(double alpha) {
    if (std::isinf(alpha)) return 0.5;
    return (alpha + 1.0) / (2.0 * alpha + 1.0);
}

bool satisfies_rate_inequation(std::span<const RatePoint> curve, double tolerance) {
    if (curve.empty()) throw ConfigError("rate curve has no samples");
    const auto at_inf = std::max_element(curve.begin(), curve.end(),
                                         [](const RatePoint& a, const RatePoint& b) { return a.alpha < b.alpha; });
    const double theta_inf = at_inf->theta;
    return std::all_of(curve.begin(), curve.end(), [&](const RatePoint& pt) {
        const double ratio = std::isinf(pt.alpha) ? 1.0 : pt.alpha / (pt.alpha + 1.0);
        return pt.theta >= 1.0 - theta_inf * ratio - tolerance;
    });
}

std::vector<RatePoint> sample_theta(double m, std::span<const double> alphas) {
    std::vector<RatePoint> out;
    out.reserve(alphas.size());
    for (double a : alphas) out.push_back({a, theta(m, a)});
    return out;
}

LowerBoundValue adaptive_lower_bound(double B, std::uint64_t T, const HolderParams& rough,
                                     const std::optional<HolderParams>& smooth) {
    if (!(B > 0.0)) throw ConfigError("adaptive lower bound needs B > 0");
    rough.validate();
    const double a = rough.alpha;
    const double L = rough.L;
    const auto t = static_cast<double>(T);

    LowerBoundValue out;
    out.value = std::exp2(-10.0) * t * std::pow(L, 1.0 / (a + 1.0)) * std::pow(B, -a / (a + 1.0));
    if (!smooth) return out;

    smooth->validate();
    const double ell = smooth->L;
    const double gamma = smooth->alpha;
    const double lo = std::exp2(-3.0) * std::pow(12.0, a) / B;
    const double hi = std::pow(ell, 1.0 + a) * std::pow(t, a / 2.0) * std::exp2((1.0 + a) * (8.0 - 2.0 * gamma));
    auto warn = [&](const std::string& what) { out.warnings.push_back(what); };
    if (ell > L) warn("smooth constant l exceeds L");
    if (a > gamma) warn("alpha exceeds gamma");
    if (L < lo) {
        std::ostringstream msg;
        msg << "L = " << L << " below 2^-3 12^alpha / B = " << lo;
        warn(msg.str());
    }
    if (L > hi) {
        std::ostringstream msg;
        msg << "L = " << L << " above l^(1+alpha) T^(alpha/2) 2^((1+alpha)(8-2gamma)) = " << hi;
        warn(msg.str());
    }
    return out;
}

LowerBoundFamily::LowerBoundFamily(LowerBoundFamilyParams params) : params_(params) {
    params_.rough.validate();
    params_.smooth.validate();
    if (!(params_.M >= 0.5 && params_.M <= 1.0)) throw ConfigError("hypothesis family needs M in [1/2, 1]");
    if (!(params_.delta > 0.0 && params_.delta <= params_.M)) throw ConfigError("hypothesis family needs delta in (0, M]");
    if (params_.K < 1) throw ConfigError("hypothesis family needs K >= 1");
    if (params_.smooth.L > params_.rough.L) throw ConfigError("hypothesis family needs l <= L");
    if (params_.rough.alpha > params_.smooth.alpha) throw ConfigError("hypothesis family needs alpha <= gamma");
}

double LowerBoundFamily::cell_lo(std::size_t i) const {
    if (i == 0) return 0.5;
    return static_cast<double>(i - 1) / (2.0 * static_cast<double>(params_.K));
}

double LowerBoundFamily::cell_hi(std::size_t i) const {
    if (i == 0) return 1.0;
    return static_cast<double>(i) / (2.0 * static_cast<double>(params_.K));
}

double LowerBoundFamily::center(std::size_t i) const {
    if (i == 0) return 0.75;
    return (static_cast<double>(i) - 0.5) / (2.0 * static_cast<double>(params_.K));
}

double LowerBoundFamily::eval(std::size_t i, double x) const {
    if (i > params_.K) throw DomainError("hypothesis index out of range");
    const double M = params_.M;
    const double floor = M - params_.delta;
    if (x >= 0.5) {
        const double peak = M - params_.delta / 2.0 - params_.smooth.L * std::pow(std::abs(x - 0.75), params_.smooth.alpha);
        return std::max(floor, peak);
    }
    if (i >= 1 && x >= cell_lo(i) && x <= cell_hi(i))
        return std::max(floor, M - params_.rough.L * std::pow(std::abs(x - center(i)), params_.rough.alpha));
    return floor;
}

MeanPayoffFunction LowerBoundFamily::phi(std::size_t i) const {
    if (i > params_.K) throw DomainError("hypothesis index out of range");
    const MaxPoint top = i == 0 ? MaxPoint{params_.M - params_.delta / 2.0, 0.75} : MaxPoint{params_.M, center(i)};
    return MeanPayoffFunction("phi_" + std::to_string(i), [family = *this, i](double x) { return family.eval(i, x); },
                              top);
}

LowerBoundFamilyParams proof_optimal_family(double B, const HolderParams& rough, const HolderParams& smooth, double M) {
    rough.validate();
    if (!(B > 0.0)) throw ConfigError("proof_optimal_family needs B > 0");
    const double a = rough.alpha;
    const double c = kLowerBoundScale;
    LowerBoundFamilyParams out;
    out.M = M;
    out.rough = rough;
    out.smooth = smooth;
    out.delta = c * std::pow(rough.L, 1.0 / (a + 1.0)) * std::pow(B, -a / (a + 1.0));
    const double raw = std::pow(c, -1.0 / a) / 4.0 * std::pow(rough.L * B, 1.0 / (a + 1.0));
    const double k = std::abs(raw - std::round(raw)) <= 1e-9 ? std::round(raw) : std::floor(raw);
    if (!(k >= 1.0)) throw ConfigError("proof-optimal family has K = 0 for these (B, L, alpha)");
    out.K = static_cast<std::size_t>(k);
    return out;
}

RegularityConditions globreg_check(const LowerBoundFamilyParams& params) {
    RegularityConditions out;
    out.phii_value = std::pow(params.delta / params.rough.L, 1.0 / params.rough.alpha);
    out.phi0_value = std::pow(params.delta / (2.0 * params.smooth.L), 1.0 / params.smooth.alpha);
    out.phii_ok = out.phii_value <= 1.0 / (4.0 * static_cast<double>(params.K));
    out.phi0_ok = out.phi0_value <= 0.25;
    return out;
}

} // namespace xab
