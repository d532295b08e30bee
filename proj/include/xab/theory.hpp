#pragma once

// Rate functions, the adaptive lower bound and the hypothesis family that
// realizes it.

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "xab/env.hpp"

namespace xab {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// theta_m(alpha) = max(m, 1 - m alpha/(alpha+1)); theta_m(+inf) = m.
// Throws DomainError unless m in [1/2, 1] and alpha > 0.
double theta(double m, double alpha);

// The m whose rate curve touches the known-smoothness minimax exponent at gamma:
// (gamma+1)/(2gamma+1). gamma = +inf gives 1/2.
double m_of_gamma(double gamma);

// (alpha+1)/(2alpha+1), the exponent of T in the minimax regret at known smoothness.
double minimax_exponent(double alpha);

struct RatePoint {
    double alpha{0.0};
    double theta{0.0};
};

// True iff theta(alpha) >= 1 - theta(inf) alpha/(alpha+1) - tolerance at every
// sample, with theta(inf) taken as the value at the largest sampled alpha.
// Throws ConfigError on an empty curve.
bool satisfies_rate_inequation(std::span<const RatePoint> curve, double tolerance = 1e-12);

// Sampled theta_m on `alphas`.
std::vector<RatePoint> sample_theta(double m, std::span<const double> alphas);

struct LowerBoundValue {
    double value{0.0};
    std::vector<std::string> warnings;
};

// 2^-10 T L^{1/(a+1)} B^{-a/(a+1)}. When `smooth` is given, the side conditions
// 2^-3 12^a / B <= L <= l^{1+a} T^{a/2} 2^{(1+a)(8-2g)}, l <= L and a <= g are
// checked and each failure is reported as a warning.
LowerBoundValue adaptive_lower_bound(double B, std::uint64_t T, const HolderParams& rough,
                                     const std::optional<HolderParams>& smooth = std::nullopt);

struct LowerBoundFamilyParams {
    double M{1.0};
    double delta{0.1};
    std::size_t K{2};
    HolderParams rough{1.0, 1.0};  // (L, alpha)
    HolderParams smooth{1.0, 2.0}; // (l, gamma)
};

// The K+1 hypotheses on the cells H_0 = [1/2, 1], H_i = [(i-1)/(2K), i/(2K)]:
//   on H_0:   max(M - delta, M - delta/2 - l |x - 3/4|^gamma)   (every phi_i)
//   on H_i:   max(M - delta, M - L |x - x_i|^alpha)             (phi_i, i >= 1)
//   elsewhere M - delta.
class LowerBoundFamily {
public:
    // Throws ConfigError unless M in [1/2,1], delta in (0,M], K >= 1, l <= L, alpha <= gamma.
    explicit LowerBoundFamily(LowerBoundFamilyParams params);

    const LowerBoundFamilyParams& params() const noexcept { return params_; }
    std::size_t size() const noexcept { return params_.K + 1; }

    double cell_lo(std::size_t i) const;
    double cell_hi(std::size_t i) const;
    double center(std::size_t i) const; // x_0 = 3/4, x_i = (i - 1/2)/(2K)

    double eval(std::size_t i, double x) const;
    // phi_i as a payoff function carrying its exact maximum.
    MeanPayoffFunction phi(std::size_t i) const;

private:
    LowerBoundFamilyParams params_;
};

inline constexpr double kLowerBoundScale = 1.0 / 128.0;

// delta = c L^{1/(a+1)} B^{-a/(a+1)}, K = floor(c^{-1/a}/4 (LB)^{1/(a+1)}) with c = 1/128.
// Throws ConfigError when the resulting K is 0.
LowerBoundFamilyParams proof_optimal_family(double B, const HolderParams& rough, const HolderParams& smooth,
                                            double M = 1.0);

struct RegularityConditions {
    bool phi0_ok{false}; // (delta/(2l))^{1/gamma} <= 1/4   =>  phi_0 in H(l, gamma)
    bool phii_ok{false}; // (delta/L)^{1/alpha} <= 1/(4K)    =>  phi_i in H(L, alpha), i >= 1
    double phi0_value{0.0};
    double phii_value{0.0};
};

RegularityConditions globreg_check(const LowerBoundFamilyParams& params);

} // namespace xab
