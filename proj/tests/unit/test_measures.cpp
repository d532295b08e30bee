#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <variant>
#include <vector>

#include "../support/piecewise.hpp"
#include "xab/discrete.hpp"
#include "xab/errors.hpp"
#include "xab/measures.hpp"

using namespace xab;

namespace {

// Constant on each disc(32) cell.
MeanPayoffFunction step_function(const std::vector<double>& levels) {
    return MeanPayoffFunction("step", [levels](double x) {
        const auto j = std::min<std::size_t>(static_cast<std::size_t>(x * double(levels.size())), levels.size() - 1);
        return levels[j];
    });
}

std::vector<double> distinct_levels(std::size_t K, std::uint64_t seed) {
    std::vector<double> out(K);
    for (std::size_t i = 0; i < K; ++i) out[i] = 0.2 + 0.6 * double(i) / double(K);
    std::mt19937_64 g(seed);
    std::shuffle(out.begin(), out.end(), g);
    return out;
}

} // namespace

TEST_CASE("disc") {
    const auto one = disc(1);
    REQUIRE(one.size() == 1);
    CHECK(std::get<UniformInterval>(one[0].variant()).a == 0.0);
    CHECK(std::get<UniformInterval>(one[0].variant()).b == 1.0);

    const auto four = disc(4);
    REQUIRE(four.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        const auto& u = std::get<UniformInterval>(four[i].variant());
        CHECK(u.a == 0.25 * double(i));
        CHECK(u.b == 0.25 * double(i + 1));
    }

    const auto many = disc(37);
    CHECK(std::get<UniformInterval>(many.front().variant()).a == 0.0);
    CHECK(std::get<UniformInterval>(many.back().variant()).b == 1.0);
    for (std::size_t i = 1; i < many.size(); ++i)
        CHECK(std::get<UniformInterval>(many[i].variant()).a == std::get<UniformInterval>(many[i - 1].variant()).b);
    const MeanPayoffFunction one_fn("one", [](double) { return 1.0; });
    for (const auto& m : many) CHECK(measure_mean(m, one_fn) == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(disc(0), ConfigError);
}

TEST_CASE("measure validation") {
    CHECK_THROWS_AS(ArmMeasure::uniform(0.5, 0.5), ConfigError);
    CHECK_THROWS_AS(ArmMeasure::uniform(-0.1, 0.5), ConfigError);
    CHECK_THROWS_AS(ArmMeasure::uniform(0.2, 1.1), ConfigError);
    CHECK_THROWS_AS(ArmMeasure::empirical({}), ConfigError);
    CHECK_THROWS_AS(ArmMeasure::empirical({0.2, 1.5}), ConfigError);
}

TEST_CASE("sample_measure") {
    Rng rng(17);
    const auto point = ArmMeasure::empirical({0.3});
    for (int i = 0; i < 100; ++i) REQUIRE(sample_measure(point, rng) == 0.3);

    const auto unit = ArmMeasure::uniform(0.0, 1.0);
    double sum = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const double x = sample_measure(unit, rng);
        REQUIRE(x >= 0.0);
        REQUIRE(x < 1.0);
        sum += x;
    }
    CHECK(std::abs(sum / n - 0.5) <= 0.005);

    const auto pair = ArmMeasure::empirical({0.1, 0.9});
    int low = 0;
    for (int i = 0; i < n; ++i) low += sample_measure(pair, rng) == 0.1;
    CHECK(std::abs(double(low) / n - 0.5) <= 0.01);
}

TEST_CASE("measure_mean") {
    const MeanPayoffFunction id("x", [](double x) { return x; });
    const MeanPayoffFunction sq("x2", [](double x) { return x * x; });
    CHECK(measure_mean(ArmMeasure::uniform(0.0, 0.5), id) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(measure_mean(ArmMeasure::empirical({0.1, 0.3}), sq) == doctest::Approx(0.05).epsilon(1e-14));
    CHECK(measure_mean(ArmMeasure::uniform(0.2, 0.7), sq) == doctest::Approx((0.343 - 0.008) / 1.5).epsilon(1e-13));

    // 10^7-point midpoint Riemann sum (numpy); the closed form is 0.5130324598129838
    const double riemann = 0.5130324598129821;
    CHECK(std::abs(measure_mean(ArmMeasure::uniform(0.0, 1.0), sine_product_function()) - riemann) <= 1e-6);
}

TEST_CASE("cab11_run basic contracts") {
    const auto peak = make_problem(single_peak(1.0, 1.0, 0.3), NoiseModel::disabled());
    Rng rng(4);

    const auto trace = cab11_run(10, disc(1), peak, rng);
    CHECK(trace.size() == 10);
    double direct = 0.0;
    for (double fx : trace.payoff) direct += 1.0 - fx;
    CHECK(trace.total_regret() == doctest::Approx(direct).epsilon(1e-12));
    for (std::size_t t = 1; t < trace.size(); ++t) CHECK(trace.cum_regret[t] >= trace.cum_regret[t - 1]);

    const auto at_peak = cab11_run(100, {ArmMeasure::empirical({0.3})}, peak, rng);
    CHECK(at_peak.total_regret() == 0.0);

    CHECK_THROWS_AS(cab11_run(10, MeasureSet{}, peak, rng), ConfigError);
    CHECK_THROWS_AS(cab11_run(0, disc(2), peak, rng), ConfigError);
}

TEST_CASE("cab11_run with one measure: mean regret matches T (M - pi(f))") {
    const auto peak = make_problem(single_peak(1.0, 1.0, 0.3), NoiseModel::disabled());
    const auto measures = disc(1);
    const double expected = 10.0 * (1.0 - measure_mean(measures[0], peak.payoff));
    double sum = 0.0;
    double sq = 0.0;
    const int runs = 4000;
    for (int r = 0; r < runs; ++r) {
        Rng rng(derive_run_seed(3, r));
        const double reg = cab11_run(10, measures, peak, rng).total_regret();
        sum += reg;
        sq += reg * reg;
    }
    const double mean = sum / runs;
    const double se = std::sqrt((sq / runs - mean * mean) / (runs - 1));
    CHECK(std::abs(mean - expected) <= 4.0 * se);
}

TEST_CASE("regret decomposition on piecewise-linear payoffs") {
    Rng config_rng(99);
    for (int c = 0; c < 10; ++c) {
        const auto p = testing::random_piecewise(config_rng);
        const auto problem = make_problem(testing::as_payoff(p));
        const std::size_t K = std::size_t{1} << (c % 5);
        const auto measures = disc(K);
        Rng rng(derive_run_seed(5, c));
        const auto trace = cab11_run(1000 + 100 * c, measures, problem, rng);
        const auto d = testing::decompose(p, K, trace, measures, problem.payoff);
        CHECK(d.worst_quadrature_error <= 1e-12);
        CHECK(std::abs(d.approximation + d.learning - d.direct) <= 1e-9);
        CHECK(d.approximation >= 0.0);
        CHECK(d.learning >= -1e-9);
    }
}

TEST_CASE("kstar") {
    CHECK(kstar({1.0, 1.0}, 32768) == 32);
    CHECK(kstar({2.0, 0.5}, 10000) == 200);
    CHECK(kstar({1e6, 0.1}, 100) == 100);
    CHECK(kstar({1.0, 1.0}, 1) == 1);
    CHECK_THROWS_AS(kstar({1.0, 1.0}, 0), ConfigError);
    CHECK_THROWS_AS(kstar({0.0, 1.0}, 10), ConfigError);
    CHECK(kstar_warning({0.001, 1.0}, 10000).has_value());
    CHECK_FALSE(kstar_warning({1.0, 1.0}, 10000).has_value());
    // 28 (2^14)^{2/3} = 28 * 2^{28/3}
    CHECK(nonadaptive_bound({1.0, 1.0}, 1 << 14) == doctest::Approx(28.0 * std::exp2(28.0 / 3.0)).epsilon(1e-12));
    CHECK(nonadaptive_bound({1.0, 1.0}, 1 << 15) == doctest::Approx(28672.0).epsilon(1e-12));
}

TEST_CASE("guarded_ceil") {
    CHECK(guarded_ceil(5.0 + 1e-12) == 5.0);
    CHECK(guarded_ceil(5.0 - 1e-12) == 5.0);
    CHECK(guarded_ceil(5.1) == 6.0);
    CHECK(guarded_ceil(std::cbrt(32768.0)) == 32.0);
}

TEST_CASE("K* = 1 plays Uniform[0,1] throughout") {
    const auto problem = make_problem(single_peak(1.0, 1.0, 0.3));
    const HolderParams tiny{0.001, 1.0};
    REQUIRE(kstar(tiny, 1000) == 1);
    Rng a(8);
    Rng b(8);
    const auto lhs = cab11_nonadaptive(tiny, 1000, problem, a);
    const auto rhs = cab11_run(1000, disc(1), problem, b);
    CHECK(lhs.arm == rhs.arm);
    CHECK(lhs.cum_regret == rhs.cum_regret);
}

TEST_CASE("noise off, payoff constant on the K* = 32 cells: same outcome as MOSS on the cell means") {
    const auto levels = distinct_levels(32, 1);
    const auto problem = make_problem(step_function(levels), NoiseModel::disabled());
    REQUIRE(kstar({1.0, 1.0}, 32768) == 32);
    Rng rng(12);
    const auto trace = cab11_nonadaptive({1.0, 1.0}, 32768, problem, rng);
    Rng unused(0);
    const auto reference = moss_run(levels, 32768, unused, 0.0);
    CHECK(trace.total_regret() == doctest::Approx(reference.total_regret()).epsilon(1e-9));
    for (std::size_t t = 0; t < reference.arms.size(); t += 997) CHECK(trace.measure_index[t] == reference.arms[t]);
}

TEST_CASE("total regret is invariant under relabeling the measures") {
    const auto levels = distinct_levels(16, 2);
    const auto problem = make_problem(step_function(levels), NoiseModel::disabled());
    const auto base = disc(16);
    Rng r0(1);
    const double reference = cab11_run(5000, base, problem, r0).total_regret();
    std::mt19937_64 g(3);
    for (int k = 0; k < 5; ++k) {
        auto permuted = base;
        std::shuffle(permuted.begin(), permuted.end(), g);
        Rng rng(1);
        CHECK(cab11_run(5000, permuted, problem, rng).total_regret() == doctest::Approx(reference).epsilon(1e-9));
    }
}

TEST_CASE("RunTrace::append continues the cumulative regret") {
    RunTrace a;
    a.max_value = 1.0;
    a.push(0, 0.1, 0.5, 0.5);
    RunTrace b;
    b.max_value = 1.0;
    b.push(1, 0.2, 0.75, 0.75);
    b.push(1, 0.2, 0.75, 0.75);
    a.append(b);
    CHECK(a.size() == 3);
    CHECK(a.cum_regret == std::vector<double>{0.5, 0.75, 1.0});
}
