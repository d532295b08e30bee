#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "xab/csv.hpp"
#include "xab/errors.hpp"
#include "xab/harness.hpp"
#include "xab/measures.hpp"
#include "xab/medzo.hpp"
#include "xab/rng.hpp"

using namespace xab;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("xab_harness_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

std::vector<std::string> lines(const fs::path& p) {
    std::ifstream in(p);
    std::vector<std::string> out;
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

} // namespace

TEST_CASE("format_number") {
    CHECK(format_number(0.0) == "0.00000000");
    CHECK(format_number(1.0) == "1.00000000");
    CHECK(format_number(0.75) == "0.750000000");
    CHECK(format_number(123.456789012) == "123.456789");
    CHECK(format_number(28672.0) == "28672.0000");
    CHECK(format_number(-2.5) == "-2.50000000");
    CHECK(format_number(1.5e9) == "1500000000");
    CHECK(format_number(0.00012345678912) == "0.000123456789");
}

TEST_CASE("checkpoints") {
    CHECK(checkpoints(10, 3) == std::vector<std::uint64_t>{1, 2, 3, 4, 6, 8, 9, 10});
    CHECK(checkpoints(1, 1) == std::vector<std::uint64_t>{1});
    const auto ts = checkpoints(100000, 1000);
    CHECK(ts.back() == 100000);
    for (std::size_t i = 1; i < ts.size(); ++i) CHECK(ts[i] > ts[i - 1]);
    CHECK_THROWS_AS(checkpoints(0, 1), ConfigError);
    CHECK_THROWS_AS(checkpoints(10, 0), ConfigError);
}

TEST_CASE("summarize") {
    const auto s = summarize(5, {1.0, 2.0, 3.0, 4.0});
    CHECK(s.mean == 2.5);
    CHECK(s.std == doctest::Approx(std::sqrt(5.0 / 3.0)).epsilon(1e-15));
    CHECK(s.se == doctest::Approx(std::sqrt(5.0 / 3.0) / 2.0).epsilon(1e-15));
    CHECK(s.n == 4);
    const auto one = summarize(1, {7.0});
    CHECK(one.std == 0.0);
    CHECK(one.se == 0.0);
}

TEST_CASE("run seeds are pairwise distinct and independent of N") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t r = 0; r < 100000; ++r) seen.insert(derive_run_seed(12345, r));
    CHECK(seen.size() == 100000);

    ExperimentConfig small;
    small.env = "g";
    small.algorithm = AlgorithmSpec::medzo();
    small.T = 2000;
    small.runs = 3;
    small.base_seed = 9;
    ExperimentConfig large = small;
    large.runs = 7;
    const auto problem = make_problem(make_test_function("g"));
    for (std::uint64_t r = 0; r < 3; ++r)
        CHECK(run_single(small, problem, r).regret_at == run_single(large, problem, r).regret_at);
}

TEST_CASE("single noiseless run: aggregate equals the trace") {
    ExperimentConfig c;
    c.env = "peak:1,1,0.37";
    c.noise = false;
    c.algorithm = AlgorithmSpec::medzo();
    c.T = 4096;
    c.runs = 1;
    c.base_seed = 4;
    c.stride = 64;
    const auto agg = run_experiment(c);

    Rng rng(derive_run_seed(4, 0));
    const auto problem = make_problem(make_test_function(c.env), NoiseModel::disabled());
    const auto trace = medzo_run(64.0, 4096, problem, rng).trace;
    for (const auto& cp : agg.checkpoints) {
        CHECK(cp.mean == trace.cum_regret[cp.t - 1]);
        CHECK(cp.std == 0.0);
        CHECK(cp.n == 1);
    }
}

TEST_CASE("same config twice and across thread counts: byte-identical CSVs") {
    const fs::path dir = scratch("determinism");
    for (AlgorithmSpec spec : {AlgorithmSpec::medzo(), AlgorithmSpec::cab1({1.0, 0.5}), AlgorithmSpec::gpo(),
                               AlgorithmSpec::medzo_anytime(0.75)}) {
        ExperimentConfig c;
        c.env = "garland";
        c.algorithm = spec;
        c.T = 3000;
        c.runs = 5;
        c.base_seed = 2;
        std::vector<std::vector<std::string>> contents;
        for (unsigned threads : {1u, 1u, 0u, 3u}) {
            const fs::path sub = dir / (spec.name() + "_" + std::to_string(contents.size()));
            c.threads = threads;
            c.out = OutputPaths::in_directory(sub, spec.kind);
            run_experiment(c);
            std::vector<std::string> files;
            for (const auto& p : c.out.all()) files.push_back(slurp(p));
            contents.push_back(files);
        }
        for (std::size_t k = 1; k < contents.size(); ++k) CHECK(contents[k] == contents[0]);
    }
}

TEST_CASE("CSV schemas") {
    const fs::path dir = scratch("schemas");
    ExperimentConfig c;
    c.env = "f";
    c.algorithm = AlgorithmSpec::medzo();
    c.T = 1000;
    c.runs = 2;
    c.out = OutputPaths::beside(dir / "medzo.csv", AlgorithmKind::medzo);
    const auto agg = run_experiment(c);
    const auto ts = checkpoints(1000, 10);

    const auto aggregate = lines(dir / "medzo.csv");
    CHECK(aggregate.front() == "t,mean,std,stderr,n");
    CHECK(aggregate.size() == ts.size() + 1);
    const auto runs = lines(dir / "medzo_runs.csv");
    CHECK(runs.front() == "run_id,t,cum_regret");
    CHECK(runs.size() == 2 * ts.size() + 1);
    const auto meta = lines(dir / "medzo_meta.csv");
    CHECK(meta.front() == "key,value");
    CHECK(meta.size() == agg.meta.size() + 1);
    const auto regimes = lines(dir / "medzo_regimes.csv");
    CHECK(regimes.front() == "run_id,regime,K,length,regime_regret,nu_mean");
    for (std::size_t i = 1; i < aggregate.size(); ++i) CHECK(aggregate[i].find('e') == std::string::npos);
}

TEST_CASE("unwritable output fails before any run") {
    const fs::path dir = scratch("unwritable");
    const fs::path blocker = dir / "file";
    std::ofstream(blocker) << "x";
    ExperimentConfig c;
    c.env = "f";
    c.algorithm = AlgorithmSpec::medzo();
    c.T = 100000000; // would take far too long if any run started
    c.runs = 1;
    c.out.aggregate = blocker / "aggregate.csv";
    CHECK_THROWS_AS(run_experiment(c), IoError);
}

TEST_CASE("invalid configs") {
    ExperimentConfig c;
    c.runs = 0;
    CHECK_THROWS_AS(run_experiment(c), ConfigError);
    c.runs = 1;
    c.T = 0;
    CHECK_THROWS_AS(run_experiment(c), ConfigError);
    c.T = 10;
    c.env = "nope";
    CHECK_THROWS_AS(run_experiment(c), ConfigError);
    CHECK_THROWS_AS(AlgorithmSpec::medzo(1.0), ConfigError);
    CHECK_THROWS_AS(AlgorithmSpec::medzo_anytime(0.3), ConfigError);
    CHECK_THROWS_AS(AlgorithmSpec::cab1({1.0, -1.0}), ConfigError);
}

TEST_CASE("appendix E suite shape") {
    const fs::path dir = scratch("appendix_e");
    SuiteConfig s;
    s.T = 10000;
    s.runs = 2;
    s.alpha_grid = {1.0};
    s.out_dir = dir;
    const auto rows = appendix_e_suite(s);
    REQUIRE(rows.size() == 6);
    for (std::size_t k = 0; k < 3; ++k) {
        CHECK(rows[2 * k].algorithm == "medzo");
        CHECK_FALSE(rows[2 * k].assumed_alpha.has_value());
        CHECK(rows[2 * k + 1].algorithm == "cab1");
        CHECK(rows[2 * k + 1].cells == kstar({1.0, 1.0}, 10000));
    }
    for (const char* p : {"f", "g", "garland"}) {
        const auto csv = lines(dir / (std::string("appendix_e_") + p + ".csv"));
        REQUIRE(csv.size() == 3);
        CHECK(csv[0] == "problem,algorithm,assumed_alpha,K,final_mean,final_std,final_stderr,n");
        CHECK(csv[0].find("sr") == std::string::npos);
        CHECK(csv[1].rfind(std::string(p) + ",medzo,,", 0) == 0);
    }
    s.alpha_grid.clear();
    CHECK_THROWS_AS(appendix_e_suite(s), ConfigError);
}

TEST_CASE("rate curve export") {
    const fs::path dir = scratch("rates");
    rate_curve_export({0.5, 1.0}, {1.0, 2.0}, dir / "rates.csv");
    const auto csv = lines(dir / "rates.csv");
    REQUIRE(csv.size() == 5);
    CHECK(csv[0] == "m,alpha,theta,minimax");
    CHECK(csv[1] == "0.500000000,1.00000000,0.750000000,0.666666667");
    CHECK(csv[3] == "1.00000000,1.00000000,1.00000000,0.666666667");
    CHECK(csv[4] == "1.00000000,2.00000000,1.00000000,0.600000000");
    CHECK_THROWS_AS(rate_curve_export({0.4}, {1.0}, dir / "bad.csv"), ConfigError);
}

TEST_CASE("log_grid") {
    const auto g = log_grid(0.01, 1000.0, 6);
    REQUIRE(g.size() == 6);
    CHECK(g.front() == 0.01);
    CHECK(g.back() == 1000.0);
    CHECK(g[2] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("parallel_for propagates exceptions") {
    CHECK_THROWS_AS(parallel_for(10, 3, [](std::size_t i) { if (i == 4) throw DomainError("boom"); }), DomainError);
    std::vector<int> hits(50, 0);
    parallel_for(50, 4, [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits) CHECK(h == 1);
}

TEST_CASE("moss bench") {
    const auto r = moss_bench({0.5, 0.45, 0.4}, 2000, 10, 1, 0);
    CHECK(r.bound == doctest::Approx(18.0 * std::sqrt(6000.0)).epsilon(1e-12));
    CHECK(r.final_regret.n == 10);
    CHECK(r.final_regret.mean <= r.bound);
}
