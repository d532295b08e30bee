// Command-line front end for the simulation library.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "xab/csv.hpp"
#include "xab/errors.hpp"
#include "xab/harness.hpp"
#include "xab/measures.hpp"
#include "xab/theory.hpp"

namespace fs = std::filesystem;

namespace {

struct Globals {
    std::uint64_t seed{0};
    std::string threads{"1"};
    std::optional<std::string> out_dir;
};

struct RunArgs {
    std::string env{"f"};
    std::string algo{"medzo"};
    double L{1.0};
    double alpha{1.0};
    std::optional<double> B;
    bool sqrtT{false};
    bool force{false};
    double m{0.5};
    std::uint64_t T{100000};
    std::uint64_t runs{20};
    std::uint64_t stride{0};
    bool no_noise{false};
    std::optional<std::string> out;
    std::optional<std::string> regime_dump;
};

double parse_double(const std::string& s) {
    double v = 0.0;
    const char* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc{} || ptr != end) throw xab::ConfigError("not a number: '" + s + "'");
    return v;
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) out.push_back(parse_double(item));
    if (out.empty()) throw xab::ConfigError("empty list");
    return out;
}

// "a,b,c" or "log:lo,hi,count".
std::vector<double> parse_grid(const std::string& s) {
    if (s.rfind("log:", 0) == 0) {
        const auto v = parse_list(s.substr(4));
        if (v.size() != 3) throw xab::ConfigError("log grid spec is log:lo,hi,count");
        return xab::log_grid(v[0], v[1], static_cast<std::size_t>(v[2]));
    }
    return parse_list(s);
}

unsigned parse_threads(const std::string& s) {
    if (s == "auto") return 0;
    unsigned v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || v == 0)
        throw xab::ConfigError("--threads takes a positive integer or 'auto'");
    return v;
}

void add_run_options(CLI::App* cmd, RunArgs& a, bool with_algo) {
    cmd->add_option("--env", a.env, "f | g | garland | peak:L,alpha,xstar[,M]");
    if (with_algo)
        cmd->add_option("--algo", a.algo, "cab1 | medzo | medzo-anytime | gpo")
            ->check(CLI::IsMember({"cab1", "medzo", "medzo-anytime", "gpo"}));
    cmd->add_option("--T", a.T, "horizon");
    cmd->add_option("--runs", a.runs, "number of seeded runs");
    cmd->add_option("--stride", a.stride, "checkpoint stride (default T/100)");
    cmd->add_flag("--no-noise", a.no_noise, "observe mean payoffs without noise");
    cmd->add_option("--out", a.out, "aggregate CSV; runs/meta CSVs are written beside it");
}

void add_cab1_options(CLI::App* cmd, RunArgs& a) {
    cmd->add_option("--L", a.L, "assumed Hölder constant");
    cmd->add_option("--alpha", a.alpha, "assumed Hölder exponent");
}

void add_medzo_options(CLI::App* cmd, RunArgs& a) {
    auto* b = cmd->add_option("--B", a.B, "regret bound parameter, B >= 2");
    auto* s = cmd->add_flag("--sqrtT", a.sqrtT, "use B = sqrt(T) (default)");
    b->excludes(s);
    cmd->add_flag("--force", a.force, "allow B < sqrt(T)");
    cmd->add_option("--regime-dump", a.regime_dump, "per-regime CSV");
}

xab::AlgorithmSpec algorithm_of(const RunArgs& a) {
    if (a.algo == "cab1") return xab::AlgorithmSpec::cab1({a.L, a.alpha});
    if (a.algo == "medzo") return xab::AlgorithmSpec::medzo(a.sqrtT ? std::nullopt : a.B, a.force);
    if (a.algo == "medzo-anytime") return xab::AlgorithmSpec::medzo_anytime(a.m);
    return xab::AlgorithmSpec::gpo();
}

int do_run(const Globals& g, const RunArgs& a) {
    xab::ExperimentConfig c;
    c.env = a.env;
    c.noise = !a.no_noise;
    c.algorithm = algorithm_of(a);
    c.T = a.T;
    c.runs = a.runs;
    c.base_seed = g.seed;
    c.stride = a.stride;
    c.threads = parse_threads(g.threads);
    if (a.out) c.out = xab::OutputPaths::beside(*a.out, c.algorithm.kind);
    else if (g.out_dir) c.out = xab::OutputPaths::in_directory(*g.out_dir, c.algorithm.kind);
    if (a.regime_dump) c.out.regimes = fs::path(*a.regime_dump);

    if (c.algorithm.kind == xab::AlgorithmKind::medzo && c.algorithm.force && c.algorithm.B &&
        *c.algorithm.B < std::sqrt(static_cast<double>(c.T)))
        std::cerr << "warning: B < sqrt(T) accepted through --force; the regret guarantee does not apply\n";
    if (c.algorithm.kind == xab::AlgorithmKind::cab1)
        if (auto w = xab::kstar_warning(c.algorithm.assumed, c.T)) std::cerr << "warning: " << *w << '\n';

    const auto r = xab::run_experiment(c);
    std::cout << c.algorithm.name() << " on " << c.env << ", T = " << c.T << ", runs = " << c.runs << '\n'
              << "final regret: mean " << xab::format_number(r.final_regret.mean) << ", std "
              << xab::format_number(r.final_regret.std) << ", stderr " << xab::format_number(r.final_regret.se) << '\n';
    if (r.simple_regret)
        std::cout << "simple regret: mean " << xab::format_number(r.simple_regret->mean) << ", stderr "
                  << xab::format_number(r.simple_regret->se) << '\n';
    std::cout << "wall time: " << r.wall_seconds << " s\n";
    for (const auto& p : c.out.all()) std::cout << "wrote " << p.string() << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Adaptive continuum-armed bandit simulations"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--seed", g.seed, "base seed")->capture_default_str();
    app.add_option("--threads", g.threads, "worker threads, n or auto")->capture_default_str();
    app.add_option("--out-dir", g.out_dir, "directory for runs.csv, aggregate.csv and meta.csv");
    app.fallthrough();

    RunArgs run_args;
    auto* run = app.add_subcommand("run", "run any algorithm");
    add_run_options(run, run_args, true);
    add_cab1_options(run, run_args);
    add_medzo_options(run, run_args);
    run->add_option("--m", run_args.m, "anytime MeDZO exponent in [1/2, 1]");

    RunArgs cab1_args;
    cab1_args.algo = "cab1";
    auto* cab1 = app.add_subcommand("cab1", "CAB1.1 with the K* discretization for assumed (L, alpha)");
    add_run_options(cab1, cab1_args, false);
    add_cab1_options(cab1, cab1_args);

    RunArgs medzo_args;
    medzo_args.algo = "medzo";
    auto* medzo = app.add_subcommand("medzo", "MeDZO");
    add_run_options(medzo, medzo_args, false);
    add_medzo_options(medzo, medzo_args);

    RunArgs anytime_args;
    anytime_args.algo = "medzo-anytime";
    auto* anytime = app.add_subcommand("medzo-anytime", "doubling-trick MeDZO");
    add_run_options(anytime, anytime_args, false);
    anytime->add_option("--m", anytime_args.m, "exponent in [1/2, 1]");

    RunArgs gpo_args;
    gpo_args.algo = "gpo";
    auto* gpo = app.add_subcommand("gpo", "GPO simple-regret recommender");
    add_run_options(gpo, gpo_args, false);

    xab::SuiteConfig suite;
    std::string suite_grid = "0.1,0.5,1,2,5";
    auto* appx = app.add_subcommand("appendix-e", "MeDZO vs tuned CAB1 on f, g and garland");
    appx->add_option("--T", suite.T, "horizon");
    appx->add_option("--runs", suite.runs, "runs per series");
    appx->add_option("--alpha-grid", suite_grid, "assumed alphas for CAB1");

    std::string rates_m = "0.5,0.6,0.7,0.8,0.9,1";
    std::string rates_grid = "log:0.01,1000,200";
    std::optional<std::string> rates_out;
    auto* rates = app.add_subcommand("rates", "export theta_m curves");
    rates->add_option("--m", rates_m, "comma-separated m values in [1/2, 1]");
    rates->add_option("--alpha-grid", rates_grid, "comma list or log:lo,hi,count");
    rates->add_option("--out", rates_out, "output CSV");

    double lb_B = 1024.0;
    xab::HolderParams lb_rough{1.0, 1.0};
    xab::HolderParams lb_smooth{1.0, 2.0};
    double lb_M = 1.0;
    std::optional<double> lb_delta;
    std::optional<std::size_t> lb_K;
    std::size_t lb_points = 1001;
    std::uint64_t lb_T = 0;
    std::optional<std::string> lb_out;
    auto* lower = app.add_subcommand("lowerbound", "sample the hypothesis family");
    lower->add_option("--B", lb_B, "regret bound parameter (sets delta and K when not given)");
    lower->add_option("--L", lb_rough.L, "rough Hölder constant");
    lower->add_option("--alpha", lb_rough.alpha, "rough Hölder exponent");
    lower->add_option("--l", lb_smooth.L, "smooth Hölder constant");
    lower->add_option("--gamma", lb_smooth.alpha, "smooth Hölder exponent");
    lower->add_option("--M", lb_M, "peak height in [1/2, 1]");
    lower->add_option("--delta", lb_delta, "gap");
    lower->add_option("--K", lb_K, "number of rough cells");
    lower->add_option("--points", lb_points, "samples per function");
    lower->add_option("--T", lb_T, "horizon for the lower-bound value");
    lower->add_option("--out", lb_out, "output CSV (i, x, phi)");

    std::string mb_means;
    std::size_t mb_K = 10;
    double mb_gap = 0.05;
    std::uint64_t mb_T = 10000;
    std::uint64_t mb_runs = 200;
    bool mb_no_noise = false;
    auto* bench = app.add_subcommand("moss-bench", "MOSS on fixed arm means");
    bench->group("");
    bench->add_option("--means", mb_means, "comma-separated means (default 0.5 - gap*i)");
    bench->add_option("--K", mb_K, "arms");
    bench->add_option("--gap", mb_gap, "gap between consecutive arms");
    bench->add_option("--T", mb_T, "horizon");
    bench->add_option("--runs", mb_runs, "seeds");
    bench->add_flag("--no-noise", mb_no_noise, "noiseless rewards");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*run) return do_run(g, run_args);
        if (*cab1) return do_run(g, cab1_args);
        if (*medzo) return do_run(g, medzo_args);
        if (*anytime) return do_run(g, anytime_args);
        if (*gpo) return do_run(g, gpo_args);

        if (*appx) {
            if (!g.out_dir) throw xab::ConfigError("appendix-e needs --out-dir");
            suite.alpha_grid = parse_grid(suite_grid);
            suite.seed = g.seed;
            suite.threads = parse_threads(g.threads);
            suite.out_dir = fs::path(*g.out_dir);
            for (const auto& r : xab::appendix_e_suite(suite)) {
                std::cout << r.problem << ' ' << r.algorithm;
                if (r.assumed_alpha) std::cout << " alpha=" << xab::format_number(*r.assumed_alpha);
                std::cout << " K=" << r.cells << " final_mean=" << xab::format_number(r.final_regret.mean)
                          << " stderr=" << xab::format_number(r.final_regret.se) << '\n';
            }
            return 0;
        }

        if (*rates) {
            const fs::path out = rates_out ? fs::path(*rates_out)
                                           : fs::path(g.out_dir.value_or(".")) / "rates.csv";
            xab::rate_curve_export(parse_list(rates_m), parse_grid(rates_grid), out);
            std::cout << "wrote " << out.string() << '\n';
            return 0;
        }

        if (*lower) {
            xab::LowerBoundFamilyParams params = xab::proof_optimal_family(lb_B, lb_rough, lb_smooth, lb_M);
            if (lb_delta) params.delta = *lb_delta;
            if (lb_K) params.K = *lb_K;
            const xab::LowerBoundFamily family(params);
            const auto reg = xab::globreg_check(params);
            std::cout << "delta = " << xab::format_number(params.delta) << ", K = " << params.K << '\n'
                      << "phi_0 regular: " << (reg.phi0_ok ? "yes" : "no") << ", phi_i regular: "
                      << (reg.phii_ok ? "yes" : "no") << '\n';
            if (lb_T > 0) {
                const auto v = xab::adaptive_lower_bound(lb_B, lb_T, lb_rough, lb_smooth);
                std::cout << "lower bound: " << xab::format_number(v.value) << '\n';
                for (const auto& w : v.warnings) std::cerr << "warning: " << w << '\n';
            }
            if (lb_points < 2) throw xab::ConfigError("--points must be at least 2");
            const fs::path out = lb_out ? fs::path(*lb_out) : fs::path(g.out_dir.value_or(".")) / "lowerbound.csv";
            xab::CsvWriter w(out);
            w.header({"i", "x", "phi"});
            for (std::size_t i = 0; i < family.size(); ++i)
                for (std::size_t j = 0; j < lb_points; ++j) {
                    const double x = static_cast<double>(j) / static_cast<double>(lb_points - 1);
                    w.field(std::uint64_t{i}).field(x).field(family.eval(i, x));
                    w.end_row();
                }
            w.close();
            std::cout << "wrote " << out.string() << '\n';
            return 0;
        }

        if (*bench) {
            std::vector<double> means;
            if (!mb_means.empty()) means = parse_list(mb_means);
            else
                for (std::size_t i = 0; i < mb_K; ++i) means.push_back(0.5 - mb_gap * static_cast<double>(i));
            const auto r = xab::moss_bench(means, mb_T, mb_runs, g.seed, parse_threads(g.threads), !mb_no_noise);
            std::cout << "mean " << xab::format_number(r.final_regret.mean) << " std "
                      << xab::format_number(r.final_regret.std) << " stderr " << xab::format_number(r.final_regret.se)
                      << " bound " << xab::format_number(r.bound) << '\n';
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
