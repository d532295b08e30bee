#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace xab {

// 64-bit finalizer of splitmix64; a bijection on uint64_t.
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Seed of run `run_index` under `base_seed`. The counter step is odd, so distinct
// run indices give distinct pre-images and, the mix being bijective, distinct seeds.
constexpr std::uint64_t derive_run_seed(std::uint64_t base_seed, std::uint64_t run_index) noexcept {
    return splitmix64_mix(base_seed + 0x9e3779b97f4a7c15ULL * (run_index + 1));
}

// Per-run random stream. Never shared between threads.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform on [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform index in {0, ..., n-1}; n must be positive.
    std::size_t index(std::size_t n) {
        const auto i = static_cast<std::size_t>(uniform01() * static_cast<double>(n));
        return i < n ? i : n - 1;
    }

    double gaussian(double stddev) { return stddev * std_normal_(engine_); }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> std_normal_{0.0, 1.0};
};

} // namespace xab
