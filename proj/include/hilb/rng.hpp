#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <string_view>

namespace hilb {

// splitmix64 step; used only to mix seeds, never as the main generator.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Derive an independent sub-seed from (base seed, textual label, trial index).
// The label keeps different suites decorrelated even at equal trial indices.
inline std::uint64_t mix_seed(std::uint64_t seed, std::string_view label, std::uint64_t trial) {
    std::uint64_t h = 0xcbf29ce484222325ull; // FNV-1a over the label
    for (unsigned char c : label) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    std::uint64_t state = seed;
    std::uint64_t out = splitmix64(state);
    state ^= h;
    out ^= splitmix64(state);
    state ^= trial * 0x9e3779b97f4a7c15ull;
    out ^= splitmix64(state);
    return out;
}

// Deterministic random source. mt19937_64 output is pinned by the standard,
// and the Gaussian transform is hand-rolled (Box-Muller) because the
// distribution adapters in <random> are implementation-defined. This keeps
// reports byte-identical across platforms and thread counts.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t bits() { return eng_(); }

    // Uniform in [0, 1) with 53 random mantissa bits.
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    bool coin() { return (eng_() >> 63) != 0; }

    // i.i.d. standard normal via Box-Muller; generates pairs, caches the spare.
    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = 1.0 - uniform01(); // in (0, 1], so the log is finite
        double u2 = uniform01();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

    // Standard complex normal (unit total variance).
    std::complex<double> cgaussian() {
        double re = gaussian();
        double im = gaussian();
        return {re / std::numbers::sqrt2, im / std::numbers::sqrt2};
    }

    // Uniform integer in [lo, hi], inclusive. Uses rejection-free modulo on a
    // 64-bit draw; bias is negligible for the tiny ranges used here, and more
    // importantly the result is deterministic across platforms.
    std::uint64_t uniform_index(std::uint64_t lo, std::uint64_t hi) {
        return lo + eng_() % (hi - lo + 1);
    }

private:
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace hilb
