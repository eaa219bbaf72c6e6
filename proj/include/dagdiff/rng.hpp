#pragma once

#include <cstdint>
#include <random>

namespace dagdiff {

/// SplitMix64 mixing step (Steele, Lea, Flood 2014). Used both as the seed
/// splitter and to bootstrap engine state.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Counter-based seed derivation: the stream for (master, index) is independent
/// of evaluation order, so replicates and trial batches can run in any order or
/// in parallel and still reproduce bit-identical results.
inline std::uint64_t split_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t s = master ^ (0x9e3779b97f4a7c15ull * (index + 1));
    return splitmix64(s);
}

/// Seeded generator with a platform-independent uniform mapping. All library
/// randomness flows through this wrapper; std::uniform_real_distribution is
/// implementation-defined and is deliberately not used.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    /// Uniform double in [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform double in the open interval (0, 1).
    double uniform_open01() {
        double r = uniform01();
        while (r == 0.0) r = uniform01();
        return r;
    }

    /// Uniform integer in [0, n). Unbiased via rejection.
    std::uint64_t uniform_int(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x = engine_();
        while (x >= limit) x = engine_();
        return x % n;
    }

    std::uint64_t raw() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace dagdiff
