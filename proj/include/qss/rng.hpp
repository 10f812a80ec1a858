#pragma once

// Deterministic, replayable randomness. Every consumer receives an explicit
// stream; independent trials derive child streams from (master seed, index).

#include <cstdint>
#include <random>
#include <stdexcept>

#include "qss/field.hpp"

namespace qss {

class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : seed_(seed), gen_(seed) {}

    std::uint64_t seed() const noexcept { return seed_; }

    std::uint64_t next_u64() { return gen_(); }

    /// Exactly uniform over [0, n) by rejection sampling.
    std::uint32_t uniform_below(std::uint32_t n) {
        if (n == 0) throw std::invalid_argument("uniform_below(0)");
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n + 1) % n;
        std::uint64_t u;
        do { u = gen_(); } while (u > limit);
        return static_cast<std::uint32_t>(u % n);
    }

    Fp uniform_fp(PrimeModulus mod) { return Fp(uniform_below(mod.d()), mod); }

    /// 53-bit uniform in [0, 1).
    double uniform_real() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    /// Independent child stream for a trial index, derived from the master
    /// seed only (not from this stream's position).
    RandomStream derive(std::uint64_t index) const {
        return RandomStream(splitmix64(splitmix64(seed_ ^ 0x9e3779b97f4a7c15ull) + index));
    }

private:
    static std::uint64_t splitmix64(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ull;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
        return x ^ (x >> 31);
    }

    std::uint64_t seed_;
    std::mt19937_64 gen_;
};

}  // namespace qss
