#pragma once

#include <cstdint>
#include <random>

namespace basketsom {

/// Deterministic random source used everywhere the toolkit needs randomness.
///
/// The underlying generator is std::mt19937_64 (the 64-bit Mersenne Twister,
/// fully specified by the C++ standard) seeded directly with the configured
/// seed. Every derived draw is defined here on top of raw 64-bit outputs and
/// avoids the standard <random> distributions, whose results are not portable
/// across library implementations:
///
///   bit()            = next_u64() & 1
///   uniform_double() = (next_u64() >> 11) * 2^-53, in [0, 1)
///   uniform_index(n) = next_u64() % n, rejecting draws >= the largest
///                      multiple of n so the result is unbiased
///   bernoulli(p)     = uniform_double() < p
///
/// Any conforming MT19937-64 therefore reproduces the exact same streams.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    std::uint32_t bit() { return static_cast<std::uint32_t>(next_u64() & 1u); }

    double uniform_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    std::uint64_t uniform_index(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v = next_u64();
        while (v >= limit) v = next_u64();
        return v % n;
    }

    bool bernoulli(double p) { return uniform_double() < p; }

private:
    std::mt19937_64 engine_;
};

}  // namespace basketsom
