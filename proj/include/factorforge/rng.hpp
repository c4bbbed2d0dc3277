#pragma once

#include <cstdint>

#include "fp.hpp"

namespace factorforge {

/// Deterministic xoshiro256** generator. Everything randomized in this library
/// draws from an explicitly passed Rng so that runs are reproducible from a
/// single 64-bit seed, independent of the standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) {
        // splitmix64 seeding
        std::uint64_t x = seed;
        for (auto& s : state_) {
            x += 0x9E3779B97F4A7C15ULL;
            std::uint64_t z = x;
            z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
            z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
            s = z ^ (z >> 31);
        }
    }

    std::uint64_t next_u64() {
        std::uint64_t const result = rotl(state_[1] * 5, 7) * 9;
        std::uint64_t const t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform in [0, bound) by rejection sampling; bound must be nonzero.
    std::uint64_t below(std::uint64_t bound) {
        std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    Fp field_element() { return Fp(below(Fp::modulus())); }

    Fp nonzero_field_element() {
        for (;;) {
            Fp c = field_element();
            if (!c.is_zero()) return c;
        }
    }

    /// Uniform field element drawn from the small grid {0, 1, ..., grid-1}.
    Fp grid_element(std::uint64_t grid) { return Fp(below(grid)); }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t state_[4];
};

} // namespace factorforge
