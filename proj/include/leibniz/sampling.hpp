#pragma once

#include "leibniz/rational.hpp"

#include <cstdint>
#include <random>

namespace leibniz {

using Rng = std::mt19937_64;

// num in [-height, height], den in [1, height]
inline Rational random_rational(Rng& rng, long height) {
    std::uniform_int_distribution<long> num(-height, height), den(1, height);
    long p = num(rng);
    long q = den(rng);
    return Rational(p, q);
}

inline Rational random_nonzero_rational(Rng& rng, long height) {
    for (;;) {
        Rational r = random_rational(rng, height);
        if (!r.is_zero()) return r;
    }
}

// Independent stream per (seed, index) so parallel trials stay reproducible.
inline Rng stream(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return Rng(seq);
}

}  // namespace leibniz
