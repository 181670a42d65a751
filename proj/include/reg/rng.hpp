#pragma once
/*
 * Deterministic splitmix64 generator used for reproducible random sweeps
 * (tests and the command-line verification driver).  Every sweep constructs
 * its own generator from a fixed seed so cases are independent of ordering.
 */

#include "reg/numeric.hpp"

#include <cstdint>

namespace reg {

struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /* uniform in [0, 1) with 53-bit granularity */
    double next_double() {
        return static_cast<double>(next() >> 11) * (1.0 / 9007199254740992.0);
    }

    Real next_real(const Real& lo, const Real& hi) {
        return lo + (hi - lo) * Real(next_double());
    }

    Cplx next_cplx(const Real& lo, const Real& hi) {
        Real re = next_real(lo, hi);
        Real im = next_real(lo, hi);
        return Cplx(re, im);
    }

    std::uint64_t next_below(std::uint64_t n) { return next() % n; }
};

} // namespace reg
