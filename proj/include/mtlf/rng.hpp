#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace mtlf {

/// splitmix64 finalizer. Used to derive independent seeds from a base seed
/// plus identifying integers (series index, run index, ...).
uint64_t mix64(uint64_t x);

/// FNV-1a over the bytes of a string, for hashing series identifiers into
/// seed material.
uint64_t fnv1a64(std::string_view s);

/// Reproducible random source: a Mersenne Twister (mt19937_64, whose output
/// sequence is fixed by the C++ standard) with the floating-point draws
/// derived explicitly here instead of through std::*_distribution, whose
/// output is implementation-defined. Doubles use the top 53 bits of one
/// draw; gaussians use the basic Box-Muller transform.
class Rng {
public:
    explicit Rng(uint64_t seed) : gen_(seed) {}

    uint64_t next_u64() { return gen_(); }

    /// Uniform in [0, 1).
    double next_double() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double next_uniform(double lo, double hi) {
        return lo + (hi - lo) * next_double();
    }

    double next_gaussian();

private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace mtlf
