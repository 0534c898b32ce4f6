#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "dqi/field.hpp"

namespace dqi {

// Stable stream derivation: every consumer of randomness hashes a distinct
// label so CLI verbs can share one master seed without coupling their draws.
u64 derive_seed(u64 master, std::string_view label);

// mt19937_64 core with self-contained bounded/unit draws, so that outputs are
// reproducible across standard libraries (std distributions are not pinned).
class Rng {
public:
    explicit Rng(u64 seed) : eng_(seed) {}

    u64 next_u64() { return eng_(); }

    // Uniform in [0, bound), bound >= 1. Rejection sampling, no modulo bias.
    u64 below(u64 bound);

    // Uniform double in [0, 1) with 53 random bits.
    double unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

private:
    std::mt19937_64 eng_;
};

} // namespace dqi
