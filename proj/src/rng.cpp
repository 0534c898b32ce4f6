#include "dqi/rng.hpp"

namespace dqi {

namespace {

u64 fnv1a64(std::string_view s) {
    u64 h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

u64 splitmix64(u64 x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

} // namespace

u64 derive_seed(u64 master, std::string_view label) {
    return splitmix64(master ^ fnv1a64(label));
}

u64 Rng::below(u64 bound) {
    // Largest multiple of bound representable in 64 bits, as the rejection
    // threshold; [0, limit) holds whole cycles only, so no modulo bias.
    u64 limit = ~0ull - (~0ull % bound);
    for (;;) {
        u64 v = next_u64();
        if (v < limit) return v % bound;
    }
}

} // namespace dqi
