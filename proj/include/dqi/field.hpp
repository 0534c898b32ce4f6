#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "dqi/errors.hpp"

namespace dqi {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using u128 = unsigned __int128;
using i64 = std::int64_t;

// Deterministic for every n < 2^62 (fixed Miller-Rabin base set).
bool is_prime(u64 n);

// Trial division. Returns (prime, exponent) pairs with strictly increasing
// primes; factorize(1) == {} and factorize(0) is a contract violation.
std::vector<std::pair<u64, u32>> factorize(u64 n);

// Prime field F_p, p < 2^62. Value type: cheap to copy, immutable, shareable
// across threads. Elements are canonical residues stored as u64 in [0, p).
class Field {
public:
    explicit Field(u64 p);

    u64 p() const { return p_; }

    u64 add(u64 a, u64 b) const {
        u64 s = a + b; // no overflow: a, b < 2^62
        return s >= p_ ? s - p_ : s;
    }
    u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p_ - b; }
    u64 neg(u64 a) const { return a == 0 ? 0 : p_ - a; }

    u64 mul(u64 a, u64 b) const {
        if (small_) return (a * b) % p_; // a, b < 2^31: product fits in u64
        return static_cast<u64>((static_cast<u128>(a) * b) % p_);
    }

    u64 pow(u64 base, u64 exp) const;
    u64 inv(u64 a) const; // DivisionByZero on a == 0

    // Smallest generator of the multiplicative group.
    u64 primitive_element() const;

    // Multiplicative order of x (x != 0).
    u64 element_order(u64 x) const;

    bool operator==(const Field& o) const { return p_ == o.p_; }
    bool operator!=(const Field& o) const { return p_ != o.p_; }

private:
    u64 p_;
    bool small_; // p < 2^31, so u64 products never overflow
};

// Precomputed-constant modular multiplication: mul_by(x) == (c * x) mod p with
// one 64x64->128 high product. Requires p < 2^63.
class ShoupMul {
public:
    ShoupMul() : c_(0), c_shoup_(0), p_(1) {}
    ShoupMul(u64 c, u64 p)
        : c_(c),
          c_shoup_(static_cast<u64>((static_cast<u128>(c) << 64) / p)),
          p_(p) {}

    u64 constant() const { return c_; }

    u64 mul_by(u64 x) const {
        u64 q = static_cast<u64>((static_cast<u128>(c_shoup_) * x) >> 64);
        u64 r = c_ * x - q * p_; // both products taken mod 2^64
        return r >= p_ ? r - p_ : r;
    }

private:
    u64 c_;
    u64 c_shoup_;
    u64 p_;
};

} // namespace dqi
