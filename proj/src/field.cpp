#include "dqi/field.hpp"

#include <string>

namespace dqi {

namespace {

u64 mulmod_u128(u64 a, u64 b, u64 m) {
    return static_cast<u64>((static_cast<u128>(a) * b) % m);
}

u64 powmod_u128(u64 base, u64 exp, u64 m) {
    u64 acc = 1 % m;
    u64 b = base % m;
    while (exp != 0) {
        if (exp & 1) acc = mulmod_u128(acc, b, m);
        b = mulmod_u128(b, b, m);
        exp >>= 1;
    }
    return acc;
}

// Strong-probable-prime test to base a; n odd, n - 1 = d * 2^s.
bool sprp(u64 n, u64 a, u64 d, int s) {
    u64 x = powmod_u128(a % n, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mulmod_u128(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

} // namespace

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                  29ull, 31ull, 37ull}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // This base set is deterministic for all n < 3.3 * 10^24 (Sorenson &
    // Webster), far beyond the 2^62 modulus cap.
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                  29ull, 31ull, 37ull}) {
        if (!sprp(n, a, d, s)) return false;
    }
    return true;
}

std::vector<std::pair<u64, u32>> factorize(u64 n) {
    if (n == 0) throw ContractError("factorize: argument must be positive");
    std::vector<std::pair<u64, u32>> out;
    for (u64 q = 2; q * q <= n; q += (q == 2 ? 1 : 2)) {
        if (n % q != 0) continue;
        u32 e = 0;
        while (n % q == 0) {
            n /= q;
            ++e;
        }
        out.emplace_back(q, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

Field::Field(u64 p) : p_(p), small_(p < (1ull << 31)) {
    if (p >= (1ull << 62))
        throw NotPrime("Field: modulus " + std::to_string(p) +
                       " exceeds the 2^62 cap");
    if (!is_prime(p))
        throw NotPrime("Field: modulus " + std::to_string(p) +
                       " is not prime");
}

u64 Field::pow(u64 base, u64 exp) const {
    u64 acc = 1 % p_;
    u64 b = base % p_;
    while (exp != 0) {
        if (exp & 1) acc = mul(acc, b);
        b = mul(b, b);
        exp >>= 1;
    }
    return acc;
}

u64 Field::inv(u64 a) const {
    if (a % p_ == 0) throw DivisionByZero("Field::inv of zero");
    return pow(a % p_, p_ - 2);
}

u64 Field::primitive_element() const {
    if (p_ == 2) return 1;
    const auto factors = factorize(p_ - 1);
    for (u64 g = 2; g < p_; ++g) {
        bool generator = true;
        for (const auto& [q, e] : factors) {
            (void)e;
            if (pow(g, (p_ - 1) / q) == 1) {
                generator = false;
                break;
            }
        }
        if (generator) return g;
    }
    throw ContractError("Field: no generator found (unreachable for prime p)");
}

u64 Field::element_order(u64 x) const {
    x %= p_;
    if (x == 0) throw DivisionByZero("Field::element_order of zero");
    u64 order = p_ - 1;
    for (const auto& [q, e] : factorize(p_ - 1)) {
        (void)e;
        while (order % q == 0 && pow(x, order / q) == 1) order /= q;
    }
    return order;
}

} // namespace dqi
