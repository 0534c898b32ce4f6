#include <doctest.h>

#include <vector>

#include "dqi/errors.hpp"
#include "dqi/field.hpp"
#include "dqi/rng.hpp"
#include "dqi/rsdecode.hpp"
#include "oracles.hpp"

using namespace dqi;

namespace {

std::vector<u64> random_error(Rng& rng, u64 p, u64 weight) {
    u64 m = p - 1;
    std::vector<u64> pos(m);
    for (u64 i = 0; i < m; ++i) pos[i] = i;
    std::vector<u64> y(m, 0);
    for (u64 k = 0; k < weight; ++k) {
        u64 j = k + rng.below(m - k);
        std::swap(pos[k], pos[j]);
        y[pos[k]] = 1 + rng.below(p - 1);
    }
    return y;
}

u64 weight_of(const std::vector<u64>& y) {
    u64 w = 0;
    for (u64 v : y) w += v != 0;
    return w;
}

}  // namespace

TEST_CASE("code parameters derive from the field") {
    Field f(11);
    RsCode code(f, 4);
    CHECK(code.p() == 11);
    CHECK(code.m() == 10);
    CHECK(code.n() == 4);
    CHECK(code.t() == 2);
    CHECK(code.gamma() == f.primitive_element());
    RsCode wide(f, 5, 2);
    CHECK(wide.n() == 5);
    CHECK(wide.t() == 2);
    CHECK_THROWS_AS(RsCode(f, 11), ContractError);     // n > p - 1
    CHECK_THROWS_AS(RsCode(f, 4, 3), ContractError);   // 2t > n
}

TEST_CASE("syndromes equal the Vandermonde product with the external indexing") {
    for (u64 p : {u64(11), u64(31)}) {
        Field f(p);
        RsCode code(f, (p - 1) / 2);
        Rng rng(derive_seed(400, "test.rs.syndrome"));
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<u64> y = random_error(rng, p, rng.below(code.t() + 1));
            CHECK(syndrome_from_error(code, y) ==
                  oracle::syndrome(f, code.gamma(), code.n(), y));
        }
        CHECK_THROWS_AS(syndrome_from_error(code, std::vector<u64>(p, 0)), LengthMismatch);
    }
}

TEST_CASE("every weight <= 2 error at p=11 decodes exactly, fast and naive") {
    Field f(11);
    RsCode code(f, 4);
    u64 cases = 0;
    auto roundtrip = [&](const std::vector<u64>& y) {
        std::vector<u64> s = syndrome_from_error(code, y);
        DecodeOutcome fast = decode_fast(code, s);
        REQUIRE(fast.error == y);
        // locator roots sit exactly on the error support
        for (u64 i = 1; i <= 10; ++i) {
            bool is_root = fast.locator.eval(f.pow(code.gamma(), i)) == 0;
            bool in_support = y[i - 1] != 0;
            REQUIRE(is_root == in_support);
        }
        if (cases % 17 == 0) REQUIRE(decode_naive(code, s).error == y);
        ++cases;
    };
    std::vector<u64> y(10, 0);
    roundtrip(y);
    for (u64 i = 0; i < 10; ++i)
        for (u64 v = 1; v <= 10; ++v) {
            std::fill(y.begin(), y.end(), 0);
            y[i] = v;
            roundtrip(y);
        }
    for (u64 i = 0; i < 10; ++i)
        for (u64 j = i + 1; j < 10; ++j)
            for (u64 v1 = 1; v1 <= 10; ++v1)
                for (u64 v2 = 1; v2 <= 10; ++v2) {
                    std::fill(y.begin(), y.end(), 0);
                    y[i] = v1;
                    y[j] = v2;
                    roundtrip(y);
                }
    CHECK(cases == 4601);
}

TEST_CASE("fast and naive decoders agree on random planted instances") {
    Rng rng(derive_seed(401, "test.rs.agree"));
    int total = 0;
    for (u64 p : {u64(31), u64(127), u64(257)}) {
        CAPTURE(p);
        Field f(p);
        RsCode code(f, (p - 1) / 2);
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<u64> y = random_error(rng, p, rng.below(code.t() + 1));
            std::vector<u64> s = syndrome_from_error(code, y);
            DecodeOutcome a = decode_fast(code, s);
            DecodeOutcome b = decode_naive(code, s);
            REQUIRE(a.error == y);
            REQUIRE(b.error == y);
            REQUIRE(a.locator == b.locator);
            ++total;
        }
    }
    CHECK(total == 300);
}

TEST_CASE("syndrome windows longer than 2t still decode") {
    Field f(31);
    RsCode code(f, 9, 3);  // n = 9 > 2t = 6
    Rng rng(derive_seed(402, "test.rs.window"));
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<u64> y = random_error(rng, 31, 3);
        std::vector<u64> s = syndrome_from_error(code, y);
        CHECK(s.size() == 9);
        CHECK(decode_fast(code, s).error == y);
        CHECK(decode_naive(code, s).error == y);
    }
}

TEST_CASE("decoding weight-1000 errors at p=65537 round-trips") {
    Field f(65537);
    RsCode code(f, 2000);
    Rng rng(derive_seed(403, "test.rs.large"));
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<u64> y = random_error(rng, 65537, 1000);
        CHECK(decode_fast(code, syndrome_from_error(code, y)).error == y);
    }
}

TEST_CASE("overweight errors either trip the self-check or decode to a sibling coset leader") {
    Field f(11);
    RsCode code(f, 4);
    Rng rng(derive_seed(404, "test.rs.overweight"));
    int violations = 0, reencodes = 0;
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<u64> y = random_error(rng, 11, 3);  // above the t = 2 cap
        std::vector<u64> s = syndrome_from_error(code, y);
        try {
            DecodeOutcome out = decode_fast(code, s);
            // allowed only if the decoded error is a genuine weight <= t
            // preimage of the same syndrome
            CHECK(weight_of(out.error) <= 2);
            CHECK(syndrome_from_error(code, out.error) == s);
            ++reencodes;
        } catch (const WeightContractViolated&) {
            ++violations;
        }
    }
    CHECK(violations + reencodes == 200);
    CHECK(violations > 0);  // the self-check must fire on this sample
}

TEST_CASE("decoder rejects malformed syndrome windows") {
    Field f(11);
    RsCode code(f, 4);
    CHECK_THROWS_AS(decode_fast(code, std::vector<u64>(3, 0)), LengthMismatch);
    CHECK_THROWS_AS(decode_fast(code, std::vector<u64>(5, 0)), LengthMismatch);
}

TEST_CASE("zero syndrome decodes to the zero error") {
    Field f(31);
    RsCode code(f, 10);
    DecodeOutcome out = decode_fast(code, std::vector<u64>(10, 0));
    CHECK(weight_of(out.error) == 0);
    CHECK(out.locator.degree() == 0);
}
