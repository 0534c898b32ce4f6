#include <doctest.h>

#include <cmath>
#include <vector>

#include "dqi/analytics.hpp"
#include "dqi/dqi_sim.hpp"
#include "dqi/errors.hpp"
#include "dqi/field.hpp"
#include "dqi/rng.hpp"
#include "oracles.hpp"

using namespace dqi;

namespace {

std::vector<double> random_unit(Rng& rng, u64 len) {
    std::vector<double> w(len);
    double norm_sq = 0;
    for (double& x : w) {
        x = rng.unit() + 0.05;
        norm_sq += x * x;
    }
    for (double& x : w) x /= std::sqrt(norm_sq);
    return w;
}

}  // namespace

TEST_CASE("the limiting ratio hits its closed form, headline value included") {
    CHECK(std::abs(asymptotic_ratio(0.05, 0.5) - (0.5 + std::sqrt(19.0) / 20.0)) <= 1e-12);

    for (double lambda : {0.05, 0.2, 0.5}) {
        for (double rho : {0.1, 0.3, 0.49, 0.6}) {
            double got = asymptotic_ratio(lambda, rho);
            if (rho >= 1.0 - lambda) {
                CHECK(got == 1.0);
            } else {
                double s = std::sqrt(lambda * (1 - rho)) + std::sqrt(rho * (1 - lambda));
                CHECK(got == doctest::Approx(s * s).epsilon(1e-14));
                CHECK(got < 1.0);
            }
        }
    }
    // seam is continuous: approaching rho = 1 - lambda from below tends to 1
    CHECK(asymptotic_ratio(0.5, 0.5 - 1e-9) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(asymptotic_ratio(0.5, 0.5) == 1.0);

    CHECK_THROWS_AS(asymptotic_ratio(0.0, 0.3), DomainError);
    CHECK_THROWS_AS(asymptotic_ratio(0.6, 0.3), DomainError);
    CHECK_THROWS_AS(asymptotic_ratio(0.2, 0.0), DomainError);
    CHECK_THROWS_AS(asymptotic_ratio(0.2, 1.0), DomainError);
}

TEST_CASE("the tridiagonal operator exposes its entries and small closed forms") {
    TridiagSpec spec = make_tridiag(100, 10, 0.3);
    CHECK(spec.d == doctest::Approx((1.0 - 0.6) / std::sqrt(0.3 * 0.7)).epsilon(1e-14));
    CHECK(tridiag_offdiag(spec, 1) == doctest::Approx(std::sqrt(100.0)).epsilon(1e-14));
    CHECK(tridiag_offdiag(spec, 10) == doctest::Approx(std::sqrt(10.0 * 91.0)).epsilon(1e-14));
    CHECK_THROWS_AS(tridiag_offdiag(spec, 0), DomainError);
    CHECK_THROWS_AS(tridiag_offdiag(spec, 11), DomainError);
    CHECK_THROWS_AS(make_tridiag(100, 101, 0.3), DomainError);
    CHECK_THROWS_AS(make_tridiag(100, 10, 0.0), DomainError);

    // ell = 0: the operator is the 1x1 zero matrix
    auto [theta0, v0] = tridiag_extremal(make_tridiag(50, 0, 0.3));
    CHECK(theta0 == 0.0);
    CHECK(v0 == std::vector<double>{1.0});

    // ell = 1: 2x2 block [[0, sqrt(m)], [sqrt(m), d]]
    TridiagSpec two = make_tridiag(50, 1, 0.2);
    auto [theta1, v1] = tridiag_extremal(two);
    double want = 0.5 * (two.d + std::sqrt(two.d * two.d + 4.0 * 50.0));
    CHECK(theta1 == doctest::Approx(want).epsilon(1e-12));
    CHECK(v1.size() == 2);
}

TEST_CASE("the extremal pair satisfies the eigenequation with a nonnegative vector") {
    struct Shape {
        u64 m;
        u64 ell;
        double rho;
    };
    for (auto [m, ell, rho] : {Shape{500, 200, 0.3},
                               {500, 125, 0.5},
                               {2000, 500, 0.45},
                               {64, 32, 0.11}}) {
        CAPTURE(m);
        TridiagSpec spec = make_tridiag(m, ell, rho);
        auto [theta, v] = tridiag_extremal(spec);
        REQUIRE(v.size() == ell + 1);
        double norm_sq = 0, residual = 0;
        for (u64 k = 0; k <= ell; ++k) {
            CHECK(v[k] >= 0.0);
            norm_sq += v[k] * v[k];
            double row = static_cast<double>(k) * spec.d * v[k];
            if (k > 0) row += tridiag_offdiag(spec, k) * v[k - 1];
            if (k < ell) row += tridiag_offdiag(spec, k + 1) * v[k + 1];
            residual = std::max(residual, std::abs(row - theta * v[k]));
        }
        CHECK(norm_sq == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(residual <= 1e-9 * std::max(1.0, std::abs(theta)));

        // no unit vector beats the extremal quadratic form
        Rng rng(derive_seed(800, "test.analytics.extremal"));
        for (int t = 0; t < 10; ++t) {
            std::vector<double> w = random_unit(rng, ell + 1);
            double quad = 0;
            for (u64 k = 0; k <= ell; ++k) quad += static_cast<double>(k) * spec.d * w[k] * w[k];
            for (u64 j = 1; j <= ell; ++j) quad += 2.0 * tridiag_offdiag(spec, j) * w[j - 1] * w[j];
            CHECK(quad <= theta + 1e-9);
        }
    }
}

TEST_CASE("the largest eigenvalue respects the explicit bound whenever d >= 0") {
    for (u64 m : {u64(64), u64(200), u64(500), u64(1000)}) {
        for (u64 ell : {m / 10, m / 4, m / 2}) {
            if (ell == 0) continue;
            for (double rho : {0.1, 0.3, 0.5}) {
                TridiagSpec spec = make_tridiag(m, ell, rho);
                auto [theta, v] = tridiag_extremal(spec);
                double md = static_cast<double>(m), eld = static_cast<double>(ell);
                double cap = 2.0 * std::sqrt(md) + eld * spec.d + 2.0 * std::sqrt(eld * (md - eld));
                CHECK(theta <= cap + 1e-9);
            }
        }
    }
}

TEST_CASE("quadratic-form and summation routes to the expectation agree across modules") {
    Rng rng(derive_seed(801, "test.analytics.cross"));
    const u64 p = 41, r = 13, m = 12, ell = 4;
    const double rho = static_cast<double>(r) / static_cast<double>(p);

    Field f(p);
    std::vector<std::vector<u64>> rows(m);
    std::vector<IndexSet> sets(m);
    for (u64 i = 0; i < m; ++i) {
        rows[i] = {1 + rng.below(p - 1), 1 + rng.below(p - 1)};
        std::vector<u64> all(p);
        for (u64 v = 0; v < p; ++v) all[v] = v;
        for (u64 k = 0; k < r; ++k) {
            u64 j = k + rng.below(p - k);
            std::swap(all[k], all[j]);
            sets[i].push_back(all[k]);
        }
    }
    MaxLinsatInstance inst = make_instance(f, rows, sets, ell, false);

    for (int t = 0; t < 20; ++t) {
        WeightSpec weights = weights_from_vector(m, random_unit(rng, ell + 1));
        double via_operator = expectation_from_weights(m, ell, rho, weights.w);
        double via_instance = expected_objective_formula(inst, weights);

        double direct = rho * m;
        for (u64 k = 0; k <= ell; ++k)
            direct += (1.0 - 2.0 * rho) * static_cast<double>(k) * weights.w[k] * weights.w[k];
        for (u64 k = 0; k < ell; ++k)
            direct += 2.0 * std::sqrt(rho * (1.0 - rho)) * weights.w[k] * weights.w[k + 1] *
                      std::sqrt((k + 1.0) * (m - static_cast<double>(k)));

        CHECK(via_operator == doctest::Approx(via_instance).epsilon(1e-12));
        CHECK(via_operator == doctest::Approx(direct).epsilon(1e-12));
    }

    CHECK_THROWS_AS(expectation_from_weights(m, ell, rho, std::vector<double>(ell, 0.5)),
                    LengthMismatch);
    CHECK_THROWS_AS(expectation_from_weights(m, ell, rho, std::vector<double>(ell + 1, 0.9)),
                    NormViolation);
}

TEST_CASE("finite-size bounds sandwich the binomial-weight ratio and tighten with m") {
    const double c = 0.01, lambda_star = 0.25;
    for (double rho : {0.3, 0.5}) {
        double prev_gap = -1.0;
        for (u64 m : {u64(500), u64(2000)}) {
            CAPTURE(m);
            CAPTURE(rho);
            const u64 ell = m / 4;
            BoundReport report = binomial_lower_bound(m, ell, rho, c, lambda_star);
            WeightSpec weights = make_weights(m, ell, c);
            CHECK(weights.regime_ok);
            double actual = expectation_from_weights(m, ell, rho, weights.w) /
                            static_cast<double>(m);

            CHECK(report.lower <= report.asymptotic);
            CHECK(report.asymptotic <= report.upper_eigen + 1e-12);
            CHECK(report.lower <= actual);
            CHECK(actual <= report.upper_eigen + 1e-12);
            CHECK(report.d_nonneg);

            double gap = report.upper_eigen - report.asymptotic;
            CHECK(gap > 0.0);
            if (prev_gap >= 0.0) CHECK(gap < prev_gap);
            prev_gap = gap;
        }
    }
}

TEST_CASE("bound reports expose every term of their formulas") {
    const u64 m = 2000, ell = 500;
    const double rho = 0.3, c = 0.01, lambda_star = 0.25;
    BoundReport report = binomial_lower_bound(m, ell, rho, c, lambda_star);
    const double md = 2000.0;

    CHECK(report.lambda == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(report.rho == 0.3);
    CHECK(report.asymptotic == doctest::Approx(asymptotic_ratio(0.25, 0.3)).epsilon(1e-15));
    CHECK(report.correction_poly ==
          doctest::Approx((6.0 + 2.0 / std::sqrt(0.25)) / std::pow(md, 0.49)).epsilon(1e-13));
    CHECK(report.correction_tail ==
          doctest::Approx(4.0 * std::exp(-std::pow(md, 0.02) / 2.0)).epsilon(1e-13));
    CHECK(report.lower ==
          doctest::Approx(report.asymptotic - report.correction_poly - report.correction_tail)
              .epsilon(1e-13));
    CHECK(report.upper_closed ==
          doctest::Approx(report.asymptotic + 0.5 / std::sqrt(md)).epsilon(1e-13));

    TridiagSpec spec = make_tridiag(m, ell, rho);
    double cap = 2.0 * std::sqrt(md) + 500.0 * spec.d + 2.0 * std::sqrt(500.0 * 1500.0);
    CHECK(report.upper_eigen ==
          doctest::Approx(rho + std::sqrt(rho * (1.0 - rho)) * cap / md).epsilon(1e-13));

    CHECK_THROWS_AS(binomial_lower_bound(m, ell, rho, 0.5, lambda_star), DomainError);
    CHECK_THROWS_AS(binomial_lower_bound(m, ell, rho, 0.0, lambda_star), DomainError);
    CHECK_THROWS_AS(binomial_lower_bound(m, ell, rho, c, 0.0), DomainError);
    CHECK_THROWS_AS(binomial_lower_bound(m, 100, rho, c, 0.05), RegimeViolation);
    CHECK_THROWS_AS(binomial_lower_bound(m, 1001, rho, c, lambda_star), RegimeViolation);
    CHECK_THROWS_AS(binomial_lower_bound(32, 16, rho, c, lambda_star), RegimeViolation);
    CHECK_THROWS_AS(binomial_lower_bound(m, 500, rho, c, 0.3), RegimeViolation);
}

TEST_CASE("exact binomial tails stay under the decay bound and match direct sums") {
    for (auto [m, ell] : {std::pair<u64, u64>{500, 125}, {2000, 500}, {500, 250}}) {
        CAPTURE(m);
        TailReport report = binomial_tail_check(m, ell, 0.01);
        CHECK(report.bound ==
              doctest::Approx(std::exp(-std::pow(static_cast<double>(m), 0.02) / 2.0))
                  .epsilon(1e-14));
        CHECK(report.upper_tail <= report.bound);
        CHECK(report.lower_tail <= report.bound);

        long double upper = 0.0L;
        for (u64 k = m; k > ell; --k) upper += oracle::binom_pmf(m, k, report.q);
        CHECK(std::abs(report.upper_tail - static_cast<double>(upper)) <= 1e-14);

        double cut = static_cast<double>(ell) -
                     2.0 * std::pow(static_cast<double>(m), 0.51);
        long double lower = 0.0L;
        if (cut > 0.0)
            for (u64 k = 0; k < static_cast<u64>(std::ceil(cut)); ++k)
                lower += oracle::binom_pmf(m, k, report.q);
        CHECK(std::abs(report.lower_tail - static_cast<double>(lower)) <= 1e-14);
    }

    // cap at the top: nothing lies above ell = m
    CHECK(binomial_tail_check(500, 500, 0.01).upper_tail == 0.0);

    CHECK_THROWS_AS(binomial_tail_check(500, 50, 0.01), RegimeViolation);
    CHECK_THROWS_AS(binomial_tail_check(0, 0, 0.01), DomainError);
    CHECK_THROWS_AS(binomial_tail_check(500, 125, 0.5), DomainError);
}

TEST_CASE("the binomial mode pins its index, mass, and bound") {
    ModeReport ten = binomial_mode_check(10, 0.5);
    CHECK(ten.kappa == 5);
    CHECK(ten.max_mass == doctest::Approx(oracle::binom_pmf(10, 5, 0.5)).epsilon(1e-13));
    CHECK(ten.bound == doctest::Approx(3.0 / std::sqrt(2.5)).epsilon(1e-14));
    CHECK(ten.max_mass <= ten.bound);

    // even-mass twin: at m = 9 the pmf peaks equally at 4 and 5
    ModeReport nine = binomial_mode_check(9, 0.5);
    CHECK(nine.kappa == 4);
    CHECK(oracle::binom_pmf(9, 4, 0.5) == doctest::Approx(oracle::binom_pmf(9, 5, 0.5)).epsilon(1e-15));

    for (auto [m, q] : {std::pair<u64, double>{25, 0.35}, {100, 0.1}, {1000, 0.77}, {64, 0.5}}) {
        CAPTURE(m);
        ModeReport report = binomial_mode_check(m, q);
        u64 want = static_cast<u64>(std::ceil(q * (static_cast<double>(m) + 1.0))) - 1;
        CHECK(report.kappa == want);
        double best = 0;
        for (u64 k = 0; k <= m; ++k)
            best = std::max(best, static_cast<double>(oracle::binom_pmf(m, k, q)));
        CHECK(report.max_mass == doctest::Approx(best).epsilon(1e-12));
        CHECK(report.max_mass <= report.bound);
    }

    CHECK_THROWS_AS(binomial_mode_check(10, 0.3), RegimeViolation);  // q(m+7) = 5.1 < 7
    CHECK_THROWS_AS(binomial_mode_check(10, 0.9), RegimeViolation);  // q(m+7) = 15.3 > 10
    CHECK_THROWS_AS(binomial_mode_check(0, 0.5), DomainError);
    CHECK_THROWS_AS(binomial_mode_check(10, 0.0), DomainError);
    CHECK_THROWS_AS(binomial_mode_check(10, 1.0), DomainError);
}

TEST_CASE("memory-read gate counts follow their two closed-form recipes") {
    QramGateCounts eight = qram_gate_counts(8);
    CHECK(eight.linear_fredkin == 22);
    CHECK(eight.linear_ancilla == 8);
    CHECK(eight.has_log);
    CHECK(eight.log_fredkin == 8);
    CHECK(eight.log_toffoli == 24);
    CHECK(eight.log_cnot == 4);
    CHECK(eight.log_ancilla == 3);

    QramGateCounts four = qram_gate_counts(4);
    CHECK(four.linear_fredkin == 10);
    CHECK(four.has_log);
    CHECK(four.log_toffoli == 8);
    CHECK(four.log_ancilla == 2);

    QramGateCounts two = qram_gate_counts(2);
    CHECK(two.linear_fredkin == 4);
    CHECK(two.linear_ancilla == 2);
    CHECK_FALSE(two.has_log);

    CHECK_FALSE(qram_gate_counts(6).has_log);

    QramGateCounts big = qram_gate_counts(1024);
    CHECK(big.linear_fredkin == 3070);
    CHECK(big.log_fredkin == 1024);
    CHECK(big.log_toffoli == 4088);
    CHECK(big.log_ancilla == 10);

    CHECK_THROWS_AS(qram_gate_counts(1), DomainError);
    CHECK_THROWS_AS(qram_gate_counts(0), DomainError);
}
