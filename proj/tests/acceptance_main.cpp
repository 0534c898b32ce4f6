// Acceptance gate: one self-contained check per release criterion, each
// printing exactly one [PASS]/[FAIL] line. The process exit code is the
// number of failed criteria, so CI can gate on zero. Tolerances and budgets
// are pinned here and nowhere else.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "dqi/analytics.hpp"
#include "dqi/dqi_sim.hpp"
#include "dqi/errors.hpp"
#include "dqi/field.hpp"
#include "dqi/grover.hpp"
#include "dqi/ntt.hpp"
#include "dqi/opi.hpp"
#include "dqi/polyseries.hpp"
#include "dqi/rng.hpp"
#include "dqi/rsdecode.hpp"
#include "oracles.hpp"

using namespace dqi;

namespace {

constexpr double kTolExpectation = 1e-8;   // formula vs statevector
constexpr double kTolHeadline = 1e-12;     // closed-form ratio
constexpr double kTolStatePrep = 1e-10;    // amplitude-level state equality
constexpr double kTolBalanced = 1e-12;     // balanced overlap closed form
constexpr double kMaxFastExponent = 1.5;   // log-log slope of fast decode times
constexpr double kMinSpeedRatio = 10.0;    // naive/fast at the largest shared p
constexpr double kExpectationBudgetSec = 10.0;
constexpr double kStatePrepBudgetSec = 5.0;
constexpr double kBaselineSigmas = 3.0;

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(const char* format, ...) {
    va_list args;
    va_start(args, format);
    char buffer[512];
    std::vsnprintf(buffer, sizeof buffer, format, args);
    va_end(args);
    return buffer;
}

IndexSet random_set(Rng& rng, u64 p, u64 r) {
    std::vector<u64> all(p);
    for (u64 v = 0; v < p; ++v) all[v] = v;
    IndexSet set;
    for (u64 k = 0; k < r; ++k) {
        u64 j = k + rng.below(p - k);
        std::swap(all[k], all[j]);
        set.push_back(all[k]);
    }
    return set;
}

std::vector<u64> plant_error(Rng& rng, u64 p, u64 weight) {
    std::vector<u64> y(p - 1, 0);
    std::vector<u64> pos(p - 1);
    for (u64 i = 0; i < p - 1; ++i) pos[i] = i;
    for (u64 k = 0; k < weight; ++k) {
        u64 j = k + rng.below(p - 1 - k);
        std::swap(pos[k], pos[j]);
        y[pos[k]] = 1 + rng.below(p - 1);
    }
    return y;
}

double median_of(std::vector<double> xs) {
    std::nth_element(xs.begin(), xs.begin() + xs.size() / 2, xs.end());
    return xs[xs.size() / 2];
}

double loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(xs.size());
    for (size_t i = 0; i < xs.size(); ++i) {
        double lx = std::log(xs[i]), ly = std::log(ys[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// 1. Expectation identity: the closed formula against full statevector
// enumeration on random degree-3 reductions at p = 11.
Outcome check_expectation_identity() {
    auto start = std::chrono::steady_clock::now();
    double worst = 0;
    for (u64 family = 0; family < 20; ++family) {
        OpiInstance opi = random_instance(
            11, InstanceProfile::custom(3, 5),
            derive_seed(1001, "acceptance.expectation." + std::to_string(family)));
        MaxLinsatInstance inst = reduce_to_maxlinsat(opi);
        if (inst.m != 10 || inst.ell != 1 || inst.r != 5)
            return {false, "unexpected reduced shape"};
        WeightSpec weights = make_weights_q(inst.m, inst.ell, 0.25);
        DenseQuditState final_state =
            inverse_qft_per_qudit(syndrome_map(inst, build_phi3(inst, weights)));
        double formula = expected_objective_formula(inst, weights);
        double sv = expected_objective_statevector(inst, final_state);
        worst = std::max(worst, std::abs(formula - sv));
    }
    double elapsed = seconds_since(start);
    bool pass = worst <= kTolExpectation && elapsed < kExpectationBudgetSec;
    return {pass, fmt("20 families, max |formula - statevector| = %.3g, %.2fs", worst, elapsed)};
}

// 2. Headline limiting ratio at (lambda, rho) = (1/20, 1/2).
Outcome check_headline_ratio() {
    double got = asymptotic_ratio(0.05, 0.5);
    double want = 0.5 + std::sqrt(19.0) / 20.0;
    double err = std::abs(got - want);
    return {err <= kTolHeadline, fmt("ratio = %.16f, |err| = %.3g", got, err)};
}

// 3. Exact amplitude amplification reproduces the two-level constraint
// state, global phase included, for every set size at small p.
Outcome check_exact_state_preparation() {
    auto start = std::chrono::steady_clock::now();
    Rng rng(derive_seed(1003, "acceptance.grover"));
    double worst = 0;
    for (u64 p : {u64(5), u64(7), u64(11), u64(13)}) {
        Field f(p);
        for (u64 r = 1; r <= p - 1; ++r) {
            for (int rep = 0; rep < 4; ++rep) {
                IndexSet set;
                if (rep == 0)
                    for (u64 v = 0; v < r; ++v) set.push_back(v);
                else
                    set = random_set(rng, p, r);
                QuditVector direct = g_state_direct(f, set);
                QuditVector grover = g_state_exact_grover(f, set);
                for (u64 v = 0; v < p; ++v)
                    worst = std::max(worst, std::abs(direct[v] - grover[v]));
            }
        }
    }
    double elapsed = seconds_since(start);
    bool pass = worst <= kTolStatePrep && elapsed < kStatePrepBudgetSec;
    return {pass, fmt("all sizes at p in {5,7,11,13}, max amplitude error = %.3g, %.2fs",
                      worst, elapsed)};
}

// 4. Balanced-set single-call approximation: overlap closed form and the
// product-state distance bound.
Outcome check_balanced_approximation() {
    Rng rng(derive_seed(1004, "acceptance.balanced"));
    double worst_overlap = 0, worst_margin = -1;
    for (u64 p : {u64(11), u64(101), u64(1009)}) {
        Field f(p);
        u64 r = (p - 1) / 2;
        IndexSet set = random_set(rng, p, r);
        QuditVector exact = g_state_direct(f, set);
        QuditVector approx = g_state_approx(f, set);
        Amplitude overlap = 0;
        for (u64 v = 0; v < p; ++v) overlap += std::conj(exact[v]) * approx[v];
        double pd = static_cast<double>(p);
        double want = std::sqrt(1.0 - 1.0 / (pd * pd));
        worst_overlap = std::max(worst_overlap, std::abs(overlap - Amplitude(want)));

        for (double q : {0.1, 0.3, 0.5, 0.9}) {
            double dist = approx_pipeline_distance(p, q);
            double bound = std::sqrt(2.0 * q * pd * (1.0 - want));
            worst_margin = std::max(worst_margin, dist - bound);
        }
    }
    bool pass = worst_overlap <= kTolBalanced && worst_margin <= 1e-12;
    return {pass, fmt("max overlap error = %.3g, max distance-over-bound = %.3g",
                      worst_overlap, worst_margin)};
}

// 5. Decoder correctness: exhaustive small field, large-field roundtrips,
// and fast/naive agreement.
Outcome check_decoder_correctness() {
    u64 failures = 0;

    {
        Field f(11);
        RsCode code(f, 4, 2);
        u64 cases = 0;
        std::vector<u64> y(10, 0);
        auto try_case = [&](const std::vector<u64>& err) {
            ++cases;
            if (decode_fast(code, syndrome_from_error(code, err)).error != err) ++failures;
        };
        try_case(y);
        for (u64 i = 0; i < 10; ++i)
            for (u64 a = 1; a <= 10; ++a) {
                y.assign(10, 0);
                y[i] = a;
                try_case(y);
            }
        for (u64 i = 0; i < 10; ++i)
            for (u64 j = i + 1; j < 10; ++j)
                for (u64 a = 1; a <= 10; ++a)
                    for (u64 b = 1; b <= 10; ++b) {
                        y.assign(10, 0);
                        y[i] = a;
                        y[j] = b;
                        try_case(y);
                    }
        if (cases != 4601) return {false, "exhaustive enumeration miscounted"};
    }

    {
        Field f(65537);
        RsCode code(f, 2000, 1000);
        Rng rng(derive_seed(1005, "acceptance.decode.large"));
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<u64> y = plant_error(rng, 65537, 1000);
            if (decode_fast(code, syndrome_from_error(code, y)).error != y) ++failures;
        }
    }

    u64 disagreements = 0;
    for (u64 p : {u64(31), u64(127), u64(257)}) {
        Field f(p);
        Rng rng(derive_seed(1006, "acceptance.decode.agree." + std::to_string(p)));
        for (int trial = 0; trial < 100; ++trial) {
            u64 t = 1 + rng.below(8);
            RsCode code(f, 2 * t, t);
            std::vector<u64> y = plant_error(rng, p, rng.below(t + 1));
            std::vector<u64> s = syndrome_from_error(code, y);
            DecodeOutcome fast = decode_fast(code, s);
            DecodeOutcome naive = decode_naive(code, s);
            if (fast.error != y) ++failures;
            if (fast.error != naive.error || fast.locator != naive.locator) ++disagreements;
        }
    }

    bool pass = failures == 0 && disagreements == 0;
    return {pass, fmt("4601 exhaustive + 50 large + 300 paired cases, %llu failures, "
                      "%llu fast/naive disagreements",
                      static_cast<unsigned long long>(failures),
                      static_cast<unsigned long long>(disagreements))};
}

// 6. Decoder scaling benchmark: fast medians over smooth-order primes
// spanning 339x, quadratic reference timed at the top of the grid.
Outcome check_decoder_scaling() {
    const std::vector<u64> primes{193, 769, 3457, 12289, 65537};
    Rng rng(derive_seed(1007, "acceptance.bench"));
    std::vector<double> ps, medians;
    double naive_at_top = 0;

    for (u64 p : primes) {
        Field f(p);
        u64 t = (p - 1) / 4;
        RsCode code(f, 2 * t, t);
        std::vector<double> times;
        for (int trial = 0; trial < 3; ++trial) {
            std::vector<u64> y = plant_error(rng, p, t);
            std::vector<u64> s = syndrome_from_error(code, y);
            auto start = std::chrono::steady_clock::now();
            DecodeOutcome out = decode_fast(code, s);
            times.push_back(seconds_since(start));
            if (out.error != y) return {false, fmt("fast decode failed at p = %llu",
                                                   static_cast<unsigned long long>(p))};
        }
        ps.push_back(static_cast<double>(p));
        medians.push_back(median_of(times));

        if (p == primes.back()) {
            std::vector<u64> y = plant_error(rng, p, t);
            std::vector<u64> s = syndrome_from_error(code, y);
            auto start = std::chrono::steady_clock::now();
            DecodeOutcome out = decode_naive(code, s);
            naive_at_top = seconds_since(start);
            if (out.error != y) return {false, "naive decode failed at the top prime"};
        }
    }

    double exponent = loglog_slope(ps, medians);
    double ratio = naive_at_top / medians.back();
    bool pass = exponent < kMaxFastExponent && ratio > kMinSpeedRatio;
    return {pass, fmt("fast exponent = %.3f (< %.1f), naive/fast at p = 65537: %.1fx (> %.0fx)",
                      exponent, kMaxFastExponent, ratio, kMinSpeedRatio)};
}

// 7. Transform exactness against the quadratic oracle, Rader leaf included.
Outcome check_transform_exactness() {
    struct Config {
        u64 p;
        u64 order;
    };
    u64 mismatches = 0;
    bool saw_rader = false;
    std::function<bool(const NttStageInfo&)> has_rader = [&](const NttStageInfo& node) {
        if (node.uses_rader) return true;
        for (const NttStageInfo& child : node.children)
            if (has_rader(child)) return true;
        return false;
    };
    for (Config cfg : {Config{97, 96}, {59, 29}, {193, 192}, {257, 256}, {65537, 256}}) {
        Field f(cfg.p);
        u64 g = f.primitive_element();
        u64 beta = f.pow(g, (cfg.p - 1) / cfg.order);
        auto plan = get_plan(f, beta);
        if (plan->order() != cfg.order) return {false, "plan order mismatch"};
        saw_rader = saw_rader || has_rader(plan->structure());
        Rng rng(derive_seed(1008, "acceptance.ntt." + std::to_string(cfg.p) + "." +
                                      std::to_string(cfg.order)));
        for (int rep = 0; rep < 200; ++rep) {
            std::vector<u64> x(cfg.order);
            for (u64& v : x) v = rng.below(cfg.p);
            if (plan->ntt(x) != oracle::ntt(f, beta, x)) ++mismatches;
        }
    }
    bool pass = mismatches == 0 && saw_rader;
    return {pass, fmt("5 configurations x 200 inputs, %llu mismatches, rader leaf %s",
                      static_cast<unsigned long long>(mismatches),
                      saw_rader ? "exercised" : "missing")};
}

// 8. Divide-and-conquer remainder sequences match the iterative route and
// respect the cofactor degree caps.
Outcome check_remainder_sequences() {
    Field f(97);
    Rng rng(derive_seed(1009, "acceptance.eea"));
    u64 mismatches = 0, degree_violations = 0;
    for (int instance = 0; instance < 500; ++instance) {
        i64 t = 1 + static_cast<i64>(rng.below(20));
        std::vector<u64> r0(static_cast<size_t>(2 * t) + 1);
        for (u64& v : r0) v = rng.below(97);
        r0.back() = 1 + rng.below(96);
        i64 d1 = static_cast<i64>(rng.below(static_cast<u64>(2 * t)));
        std::vector<u64> r1(static_cast<size_t>(d1) + 1);
        for (u64& v : r1) v = rng.below(97);
        r1.back() = 1 + rng.below(96);

        FpPoly R0(f, r0), R1(f, r1);
        EeaOutput fast = eea_fast(R0, R1, t);
        EeaOutput slow = eea_slow(R0, R1, t);
        if (fast.Pj != slow.Pj || fast.Lj != slow.Lj || fast.Rj_degree != slow.Rj_degree ||
            fast.quotients != slow.quotients)
            ++mismatches;
        if (!fast.Pj.is_zero() && fast.Pj.degree() > t - 1) ++degree_violations;
        if (fast.Lj.is_zero() || fast.Lj.degree() > t) ++degree_violations;
        FpPoly rj = poly_add(poly_mul(fast.Pj, R0), poly_mul(fast.Lj, R1));
        if (rj.degree() != fast.Rj_degree || fast.Rj_degree >= t) ++degree_violations;
    }
    bool pass = mismatches == 0 && degree_violations == 0;
    return {pass, fmt("500 instances at p = 97, t <= 20: %llu mismatches, %llu degree violations",
                      static_cast<unsigned long long>(mismatches),
                      static_cast<unsigned long long>(degree_violations))};
}

// 9. Binomial-weight expectation sandwiched by the closed-form bounds, with
// the distance to the limit shrinking as m grows.
Outcome check_bound_sandwich() {
    const double c = 0.01, lambda_star = 0.25;
    std::string gaps;
    for (double rho : {0.3, 0.5}) {
        double prev_gap = -1;
        for (u64 m : {u64(500), u64(2000)}) {
            u64 ell = m / 4;
            BoundReport report = binomial_lower_bound(m, ell, rho, c, lambda_star);
            WeightSpec weights = make_weights(m, ell, c);
            double actual = expectation_from_weights(m, ell, rho, weights.w) /
                            static_cast<double>(m);
            if (!(report.lower <= actual && actual <= report.upper_eigen + 1e-12))
                return {false, fmt("sandwich violated at m = %llu, rho = %.2f",
                                   static_cast<unsigned long long>(m), rho)};
            double gap = std::abs(actual - report.asymptotic);
            gaps += fmt("%s%.4f", gaps.empty() ? "" : " -> ", gap);
            if (prev_gap >= 0 && gap >= prev_gap)
                return {false, fmt("gap did not shrink at rho = %.2f", rho)};
            prev_gap = gap;
        }
    }
    return {true, "gaps to the limit: " + gaps};
}

// 10. Exact binomial tails under the exponential bound at the figure
// parameters; mode mass under 3/sqrt(m q (1-q)) across the valid grid.
Outcome check_tail_and_mode_bounds() {
    TailReport tails = binomial_tail_check(500, 200, 0.01);
    if (!(tails.upper_tail <= tails.bound && tails.lower_tail <= tails.bound))
        return {false, "tail mass exceeds its bound"};

    struct Point {
        u64 m;
        double q;
    };
    double worst_ratio = 0;
    for (Point pt : {Point{10, 0.5}, {9, 0.5}, {25, 0.35}, {64, 0.5}, {100, 0.15}, {1000, 0.77}}) {
        ModeReport mode = binomial_mode_check(pt.m, pt.q);
        if (mode.max_mass > mode.bound)
            return {false, fmt("mode mass exceeds bound at m = %llu",
                               static_cast<unsigned long long>(pt.m))};
        worst_ratio = std::max(worst_ratio, mode.max_mass / mode.bound);
    }
    return {true, fmt("tails %.3g/%.3g under %.3g; worst mode mass at %.0f%% of bound",
                      tails.upper_tail, tails.lower_tail, tails.bound, 100 * worst_ratio)};
}

// 11. Interpolation baseline: sampled mean of the heuristic objective
// against its closed-form finite-size target. The limiting fraction 0.55
// is documented context, not asserted; the finite-p value differs.
Outcome check_baseline_calibration() {
    const u64 trials = 2000;
    const double target = 11.0 + 89.0 * 50.0 / 101.0;
    std::vector<double> scores;
    scores.reserve(trials);
    for (u64 trial = 0; trial < trials; ++trial) {
        OpiInstance inst = random_instance(
            101, InstanceProfile::make_canonical(),
            derive_seed(1011, "acceptance.baseline.inst." + std::to_string(trial)));
        auto [poly, score] = truncation_heuristic(
            inst, derive_seed(1012, "acceptance.baseline.run." + std::to_string(trial)));
        if (score < 11) return {false, "heuristic fell below its interpolation floor"};
        scores.push_back(static_cast<double>(score));
    }
    double mean = 0;
    for (double s : scores) mean += s;
    mean /= static_cast<double>(trials);
    double ss = 0;
    for (double s : scores) ss += (s - mean) * (s - mean);
    double se = std::sqrt(ss / static_cast<double>(trials - 1) / static_cast<double>(trials));
    double sigmas = std::abs(mean - target) / se;
    return {sigmas <= kBaselineSigmas,
            fmt("mean = %.4f vs target %.4f over %llu trials, %.2f standard errors",
                mean, target, static_cast<unsigned long long>(trials), sigmas)};
}

// 12. Random-access read circuits: pinned gate counts at M = 8.
Outcome check_gate_counts() {
    QramGateCounts counts = qram_gate_counts(8);
    bool pass = counts.linear_fredkin == 22 && counts.has_log && counts.log_fredkin == 8 &&
                counts.log_toffoli == 24 && counts.log_cnot == 4;
    return {pass, fmt("linear: %llu fredkin; log: %llu fredkin, %llu toffoli, %llu cnot",
                      static_cast<unsigned long long>(counts.linear_fredkin),
                      static_cast<unsigned long long>(counts.log_fredkin),
                      static_cast<unsigned long long>(counts.log_toffoli),
                      static_cast<unsigned long long>(counts.log_cnot))};
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        Outcome (*run)();
    };
    const std::vector<Criterion> criteria{
        {"expectation identity (formula vs statevector)", check_expectation_identity},
        {"headline limiting ratio", check_headline_ratio},
        {"exact constraint-state preparation", check_exact_state_preparation},
        {"balanced single-call approximation", check_balanced_approximation},
        {"syndrome decoder correctness", check_decoder_correctness},
        {"decoder scaling benchmark", check_decoder_scaling},
        {"transform exactness vs oracle", check_transform_exactness},
        {"remainder-sequence agreement and degree caps", check_remainder_sequences},
        {"finite-size bound sandwich", check_bound_sandwich},
        {"tail and mode bounds", check_tail_and_mode_bounds},
        {"baseline heuristic calibration", check_baseline_calibration},
        {"memory-read gate counts", check_gate_counts},
    };

    int failures = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        Outcome outcome;
        try {
            outcome = criteria[i].run();
        } catch (const std::exception& e) {
            outcome = {false, std::string("unexpected exception: ") + e.what()};
        }
        if (!outcome.pass) ++failures;
        std::printf("[%s] %2zu %s: %s\n", outcome.pass ? "PASS" : "FAIL", i + 1,
                    criteria[i].name, outcome.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return failures;
}
