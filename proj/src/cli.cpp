// Command-line front end: instance generation, end-to-end simulation,
// heuristic baselines, decoder benchmarking, analytic sweeps, and the
// self-verification battery. Summaries are JSON on stdout (optionally
// mirrored to --out); row data goes to CSV files whose first line is a
// `#` metadata comment, so later rows can be appended without rewriting
// any trailing state.

#include "dqi/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

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

namespace dqi {
namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// Shortest decimal that parses back to the same double; keeps CSV output
// byte-stable across runs.
std::string fmt_num(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("read failure on '" + path + "'");
    return text;
}

// Write-to-temp then rename, so a crash never leaves a truncated artifact.
void write_text(const std::string& path, const std::string& text) {
    namespace fs = std::filesystem;
    fs::path target(path);
    std::error_code ec;
    if (target.has_parent_path()) fs::create_directories(target.parent_path(), ec);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
        out << text;
        out.flush();
        if (!out) throw IoError("short write to '" + tmp.string() + "'");
    }
    fs::rename(tmp, target, ec);
    if (ec) throw IoError("cannot rename '" + tmp.string() + "' to '" + path + "': " + ec.message());
}

// Comma-separated numeric lists; the empty string is an empty sweep.
std::vector<double> parse_double_list(const std::string& text, const char* what) {
    std::vector<double> out;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        std::string item = text.substr(pos, comma - pos);
        size_t a = item.find_first_not_of(" \t");
        if (a != std::string::npos) {
            size_t b = item.find_last_not_of(" \t");
            item = item.substr(a, b - a + 1);
            try {
                size_t used = 0;
                double v = std::stod(item, &used);
                if (used != item.size()) throw std::invalid_argument(item);
                out.push_back(v);
            } catch (const std::exception&) {
                throw DomainError(std::string(what) + ": cannot parse '" + item + "' as a number");
            }
        }
        pos = comma + 1;
        if (comma == text.size()) break;
    }
    return out;
}

std::vector<u64> parse_u64_list(const std::string& text, const char* what) {
    std::vector<u64> out;
    for (double v : parse_double_list(text, what)) {
        if (v < 0 || v != std::floor(v))
            throw DomainError(std::string(what) + ": expected a nonnegative integer, got " + fmt_num(v));
        out.push_back(static_cast<u64>(v));
    }
    return out;
}

std::string csv_meta(const char* schema, const json& config) {
    return std::string("# schema=") + schema + " config=" + config.dump() + "\n";
}

// Derived outputs sit next to the primary one: "run.json" -> "run.samples.csv".
std::string sibling_path(const std::string& out, const char* suffix, const char* fallback) {
    if (out.empty()) return fallback;
    std::string stem = out;
    for (const char* ext : {".json", ".csv"}) {
        size_t n = std::string(ext).size();
        if (stem.size() > n && stem.substr(stem.size() - n) == ext) {
            stem.resize(stem.size() - n);
            break;
        }
    }
    return stem + suffix;
}

void emit_summary(const json& summary, const std::string& out) {
    std::string text = summary.dump(2) + "\n";
    if (!out.empty()) write_text(out, text);
    std::fputs(text.c_str(), stdout);
}

struct MeanStderr {
    double mean = 0.0;
    double stderr_ = -1.0;  // negative: undefined (fewer than two samples)
};

MeanStderr mean_stderr(const std::vector<double>& xs) {
    MeanStderr out;
    if (xs.empty()) return out;
    double s = 0.0;
    for (double x : xs) s += x;
    out.mean = s / static_cast<double>(xs.size());
    if (xs.size() < 2) return out;
    double ss = 0.0;
    for (double x : xs) ss += (x - out.mean) * (x - out.mean);
    double var = ss / static_cast<double>(xs.size() - 1);
    out.stderr_ = std::sqrt(var / static_cast<double>(xs.size()));
    return out;
}

double median(std::vector<double> xs) {
    if (xs.empty()) return 0.0;
    size_t mid = xs.size() / 2;
    std::nth_element(xs.begin(), xs.begin() + static_cast<long>(mid), xs.end());
    double hi = xs[mid];
    if (xs.size() % 2 == 1) return hi;
    double lo = *std::max_element(xs.begin(), xs.begin() + static_cast<long>(mid));
    return (lo + hi) / 2.0;
}

// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    size_t n = x.size();
    double mx = 0, my = 0;
    for (size_t i = 0; i < n; ++i) {
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0, sxx = 0;
    for (size_t i = 0; i < n; ++i) {
        double dx = std::log(x[i]) - mx;
        sxy += dx * (std::log(y[i]) - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

// ---------------------------------------------------------------- gen ----

int cmd_gen(u64 p, bool canonical, u64 n, u64 r, u64 seed, const std::string& out) {
    if (canonical == (n > 0 || r > 0))
        throw InvalidProfile("choose either --canonical or both --n and --r");
    if (!canonical && (n == 0 || r == 0))
        throw InvalidProfile("custom profiles need --n >= 1 and --r >= 1");
    InstanceProfile profile = canonical ? InstanceProfile::make_canonical() : InstanceProfile::custom(n, r);
    OpiInstance inst = random_instance(p, profile, seed);
    write_text(out, instance_to_json(inst));

    json config = {{"command", "gen"}, {"p", p}, {"canonical", canonical},
                   {"n", n}, {"r", r}, {"seed", seed}, {"out", out}};
    json summary = {{"schema", "dqi.gen.v1"},
                    {"config", config},
                    {"p", inst.field.p()},
                    {"n", inst.n},
                    {"r", inst.r()},
                    {"gamma", inst.gamma},
                    {"sets", inst.sets.size()},
                    {"instance_path", out}};
    emit_summary(summary, "");
    return 0;
}

// ----------------------------------------------------------- simulate ----

int cmd_simulate(const std::string& file, bool has_ell, u64 ell, double c, bool has_q, double q,
                 u64 shots, u64 seed, u64 budget_amps, u64 budget_errors,
                 const std::string& out, std::string samples_out) {
    OpiInstance opi = instance_from_json(read_text(file));
    MaxLinsatInstance inst = reduce_to_maxlinsat(opi);
    if (has_ell) inst = make_instance(inst.field, inst.rows, inst.sets, ell, inst.vandermonde);

    WeightSpec weights = has_q ? make_weights_q(inst.m, inst.ell, q)
                               : make_weights(inst.m, inst.ell, c);

    SparseErrorState phi3 = build_phi3(inst, weights, budget_errors);
    DenseQuditState mapped = syndrome_map(inst, phi3, budget_amps);
    DenseQuditState final_state = inverse_qft_per_qudit(mapped);

    double sv = expected_objective_statevector(inst, final_state, budget_amps);
    double formula = expected_objective_formula(inst, weights);

    json config = {{"command", "simulate"}, {"instance", file},
                   {"ell", inst.ell}, {"c", c},
                   {"q", has_q ? json(q) : json()},
                   {"shots", shots}, {"seed", seed},
                   {"budget_amps", budget_amps}, {"budget_errors", budget_errors},
                   {"out", out}};

    json summary = {{"schema", "dqi.simulate.v1"},
                    {"config", config},
                    {"p", inst.field.p()},
                    {"m", inst.m},
                    {"n", inst.n},
                    {"r", inst.r},
                    {"ell", inst.ell},
                    {"weight_q", weights.q},
                    {"formula_expectation", formula},
                    {"statevector_expectation", sv},
                    {"discrepancy", std::abs(formula - sv)},
                    {"epsilon", weights.epsilon},
                    {"shots", shots},
                    {"seed", seed},
                    {"sample_mean", json()},
                    {"sample_stderr", json()},
                    {"samples_path", json()}};

    if (shots > 0) {
        auto samples = sample_solutions(inst, final_state, shots,
                                        derive_seed(seed, "cli.simulate.samples"));
        std::vector<double> objectives;
        objectives.reserve(samples.size());
        std::string csv = csv_meta("dqi.samples.v1", config) + "shot,f\n";
        for (size_t i = 0; i < samples.size(); ++i) {
            objectives.push_back(static_cast<double>(samples[i].objective));
            csv += std::to_string(i) + "," + std::to_string(samples[i].objective) + "\n";
        }
        MeanStderr ms = mean_stderr(objectives);
        if (samples_out.empty()) samples_out = sibling_path(out, ".samples.csv", "samples.csv");
        write_text(samples_out, csv);
        summary["sample_mean"] = ms.mean;
        if (ms.stderr_ >= 0) summary["sample_stderr"] = ms.stderr_;
        summary["samples_path"] = samples_out;
    }

    emit_summary(summary, out);
    return 0;
}

// ----------------------------------------------------------- baseline ----

int cmd_baseline(const std::string& file, u64 trials, u64 seed,
                 const std::string& out, std::string rows_out) {
    if (trials == 0) throw DomainError("--trials must be at least 1");
    OpiInstance inst = instance_from_json(read_text(file));

    json config = {{"command", "baseline"}, {"instance", file},
                   {"trials", trials}, {"seed", seed}, {"out", out}};

    std::string csv = csv_meta("dqi.baseline.v1", config) + "trial,objective\n";
    std::vector<double> objectives;
    objectives.reserve(trials);
    u64 best = 0;
    for (u64 i = 0; i < trials; ++i) {
        u64 trial_seed = derive_seed(seed, "cli.baseline.trial." + std::to_string(i));
        auto [poly, objective] = truncation_heuristic(inst, trial_seed);
        objectives.push_back(static_cast<double>(objective));
        best = std::max(best, objective);
        csv += std::to_string(i) + "," + std::to_string(objective) + "\n";
    }
    if (rows_out.empty()) rows_out = sibling_path(out, ".rows.csv", "baseline.csv");
    write_text(rows_out, csv);

    MeanStderr ms = mean_stderr(objectives);
    u64 p = inst.field.p();
    u64 m = p - 1;
    double target = static_cast<double>(inst.n) +
                    static_cast<double>(m - inst.n) * static_cast<double>(inst.r()) / static_cast<double>(p);
    json summary = {{"schema", "dqi.baseline.v1"},
                    {"config", config},
                    {"p", p},
                    {"n", inst.n},
                    {"r", inst.r()},
                    {"trials", trials},
                    {"mean", ms.mean},
                    {"stderr", ms.stderr_ >= 0 ? json(ms.stderr_) : json()},
                    {"best", best},
                    {"mean_fraction", ms.mean / static_cast<double>(m)},
                    {"target", target},
                    {"target_fraction", target / static_cast<double>(m)},
                    {"rows_path", rows_out}};
    emit_summary(summary, out);
    return 0;
}

// ------------------------------------------------------- decode-bench ----

std::vector<u64> plant_error(Rng& rng, u64 p, u64 weight) {
    u64 m = p - 1;
    std::vector<u64> positions(m);
    for (u64 i = 0; i < m; ++i) positions[i] = i;
    std::vector<u64> y(m, 0);
    for (u64 k = 0; k < weight; ++k) {
        u64 j = k + rng.below(m - k);
        std::swap(positions[k], positions[j]);
        y[positions[k]] = 1 + rng.below(p - 1);
    }
    return y;
}

int cmd_decode_bench(const std::string& p_list, double t_frac, u64 trials, u64 seed,
                     u64 naive_max_p, const std::string& out, std::string rows_out) {
    std::vector<u64> ps = parse_u64_list(p_list, "--p-list");
    if (ps.empty()) throw DomainError("--p-list is empty");
    if (trials == 0) throw DomainError("--trials must be at least 1");
    if (!(t_frac > 0.0 && t_frac < 0.5))
        throw DomainError("--t-frac must lie in (0, 0.5), got " + fmt_num(t_frac));
    std::sort(ps.begin(), ps.end());

    json config = {{"command", "decode-bench"}, {"p_list", ps}, {"t_frac", t_frac},
                   {"trials", trials}, {"seed", seed}, {"naive_max_p", naive_max_p},
                   {"out", out}};

    struct Row {
        u64 p, t;
        u64 fail_fast = 0, fail_naive = 0;
        double med_fast = 0.0, med_naive = -1.0;
    };
    std::vector<Row> rows;
    for (u64 p : ps) {
        Field field(p);
        u64 t = std::max<u64>(1, static_cast<u64>(static_cast<double>(p - 1) * t_frac));
        RsCode code(field, 2 * t);
        Rng rng(derive_seed(seed, "cli.bench.p" + std::to_string(p)));
        Row row{p, t, 0, 0, 0.0, -1.0};
        std::vector<double> tf, tn;
        for (u64 i = 0; i < trials; ++i) {
            std::vector<u64> y = plant_error(rng, p, t);
            std::vector<u64> s = syndrome_from_error(code, y);
            auto t0 = Clock::now();
            DecodeOutcome fast = decode_fast(code, s);
            tf.push_back(ms_since(t0));
            if (fast.error != y) ++row.fail_fast;
            if (p <= naive_max_p) {
                t0 = Clock::now();
                DecodeOutcome naive = decode_naive(code, s);
                tn.push_back(ms_since(t0));
                if (naive.error != y) ++row.fail_naive;
            }
        }
        row.med_fast = median(tf);
        if (!tn.empty()) row.med_naive = median(tn);
        rows.push_back(row);
    }

    std::string csv = csv_meta("dqi.decode_bench.v1", config) +
                      "p,t,trials,failures_fast,failures_naive,median_fast_ms,median_naive_ms\n";
    json table = json::array();
    std::vector<double> fit_p, fit_tf, fit_np, fit_tn;
    u64 largest_common = 0;
    double ratio_at_largest = -1.0;
    for (const Row& row : rows) {
        bool has_naive = row.med_naive >= 0.0;
        csv += std::to_string(row.p) + "," + std::to_string(row.t) + "," + std::to_string(trials) +
               "," + std::to_string(row.fail_fast) + "," +
               (has_naive ? std::to_string(row.fail_naive) : std::string()) + "," +
               fmt_num(row.med_fast) + "," + (has_naive ? fmt_num(row.med_naive) : std::string()) + "\n";
        table.push_back({{"p", row.p},
                         {"t", row.t},
                         {"trials", trials},
                         {"failures_fast", row.fail_fast},
                         {"failures_naive", has_naive ? json(row.fail_naive) : json()},
                         {"median_fast_ms", row.med_fast},
                         {"median_naive_ms", has_naive ? json(row.med_naive) : json()}});
        fit_p.push_back(static_cast<double>(row.p));
        fit_tf.push_back(std::max(row.med_fast, 1e-6));
        if (has_naive) {
            fit_np.push_back(static_cast<double>(row.p));
            fit_tn.push_back(std::max(row.med_naive, 1e-6));
            if (row.p > largest_common) {
                largest_common = row.p;
                ratio_at_largest = row.med_naive / std::max(row.med_fast, 1e-9);
            }
        }
    }
    if (rows_out.empty()) rows_out = sibling_path(out, ".rows.csv", "decode_bench.csv");
    write_text(rows_out, csv);

    u64 fails = 0;
    for (const Row& row : rows) fails += row.fail_fast + row.fail_naive;
    json summary = {{"schema", "dqi.decode_bench.v1"},
                    {"config", config},
                    {"rows", table},
                    {"rows_path", rows_out},
                    {"total_failures", fails},
                    {"exponent_fast", fit_p.size() >= 2 ? json(loglog_slope(fit_p, fit_tf)) : json()},
                    {"exponent_naive", fit_np.size() >= 2 ? json(loglog_slope(fit_np, fit_tn)) : json()},
                    {"largest_common_p", largest_common > 0 ? json(largest_common) : json()},
                    {"naive_over_fast_at_largest_common_p",
                     ratio_at_largest >= 0 ? json(ratio_at_largest) : json()}};
    emit_summary(summary, out);
    return fails == 0 ? 0 : 1;
}

// ------------------------------------------------------------ analyze ----

int cmd_analyze(const std::string& lambda_list, const std::string& rho_list, u64 m, double c,
                u64 ell_fig, const std::string& out, std::string weights_out) {
    std::vector<double> lambdas = parse_double_list(lambda_list, "--lambdas");
    std::vector<double> rhos = parse_double_list(rho_list, "--rhos");
    if (m < 4) throw DomainError("--m must be at least 4");
    if (ell_fig == 0) ell_fig = 2 * m / 5;
    if (ell_fig > m) throw DomainError("--ell exceeds m");

    json config = {{"command", "analyze"}, {"lambdas", lambdas}, {"rhos", rhos},
                   {"m", m}, {"c", c}, {"ell", ell_fig}, {"out", out}};

    std::string csv = csv_meta("dqi.analyze.v1", config) +
                      "m,lambda,rho,asymptotic,eigen_upper,binom_lower,binom_actual\n";
    u64 row_count = 0;
    for (double lambda : lambdas) {
        for (double rho : rhos) {
            double asym = asymptotic_ratio(lambda, rho);
            u64 ell = static_cast<u64>(std::llround(lambda * static_cast<double>(m)));
            std::string eig, low, act;
            if (ell >= 1 && ell <= m && lambda + rho <= 1.0) {
                TridiagSpec spec = make_tridiag(m, ell, rho);
                double norm_bound = 2.0 * std::sqrt(static_cast<double>(m)) +
                                    static_cast<double>(ell) * spec.d +
                                    2.0 * std::sqrt(static_cast<double>(ell) * static_cast<double>(m - ell));
                eig = fmt_num(rho + std::sqrt(rho * (1.0 - rho)) * norm_bound / static_cast<double>(m));
            }
            if (ell >= 1 && ell <= m) {
                try {
                    low = fmt_num(binomial_lower_bound(m, ell, rho, c, lambda).lower);
                } catch (const RegimeViolation&) {
                }
                try {
                    WeightSpec w = make_weights(m, ell, c);
                    act = fmt_num(expectation_from_weights(m, ell, rho, w.w) / static_cast<double>(m));
                } catch (const DomainError&) {
                }
            }
            csv += std::to_string(m) + "," + fmt_num(lambda) + "," + fmt_num(rho) + "," +
                   fmt_num(asym) + "," + eig + "," + low + "," + act + "\n";
            ++row_count;
        }
    }
    write_text(out, csv);

    // Weight-profile dump: truncated-binomial squares next to the uniform
    // tail block (w'_k)^2 = 1/ceil(sqrt(ell)) on ell - ceil(sqrt(ell)) < k <= ell.
    WeightSpec fig = make_weights(m, ell_fig, c);
    u64 block = static_cast<u64>(std::ceil(std::sqrt(static_cast<double>(ell_fig))));
    std::string wcsv = csv_meta("dqi.analyze_weights.v1", config) +
                       "k,binomial_weight_sq,uniform_weight_sq\n";
    double sum_binom = 0.0, sum_uniform = 0.0;
    for (u64 k = 0; k <= ell_fig; ++k) {
        double b = fig.w[k] * fig.w[k];
        double u = (k + block > ell_fig) ? 1.0 / static_cast<double>(block) : 0.0;
        sum_binom += b;
        sum_uniform += u;
        wcsv += std::to_string(k) + "," + fmt_num(b) + "," + fmt_num(u) + "\n";
    }
    if (weights_out.empty()) weights_out = sibling_path(out, ".weights.csv", "analyze.weights.csv");
    write_text(weights_out, wcsv);

    json summary = {{"schema", "dqi.analyze.v1"},
                    {"config", config},
                    {"rows", row_count},
                    {"rows_path", out},
                    {"weights_path", weights_out},
                    {"weight_q", fig.q},
                    {"binomial_weight_sum", sum_binom},
                    {"uniform_weight_sum", sum_uniform}};
    emit_summary(summary, "");
    return 0;
}

// ------------------------------------------------------------- verify ----

struct CheckOutcome {
    bool pass = false;
    std::string detail;
};

struct CheckSpec {
    const char* id;
    const char* description;
    std::function<CheckOutcome()> body;
};

bool has_rader_leaf(const NttStageInfo& node) {
    if (node.uses_rader) return true;
    for (const auto& child : node.children)
        if (has_rader_leaf(child)) return true;
    return false;
}

std::vector<CheckSpec> build_checks(bool full, bool decoder_fault) {
    std::vector<CheckSpec> checks;

    checks.push_back({"asymptotic_ratio_headline",
                      "closed-form satisfied fraction hits 1/2 + sqrt(19)/20 at (1/20, 1/2), "
                      "is continuous at the saturation seam, and is symmetric in its arguments",
                      [] {
                          double want = 0.5 + std::sqrt(19.0) / 20.0;
                          double err = std::abs(asymptotic_ratio(0.05, 0.5) - want);
                          bool ok = err <= 1e-12;
                          ok = ok && asymptotic_ratio(0.3, 0.7) == 1.0;
                          ok = ok && std::abs(asymptotic_ratio(0.3, 0.7 - 1e-9) - 1.0) <= 1e-4;
                          ok = ok && std::abs(asymptotic_ratio(0.2, 0.4) - asymptotic_ratio(0.4, 0.2)) <= 1e-15;
                          return CheckOutcome{ok, "headline error " + fmt_num(err)};
                      }});

    checks.push_back({"field_arithmetic",
                      "inverses, Fermat exponents, and primitive-element orders over small and 62-bit primes",
                      [] {
                          bool ok = true;
                          for (u64 p : {u64(11), u64(97), u64(65537), u64(2147483647), u64(2305843009213693951ull)}) {
                              Field f(p);
                              Rng rng(derive_seed(1, "verify.field"));
                              for (int i = 0; i < 200 && ok; ++i) {
                                  u64 a = 1 + rng.below(p - 1);
                                  ok = ok && f.mul(a, f.inv(a)) == 1;
                                  ok = ok && f.pow(a, p - 1) == 1;
                              }
                              if (p <= 65537) ok = ok && f.element_order(f.primitive_element()) == p - 1;
                          }
                          ok = ok && is_prime(65537) && !is_prime(65541);
                          return CheckOutcome{ok, "5 primes, 200 draws each"};
                      }});

    checks.push_back({"ntt_matches_direct",
                      "fast transforms agree with the quadratic evaluation sum and invert exactly, "
                      "including a prime-order convolution-reduction leaf",
                      [full] {
                          int trials = full ? 200 : 20;
                          bool ok = true;
                          bool saw_rader = false;
                          u64 cases = 0;
                          struct Cfg { u64 p, order; };
                          for (Cfg cfg : {Cfg{97, 96}, Cfg{59, 29}, Cfg{17, 16}, Cfg{97, 32}}) {
                              Field f(cfg.p);
                              u64 beta = f.pow(f.primitive_element(), (cfg.p - 1) / cfg.order);
                              auto plan = get_plan(f, beta);
                              if (has_rader_leaf(plan->structure())) saw_rader = true;
                              Rng rng(derive_seed(2, "verify.ntt"));
                              for (int i = 0; i < trials && ok; ++i) {
                                  std::vector<u64> x(cfg.order);
                                  for (auto& v : x) v = rng.below(cfg.p);
                                  std::vector<u64> want(cfg.order, 0);
                                  for (u64 j = 0; j < cfg.order; ++j) {
                                      u64 acc = 0;
                                      for (u64 k = 0; k < cfg.order; ++k)
                                          acc = f.add(acc, f.mul(x[k], f.pow(beta, (j * k) % cfg.order)));
                                      want[j] = acc;
                                  }
                                  std::vector<u64> got = plan->ntt(x);
                                  ok = ok && got == want && plan->intt(got) == x;
                                  ++cases;
                              }
                          }
                          ok = ok && saw_rader;
                          return CheckOutcome{ok, std::to_string(cases) + " transforms, rader leaf seen"};
                      }});

    checks.push_back({"series_division_identities",
                      "Euclidean division reconstructs the dividend, the series quotient's polynomial part "
                      "matches it, and the truncated reciprocal multiplies back to 1 through its window",
                      [full] {
                          Field f(97);
                          Rng rng(derive_seed(3, "verify.series"));
                          int trials = full ? 200 : 40;
                          bool ok = true;
                          for (int i = 0; i < trials && ok; ++i) {
                              u64 db = 1 + rng.below(30);
                              std::vector<u64> bc(db + 1);
                              for (auto& v : bc) v = rng.below(97);
                              bc.back() = 1 + rng.below(96);
                              FpPoly b(f, bc);
                              std::vector<u64> ac(db + 1 + rng.below(31));
                              for (auto& v : ac) v = rng.below(97);
                              FpPoly a(f, ac);

                              auto [qt, rem] = poly_divmod(a, b);
                              ok = ok && poly_add(poly_mul(qt, b), rem) == a;
                              ok = ok && (rem.is_zero() || rem.degree() < b.degree());
                              ok = ok && poly_from_window(poly_rounded_div(a, b, 0)) == qt;

                              i64 T = 1 + static_cast<i64>(rng.below(20));
                              SeriesWindow w = poly_reciprocal_window(b, T);
                              FpPoly W(f, w.coeffs());
                              FpPoly prod = poly_mul(b, W);
                              i64 top = b.degree() + T - 1;
                              ok = ok && prod.coeff(top) == 1;
                              for (i64 d = b.degree(); d < top && ok; ++d) ok = prod.coeff(d) == 0;
                          }
                          return CheckOutcome{ok, std::to_string(trials) + " random divisor pairs"};
                      }});

    checks.push_back({"eea_fast_equals_slow",
                      "divide-and-conquer remainder-sequence cofactors, quotients, and stopping degree "
                      "match the iterative route; cofactor degree caps hold",
                      [full] {
                          Field f(97);
                          Rng rng(derive_seed(4, "verify.eea"));
                          int trials = full ? 500 : 60;
                          bool ok = true;
                          for (int i = 0; i < trials && ok; ++i) {
                              i64 t = 1 + static_cast<i64>(rng.below(20));
                              std::vector<u64> r0(static_cast<size_t>(2 * t + 1));
                              for (auto& v : r0) v = rng.below(97);
                              r0.back() = 1 + rng.below(96);
                              std::vector<u64> r1(1 + rng.below(static_cast<u64>(2 * t)));
                              for (auto& v : r1) v = rng.below(97);
                              if (r1.back() == 0) r1.back() = 1 + rng.below(96);
                              FpPoly R0(f, r0), R1(f, r1);
                              EeaOutput slow = eea_slow(R0, R1, t);
                              EeaOutput fast = eea_fast(R0, R1, t);
                              ok = ok && slow.Pj == fast.Pj && slow.Lj == fast.Lj &&
                                   slow.Rj_degree == fast.Rj_degree &&
                                   slow.quotients.size() == fast.quotients.size();
                              for (size_t k = 0; ok && k < slow.quotients.size(); ++k)
                                  ok = slow.quotients[k] == fast.quotients[k];
                              ok = ok && fast.Pj.degree() <= t - 1 && fast.Lj.degree() <= t;
                          }
                          return CheckOutcome{ok, std::to_string(trials) + " instances at t <= 20"};
                      }});

    checks.push_back({"decode_exhaustive_small",
                      "every error of weight <= 2 at p=11 decodes back from its syndrome "
                      "(with periodic naive-route cross-checks)",
                      [decoder_fault] {
                          Field f(11);
                          RsCode code(f, 4);
                          u64 cases = 0, failures = 0;
                          auto try_case = [&](const std::vector<u64>& y) {
                              std::vector<u64> s = syndrome_from_error(code, y);
                              DecodeOutcome out = decode_fast(code, s);
                              if (decoder_fault) out.error[0] = f.add(out.error[0], 1);
                              if (out.error != y) ++failures;
                              if (cases % 23 == 0) {
                                  DecodeOutcome naive = decode_naive(code, s);
                                  if (naive.error != y) ++failures;
                              }
                              ++cases;
                          };
                          std::vector<u64> y(10, 0);
                          try_case(y);
                          for (u64 i = 0; i < 10; ++i)
                              for (u64 v = 1; v <= 10; ++v) {
                                  std::fill(y.begin(), y.end(), 0);
                                  y[i] = v;
                                  try_case(y);
                              }
                          for (u64 i = 0; i < 10; ++i)
                              for (u64 j = i + 1; j < 10; ++j)
                                  for (u64 v1 = 1; v1 <= 10; ++v1)
                                      for (u64 v2 = 1; v2 <= 10; ++v2) {
                                          std::fill(y.begin(), y.end(), 0);
                                          y[i] = v1;
                                          y[j] = v2;
                                          try_case(y);
                                      }
                          return CheckOutcome{failures == 0, std::to_string(cases) + " cases, " +
                                                                 std::to_string(failures) + " failures"};
                      }});

    checks.push_back({"decode_fast_equals_naive",
                      "fast and naive decoders return identical errors on random planted instances",
                      [full] {
                          bool ok = true;
                          u64 cases = 0;
                          int per_p = full ? 100 : 10;
                          for (u64 p : {u64(31), u64(127), u64(257)}) {
                              Field f(p);
                              RsCode code(f, (p - 1) / 2);
                              Rng rng(derive_seed(5, "verify.decode.p" + std::to_string(p)));
                              for (int i = 0; i < per_p && ok; ++i) {
                                  std::vector<u64> y = plant_error(rng, p, rng.below(code.t() + 1));
                                  std::vector<u64> s = syndrome_from_error(code, y);
                                  DecodeOutcome a = decode_fast(code, s);
                                  DecodeOutcome b = decode_naive(code, s);
                                  ok = ok && a.error == y && b.error == y && a.error == b.error;
                                  ++cases;
                              }
                          }
                          return CheckOutcome{ok, std::to_string(cases) + " planted instances"};
                      }});

    checks.push_back({"decode_large_roundtrip",
                      "weight-1000 errors at p=65537 decode back exactly",
                      [full] {
                          Field f(65537);
                          RsCode code(f, 2000);
                          Rng rng(derive_seed(6, "verify.decode.large"));
                          int trials = full ? 50 : 3;
                          bool ok = true;
                          for (int i = 0; i < trials && ok; ++i) {
                              std::vector<u64> y = plant_error(rng, 65537, 1000);
                              ok = decode_fast(code, syndrome_from_error(code, y)).error == y;
                          }
                          return CheckOutcome{ok, std::to_string(trials) + " trials"};
                      }});

    checks.push_back({"grover_exact_sequence",
                      "the exact amplitude-amplification sequence reproduces the two-level constraint "
                      "state, global phase included, for every set size at p in {5,7,11,13}",
                      [] {
                          double worst = 0.0;
                          for (u64 p : {u64(5), u64(7), u64(11), u64(13)}) {
                              Field f(p);
                              Rng rng(derive_seed(7, "verify.grover.p" + std::to_string(p)));
                              for (u64 r = 1; r <= p - 1; ++r) {
                                  for (int rep = 0; rep < 3; ++rep) {
                                      IndexSet set;
                                      if (rep == 0) {
                                          for (u64 v = 0; v < r; ++v) set.push_back(v);
                                      } else {
                                          std::vector<u64> all(p);
                                          for (u64 v = 0; v < p; ++v) all[v] = v;
                                          for (u64 k = 0; k < r; ++k) {
                                              u64 j = k + rng.below(p - k);
                                              std::swap(all[k], all[j]);
                                              set.push_back(all[k]);
                                          }
                                      }
                                      QuditVector direct = g_state_direct(f, set);
                                      QuditVector grover = g_state_exact_grover(f, set);
                                      for (u64 v = 0; v < p; ++v)
                                          worst = std::max(worst, std::abs(direct[v] - grover[v]));
                                  }
                              }
                          }
                          return CheckOutcome{worst <= 1e-10, "worst amplitude error " + fmt_num(worst)};
                      }});

    checks.push_back({"grover_balanced_closed_form",
                      "single-call approximate state overlaps the exact one at sqrt(1 - 1/p^2), and the "
                      "product-state distance stays under its tail bound",
                      [] {
                          bool ok = true;
                          double worst = 0.0;
                          for (u64 p : {u64(11), u64(101), u64(1009)}) {
                              Field f(p);
                              Rng rng(derive_seed(8, "verify.balanced.p" + std::to_string(p)));
                              u64 r = (p - 1) / 2;
                              std::vector<u64> all(p);
                              for (u64 v = 0; v < p; ++v) all[v] = v;
                              IndexSet set;
                              for (u64 k = 0; k < r; ++k) {
                                  u64 j = k + rng.below(p - k);
                                  std::swap(all[k], all[j]);
                                  set.push_back(all[k]);
                              }
                              QuditVector exact = g_state_direct(f, set);
                              QuditVector approx = g_state_approx(f, set);
                              Amplitude overlap = 0.0;
                              for (u64 v = 0; v < p; ++v) overlap += std::conj(exact[v]) * approx[v];
                              double want = std::sqrt(1.0 - 1.0 / (static_cast<double>(p) * static_cast<double>(p)));
                              worst = std::max(worst, std::abs(overlap - Amplitude(want)));
                              double q = 0.3;
                              double dist = approx_pipeline_distance(p, q);
                              double bound = std::sqrt(2.0 * q * static_cast<double>(p) * (1.0 - want));
                              ok = ok && dist <= bound + 1e-12;
                          }
                          ok = ok && worst <= 1e-12;
                          return CheckOutcome{ok, "worst overlap error " + fmt_num(worst)};
                      }});

    checks.push_back({"expectation_dual_route",
                      "the closed-form objective expectation matches full statevector enumeration on "
                      "random Vandermonde instances at p=11",
                      [full] {
                          int families = full ? 20 : 5;
                          double worst = 0.0;
                          for (int i = 0; i < families; ++i) {
                              OpiInstance opi = random_instance(
                                  11, InstanceProfile::custom(3, 5),
                                  derive_seed(9, "verify.dual." + std::to_string(i)));
                              MaxLinsatInstance inst = reduce_to_maxlinsat(opi);
                              WeightSpec w = make_weights_q(inst.m, inst.ell, 0.25);
                              DenseQuditState state = inverse_qft_per_qudit(
                                  syndrome_map(inst, build_phi3(inst, w)));
                              double sv = expected_objective_statevector(inst, state);
                              double formula = expected_objective_formula(inst, w);
                              worst = std::max(worst, std::abs(sv - formula));
                          }
                          return CheckOutcome{worst <= tol::kExpectation,
                                              "worst |formula - statevector| = " + fmt_num(worst)};
                      }});

    checks.push_back({"weight_profile_invariants",
                      "truncated-binomial weights are unit norm with trimmed mass under the "
                      "sub-Gaussian tail bound and an in-range success parameter",
                      [] {
                          WeightSpec w = make_weights(500, 200, 0.01);
                          double norm = 0.0;
                          for (double v : w.w) norm += v * v;
                          bool ok = std::abs(norm - 1.0) <= 1e-12;
                          ok = ok && w.q > 0.0 && w.q < 1.0;
                          ok = ok && w.epsilon <= std::exp(-std::pow(500.0, 0.02) / 2.0);
                          ok = ok && w.regime_ok;
                          WeightSpec tiny = make_weights_q(10, 1, 0.25);
                          double tn = 0.0;
                          for (double v : tiny.w) tn += v * v;
                          ok = ok && std::abs(tn - 1.0) <= 1e-12;
                          return CheckOutcome{ok, "trimmed mass " + fmt_num(w.epsilon)};
                      }});

    checks.push_back({"binomial_tail_bounds",
                      "exact binomial tails above the cap and below the displaced mean stay under "
                      "exp(-m^(2c)/2) at (m, ell, c) = (500, 200, 0.01)",
                      [] {
                          TailReport rep = binomial_tail_check(500, 200, 0.01);
                          bool ok = rep.upper_tail <= rep.bound && rep.lower_tail <= rep.bound;
                          return CheckOutcome{ok, "upper " + fmt_num(rep.upper_tail) + ", lower " +
                                                      fmt_num(rep.lower_tail) + ", bound " + fmt_num(rep.bound)};
                      }});

    checks.push_back({"binomial_mode_bounds",
                      "the displaced-mode index maximizes the exact pmf and its mass stays under "
                      "3/sqrt(m q (1-q)) across the admissible grid",
                      [] {
                          bool ok = binomial_mode_check(10, 0.5).kappa == 5;
                          ok = ok && binomial_mode_check(9, 0.5).kappa == 4;
                          for (u64 m : {u64(50), u64(200), u64(500)})
                              for (double q : {0.3, 0.5, 0.7}) {
                                  double qm = q * static_cast<double>(m + 7);
                                  if (!(qm >= 7.0 && qm <= static_cast<double>(m))) continue;
                                  ModeReport rep = binomial_mode_check(m, q);
                                  ok = ok && rep.max_mass <= rep.bound;
                              }
                          return CheckOutcome{ok, "pinned modes and grid masses"};
                      }});

    checks.push_back({"expectation_sandwich",
                      "the binomial-weight expectation sits between its lower and eigenvalue upper "
                      "bounds, with the gap to the limit shrinking as m grows",
                      [] {
                          bool ok = true;
                          double prev_gap[2] = {1e9, 1e9};
                          for (u64 m : {u64(500), u64(2000)}) {
                              int ri = 0;
                              for (double rho : {0.3, 0.5}) {
                                  u64 ell = m / 4;
                                  BoundReport rep = binomial_lower_bound(m, ell, rho, 0.01, 0.25);
                                  WeightSpec w = make_weights(m, ell, 0.01);
                                  double actual = expectation_from_weights(m, ell, rho, w.w) /
                                                  static_cast<double>(m);
                                  ok = ok && rep.lower <= actual && actual <= rep.upper_eigen;
                                  double gap = std::abs(actual - rep.asymptotic);
                                  ok = ok && gap < prev_gap[ri];
                                  prev_gap[ri] = gap;
                                  ++ri;
                              }
                          }
                          return CheckOutcome{ok, "final gaps " + fmt_num(prev_gap[0]) + ", " + fmt_num(prev_gap[1])};
                      }});

    checks.push_back({"tridiag_eigen_bound",
                      "extremal eigenpairs satisfy their defining equation and the operator-norm cap "
                      "2 sqrt(m) + ell d + 2 sqrt(ell(m-ell))",
                      [] {
                          bool ok = true;
                          int points = 0;
                          for (u64 m : {u64(50), u64(200)})
                              for (double rho : {0.1, 0.3, 0.5, 0.7, 0.9})
                                  for (u64 ell : {m / 10, m / 4, m / 2}) {
                                      if (ell == 0) continue;
                                      double lambda = static_cast<double>(ell) / static_cast<double>(m);
                                      if (lambda + rho > 1.0) continue;
                                      TridiagSpec spec = make_tridiag(m, ell, rho);
                                      auto [ev, vec] = tridiag_extremal(spec);
                                      double resid = 0.0;
                                      for (u64 k = 0; k <= ell; ++k) {
                                          double row = static_cast<double>(k) * spec.d * vec[k];
                                          if (k > 0) row += tridiag_offdiag(spec, k) * vec[k - 1];
                                          if (k < ell) row += tridiag_offdiag(spec, k + 1) * vec[k + 1];
                                          resid = std::max(resid, std::abs(row - ev * vec[k]));
                                          ok = ok && vec[k] >= 0.0;
                                      }
                                      double cap = 2.0 * std::sqrt(static_cast<double>(m)) +
                                                   static_cast<double>(ell) * spec.d +
                                                   2.0 * std::sqrt(static_cast<double>(ell) *
                                                                   static_cast<double>(m - ell));
                                      ok = ok && resid <= 1e-9 * std::max(1.0, std::abs(ev));
                                      ok = ok && ev <= cap + 1e-9;
                                      ++points;
                                  }
                          return CheckOutcome{ok, std::to_string(points) + " grid points"};
                      }});

    checks.push_back({"opi_reduction_objective",
                      "the constraint-system reduction preserves the intersection count, and both "
                      "evaluation routes agree",
                      [] {
                          bool ok = true;
                          OpiInstance opi = random_instance(31, InstanceProfile::custom(5, 12),
                                                            derive_seed(10, "verify.opi"));
                          MaxLinsatInstance red = reduce_to_maxlinsat(opi);
                          ok = ok && red.ell == 2;
                          Rng rng(derive_seed(11, "verify.opi.x"));
                          for (int i = 0; i < 30 && ok; ++i) {
                              OpiPolynomial X{std::vector<u64>(opi.n)};
                              for (auto& v : X.coeffs) v = rng.below(31);
                              u64 a = f_opi(opi, X);
                              u64 b = f_opi_horner(opi, X);
                              u64 c2 = objective(red, X.coeffs);
                              ok = a == b && b == c2;
                          }
                          return CheckOutcome{ok, "30 random polynomials at p=31"};
                      }});

    checks.push_back({"instance_serialization",
                      "instance files round-trip byte-identically through parse and re-serialize",
                      [] {
                          OpiInstance inst = random_instance(101, InstanceProfile::make_canonical(),
                                                             derive_seed(12, "verify.json"));
                          std::string text = instance_to_json(inst);
                          OpiInstance back = instance_from_json(text);
                          bool ok = instance_to_json(back) == text;
                          ok = ok && back.n == inst.n && back.gamma == inst.gamma &&
                               back.sets == inst.sets;
                          return CheckOutcome{ok, std::to_string(text.size()) + " bytes round-tripped"};
                      }});

    checks.push_back({"truncation_heuristic_mean",
                      "the interpolate-and-hope baseline's mean objective over fresh canonical "
                      "instances at p=101 lands near n + (m-n) r/p",
                      [full] {
                          int trials = full ? 2000 : 400;
                          std::vector<double> objectives;
                          objectives.reserve(static_cast<size_t>(trials));
                          for (int i = 0; i < trials; ++i) {
                              u64 s = derive_seed(13, "verify.heuristic." + std::to_string(i));
                              OpiInstance inst = random_instance(101, InstanceProfile::make_canonical(), s);
                              objectives.push_back(static_cast<double>(
                                  truncation_heuristic(inst, s).second));
                          }
                          MeanStderr ms = mean_stderr(objectives);
                          double target = 11.0 + 89.0 * 50.0 / 101.0;
                          double dev = std::abs(ms.mean - target) / ms.stderr_;
                          return CheckOutcome{dev <= 4.0, "mean " + fmt_num(ms.mean) + " vs target " +
                                                              fmt_num(target) + " (" + fmt_num(dev) +
                                                              " standard errors)"};
                      }});

    checks.push_back({"qram_gate_counts",
                      "random-access read circuits cost 3M-2 swaps (linear) and (M, 4M-8, 4) "
                      "swap/doubly-controlled/parity gates (log) with the pinned M=8 values",
                      [] {
                          QramGateCounts g8 = qram_gate_counts(8);
                          bool ok = g8.linear_fredkin == 22 && g8.linear_ancilla == 8 && g8.has_log &&
                                    g8.log_fredkin == 8 && g8.log_toffoli == 24 && g8.log_cnot == 4 &&
                                    g8.log_ancilla == 3;
                          QramGateCounts g2 = qram_gate_counts(2);
                          ok = ok && g2.linear_fredkin == 4 && !g2.has_log;
                          for (u64 mcells = 4; mcells <= 1024; mcells *= 2) {
                              QramGateCounts g = qram_gate_counts(mcells);
                              ok = ok && g.linear_fredkin == 3 * mcells - 2 && g.has_log &&
                                   g.log_fredkin == mcells && g.log_toffoli == 4 * mcells - 8 &&
                                   g.log_cnot == 4;
                          }
                          return CheckOutcome{ok, "pinned M=8 plus power-of-two family"};
                      }});

    return checks;
}

int cmd_verify(const std::string& level, bool decoder_fault, const std::string& out) {
    if (level != "fast" && level != "full")
        throw DomainError("--level must be 'fast' or 'full', got '" + level + "'");
    bool full = level == "full";

    json config = {{"command", "verify"}, {"level", level},
                   {"inject_decoder_fault", decoder_fault}, {"out", out}};
    json results = json::array();
    u64 passed = 0, failed = 0;
    auto t_all = Clock::now();
    for (const CheckSpec& check : build_checks(full, decoder_fault)) {
        auto t0 = Clock::now();
        CheckOutcome outcome;
        try {
            outcome = check.body();
        } catch (const std::exception& e) {
            outcome.pass = false;
            outcome.detail = std::string("unexpected exception: ") + e.what();
        }
        double ms = ms_since(t0);
        (outcome.pass ? passed : failed) += 1;
        std::fprintf(stderr, "[%s] %-32s %8.1f ms  %s\n", outcome.pass ? "ok" : "FAIL",
                     check.id, ms, outcome.detail.c_str());
        results.push_back({{"id", check.id},
                           {"description", check.description},
                           {"pass", outcome.pass},
                           {"detail", outcome.detail},
                           {"ms", ms}});
    }

    json report = {{"schema", "dqi.verify.v1"},
                   {"config", config},
                   {"checks", results},
                   {"passed", passed},
                   {"failed", failed},
                   {"all_pass", failed == 0},
                   {"total_ms", ms_since(t_all)}};
    emit_summary(report, out);
    return failed == 0 ? 0 : 1;
}

}  // namespace

int run_cli(int argc, char** argv) {
    CLI::App app{"polynomial-intersection toolkit: instance generation, interferometric "
                 "simulation, decoder benchmarks, analytic sweeps, self-verification"};
    app.require_subcommand(1);

    // gen
    u64 gen_p = 0, gen_n = 0, gen_r = 0, gen_seed = 0;
    bool gen_canonical = false;
    std::string gen_out = "instance.json";
    auto* gen = app.add_subcommand("gen", "generate a random instance file");
    gen->add_option("--p", gen_p, "field size (prime)")->required();
    gen->add_flag("--canonical", gen_canonical, "n = floor(p/10)+1, r = floor(p/2)");
    gen->add_option("--n", gen_n, "polynomial length (custom profile)");
    gen->add_option("--r", gen_r, "target-set size (custom profile)");
    gen->add_option("--seed", gen_seed, "master seed");
    gen->add_option("--out", gen_out, "instance file path");

    // simulate
    std::string sim_file, sim_out, sim_samples_out;
    u64 sim_ell = 0, sim_shots = 0, sim_seed = 0;
    u64 sim_budget_amps = kDefaultAmpBudget, sim_budget_errors = kDefaultErrorBudget;
    double sim_c = 0.01, sim_q = 0.0;
    auto* sim = app.add_subcommand("simulate", "run the full pipeline on an instance file");
    sim->add_option("instance", sim_file, "instance JSON path")->required();
    auto* sim_ell_opt = sim->add_option("--ell", sim_ell, "error-weight cap (default: from the dual distance)");
    sim->add_option("--c", sim_c, "weight recipe exponent");
    auto* sim_q_opt = sim->add_option("--q", sim_q,
                                      "explicit weight success parameter in (0,1); use when the recipe's "
                                      "ell/m - m^(c-1/2) is out of range at small m");
    sim->add_option("--shots", sim_shots, "measurement samples (0: expectations only)");
    sim->add_option("--seed", sim_seed, "master seed");
    sim->add_option("--budget-amps", sim_budget_amps, "dense amplitude cap");
    sim->add_option("--budget-errors", sim_budget_errors, "sparse error-vector cap");
    sim->add_option("--out", sim_out, "summary JSON path (stdout always)");
    sim->add_option("--samples-out", sim_samples_out, "samples CSV path");

    // baseline
    std::string base_file, base_out, base_rows_out;
    u64 base_trials = 100, base_seed = 0;
    auto* base = app.add_subcommand("baseline", "truncation-heuristic objectives on an instance file");
    base->add_option("instance", base_file, "instance JSON path")->required();
    base->add_option("--trials", base_trials, "heuristic repetitions");
    base->add_option("--seed", base_seed, "master seed");
    base->add_option("--out", base_out, "summary JSON path (stdout always)");
    base->add_option("--rows-out", base_rows_out, "per-trial CSV path");

    // decode-bench
    std::string bench_ps = "193,769,3457,12289,65537", bench_out, bench_rows_out;
    double bench_t_frac = 0.25;
    u64 bench_trials = 5, bench_seed = 0, bench_naive_max = 65537;
    auto* bench = app.add_subcommand("decode-bench", "decoder timing and correctness table");
    bench->add_option("--p-list", bench_ps, "comma-separated primes");
    bench->add_option("--t-frac", bench_t_frac, "error weight as a fraction of p-1, in (0, 0.5)");
    bench->add_option("--trials", bench_trials, "decodes per prime");
    bench->add_option("--seed", bench_seed, "master seed");
    bench->add_option("--naive-max-p", bench_naive_max, "largest p the quadratic decoder also runs at");
    bench->add_option("--out", bench_out, "summary JSON path (stdout always)");
    bench->add_option("--rows-out", bench_rows_out, "per-prime CSV path");

    // analyze
    std::string an_lambdas = "0.05,0.1,0.15,0.2,0.25,0.3,0.35,0.4,0.45,0.5";
    std::string an_rhos = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9";
    std::string an_out = "analyze.csv", an_weights_out;
    u64 an_m = 500, an_ell = 0;
    double an_c = 0.01;
    auto* an = app.add_subcommand("analyze", "bound curves and weight-profile dumps");
    an->add_option("--lambdas", an_lambdas, "comma-separated weight-cap fractions (empty: header only)");
    an->add_option("--rhos", an_rhos, "comma-separated set-density fractions (empty: header only)");
    an->add_option("--m", an_m, "constraint count for the finite-size columns");
    an->add_option("--c", an_c, "weight recipe exponent");
    an->add_option("--ell", an_ell, "weight cap for the profile dump (0: 2m/5)");
    an->add_option("--out", an_out, "curves CSV path");
    an->add_option("--weights-out", an_weights_out, "profile dump CSV path");

    // verify
    std::string ver_level = "fast", ver_out;
    bool ver_fault = false;
    auto* ver = app.add_subcommand("verify", "run the invariant battery");
    ver->add_option("--level", ver_level, "fast | full");
    ver->add_flag("--inject-decoder-fault", ver_fault,
                  "corrupt one decoder result to prove failures surface");
    ver->add_option("--out", ver_out, "report JSON path (stdout always)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (gen->parsed())
            return cmd_gen(gen_p, gen_canonical, gen_n, gen_r, gen_seed, gen_out);
        if (sim->parsed())
            return cmd_simulate(sim_file, sim_ell_opt->count() > 0, sim_ell, sim_c,
                                sim_q_opt->count() > 0, sim_q, sim_shots, sim_seed,
                                sim_budget_amps, sim_budget_errors, sim_out, sim_samples_out);
        if (base->parsed())
            return cmd_baseline(base_file, base_trials, base_seed, base_out, base_rows_out);
        if (bench->parsed())
            return cmd_decode_bench(bench_ps, bench_t_frac, bench_trials, bench_seed,
                                    bench_naive_max, bench_out, bench_rows_out);
        if (an->parsed())
            return cmd_analyze(an_lambdas, an_rhos, an_m, an_c, an_ell, an_out, an_weights_out);
        if (ver->parsed())
            return cmd_verify(ver_level, ver_fault, ver_out);
    } catch (const BudgetExceeded& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 4;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}

}  // namespace dqi
