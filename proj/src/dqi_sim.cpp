#include "dqi/dqi_sim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dqi/errors.hpp"
#include "dqi/rng.hpp"

namespace dqi {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double binom(u64 m, u64 k) {
    if (k > m) return 0.0;
    k = std::min(k, m - k);
    double c = 1.0;
    for (u64 j = 1; j <= k; ++j) c *= static_cast<double>(m - k + j) / static_cast<double>(j);
    return c;
}

// p^n, guarded against both overflow and the amplitude budget.
u64 dense_size(u64 p, u64 n, u64 budget_amps) {
    u64 total = 1;
    for (u64 j = 0; j < n; ++j) {
        if (total > budget_amps / p) throw BudgetExceeded("dense state exceeds amplitude budget");
        total *= p;
    }
    if (total > budget_amps) throw BudgetExceeded("dense state exceeds amplitude budget");
    return total;
}

// Fourier row of one constraint state: ghat(0) = 0 and for y != 0
// ghat(y) = sum_{z in S} omega^{y z} / sqrt(r (p-r)).
std::vector<Amplitude> ghat_row(u64 p, const IndexSet& set) {
    const double r = static_cast<double>(set.size());
    const double scale = 1.0 / std::sqrt(r * (static_cast<double>(p) - r));
    std::vector<Amplitude> row(p, Amplitude(0.0, 0.0));
    for (u64 y = 1; y < p; ++y) {
        Amplitude sum(0.0, 0.0);
        for (u64 z : set) sum += std::polar(1.0, kTwoPi * static_cast<double>(y * z % p) / static_cast<double>(p));
        row[y] = scale * sum;
    }
    return row;
}

std::vector<std::vector<char>> set_masks(const MaxLinsatInstance& inst) {
    std::vector<std::vector<char>> masks(inst.m, std::vector<char>(inst.field.p(), 0));
    for (u64 i = 0; i < inst.m; ++i)
        for (u64 z : inst.sets[i]) masks[i][z] = 1;
    return masks;
}

u64 objective_with_masks(const MaxLinsatInstance& inst, const std::vector<std::vector<char>>& masks,
                         const std::vector<u64>& x) {
    const Field& f = inst.field;
    u64 count = 0;
    for (u64 i = 0; i < inst.m; ++i) {
        u64 dot = 0;
        for (u64 j = 0; j < inst.n; ++j) dot = f.add(dot, f.mul(inst.rows[i][j], x[j]));
        count += masks[i][dot];
    }
    return count;
}

DenseQuditState qft_per_qudit(const DenseQuditState& state, bool inverse) {
    const u64 p = state.p;
    const u64 n = state.n;
    const u64 total = dense_size(p, n, ~u64(0));
    if (state.amps.size() != total) throw ShapeMismatch("amplitude array is not p^n");

    std::vector<Amplitude> kernel(p * p);
    const double scale = 1.0 / std::sqrt(static_cast<double>(p));
    const double sign = inverse ? -1.0 : 1.0;
    for (u64 a = 0; a < p; ++a)
        for (u64 b = 0; b < p; ++b)
            kernel[a * p + b] = scale * std::polar(1.0, sign * kTwoPi * static_cast<double>(a * b % p) /
                                                            static_cast<double>(p));

    DenseQuditState out{p, n, state.amps};
    std::vector<Amplitude> slot(p);
    u64 stride = total / p;  // qudit 0 is outermost
    for (u64 axis = 0; axis < n; ++axis) {
        const u64 block = stride * p;
        for (u64 base = 0; base < total; base += block) {
            for (u64 inner = 0; inner < stride; ++inner) {
                const u64 at = base + inner;
                for (u64 b = 0; b < p; ++b) slot[b] = out.amps[at + b * stride];
                for (u64 a = 0; a < p; ++a) {
                    Amplitude acc(0.0, 0.0);
                    for (u64 b = 0; b < p; ++b) acc += kernel[a * p + b] * slot[b];
                    out.amps[at + a * stride] = acc;
                }
            }
        }
        stride /= p;
    }
    return out;
}

}  // namespace

WeightSpec make_weights_q(u64 m, u64 ell, double q) {
    if (m == 0 || ell > m) throw DomainError("weight cap must satisfy 0 <= ell <= m, m >= 1");
    if (!(q > 0.0 && q < 1.0)) throw DomainError("weight parameter q falls outside (0,1)");

    WeightSpec spec;
    spec.m = m;
    spec.ell = ell;
    spec.q = q;

    // Binomial pmf in log space; far tails underflow harmlessly to 0.
    const double md = static_cast<double>(m);
    const double logq = std::log(q);
    const double log1mq = std::log1p(-q);
    const double lgm = std::lgamma(md + 1.0);
    spec.w_prime.resize(m + 1);
    double tail = 0.0;
    for (u64 k = 0; k <= m; ++k) {
        const double kd = static_cast<double>(k);
        const double logpmf =
            lgm - std::lgamma(kd + 1.0) - std::lgamma(md - kd + 1.0) + kd * logq + (md - kd) * log1mq;
        const double pmf = std::exp(logpmf);
        spec.w_prime[k] = std::sqrt(pmf);
        if (k > ell) tail += pmf;
    }
    spec.epsilon = tail;

    const double keep = 1.0 / std::sqrt(1.0 - spec.epsilon);
    spec.w.resize(ell + 1);
    for (u64 k = 0; k <= ell; ++k) spec.w[k] = spec.w_prime[k] * keep;
    return spec;
}

WeightSpec make_weights(u64 m, u64 ell, double c) {
    if (m == 0 || ell > m) throw DomainError("weight cap must satisfy 0 <= ell <= m, m >= 1");
    if (!(c > 0.0)) throw DomainError("exponent constant c must be positive");

    const double md = static_cast<double>(m);
    const double q = static_cast<double>(ell) / md - std::pow(md, c - 0.5);
    WeightSpec spec = make_weights_q(m, ell, q);
    spec.c = c;
    spec.regime_ok =
        4.0 * std::pow(md, 0.5 + c) <= static_cast<double>(ell) && 2 * ell <= m;
    return spec;
}

WeightSpec weights_from_vector(u64 m, std::vector<double> w) {
    if (w.empty() || w.size() > m + 1) throw LengthMismatch("need 1 to m+1 weight entries");

    WeightSpec spec;
    spec.m = m;
    spec.ell = w.size() - 1;
    double norm_sq = 0.0;
    for (double v : w) norm_sq += v * v;
    if (!(norm_sq > 0.0)) throw NormViolation("weight vector must be nonzero");
    const double scale = 1.0 / std::sqrt(norm_sq);
    for (double& v : w) v *= scale;

    spec.w_prime.assign(m + 1, 0.0);
    for (size_t k = 0; k < w.size(); ++k) spec.w_prime[k] = w[k];
    spec.w = std::move(w);
    return spec;
}

MaxLinsatInstance make_instance(const Field& field, std::vector<std::vector<u64>> rows,
                                std::vector<IndexSet> sets, u64 ell, bool vandermonde) {
    const u64 p = field.p();
    if (rows.empty() || rows.size() != sets.size())
        throw LengthMismatch("need one constraint set per row");

    MaxLinsatInstance inst{field, rows.size(), rows[0].size(), std::move(rows), std::move(sets),
                           0,     ell,         vandermonde};
    if (inst.n == 0) throw LengthMismatch("rows must have at least one column");

    inst.r = inst.sets[0].size();
    if (inst.r == 0 || inst.r >= p) throw DegenerateSet("constraint sets must be nonempty proper subsets");
    for (u64 i = 0; i < inst.m; ++i) {
        if (inst.rows[i].size() != inst.n) throw LengthMismatch("ragged constraint rows");
        for (u64 v : inst.rows[i])
            if (v >= p) throw DomainError("row entry outside the field");
        if (inst.sets[i].size() != inst.r) throw DegenerateSet("constraint sets must share one size");
        std::vector<char> seen(p, 0);
        for (u64 z : inst.sets[i]) {
            if (z >= p) throw DomainError("set member outside the field");
            if (seen[z]) throw DegenerateSet("duplicate member in constraint set");
            seen[z] = 1;
        }
    }
    if (vandermonde) {
        const u64 d_perp = inst.n + 1;
        if (ell + 1 > d_perp / 2)
            throw RegimeViolation("weight cap must stay below half the dual distance");
    }
    return inst;
}

u64 default_weight_cap(u64 d_perp, u64 m, u64 r, u64 p) {
    const u64 from_distance = d_perp / 2 == 0 ? 0 : d_perp / 2 - 1;
    const u64 from_sets = static_cast<u64>(
        std::floor(static_cast<double>(m) * (1.0 - static_cast<double>(r) / static_cast<double>(p))));
    return std::min(from_distance, from_sets);
}

u64 pack_index(u64 p, const std::vector<u64>& x) {
    u64 idx = 0;
    for (u64 v : x) idx = idx * p + v;
    return idx;
}

std::vector<u64> unpack_index(u64 p, u64 n, u64 index) {
    std::vector<u64> x(n);
    for (u64 j = n; j-- > 0;) {
        x[j] = index % p;
        index /= p;
    }
    return x;
}

Amplitude beta_coefficient(const MaxLinsatInstance& inst, const std::vector<u64>& y) {
    if (y.size() != inst.m) throw LengthMismatch("error vector length must equal m");
    const u64 p = inst.field.p();
    Amplitude prod(1.0, 0.0);
    for (u64 i = 0; i < inst.m; ++i) {
        const u64 yi = y[i] % p;
        if (yi == 0) continue;
        const double r = static_cast<double>(inst.r);
        Amplitude sum(0.0, 0.0);
        for (u64 z : inst.sets[i])
            sum += std::polar(1.0, kTwoPi * static_cast<double>(yi * z % p) / static_cast<double>(p));
        prod *= sum / std::sqrt(r * (static_cast<double>(p) - r));
    }
    return prod;
}

SparseErrorState build_phi3(const MaxLinsatInstance& inst, const WeightSpec& weights,
                            u64 budget_errors) {
    if (weights.m != inst.m || weights.ell != inst.ell)
        throw LengthMismatch("weight profile does not match the instance");
    const u64 p = inst.field.p();
    const u64 m = inst.m;
    const u64 ell = inst.ell;

    long double count = 0.0L;
    for (u64 k = 0; k <= ell; ++k)
        count += static_cast<long double>(binom(m, k)) *
                 powl(static_cast<long double>(p - 1), static_cast<long double>(k));
    if (count > static_cast<long double>(budget_errors))
        throw BudgetExceeded("error enumeration exceeds budget");

    std::vector<std::vector<Amplitude>> ghat(m);
    for (u64 i = 0; i < m; ++i) ghat[i] = ghat_row(p, inst.sets[i]);

    SparseErrorState state;
    state.m = m;
    state.success_probability = 1.0 - weights.epsilon;
    state.entries.reserve(static_cast<size_t>(count));

    std::vector<u64> y(m, 0);
    state.entries.push_back({y, Amplitude(weights.w[0], 0.0)});

    std::vector<u64> support;
    for (u64 k = 1; k <= ell; ++k) {
        const double scale = weights.w[k] / std::sqrt(binom(m, k));
        support.resize(k);
        for (u64 j = 0; j < k; ++j) support[j] = j;
        while (true) {
            // Odometer over the k nonzero values, last position fastest.
            std::vector<u64> vals(k, 1);
            while (true) {
                std::fill(y.begin(), y.end(), 0);
                Amplitude beta(1.0, 0.0);
                for (u64 j = 0; j < k; ++j) {
                    y[support[j]] = vals[j];
                    beta *= ghat[support[j]][vals[j]];
                }
                state.entries.push_back({y, scale * beta});
                u64 pos = k;
                while (pos > 0 && vals[pos - 1] == p - 1) --pos;
                if (pos == 0) break;
                ++vals[pos - 1];
                for (u64 j = pos; j < k; ++j) vals[j] = 1;
            }
            // Next combination in lexicographic order.
            u64 pos = k;
            while (pos > 0 && support[pos - 1] == m - k + pos - 1) --pos;
            if (pos == 0) break;
            ++support[pos - 1];
            for (u64 j = pos; j < k; ++j) support[j] = support[j - 1] + 1;
        }
    }
    return state;
}

DenseQuditState syndrome_map(const MaxLinsatInstance& inst, const SparseErrorState& state,
                             u64 budget_amps) {
    const Field& f = inst.field;
    const u64 p = f.p();
    const u64 total = dense_size(p, inst.n, budget_amps);

    DenseQuditState out{p, inst.n, std::vector<Amplitude>(total, Amplitude(0.0, 0.0))};
    std::vector<char> occupied(total, 0);
    std::vector<u64> syndrome(inst.n);
    for (const WeightedError& entry : state.entries) {
        if (entry.y.size() != inst.m) throw LengthMismatch("error vector length must equal m");
        std::fill(syndrome.begin(), syndrome.end(), 0);
        for (u64 i = 0; i < inst.m; ++i) {
            if (entry.y[i] == 0) continue;
            for (u64 j = 0; j < inst.n; ++j)
                syndrome[j] = f.add(syndrome[j], f.mul(inst.rows[i][j], entry.y[i]));
        }
        const u64 idx = pack_index(p, syndrome);
        if (occupied[idx]) throw SyndromeCollision("two error vectors share a syndrome");
        occupied[idx] = 1;
        out.amps[idx] = entry.amp;
    }
    return out;
}

DenseQuditState forward_qft_per_qudit(const DenseQuditState& state) {
    return qft_per_qudit(state, false);
}

DenseQuditState inverse_qft_per_qudit(const DenseQuditState& state) {
    return qft_per_qudit(state, true);
}

u64 objective(const MaxLinsatInstance& inst, const std::vector<u64>& x) {
    if (x.size() != inst.n) throw LengthMismatch("assignment length must equal n");
    return objective_with_masks(inst, set_masks(inst), x);
}

double expected_objective_statevector(const MaxLinsatInstance& inst, const DenseQuditState& state,
                                      u64 budget_amps) {
    const u64 p = inst.field.p();
    const u64 total = dense_size(p, inst.n, budget_amps);
    if (state.p != p || state.n != inst.n || state.amps.size() != total)
        throw ShapeMismatch("state does not match the instance");

    const auto masks = set_masks(inst);
    double acc = 0.0;
    std::vector<u64> x(inst.n, 0);
    for (u64 idx = 0; idx < total; ++idx) {
        const double prob = std::norm(state.amps[idx]);
        if (prob > 0.0) acc += prob * static_cast<double>(objective_with_masks(inst, masks, x));
        for (u64 j = inst.n; j-- > 0;) {
            if (++x[j] < p) break;
            x[j] = 0;
        }
    }
    return acc;
}

double expected_objective_formula(const MaxLinsatInstance& inst, const WeightSpec& weights) {
    const double p = static_cast<double>(inst.field.p());
    const double r = static_cast<double>(inst.r);
    const double m = static_cast<double>(inst.m);
    const std::vector<double>& w = weights.w;

    double linear = 0.0;
    for (u64 k = 0; k < w.size(); ++k) linear += w[k] * w[k] * static_cast<double>(k);
    double cross = 0.0;
    for (u64 k = 0; k + 1 < w.size(); ++k) {
        const double kd = static_cast<double>(k);
        cross += w[k] * w[k + 1] * std::sqrt((kd + 1.0) * (m - kd));
    }
    return m * r / p + (p - 2.0 * r) / p * linear + 2.0 * std::sqrt(r * (p - r)) / p * cross;
}

std::vector<SampledSolution> sample_solutions(const MaxLinsatInstance& inst,
                                              const DenseQuditState& state, u64 shots, u64 seed) {
    const u64 p = inst.field.p();
    std::vector<double> cumulative(state.amps.size());
    double acc = 0.0;
    for (size_t i = 0; i < state.amps.size(); ++i) {
        acc += std::norm(state.amps[i]);
        cumulative[i] = acc;
    }
    if (acc <= 0.0) throw NormViolation("cannot sample from a zero state");

    const auto masks = set_masks(inst);
    Rng rng(seed);
    std::vector<SampledSolution> samples;
    samples.reserve(shots);
    for (u64 s = 0; s < shots; ++s) {
        const double u = rng.unit() * acc;
        const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        const u64 idx = std::min<u64>(it - cumulative.begin(), cumulative.size() - 1);
        std::vector<u64> x = unpack_index(p, state.n, idx);
        const u64 f = objective_with_masks(inst, masks, x);
        samples.push_back({std::move(x), f});
    }
    return samples;
}

}  // namespace dqi
