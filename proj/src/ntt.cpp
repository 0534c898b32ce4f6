#include "dqi/ntt.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <numbers>
#include <string>
#include <utility>

namespace dqi {

namespace {

using cd = std::complex<double>;

size_t pow2_at_least(u64 v) {
    size_t n = 1;
    while (n < v) n <<= 1;
    return n;
}

int log2_of_pow2(size_t n) { return std::countr_zero(n); }

bool is_pow2(u64 n) { return n != 0 && (n & (n - 1)) == 0; }

int bit_width_u64(u64 v) { return 64 - std::countl_zero(v); }

std::vector<u32> make_bitrev(size_t n) {
    std::vector<u32> rev(n, 0);
    for (size_t i = 1; i < n; ++i)
        rev[i] = (rev[i >> 1] >> 1) | ((i & 1) ? static_cast<u32>(n >> 1) : 0);
    return rev;
}

// Power-of-two complex FFT with cached roots; forward kernel exp(-2*pi*i/n).
struct Fft {
    size_t n;
    std::vector<cd> roots; // roots[k] = exp(-2*pi*i*k/n), k < n/2
    std::vector<u32> bitrev;

    explicit Fft(size_t n_) : n(n_), roots(n_ / 2), bitrev(make_bitrev(n_)) {
        for (size_t k = 0; k < n / 2; ++k) {
            double ang = -2.0 * std::numbers::pi *
                         static_cast<double>(k) / static_cast<double>(n);
            roots[k] = {std::cos(ang), std::sin(ang)};
        }
    }

    void run(std::vector<cd>& v, bool inverse) const {
        for (size_t i = 0; i < n; ++i) {
            size_t j = bitrev[i];
            if (i < j) std::swap(v[i], v[j]);
        }
        for (size_t len = 2; len <= n; len <<= 1) {
            size_t half = len >> 1, step = n / len;
            for (size_t base = 0; base < n; base += len) {
                for (size_t j = 0; j < half; ++j) {
                    cd w = roots[j * step];
                    if (inverse) w = std::conj(w);
                    cd u = v[base + j];
                    cd t = w * v[base + j + half];
                    v[base + j] = u + t;
                    v[base + j + half] = u - t;
                }
            }
        }
        if (inverse) {
            double scale = 1.0 / static_cast<double>(n);
            for (auto& z : v) z *= scale;
        }
    }
};

// Tables for one prime-order transform, reduced to a cyclic convolution by
// reindexing both input and output along powers of a generator of Z_q*.
struct RaderTables {
    u64 q = 0;
    std::vector<u32> zpow;      // zpow[t] = zeta^t mod q, t < q-1
    std::vector<u32> out_index; // zeta^{-k} mod q, k < q-1
    std::vector<ShoupMul> bseq; // beta^(zeta^{-l}), l < q-1

    bool schoolbook = true;

    // Convolution-by-FFT route (engaged only when exactness is provable):
    // values are split into two limbs of limb_bits each so every rounded
    // convolution entry stays below 2^49 with additive error well under 1/4.
    size_t n = 1; // padded length, smallest power of two >= 2q-3
    int limb_bits = 0;
    u64 pow_s_mod = 0;  // 2^limb_bits mod p
    u64 pow_2s_mod = 0; // 2^(2*limb_bits) mod p
    std::unique_ptr<Fft> fft;
    std::vector<cd> fb_hi, fb_lo; // forward FFTs of the two limb sequences
};

RaderTables make_rader(const Field& f, u64 beta, u64 q) {
    RaderTables rt;
    rt.q = q;
    const u64 p = f.p();
    const u64 zeta = Field(q).primitive_element();
    const size_t m = static_cast<size_t>(q - 1);

    rt.zpow.resize(m);
    rt.zpow[0] = 1;
    for (size_t t = 1; t < m; ++t)
        rt.zpow[t] = static_cast<u32>((static_cast<u64>(rt.zpow[t - 1]) * zeta) % q);

    rt.out_index.resize(m);
    for (size_t k = 0; k < m; ++k) rt.out_index[k] = rt.zpow[(m - k) % m];

    std::vector<u64> b(m);
    for (size_t l = 0; l < m; ++l) b[l] = f.pow(beta, rt.out_index[l]);

    rt.n = pow2_at_least(2 * q - 3);
    const int L = log2_of_pow2(rt.n);
    const int bits = bit_width_u64(p - 1);
    const int s = (bits + 1) / 2;
    // Magnitude cap keeps integers exactly representable; the error term is a
    // conservative FFT forward+pointwise+inverse rounding envelope.
    const bool magnitude_ok = L + 2 * s <= 49;
    const double err = std::ldexp(3.0 * L + 5.0, L + 2 * s - 53);
    rt.schoolbook = q <= 64 || !magnitude_ok || err > 0.25;

    if (rt.schoolbook) {
        rt.bseq.reserve(m);
        for (u64 v : b) rt.bseq.emplace_back(v, p);
        return rt;
    }

    rt.limb_bits = s;
    rt.pow_s_mod = f.pow(2, static_cast<u64>(s));
    rt.pow_2s_mod = f.mul(rt.pow_s_mod, rt.pow_s_mod);
    rt.fft = std::make_unique<Fft>(rt.n);
    std::vector<cd> hi(rt.n, cd{0, 0}), lo(rt.n, cd{0, 0});
    const u64 mask = (1ull << s) - 1;
    for (size_t l = 0; l < m; ++l) {
        hi[l] = static_cast<double>(b[l] >> s);
        lo[l] = static_cast<double>(b[l] & mask);
    }
    rt.fft->run(hi, false);
    rt.fft->run(lo, false);
    rt.fb_hi = std::move(hi);
    rt.fb_lo = std::move(lo);
    return rt;
}

u64 round_to_u64(double v) {
    long long r = std::llround(v);
    return r < 0 ? 0ull : static_cast<u64>(r);
}

void rader_apply(const Field& f, const RaderTables& rt, const u64* x, u64* out) {
    const size_t m = static_cast<size_t>(rt.q - 1);
    u64 total = 0;
    for (size_t i = 0; i < rt.q; ++i) total = f.add(total, x[i]);
    const u64 x0 = x[0];

    if (rt.schoolbook) {
        // Direct length-(q-1) cyclic convolution of the reindexed input with
        // the cached root sequence.
        for (size_t k = 0; k < m; ++k) {
            u64 acc = 0;
            for (size_t l = 0; l < m; ++l) {
                u64 xi = x[rt.zpow[(k + m - l) % m]];
                acc = f.add(acc, rt.bseq[l].mul_by(xi));
            }
            out[rt.out_index[k]] = f.add(x0, acc);
        }
        out[0] = total;
        return;
    }

    // Padded input sequence: leading block of all q-1 reindexed values, zero
    // middle, and a trailing block repeating the last q-2 so that negative
    // convolution offsets wrap onto the right samples.
    std::vector<u64> a(rt.n, 0);
    for (size_t t = 0; t < m; ++t) a[t] = x[rt.zpow[t]];
    for (size_t u = 1; u < m; ++u) a[rt.n - u] = x[rt.zpow[m - u]];

    const u64 mask = (1ull << rt.limb_bits) - 1;
    std::vector<cd> ahi(rt.n, cd{0, 0}), alo(rt.n, cd{0, 0});
    for (size_t t = 0; t < rt.n; ++t) {
        ahi[t] = static_cast<double>(a[t] >> rt.limb_bits);
        alo[t] = static_cast<double>(a[t] & mask);
    }
    rt.fft->run(ahi, false);
    rt.fft->run(alo, false);

    std::vector<cd> chh(rt.n), cmid(rt.n), cll(rt.n);
    for (size_t j = 0; j < rt.n; ++j) {
        chh[j] = ahi[j] * rt.fb_hi[j];
        cmid[j] = ahi[j] * rt.fb_lo[j] + alo[j] * rt.fb_hi[j];
        cll[j] = alo[j] * rt.fb_lo[j];
    }
    rt.fft->run(chh, true);
    rt.fft->run(cmid, true);
    rt.fft->run(cll, true);

    const u64 p = f.p();
    for (size_t k = 0; k < m; ++k) {
        u64 hh = round_to_u64(chh[k].real()) % p;
        u64 mid = round_to_u64(cmid[k].real()) % p;
        u64 ll = round_to_u64(cll[k].real()) % p;
        u64 v = f.add(f.mul(hh, rt.pow_2s_mod), f.add(f.mul(mid, rt.pow_s_mod), ll));
        out[rt.out_index[k]] = f.add(x0, v);
    }
    out[0] = total;
}

} // namespace

struct NttPlan::Stage {
    enum class Kind { identity, pow2, direct_leaf, rader_leaf, split };
    Kind kind = Kind::identity;
    u64 order = 1;
    u64 beta = 1;

    // pow2: full transform, iterative butterflies.
    std::vector<ShoupMul> roots; // beta^j, j < order/2
    std::vector<u32> bitrev;

    // direct_leaf (order 2 or 3): dft[i*order+j] = beta^(i*j)
    std::vector<ShoupMul> dft;

    // rader_leaf
    std::unique_ptr<RaderTables> rader;

    // split: order = n1*n2 with n1 the smallest prime factor
    u64 n1 = 0, n2 = 0;
    std::unique_ptr<Stage> sub;    // order n2, root beta^n1
    std::unique_ptr<Stage> tail;   // order n1, root beta^n2
    std::vector<ShoupMul> twiddle; // [i1*n2+j2] = beta^(i1*j2)
};

namespace {

u64 smallest_prime_factor(u64 n) {
    for (u64 q = 2; q * q <= n; q += (q == 2 ? 1 : 2))
        if (n % q == 0) return q;
    return n;
}

} // namespace

std::unique_ptr<NttPlan::Stage> NttPlan::build_stage(const Field& f, u64 beta,
                                                     u64 order) {
    auto st = std::make_unique<Stage>();
    st->order = order;
    st->beta = beta;
    const u64 p = f.p();

    if (order == 1) {
        st->kind = Stage::Kind::identity;
        return st;
    }
    if (is_pow2(order)) {
        st->kind = Stage::Kind::pow2;
        st->roots.reserve(order / 2);
        u64 w = 1;
        for (u64 j = 0; j < order / 2; ++j) {
            st->roots.emplace_back(w, p);
            w = f.mul(w, beta);
        }
        st->bitrev = make_bitrev(order);
        return st;
    }
    const u64 q = smallest_prime_factor(order);
    if (q == order) {
        if (order == 3) {
            st->kind = Stage::Kind::direct_leaf;
            st->dft.reserve(order * order);
            for (u64 i = 0; i < order; ++i)
                for (u64 j = 0; j < order; ++j)
                    st->dft.emplace_back(f.pow(beta, i * j), p);
        } else {
            st->kind = Stage::Kind::rader_leaf;
            st->rader = std::make_unique<RaderTables>(make_rader(f, beta, order));
        }
        return st;
    }
    st->kind = Stage::Kind::split;
    st->n1 = q;
    st->n2 = order / q;
    st->sub = build_stage(f, f.pow(beta, st->n1), st->n2);
    st->tail = build_stage(f, f.pow(beta, st->n2), st->n1);
    st->twiddle.reserve(order);
    for (u64 i1 = 0; i1 < st->n1; ++i1) {
        const u64 base = f.pow(beta, i1);
        u64 w = 1;
        for (u64 j2 = 0; j2 < st->n2; ++j2) {
            st->twiddle.emplace_back(w, p);
            w = f.mul(w, base);
        }
    }
    return st;
}

namespace {

NttStageInfo structure_of(u64 order) {
    NttStageInfo info;
    info.order = order;
    if (order == 1 || is_prime(order)) {
        info.is_leaf = true;
        info.uses_rader = order > 3;
        return info;
    }
    const u64 q = smallest_prime_factor(order);
    info.children.push_back(structure_of(q));
    info.children.push_back(structure_of(order / q));
    return info;
}

} // namespace

void NttPlan::apply(const Stage& st, u64* data) const {
    using Kind = Stage::Kind;
    const Field& f = field_;
    switch (st.kind) {
        case Kind::identity:
            return;
        case Kind::pow2: {
            const size_t n = st.order;
            for (size_t i = 0; i < n; ++i) {
                size_t j = st.bitrev[i];
                if (i < j) std::swap(data[i], data[j]);
            }
            for (size_t len = 2; len <= n; len <<= 1) {
                const size_t half = len >> 1, step = n / len;
                for (size_t base = 0; base < n; base += len) {
                    for (size_t j = 0; j < half; ++j) {
                        const ShoupMul& w = st.roots[j * step];
                        u64 u = data[base + j];
                        u64 t = w.mul_by(data[base + j + half]);
                        data[base + j] = f.add(u, t);
                        data[base + j + half] = f.sub(u, t);
                    }
                }
            }
            return;
        }
        case Kind::direct_leaf: {
            const size_t n = st.order;
            u64 tmp[4];
            for (size_t j = 0; j < n; ++j) {
                u64 acc = 0;
                for (size_t i = 0; i < n; ++i)
                    acc = f.add(acc, st.dft[i * n + j].mul_by(data[i]));
                tmp[j] = acc;
            }
            std::copy(tmp, tmp + n, data);
            return;
        }
        case Kind::rader_leaf: {
            std::vector<u64> out(st.order);
            rader_apply(f, *st.rader, data, out.data());
            std::copy(out.begin(), out.end(), data);
            return;
        }
        case Kind::split: {
            const size_t N1 = st.n1, N2 = st.n2, N = st.order;
            std::vector<u64> y(N);
            std::vector<u64> tmp(std::max(N1, N2));
            for (size_t i1 = 0; i1 < N1; ++i1) {
                for (size_t i2 = 0; i2 < N2; ++i2) tmp[i2] = data[i1 + N1 * i2];
                apply(*st.sub, tmp.data());
                for (size_t j2 = 0; j2 < N2; ++j2)
                    y[i1 * N2 + j2] = st.twiddle[i1 * N2 + j2].mul_by(tmp[j2]);
            }
            for (size_t j2 = 0; j2 < N2; ++j2) {
                for (size_t i1 = 0; i1 < N1; ++i1) tmp[i1] = y[i1 * N2 + j2];
                apply(*st.tail, tmp.data());
                for (size_t j1 = 0; j1 < N1; ++j1) data[N2 * j1 + j2] = tmp[j1];
            }
            return;
        }
    }
}

NttPlan::NttPlan(const Field& field, u64 beta) : field_(field) {
    beta_ = beta % field.p();
    order_ = field.element_order(beta_); // throws on beta == 0
    order_inv_ = field.inv(order_ % field.p());
    forward_ = build_stage(field_, beta_, order_);
    inverse_ = build_stage(field_, field_.inv(beta_), order_);
}

NttPlan::~NttPlan() = default;
NttPlan::NttPlan(NttPlan&&) noexcept = default;
NttPlan& NttPlan::operator=(NttPlan&&) noexcept = default;

NttStageInfo NttPlan::structure() const { return structure_of(order_); }

std::vector<u64> NttPlan::ntt(const std::vector<u64>& x) const {
    if (x.size() != order_)
        throw LengthMismatch("ntt: input length " + std::to_string(x.size()) +
                             " != order " + std::to_string(order_));
    std::vector<u64> out = x;
    apply(*forward_, out.data());
    return out;
}

std::vector<u64> NttPlan::intt(const std::vector<u64>& X) const {
    if (X.size() != order_)
        throw LengthMismatch("intt: input length " + std::to_string(X.size()) +
                             " != order " + std::to_string(order_));
    std::vector<u64> out = X;
    apply(*inverse_, out.data());
    for (u64& v : out) v = field_.mul(v, order_inv_);
    return out;
}

std::shared_ptr<const NttPlan> get_plan(const Field& field, u64 beta) {
    static std::mutex mu;
    static std::map<std::pair<u64, u64>, std::shared_ptr<const NttPlan>> cache;
    const auto key = std::make_pair(field.p(), beta % field.p());
    std::scoped_lock lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto plan = std::make_shared<const NttPlan>(field, key.second);
    cache.emplace(key, plan);
    return plan;
}

std::vector<u64> cyclic_convolve(const Field& field, const std::vector<u64>& a,
                                 const std::vector<u64>& b) {
    if (a.size() != b.size())
        throw LengthMismatch("cyclic_convolve: length " + std::to_string(a.size()) +
                             " vs " + std::to_string(b.size()));
    const size_t n = a.size();
    if (n == 0) return {};
    if (n == 1) return {field.mul(a[0], b[0])};

    if ((field.p() - 1) % n == 0) {
        const u64 beta =
            field.pow(field.primitive_element(), (field.p() - 1) / n);
        auto plan = get_plan(field, beta);
        std::vector<u64> A = plan->ntt(a);
        const std::vector<u64> B = plan->ntt(b);
        for (size_t j = 0; j < n; ++j) A[j] = field.mul(A[j], B[j]);
        return plan->intt(A);
    }
    std::vector<u64> out(n, 0);
    for (size_t j = 0; j < n; ++j) {
        u64 acc = 0;
        for (size_t l = 0; l < n; ++l)
            acc = field.add(acc, field.mul(a[(j + n - l) % n], b[l]));
        out[j] = acc;
    }
    return out;
}

std::vector<u64> rader_prime_ntt(const Field& field, u64 beta,
                                 const std::vector<u64>& x) {
    const u64 q = field.element_order(beta % field.p());
    if (!is_prime(q))
        throw OrderNotPrime("rader_prime_ntt: order " + std::to_string(q) +
                            " is not prime");
    if (x.size() != q)
        throw LengthMismatch("rader_prime_ntt: input length " +
                             std::to_string(x.size()) + " != order " +
                             std::to_string(q));
    RaderTables rt = make_rader(field, beta % field.p(), q);
    std::vector<u64> out(q);
    rader_apply(field, rt, x.data(), out.data());
    return out;
}

} // namespace dqi
