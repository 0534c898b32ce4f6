#include "dqi/polyseries.hpp"

#include <algorithm>
#include <string>

#include "dqi/ntt.hpp"

namespace dqi {

namespace {

void require_same_field(const FpPoly& a, const FpPoly& b, const char* where) {
    if (a.field().p() != b.field().p())
        throw FieldMismatch(std::string(where) + ": operands over different fields");
}

std::vector<u64> normalized(const Field& f, std::vector<u64> v) {
    for (u64& c : v)
        if (c >= f.p()) c %= f.p();
    while (!v.empty() && v.back() == 0) v.pop_back();
    return v;
}

FpPoly schoolbook_mul(const FpPoly& a, const FpPoly& b) {
    const Field& f = a.field();
    const auto& ac = a.coeffs();
    const auto& bc = b.coeffs();
    std::vector<u64> out(ac.size() + bc.size() - 1, 0);
    for (size_t i = 0; i < ac.size(); ++i) {
        if (ac[i] == 0) continue;
        for (size_t j = 0; j < bc.size(); ++j)
            out[i + j] = f.add(out[i + j], f.mul(ac[i], bc[j]));
    }
    return FpPoly(f, std::move(out));
}

// Smallest divisor of p-1 that is >= need; 0 if none.
u64 smallest_transform_length(u64 p, u64 need) {
    const u64 group = p - 1;
    if (need > group) return 0;
    std::vector<u64> divisors{1};
    for (const auto& [q, e] : factorize(group)) {
        const size_t base = divisors.size();
        u64 qe = 1;
        for (u32 i = 0; i < e; ++i) {
            qe *= q;
            for (size_t d = 0; d < base; ++d) divisors.push_back(divisors[d] * qe);
        }
    }
    u64 best = group;
    for (u64 d : divisors)
        if (d >= need && d < best) best = d;
    return best;
}

std::vector<u64> padded(const std::vector<u64>& v, size_t from, size_t count,
                        size_t n) {
    std::vector<u64> out(n, 0);
    const size_t take = std::min(count, v.size() > from ? v.size() - from : 0);
    std::copy(v.begin() + from, v.begin() + from + take, out.begin());
    return out;
}

// Product via block decomposition: operands split into blocks of h = (p-1)/2
// coefficients, so each pairwise product fits a length-(p-1) convolution
// without wraparound. Block transforms are computed once and recombined per
// anti-diagonal.
FpPoly block_mul(const FpPoly& a, const FpPoly& b) {
    const Field& f = a.field();
    const u64 p = f.p();
    const size_t n = p - 1;
    const size_t h = n / 2;
    const auto& ac = a.coeffs();
    const auto& bc = b.coeffs();
    const size_t na = (ac.size() + h - 1) / h;
    const size_t nb = (bc.size() + h - 1) / h;

    auto plan = get_plan(f, f.primitive_element());
    std::vector<std::vector<u64>> ahat(na), bhat(nb);
    for (size_t i = 0; i < na; ++i) ahat[i] = plan->ntt(padded(ac, i * h, h, n));
    for (size_t j = 0; j < nb; ++j) bhat[j] = plan->ntt(padded(bc, j * h, h, n));

    std::vector<u64> out(ac.size() + bc.size() - 1, 0);
    std::vector<u64> acc(n);
    for (size_t d = 0; d <= na + nb - 2; ++d) {
        std::fill(acc.begin(), acc.end(), 0);
        for (size_t i = 0; i < na; ++i) {
            if (d < i || d - i >= nb) continue;
            const auto& A = ahat[i];
            const auto& B = bhat[d - i];
            for (size_t k = 0; k < n; ++k)
                acc[k] = f.add(acc[k], f.mul(A[k], B[k]));
        }
        const std::vector<u64> c = plan->intt(acc);
        const size_t off = d * h;
        for (size_t k = 0; k + 1 < n && off + k < out.size(); ++k)
            out[off + k] = f.add(out[off + k], c[k]);
    }
    return FpPoly(f, std::move(out));
}

} // namespace

FpPoly::FpPoly(const Field& f, std::vector<u64> ascending)
    : field_(f), coeffs_(normalized(f, std::move(ascending))) {}

FpPoly FpPoly::constant(const Field& f, u64 c) { return FpPoly(f, {c}); }

FpPoly FpPoly::monomial(const Field& f, u64 c, u64 degree) {
    std::vector<u64> v(degree + 1, 0);
    v[degree] = c;
    return FpPoly(f, std::move(v));
}

u64 FpPoly::eval(u64 x) const {
    u64 acc = 0;
    for (size_t i = coeffs_.size(); i-- > 0;)
        acc = field_.add(field_.mul(acc, x), coeffs_[i]);
    return acc;
}

FpPoly FpPoly::shifted_up(u64 m) const {
    if (is_zero() || m == 0) return m == 0 ? *this : FpPoly(field_);
    std::vector<u64> v(coeffs_.size() + m, 0);
    std::copy(coeffs_.begin(), coeffs_.end(), v.begin() + m);
    return FpPoly(field_, std::move(v));
}

FpPoly FpPoly::top_from(i64 m) const {
    if (m <= 0) return *this;
    if (m > degree()) return FpPoly(field_);
    return FpPoly(field_,
                  std::vector<u64>(coeffs_.begin() + m, coeffs_.end()));
}

FpPoly poly_add(const FpPoly& a, const FpPoly& b) {
    require_same_field(a, b, "poly_add");
    const Field& f = a.field();
    std::vector<u64> v(std::max(a.coeffs().size(), b.coeffs().size()), 0);
    for (size_t i = 0; i < v.size(); ++i)
        v[i] = f.add(a.coeff(static_cast<i64>(i)), b.coeff(static_cast<i64>(i)));
    return FpPoly(f, std::move(v));
}

FpPoly poly_sub(const FpPoly& a, const FpPoly& b) {
    require_same_field(a, b, "poly_sub");
    const Field& f = a.field();
    std::vector<u64> v(std::max(a.coeffs().size(), b.coeffs().size()), 0);
    for (size_t i = 0; i < v.size(); ++i)
        v[i] = f.sub(a.coeff(static_cast<i64>(i)), b.coeff(static_cast<i64>(i)));
    return FpPoly(f, std::move(v));
}

FpPoly poly_neg(const FpPoly& a) {
    const Field& f = a.field();
    std::vector<u64> v = a.coeffs();
    for (u64& c : v) c = f.neg(c);
    return FpPoly(f, std::move(v));
}

FpPoly poly_scale(const FpPoly& a, u64 c) {
    const Field& f = a.field();
    std::vector<u64> v = a.coeffs();
    for (u64& x : v) x = f.mul(x, c);
    return FpPoly(f, std::move(v));
}

FpPoly poly_mul(const FpPoly& a, const FpPoly& b) {
    require_same_field(a, b, "poly_mul");
    const Field& f = a.field();
    if (a.is_zero() || b.is_zero()) return FpPoly(f);
    const size_t sa = a.coeffs().size(), sb = b.coeffs().size();
    if (std::min(sa, sb) <= 32 || f.p() < 5) return schoolbook_mul(a, b);

    const u64 need = sa + sb - 1;
    const u64 n = smallest_transform_length(f.p(), need);
    if (n == 0) return block_mul(a, b);

    std::vector<u64> pa = padded(a.coeffs(), 0, sa, n);
    std::vector<u64> pb = padded(b.coeffs(), 0, sb, n);
    std::vector<u64> c = cyclic_convolve(f, pa, pb);
    c.resize(need);
    return FpPoly(f, std::move(c));
}

SeriesWindow SeriesWindow::make(const Field& f, i64 floor,
                                std::vector<u64> ascending) {
    for (u64& c : ascending)
        if (c >= f.p()) c %= f.p();
    while (!ascending.empty() && ascending.back() == 0) ascending.pop_back();
    SeriesWindow w(f);
    if (!ascending.empty()) {
        w.floor_ = floor;
        w.coeffs_ = std::move(ascending);
    }
    return w;
}

namespace {

// Ascending power-series inverse of rev (rev[0] != 0) to `terms` coefficients
// by Newton doubling: g <- g*(2 - rev*g) doubles the matched prefix.
std::vector<u64> series_inverse(const Field& f, const std::vector<u64>& rev,
                                size_t terms) {
    std::vector<u64> g{f.inv(rev[0])};
    while (g.size() < terms) {
        const size_t nk = std::min(2 * g.size(), terms);
        FpPoly fp(f, std::vector<u64>(rev.begin(),
                                      rev.begin() + std::min(nk, rev.size())));
        FpPoly gp(f, g);
        const FpPoly fg = poly_mul(fp, gp);
        std::vector<u64> h(nk, 0);
        for (size_t i = 0; i < nk; ++i) h[i] = f.neg(fg.coeff(static_cast<i64>(i)));
        h[0] = f.add(h[0], 2 % f.p());
        const FpPoly g2 = poly_mul(gp, FpPoly(f, std::move(h)));
        g.resize(nk);
        for (size_t i = 0; i < nk; ++i) g[i] = g2.coeff(static_cast<i64>(i));
    }
    g.resize(terms);
    return g;
}

} // namespace

SeriesWindow poly_reciprocal_window(const FpPoly& a, i64 terms) {
    if (a.is_zero())
        throw ZeroPolynomial("poly_reciprocal_window: zero polynomial");
    if (terms < 1)
        throw ContractError("poly_reciprocal_window: terms must be >= 1");
    const Field& f = a.field();
    const i64 d = a.degree();
    std::vector<u64> rev(a.coeffs().rbegin(), a.coeffs().rend());
    // c[i] is the series coefficient at degree -d-i.
    const std::vector<u64> c = series_inverse(f, rev, static_cast<size_t>(terms));
    std::vector<u64> asc(c.rbegin(), c.rend());
    return SeriesWindow::make(f, -d - terms + 1, std::move(asc));
}

SeriesWindow poly_rounded_div(const FpPoly& a, const FpPoly& b, i64 k) {
    require_same_field(a, b, "poly_rounded_div");
    const Field& f = a.field();
    if (b.is_zero()) throw ZeroDivisor("poly_rounded_div: zero divisor");
    if (a.is_zero()) return SeriesWindow(f);
    const i64 da = a.degree(), db = b.degree();
    const i64 terms = da - db + k + 1;
    if (terms <= 0) return SeriesWindow(f);

    // With w holding the top `terms` reciprocal coefficients, every read
    // coefficient of a*w matches the true series: the discarded reciprocal
    // tail contributes only below degree -k.
    const SeriesWindow w = poly_reciprocal_window(b, terms);
    const FpPoly wpoly(f, w.coeffs()); // reciprocal scaled by x^(db+terms-1)
    const FpPoly prod = poly_mul(a, wpoly);
    std::vector<u64> asc(static_cast<size_t>(terms));
    for (i64 i = 0; i < terms; ++i)
        asc[static_cast<size_t>(i)] = prod.coeff(da + i);
    return SeriesWindow::make(f, -k, std::move(asc));
}

FpPoly poly_from_window(const SeriesWindow& w) {
    const Field& f = w.field();
    if (w.is_zero()) return FpPoly(f);
    if (w.floor() < 0)
        throw ContractError("poly_from_window: window has terms below degree 0");
    std::vector<u64> v(static_cast<size_t>(w.top_degree()) + 1, 0);
    for (i64 d = w.floor(); d <= w.top_degree(); ++d)
        v[static_cast<size_t>(d)] = w.coeff(d);
    return FpPoly(f, std::move(v));
}

namespace {

std::pair<FpPoly, FpPoly> divmod_schoolbook(const FpPoly& a, const FpPoly& b) {
    const Field& f = a.field();
    const i64 da = a.degree(), db = b.degree();
    std::vector<u64> rem = a.coeffs();
    std::vector<u64> q(static_cast<size_t>(da - db) + 1, 0);
    const u64 lead_inv = f.inv(b.leading());
    const auto& bc = b.coeffs();
    for (i64 i = da; i >= db; --i) {
        const u64 c = f.mul(rem[static_cast<size_t>(i)], lead_inv);
        if (c == 0) continue;
        q[static_cast<size_t>(i - db)] = c;
        for (i64 j = 0; j <= db; ++j) {
            auto idx = static_cast<size_t>(i - db + j);
            rem[idx] = f.sub(rem[idx], f.mul(c, bc[static_cast<size_t>(j)]));
        }
    }
    return {FpPoly(f, std::move(q)), FpPoly(f, std::move(rem))};
}

} // namespace

std::pair<FpPoly, FpPoly> poly_divmod(const FpPoly& a, const FpPoly& b) {
    require_same_field(a, b, "poly_divmod");
    const Field& f = a.field();
    if (b.is_zero()) throw ZeroDivisor("poly_divmod: zero divisor");
    const i64 da = a.degree(), db = b.degree();
    if (a.is_zero() || da < db) return {FpPoly(f), a};

    const u64 qsize = static_cast<u64>(da - db) + 1;
    if (qsize * static_cast<u64>(db + 1) <= (1ull << 18))
        return divmod_schoolbook(a, b);

    const FpPoly q = poly_from_window(poly_rounded_div(a, b, 0));
    FpPoly r = poly_sub(a, poly_mul(q, b));
    if (!(r.degree() < db))
        throw ContractError("poly_divmod: fast route postcondition violated");
    return {q, std::move(r)};
}

namespace {

// Remainder-pair state (U, V) = (R_{i-1}, R_i) with the cofactor matrix rows
// (P_{i-1}, L_{i-1}) and (P_i, L_i), so (U, V)^T = M * (R0, R1)^T throughout.
struct EeaState {
    Field f;
    FpPoly U, V;
    FpPoly m00, m01, m10, m11;
    std::vector<FpPoly> quotients;

    EeaState(const Field& field, FpPoly r0, FpPoly r1)
        : f(field),
          U(std::move(r0)),
          V(std::move(r1)),
          m00(FpPoly::constant(field, 1)),
          m01(field),
          m10(field),
          m11(FpPoly::constant(field, 1)) {}

    void explicit_step() {
        auto [q, r] = poly_divmod(U, V);
        U = std::move(V);
        V = std::move(r);
        FpPoly n10 = poly_sub(m00, poly_mul(q, m10));
        FpPoly n11 = poly_sub(m01, poly_mul(q, m11));
        m00 = std::move(m10);
        m01 = std::move(m11);
        m10 = std::move(n10);
        m11 = std::move(n11);
        quotients.push_back(std::move(q));
    }

    // Inverse of the last step; exact because step matrices are unimodular.
    void pop_step() {
        const FpPoly q = std::move(quotients.back());
        quotients.pop_back();
        FpPoly pu = poly_add(poly_mul(q, U), V);
        V = std::move(U);
        U = std::move(pu);
        FpPoly p00 = poly_add(poly_mul(q, m00), m10);
        FpPoly p01 = poly_add(poly_mul(q, m01), m11);
        m10 = std::move(m00);
        m11 = std::move(m01);
        m00 = std::move(p00);
        m01 = std::move(p01);
    }

    void apply_run(const EeaState& run) {
        FpPoly nu = poly_add(poly_mul(run.m00, U), poly_mul(run.m01, V));
        FpPoly nv = poly_add(poly_mul(run.m10, U), poly_mul(run.m11, V));
        U = std::move(nu);
        V = std::move(nv);
        FpPoly n00 = poly_add(poly_mul(run.m00, m00), poly_mul(run.m01, m10));
        FpPoly n01 = poly_add(poly_mul(run.m00, m01), poly_mul(run.m01, m11));
        FpPoly n10 = poly_add(poly_mul(run.m10, m00), poly_mul(run.m11, m10));
        FpPoly n11 = poly_add(poly_mul(run.m10, m01), poly_mul(run.m11, m11));
        m00 = std::move(n00);
        m01 = std::move(n01);
        m10 = std::move(n10);
        m11 = std::move(n11);
        for (const FpPoly& q : run.quotients) quotients.push_back(q);
    }
};

// Applies every Euclid step whose remainder keeps degree >= floor_deg.
// Divide-and-conquer on leading windows: quotients depend only on the top
// 2k+1 coefficients while the cumulative degree drop stays within k, so half
// the budget is spent on a shifted copy and replayed on the full pair.
void fast_reduce(EeaState& st, i64 floor_deg) {
    while (!st.V.is_zero() && st.V.degree() >= floor_deg) {
        const i64 n = st.U.degree();
        const i64 budget = n - floor_deg;
        if (n < 32 || budget < 32) {
            st.explicit_step();
            continue;
        }
        const i64 half = (budget + 1) / 2;
        const i64 cut = std::max<i64>(n - 2 * half, 0);
        EeaState sub(st.f, st.U.top_from(cut), st.V.top_from(cut));
        fast_reduce(sub, sub.U.degree() - half);
        if (sub.quotients.empty()) {
            st.explicit_step();
            continue;
        }
        const size_t applied = sub.quotients.size();
        st.apply_run(sub);
        // Defensive boundary repair: in exact window arithmetic these pops
        // never fire; they bound the damage of any off-by-one in the window.
        size_t pops = 0;
        while (pops < applied &&
               (st.U.degree() < n - half || !(st.V.degree() < st.U.degree()))) {
            st.pop_step();
            ++pops;
        }
        if (pops == applied) st.explicit_step();
    }
}

EeaOutput finish(EeaState&& st) {
    EeaOutput out{std::move(st.m10), std::move(st.m11), st.V.degree(),
                  std::move(st.quotients)};
    return out;
}

void check_eea_contract(const FpPoly& R0, const FpPoly& R1, i64 t,
                        const char* where) {
    if (t < 0) throw DegreeContract(std::string(where) + ": t must be >= 0");
    if (R0.degree() != 2 * t)
        throw DegreeContract(std::string(where) + ": deg R0 must equal 2t");
    if (!(R1.degree() < 2 * t))
        throw DegreeContract(std::string(where) + ": deg R1 must be < 2t");
}

} // namespace

EeaOutput eea_slow(const FpPoly& R0, const FpPoly& R1, i64 t) {
    require_same_field(R0, R1, "eea_slow");
    check_eea_contract(R0, R1, t, "eea_slow");
    EeaState st(R0.field(), R0, R1);
    while (!st.V.is_zero() && st.V.degree() >= t) st.explicit_step();
    return finish(std::move(st));
}

EeaOutput eea_fast(const FpPoly& R0, const FpPoly& R1, i64 t) {
    require_same_field(R0, R1, "eea_fast");
    check_eea_contract(R0, R1, t, "eea_fast");
    if (R0.degree() < 32) return eea_slow(R0, R1, t);
    EeaState st(R0.field(), R0, R1);
    fast_reduce(st, t);
    return finish(std::move(st));
}

} // namespace dqi
