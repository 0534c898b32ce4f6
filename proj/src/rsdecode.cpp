#include "dqi/rsdecode.hpp"

#include <algorithm>
#include <string>

namespace dqi {

namespace {

u64 weight_of(const std::vector<u64>& v) {
    u64 w = 0;
    for (u64 x : v) w += (x != 0);
    return w;
}

std::vector<u64> shift_right(const std::vector<u64>& y) {
    // (y_1, ..., y_{p-1}) -> (y_{p-1}, y_1, ..., y_{p-2})
    std::vector<u64> out(y.size());
    out[0] = y.back();
    std::copy(y.begin(), y.end() - 1, out.begin() + 1);
    return out;
}

std::vector<u64> unshift(const std::vector<u64>& yhat) {
    std::vector<u64> out(yhat.size());
    out.back() = yhat[0];
    std::copy(yhat.begin() + 1, yhat.end(), out.begin());
    return out;
}

void check_syndrome_window(const RsCode& code, const std::vector<u64>& s,
                           const char* where) {
    if (s.size() < 2 * code.t() || s.size() > code.n())
        throw LengthMismatch(std::string(where) + ": syndrome length " +
                             std::to_string(s.size()) + " outside [2t, n] = [" +
                             std::to_string(2 * code.t()) + ", " +
                             std::to_string(code.n()) + "]");
}

// Shared tail of both decoders: rebuild all p-1 series coefficients from the
// cofactor ratio, invert the transform, undo the shift, then re-encode and
// compare against every provided syndrome entry.
DecodeOutcome finish_decode(const RsCode& code, const std::vector<u64>& s,
                            const EeaOutput& eea,
                            const std::vector<u64>& series_coeffs,
                            bool naive_inverse) {
    const Field& f = code.field();
    const u64 m = code.m();
    std::vector<u64> yhat;
    if (naive_inverse) {
        const u64 minv = f.inv(m % f.p());
        const u64 ginv = f.inv(code.gamma());
        yhat.assign(m, 0);
        for (u64 i = 0; i < m; ++i) {
            u64 acc = 0;
            const u64 gi = f.pow(ginv, i);
            u64 w = 1;
            for (u64 j = 0; j < m; ++j) {
                acc = f.add(acc, f.mul(w, series_coeffs[j]));
                w = f.mul(w, gi);
            }
            yhat[i] = f.mul(acc, minv);
        }
    } else {
        yhat = code.plan().intt(series_coeffs);
    }
    DecodeOutcome out{unshift(yhat), eea.Lj};

    if (weight_of(out.error) > code.t())
        throw WeightContractViolated(
            "decode: recovered error has weight above t");
    const std::vector<u64> re = syndrome_from_error(code, out.error);
    for (size_t j = 0; j < s.size(); ++j)
        if (re[j] != s[j] % f.p())
            throw WeightContractViolated(
                "decode: re-encoded syndrome disagrees with input");
    return out;
}

FpPoly syndrome_window_poly(const RsCode& code, const std::vector<u64>& s) {
    // R1 = sum_{k<2t} s_k x^(2t-1-k)
    const u64 t = code.t();
    std::vector<u64> asc(2 * t, 0);
    for (u64 k = 0; k < 2 * t; ++k) asc[2 * t - 1 - k] = s[k];
    return FpPoly(code.field(), std::move(asc));
}

} // namespace

RsCode::RsCode(const Field& field, u64 n) : RsCode(field, n, n / 2) {}

RsCode::RsCode(const Field& field, u64 n, u64 t) : field_(field), n_(n), t_(t) {
    if (field.p() < 3)
        throw ContractError("RsCode: field must have p >= 3");
    if (n < 1 || n > field.p() - 2)
        throw ContractError("RsCode: n must lie in [1, p-2]");
    if (2 * t > n)
        throw ContractError("RsCode: need 2t <= n");
    gamma_ = field.primitive_element();
    plan_ = get_plan(field, gamma_);
}

std::vector<u64> syndrome_from_error(const RsCode& code,
                                     const std::vector<u64>& y) {
    if (y.size() != code.m())
        throw LengthMismatch("syndrome_from_error: error length " +
                             std::to_string(y.size()) + " != p-1 = " +
                             std::to_string(code.m()));
    std::vector<u64> shifted = shift_right(y);
    for (u64& v : shifted)
        if (v >= code.p()) v %= code.p();
    std::vector<u64> full = code.plan().ntt(shifted);
    full.resize(code.n());
    return full;
}

DecodeOutcome decode_fast(const RsCode& code, const std::vector<u64>& s) {
    check_syndrome_window(code, s, "decode_fast");
    const Field& f = code.field();
    const i64 t = static_cast<i64>(code.t());

    if (std::all_of(s.begin(), s.end(), [&](u64 v) { return v % f.p() == 0; }))
        return {std::vector<u64>(code.m(), 0), FpPoly::constant(f, 1)};

    const FpPoly R0 = FpPoly::monomial(f, 1, 2 * code.t());
    const FpPoly R1 = syndrome_window_poly(code, s);
    const EeaOutput eea = eea_fast(R0, R1, t);

    const FpPoly numer = poly_neg(eea.Pj.shifted_up(1)); // -x * P_j
    const SeriesWindow w =
        poly_rounded_div(numer, eea.Lj, static_cast<i64>(code.p()) - 2);
    std::vector<u64> series(code.m());
    for (u64 k = 0; k < code.m(); ++k)
        series[k] = w.coeff(-static_cast<i64>(k));
    return finish_decode(code, s, eea, series, /*naive_inverse=*/false);
}

DecodeOutcome decode_naive(const RsCode& code, const std::vector<u64>& s) {
    check_syndrome_window(code, s, "decode_naive");
    const Field& f = code.field();
    const i64 t = static_cast<i64>(code.t());

    if (std::all_of(s.begin(), s.end(), [&](u64 v) { return v % f.p() == 0; }))
        return {std::vector<u64>(code.m(), 0), FpPoly::constant(f, 1)};

    const FpPoly R0 = FpPoly::monomial(f, 1, 2 * code.t());
    const FpPoly R1 = syndrome_window_poly(code, s);
    const EeaOutput eea = eea_slow(R0, R1, t);

    // Quadratic long division of -x*P_j by L_j, emitting series coefficients
    // from the top degree downward until degree -(p-2).
    const FpPoly numer = poly_neg(eea.Pj.shifted_up(1));
    const FpPoly& den = eea.Lj;
    const i64 top = numer.degree() - den.degree();
    const i64 floor_deg = -(static_cast<i64>(code.p()) - 2);
    std::vector<u64> series(code.m(), 0);
    if (!numer.is_zero()) {
        const u64 lead_inv = f.inv(den.leading());
        // rem holds the running remainder, indexed by degree + offset.
        const i64 offset = -floor_deg + den.degree() + 2;
        std::vector<u64> rem(static_cast<size_t>(numer.degree() + offset + 1), 0);
        for (i64 d = 0; d <= numer.degree(); ++d)
            rem[static_cast<size_t>(d + offset)] = numer.coeff(d);
        for (i64 d = top; d >= floor_deg; --d) {
            const u64 lead = rem[static_cast<size_t>(d + den.degree() + offset)];
            const u64 c = f.mul(lead, lead_inv);
            if (d <= 0) series[static_cast<size_t>(-d)] = c;
            if (c == 0) continue;
            for (i64 j = 0; j <= den.degree(); ++j) {
                auto idx = static_cast<size_t>(d + j + offset);
                rem[idx] = f.sub(rem[idx], f.mul(c, den.coeff(j)));
            }
        }
    }
    return finish_decode(code, s, eea, series, /*naive_inverse=*/true);
}

} // namespace dqi
