#pragma once

#include <limits>
#include <utility>
#include <vector>

#include "dqi/field.hpp"

namespace dqi {

// Degree of the zero polynomial; ordered below every genuine degree. Never do
// arithmetic on it without checking is_zero() first.
inline constexpr i64 kDegNegInf = std::numeric_limits<i64>::min();

// Dense polynomial over F_p, coefficients stored by ascending power with a
// nonzero leading coefficient (the zero polynomial stores nothing).
class FpPoly {
public:
    explicit FpPoly(const Field& f) : field_(f) {}
    FpPoly(const Field& f, std::vector<u64> ascending);

    static FpPoly constant(const Field& f, u64 c);
    static FpPoly monomial(const Field& f, u64 c, u64 degree);

    const Field& field() const { return field_; }
    const std::vector<u64>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    i64 degree() const {
        return coeffs_.empty() ? kDegNegInf
                               : static_cast<i64>(coeffs_.size()) - 1;
    }
    u64 coeff(i64 d) const {
        if (d < 0 || d >= static_cast<i64>(coeffs_.size())) return 0;
        return coeffs_[static_cast<size_t>(d)];
    }
    u64 leading() const { return coeffs_.empty() ? 0 : coeffs_.back(); }

    u64 eval(u64 x) const; // Horner

    FpPoly shifted_up(u64 m) const;  // multiply by x^m
    FpPoly top_from(i64 m) const;    // quotient by x^m: drop coeffs below m

    bool operator==(const FpPoly& o) const {
        return field_.p() == o.field_.p() && coeffs_ == o.coeffs_;
    }
    bool operator!=(const FpPoly& o) const { return !(*this == o); }

private:
    Field field_;
    std::vector<u64> coeffs_;
};

FpPoly poly_add(const FpPoly& a, const FpPoly& b);
FpPoly poly_sub(const FpPoly& a, const FpPoly& b);
FpPoly poly_neg(const FpPoly& a);
FpPoly poly_scale(const FpPoly& a, u64 c);

// Exact product. Transform route when the result fits below the wraparound
// bound, block decomposition otherwise; tiny operands go schoolbook.
FpPoly poly_mul(const FpPoly& a, const FpPoly& b); // FieldMismatch

// Contiguous run of leading terms of a formal Laurent series: coefficients
// for degrees floor()..top_degree(), stored ascending from the floor. The top
// coefficient is nonzero; the all-zero window is canonical (empty, floor 0).
class SeriesWindow {
public:
    explicit SeriesWindow(const Field& f) : field_(f) {}
    static SeriesWindow make(const Field& f, i64 floor,
                             std::vector<u64> ascending);

    const Field& field() const { return field_; }
    bool is_zero() const { return coeffs_.empty(); }
    i64 floor() const { return coeffs_.empty() ? 0 : floor_; }
    i64 top_degree() const {
        return coeffs_.empty()
                   ? kDegNegInf
                   : floor_ + static_cast<i64>(coeffs_.size()) - 1;
    }
    const std::vector<u64>& coeffs() const { return coeffs_; }
    u64 coeff(i64 d) const {
        i64 idx = d - floor_;
        if (coeffs_.empty() || idx < 0 || idx >= static_cast<i64>(coeffs_.size()))
            return 0;
        return coeffs_[static_cast<size_t>(idx)];
    }

    bool operator==(const SeriesWindow& o) const {
        return field_.p() == o.field_.p() && floor() == o.floor() &&
               coeffs_ == o.coeffs_;
    }
    bool operator!=(const SeriesWindow& o) const { return !(*this == o); }

private:
    Field field_;
    i64 floor_ = 0;
    std::vector<u64> coeffs_;
};

// The `terms` most significant coefficients of the series inverse 1/a; the
// window spans degrees -deg(a) down to -deg(a)-terms+1.
SeriesWindow poly_reciprocal_window(const FpPoly& a, i64 terms);

// All series terms of a/b with degree >= -k (possibly none -> zero window).
SeriesWindow poly_rounded_div(const FpPoly& a, const FpPoly& b, i64 k);

// Window with floor >= 0 reinterpreted as a polynomial (ContractError if the
// window has terms below degree 0).
FpPoly poly_from_window(const SeriesWindow& w);

// Euclidean division: a = q*b + r with deg r < deg b. ZeroDivisor on b = 0.
std::pair<FpPoly, FpPoly> poly_divmod(const FpPoly& a, const FpPoly& b);

// Remainder-sequence output: cofactors of the first remainder with degree
// below t, plus the quotient run that produced it.
struct EeaOutput {
    FpPoly Pj;
    FpPoly Lj;
    i64 Rj_degree = kDegNegInf;
    std::vector<FpPoly> quotients;
};

// Iterative remainder sequence on (R0, R1), stopping at the unique j with
// deg R_{j-1} >= t > deg R_j. Requires deg R0 = 2t and deg R1 < 2t.
EeaOutput eea_slow(const FpPoly& R0, const FpPoly& R1, i64 t);

// Same contract and output (identical quotients), divide-and-conquer on
// leading-coefficient windows; falls back to eea_slow below degree 32.
EeaOutput eea_fast(const FpPoly& R0, const FpPoly& R1, i64 t);

} // namespace dqi
