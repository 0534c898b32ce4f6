#pragma once

#include <memory>
#include <vector>

#include "dqi/field.hpp"
#include "dqi/ntt.hpp"
#include "dqi/polyseries.hpp"

namespace dqi {

// Narrow-sense code over F_p determined by the smallest generator gamma:
// syndromes are the first n transform coefficients, error vectors live on the
// nonzero field positions (indices i = 1..p-1 stored at [i-1]).
class RsCode {
public:
    RsCode(const Field& field, u64 n);         // t defaults to floor(n/2)
    RsCode(const Field& field, u64 n, u64 t);

    const Field& field() const { return field_; }
    u64 p() const { return field_.p(); }
    u64 m() const { return field_.p() - 1; } // error-vector length
    u64 n() const { return n_; }
    u64 t() const { return t_; }
    u64 gamma() const { return gamma_; }
    const NttPlan& plan() const { return *plan_; }

private:
    Field field_;
    u64 n_;
    u64 t_;
    u64 gamma_;
    std::shared_ptr<const NttPlan> plan_;
};

// First n entries of the transform of the right-circular shift of y; equals
// the Vandermonde product with rows gamma^(i*j), i = 1..p-1.
std::vector<u64> syndrome_from_error(const RsCode& code,
                                     const std::vector<u64>& y);

struct DecodeOutcome {
    std::vector<u64> error; // length p-1, external indexing
    FpPoly locator;         // cofactor L_j; roots mark the error positions
};

// Syndrome decoding via the remainder-sequence pipeline; accepts a syndrome
// window of length 2t..n and returns the unique error of weight <= t.
// WeightContractViolated when the re-encoding self-check fails (input was not
// the syndrome of any weight <= t error).
DecodeOutcome decode_fast(const RsCode& code, const std::vector<u64>& s);

// Same contract, iterative remainder loop plus quadratic series division and
// a direct quadratic inverse transform. Exists as a cross-validation oracle.
DecodeOutcome decode_naive(const RsCode& code, const std::vector<u64>& s);

} // namespace dqi
