#pragma once

#include <memory>
#include <vector>

#include "dqi/field.hpp"

namespace dqi {

// Decomposition summary of a transform plan, exposed for inspection: leaves
// are prime orders, an internal node's children's orders multiply to its own.
struct NttStageInfo {
    u64 order = 0;
    bool is_leaf = false;
    bool uses_rader = false; // prime leaf > 3 handled via convolution reduction
    std::vector<NttStageInfo> children;
};

// Exact transform X[j] = sum_i beta^(i*j) x[i] over F_p, where the length is
// the multiplicative order of beta. Construction factors the order (smallest
// primes first) and caches all twiddle/permutation tables; a built plan is
// immutable and safe to share across threads.
class NttPlan {
public:
    NttPlan(const Field& field, u64 beta);
    ~NttPlan();
    NttPlan(NttPlan&&) noexcept;
    NttPlan& operator=(NttPlan&&) noexcept;
    NttPlan(const NttPlan&) = delete;
    NttPlan& operator=(const NttPlan&) = delete;

    const Field& field() const { return field_; }
    u64 beta() const { return beta_; }
    u64 order() const { return order_; }
    NttStageInfo structure() const;

    std::vector<u64> ntt(const std::vector<u64>& x) const;  // LengthMismatch
    std::vector<u64> intt(const std::vector<u64>& X) const; // LengthMismatch

private:
    struct Stage;
    static std::unique_ptr<Stage> build_stage(const Field& f, u64 beta,
                                              u64 order);
    void apply(const Stage& st, u64* data) const;

    Field field_;
    u64 beta_;
    u64 order_;
    u64 order_inv_;
    std::unique_ptr<Stage> forward_;
    std::unique_ptr<Stage> inverse_;
};

// Process-wide plan cache keyed by (p, beta).
std::shared_ptr<const NttPlan> get_plan(const Field& field, u64 beta);

// out[j] = sum_l a[(j-l) mod n] * b[l], exact. Uses the transform route when
// n divides p-1, otherwise falls back to the quadratic direct sum.
std::vector<u64> cyclic_convolve(const Field& field, const std::vector<u64>& a,
                                 const std::vector<u64>& b);

// Single prime-order transform via the primitive-root reindexing that turns
// it into a cyclic convolution. beta's order must be prime (OrderNotPrime).
std::vector<u64> rader_prime_ntt(const Field& field, u64 beta,
                                 const std::vector<u64>& x);

} // namespace dqi
