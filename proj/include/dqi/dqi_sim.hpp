#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "dqi/field.hpp"
#include "dqi/grover.hpp"

namespace dqi {

namespace tol {
// Centralized comparison tolerances, loosest to tightest.
inline constexpr double kExpectation = 1e-8;
inline constexpr double kUnitary = 1e-10;
inline constexpr double kAlgebraic = 1e-12;
}  // namespace tol

// Enumeration ceiling for the sparse error superposition.
inline constexpr u64 kDefaultErrorBudget = 10'000'000;
// Amplitude-array ceiling for dense p^n states.
inline constexpr u64 kDefaultAmpBudget = u64(1) << 24;

// Truncated binomial weight profile.
//   q       = ell/m - m^(c - 1/2)
//   w_prime = sqrt of the Binomial(m, q) pmf, length m+1
//   epsilon = pmf mass above ell
//   w       = renormalized head, length ell+1
// regime_ok records 4 m^(1/2+c) <= ell <= m/2; violations only warn.
struct WeightSpec {
    u64 m = 0;
    u64 ell = 0;
    double c = 0.0;
    double q = 0.0;
    std::vector<double> w_prime;
    double epsilon = 0.0;
    std::vector<double> w;
    bool regime_ok = false;
};

WeightSpec make_weights(u64 m, u64 ell, double c);

// Binomial profile with an explicitly chosen q in (0,1). The expectation
// identity is weight-agnostic, and at desk scale ell/m - m^(c-1/2) often
// falls below 0, so small demos pick q directly. Leaves c at 0.
WeightSpec make_weights_q(u64 m, u64 ell, double q);

// Arbitrary nonzero weight vector, renormalized; q and c are left at 0
// and epsilon at 0 (nothing was trimmed away).
WeightSpec weights_from_vector(u64 m, std::vector<double> w);

// Constraint system: find x maximizing |{i : rows[i].x mod p in sets[i]}|.
// All sets share size r. When `vandermonde` is set the rows are known to
// be gamma^{i j} (i = 1..m, j = 0..n-1), so ker(B^T) has minimum distance
// n+1 and the weight cap ell must stay below half of it.
struct MaxLinsatInstance {
    Field field;
    u64 m = 0;
    u64 n = 0;
    std::vector<std::vector<u64>> rows;
    std::vector<IndexSet> sets;
    u64 r = 0;
    u64 ell = 0;
    bool vandermonde = false;
};

MaxLinsatInstance make_instance(const Field& field, std::vector<std::vector<u64>> rows,
                                std::vector<IndexSet> sets, u64 ell, bool vandermonde);

// Default weight cap min{floor(d_perp/2) - 1, floor(m (1 - r/p))}.
u64 default_weight_cap(u64 d_perp, u64 m, u64 r, u64 p);

// Superposition over error vectors of weight <= ell.
struct WeightedError {
    std::vector<u64> y;
    Amplitude amp;
};
struct SparseErrorState {
    u64 m = 0;
    std::vector<WeightedError> entries;
    // Probability that the trimming post-selection succeeds (1 - epsilon).
    double success_probability = 1.0;
};

// Dense state over n qudits of dimension p; row-major, qudit 0 outermost.
struct DenseQuditState {
    u64 p = 0;
    u64 n = 0;
    std::vector<Amplitude> amps;
};

u64 pack_index(u64 p, const std::vector<u64>& x);
std::vector<u64> unpack_index(u64 p, u64 n, u64 index);

// Product over the nonzero coordinates y_i of the Fourier coefficient
// ghat_i(y_i) of the i-th constraint state; empty product is 1.
Amplitude beta_coefficient(const MaxLinsatInstance& inst, const std::vector<u64>& y);

// Enumerates every error vector of weight <= ell with amplitude
// w_k / sqrt(C(m,k)) * beta_y. Throws BudgetExceeded when the entry
// count would pass `budget_errors`.
SparseErrorState build_phi3(const MaxLinsatInstance& inst, const WeightSpec& weights,
                            u64 budget_errors = kDefaultErrorBudget);

// Scatters amplitudes to index B^T y in F_p^n. Distinct inputs must land
// on distinct cells (guaranteed by the weight cap for Vandermonde rows);
// a collision throws SyndromeCollision.
DenseQuditState syndrome_map(const MaxLinsatInstance& inst, const SparseErrorState& state,
                             u64 budget_amps = kDefaultAmpBudget);

// Unitary DFT of size p applied along each qudit axis.
// Forward kernel omega^{ab}/sqrt(p), inverse omega^{-ab}/sqrt(p).
DenseQuditState forward_qft_per_qudit(const DenseQuditState& state);
DenseQuditState inverse_qft_per_qudit(const DenseQuditState& state);

// Number of satisfied constraints at assignment x.
u64 objective(const MaxLinsatInstance& inst, const std::vector<u64>& x);

// <state| sum_x f(x)|x><x| |state> by full enumeration of F_p^n.
double expected_objective_statevector(const MaxLinsatInstance& inst, const DenseQuditState& state,
                                      u64 budget_amps = kDefaultAmpBudget);

// Closed form for the same expectation on the pipeline's final state:
//   m r/p + (p-2r)/p sum_k w_k^2 k
//        + 2 sqrt(r(p-r))/p sum_k w_k w_{k+1} sqrt((k+1)(m-k)).
double expected_objective_formula(const MaxLinsatInstance& inst, const WeightSpec& weights);

struct SampledSolution {
    std::vector<u64> x;
    u64 objective;
};

// i.i.d. standard-basis measurements; deterministic for a fixed seed.
std::vector<SampledSolution> sample_solutions(const MaxLinsatInstance& inst,
                                              const DenseQuditState& state, u64 shots, u64 seed);

}  // namespace dqi
