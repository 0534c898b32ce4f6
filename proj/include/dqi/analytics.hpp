#pragma once

#include <utility>
#include <vector>

#include "dqi/field.hpp"

namespace dqi {

// Symmetric (ell+1) x (ell+1) tridiagonal operator whose quadratic form
// gives the expectation surplus over rho*m: diagonal k*d for k = 0..ell,
// off-diagonal a_j = sqrt(j (m-j+1)) linking rows j-1 and j. (The source
// text also displays sqrt(k(m-k-1)); that variant contradicts the
// expectation formula's cross term, so the consistent one is used.)
struct TridiagSpec {
    u64 m;
    u64 ell;
    double d;
};

TridiagSpec make_tridiag(u64 m, u64 ell, double rho);
double tridiag_offdiag(const TridiagSpec& spec, u64 j);

// Largest eigenvalue plus a unit-norm nonnegative eigenvector
// (Sturm-sequence bisection refined by inverse iteration).
std::pair<double, std::vector<double>> tridiag_extremal(const TridiagSpec& spec);

// Piecewise limit of the satisfied fraction: 1 when rho >= 1 - lambda,
// otherwise (sqrt(lambda(1-rho)) + sqrt(rho(1-lambda)))^2.
double asymptotic_ratio(double lambda, double rho);

// rho*m + sqrt(rho(1-rho)) w^T A w; equals the summation form of the
// expectation identity. w must be unit norm.
double expectation_from_weights(u64 m, u64 ell, double rho, const std::vector<double>& w);

// Finite-size sandwich around the asymptotic ratio for binomial weights.
struct BoundReport {
    double lambda = 0.0;
    double rho = 0.0;
    double asymptotic = 0.0;
    // asymptotic - (6 + 2/sqrt(lambda_star))/m^(1/2-c) - 4 e^(-m^(2c)/2)
    double lower = 0.0;
    // rho + sqrt(rho(1-rho)) (2 sqrt(m) + ell d + 2 sqrt(ell(m-ell)))/m
    double upper_eigen = 0.0;
    // asymptotic + 1/(2 sqrt(m))
    double upper_closed = 0.0;
    double correction_poly = 0.0;  // the m^(1/2-c) term
    double correction_tail = 0.0;  // the 4 e^(-m^(2c)/2) term
    // Largest eigenvalue coincides with the operator norm only here.
    bool d_nonneg = true;
};

BoundReport binomial_lower_bound(u64 m, u64 ell, double rho, double c, double lambda_star);

// Exact Binomial(m, q) tail masses against the Chernoff-style bound
// exp(-m^(2c)/2), with q = ell/m - m^(c-1/2).
struct TailReport {
    double q = 0.0;
    double upper_tail = 0.0;  // Pr(K > ell)
    double lower_tail = 0.0;  // Pr(K < ell - 2 m^(1/2+c))
    double bound = 0.0;
};

TailReport binomial_tail_check(u64 m, u64 ell, double c);

// Mode location kappa = ceil(q(m+1)) - 1, its mass, and the bound
// 3/sqrt(m q (1-q)). Unimodality is verified unconditionally; the mass
// bound needs 7 <= q(m+7) <= m (RegimeViolation otherwise).
struct ModeReport {
    u64 kappa = 0;
    double max_mass = 0.0;
    double bound = 0.0;
};

ModeReport binomial_mode_check(u64 m, double q);

// Gate counts for the two random-access read circuits over M cells.
struct QramGateCounts {
    u64 m_cells = 0;
    u64 linear_fredkin = 0;  // 3M - 2
    u64 linear_ancilla = 0;  // M
    bool has_log = false;    // log variant needs M a power of two >= 4
    u64 log_fredkin = 0;     // M
    u64 log_toffoli = 0;     // 4M - 8
    u64 log_cnot = 0;        // 4
    u64 log_ancilla = 0;     // ceil(log2 M)
};

QramGateCounts qram_gate_counts(u64 m_cells);

}  // namespace dqi
