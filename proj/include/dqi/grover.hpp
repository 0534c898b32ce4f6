#pragma once

#include <complex>
#include <vector>

#include "dqi/field.hpp"

namespace dqi {

using Amplitude = std::complex<double>;

// Dense amplitude vector over a single qudit of dimension p.
using QuditVector = std::vector<Amplitude>;

// Subset of F_p given by its members; duplicates are ignored.
using IndexSet = std::vector<u64>;

// Rotation-angle bundle for the exact amplitude-amplification sequence.
// Conventions, with rho = r/p restricted to (0, 1/2] by the mirror rule:
//   theta = arcsin(sqrt(rho))            in (0, pi/4]
//   tau   = floor(pi / (4 theta))        >= 1
//   beta  = pi/2 - 2 tau theta           in [0, 2 theta)
//   phi   = arccos(-tan(beta)/tan(2 theta))  in [pi/2, pi)
//   psi   = arccos(sin(beta)/sin(2 theta))   in (0, pi/2]
struct GroverAngles {
    double rho;
    double theta;
    double beta;
    double phi;
    double psi;
    u64 tau;
};

// Angles for a marked set of size r inside a dimension-p qudit.
// When r/p > 1/2 the angles are computed for the complement set
// (the state builders compensate with a global sign; see
// g_state_exact_grover). Throws DegenerateSet unless 1 <= r <= p-1.
GroverAngles compute_angles(u64 r, u64 p);

// Partial diffusion: fixes the uniform state, phases its orthogonal
// complement by e^{i phi}. Unitary.
QuditVector apply_diffusion(const Field& field, const QuditVector& state, double phi);

// Partial membership oracle: phases amplitudes at members of `set`
// by e^{i psi}, leaves the rest untouched. Diagonal unitary.
QuditVector apply_oracle_rotation(const Field& field, const QuditVector& state,
                                  const IndexSet& set, double psi);

// The two-level constraint state: amplitude sqrt((p-r)/(p r)) on set
// members, -sqrt(r/(p (p-r))) elsewhere. Unit norm, mean zero.
QuditVector g_state_direct(const Field& field, const IndexSet& set);

// Same state prepared by the exact amplitude-amplification sequence
//   e^{i(pi-psi)} Xi^{pi+2 psi} D^{phi} (Xi^{pi} D^{pi})^{tau} |uniform>,
// an exact vector equality, global phase included. Sets with
// r/p > 1/2 run the sequence on the complement and negate the result.
QuditVector g_state_exact_grover(const Field& field, const IndexSet& set);

// One-oracle-call approximation -Xi^{pi}|uniform>, defined only for the
// balanced size r = (p-1)/2; overlap with g_state_direct is exactly
// sqrt(1 - 1/p^2). Throws NotBalanced otherwise.
QuditVector g_state_approx(const Field& field, const IndexSet& set);

// Closed-form distance between the exact and approximate weighted
// product states over p-1 balanced constraints with Bernoulli weight
// q_weight: sqrt(2 - 2 (1 - q (1 - sqrt(1-1/p^2)))^{p-1}).
double approx_pipeline_distance(u64 p, double q_weight);

}  // namespace dqi
