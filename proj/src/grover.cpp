#include "dqi/grover.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dqi/errors.hpp"

namespace dqi {

namespace {

constexpr double kPi = std::numbers::pi;

// Membership mask over F_p; counts distinct members.
std::vector<char> member_mask(const Field& field, const IndexSet& set, u64& count) {
    std::vector<char> mask(field.p(), 0);
    count = 0;
    for (u64 z : set) {
        if (z >= field.p()) throw DomainError("set member outside the field");
        if (!mask[z]) {
            mask[z] = 1;
            ++count;
        }
    }
    return mask;
}

void require_proper(u64 r, u64 p) {
    if (r == 0 || r >= p) throw DegenerateSet("marked set must be a nonempty proper subset");
}

QuditVector uniform_state(u64 p) {
    return QuditVector(p, Amplitude(1.0 / std::sqrt(static_cast<double>(p)), 0.0));
}

QuditVector phase_by_mask(const QuditVector& state, const std::vector<char>& mask, double psi) {
    const Amplitude rot = std::polar(1.0, psi);
    QuditVector out(state);
    for (size_t z = 0; z < out.size(); ++z)
        if (mask[z]) out[z] *= rot;
    return out;
}

// The full sequence for r/p <= 1/2, global phase included.
QuditVector amplify(const Field& field, const std::vector<char>& mask, u64 r) {
    const GroverAngles a = compute_angles(r, field.p());
    QuditVector state = uniform_state(field.p());
    for (u64 t = 0; t < a.tau; ++t) {
        state = apply_diffusion(field, state, kPi);
        state = phase_by_mask(state, mask, kPi);
    }
    state = apply_diffusion(field, state, a.phi);
    state = phase_by_mask(state, mask, kPi + 2.0 * a.psi);
    const Amplitude global = std::polar(1.0, kPi - a.psi);
    for (Amplitude& amp : state) amp *= global;
    return state;
}

}  // namespace

GroverAngles compute_angles(u64 r, u64 p) {
    if (p < 2) throw DomainError("qudit dimension must be at least 2");
    require_proper(r, p);
    const u64 eff = (2 * r > p) ? p - r : r;

    GroverAngles a;
    a.rho = static_cast<double>(eff) / static_cast<double>(p);
    a.theta = std::asin(std::sqrt(a.rho));
    // theta <= pi/4 exactly, so the ratio is >= 1 up to rounding.
    a.tau = std::max<u64>(1, static_cast<u64>(std::floor(kPi / (4.0 * a.theta))));
    a.beta = std::max(0.0, kPi / 2.0 - 2.0 * static_cast<double>(a.tau) * a.theta);
    a.phi = std::acos(-std::tan(a.beta) / std::tan(2.0 * a.theta));
    a.psi = std::acos(std::sin(a.beta) / std::sin(2.0 * a.theta));
    return a;
}

QuditVector apply_diffusion(const Field& field, const QuditVector& state, double phi) {
    const u64 p = field.p();
    if (state.size() != p) throw LengthMismatch("state dimension does not match the field");

    Amplitude mean(0.0, 0.0);
    for (const Amplitude& amp : state) mean += amp;
    mean /= static_cast<double>(p);

    // mean * ones == |u><u| state; the complement picks up e^{i phi}.
    const Amplitude rot = std::polar(1.0, phi);
    QuditVector out(p);
    for (u64 z = 0; z < p; ++z) out[z] = mean + rot * (state[z] - mean);
    return out;
}

QuditVector apply_oracle_rotation(const Field& field, const QuditVector& state,
                                  const IndexSet& set, double psi) {
    if (state.size() != field.p()) throw LengthMismatch("state dimension does not match the field");
    u64 r = 0;
    const std::vector<char> mask = member_mask(field, set, r);
    require_proper(r, field.p());
    return phase_by_mask(state, mask, psi);
}

QuditVector g_state_direct(const Field& field, const IndexSet& set) {
    const u64 p = field.p();
    u64 r = 0;
    const std::vector<char> mask = member_mask(field, set, r);
    require_proper(r, p);

    const double pd = static_cast<double>(p);
    const double rd = static_cast<double>(r);
    const double inside = std::sqrt((pd - rd) / (pd * rd));
    const double outside = -std::sqrt(rd / (pd * (pd - rd)));

    QuditVector out(p);
    for (u64 z = 0; z < p; ++z) out[z] = Amplitude(mask[z] ? inside : outside, 0.0);
    return out;
}

QuditVector g_state_exact_grover(const Field& field, const IndexSet& set) {
    const u64 p = field.p();
    u64 r = 0;
    std::vector<char> mask = member_mask(field, set, r);
    require_proper(r, p);

    if (2 * r <= p) return amplify(field, mask, r);

    // Oversized set: amplify the complement, then flip the global sign
    // (the two-level amplitudes of the set and its complement are exact
    // negatives of each other).
    for (char& bit : mask) bit = !bit;
    QuditVector state = amplify(field, mask, p - r);
    for (Amplitude& amp : state) amp = -amp;
    return state;
}

QuditVector g_state_approx(const Field& field, const IndexSet& set) {
    const u64 p = field.p();
    u64 r = 0;
    const std::vector<char> mask = member_mask(field, set, r);
    require_proper(r, p);
    if (2 * r + 1 != p) throw NotBalanced("approximation requires set size (p-1)/2");

    const double amp = 1.0 / std::sqrt(static_cast<double>(p));
    QuditVector out(p);
    for (u64 z = 0; z < p; ++z) out[z] = Amplitude(mask[z] ? amp : -amp, 0.0);
    return out;
}

double approx_pipeline_distance(u64 p, double q_weight) {
    const double pd = static_cast<double>(p);
    const double s = std::sqrt(1.0 - 1.0 / (pd * pd));
    const double one_minus_s = 1.0 / (pd * pd * (1.0 + s));
    // overlap = (1 - q (1 - s))^{p-1}, evaluated in log space.
    const double log_overlap = (pd - 1.0) * std::log1p(-q_weight * one_minus_s);
    const double dist_sq = -2.0 * std::expm1(log_overlap);
    return std::sqrt(std::max(0.0, dist_sq));
}

}  // namespace dqi
