#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dqi/dqi_sim.hpp"
#include "dqi/field.hpp"

namespace dqi {

// Polynomial-intersection instance: for each z in F_p* a target set T_z
// of common size r; the goal is a degree < n polynomial X maximizing
// |{z : X(z) in T_z}|. Sets are stored sorted ascending, indexed by
// sets[z-1]. `canonical` marks the regime n = floor(p/10)+1,
// r = floor(p/2).
struct OpiInstance {
    Field field;
    u64 n;
    u64 gamma;
    std::vector<IndexSet> sets;
    bool canonical;

    u64 r() const { return sets.empty() ? 0 : sets[0].size(); }
};

// Coefficients x_0..x_{n-1}, constant term first; length exactly n.
struct OpiPolynomial {
    std::vector<u64> coeffs;
};

// Validates shapes, set sizes, and gamma's order; sorts the sets.
OpiInstance make_opi_instance(const Field& field, u64 n, u64 gamma, std::vector<IndexSet> sets);

// Count of z in F_p* with X(z) in T_z. f_opi evaluates X at all points
// with one transform of the zero-padded coefficients; f_opi_horner walks
// every point independently and exists as its cross-check.
u64 f_opi(const OpiInstance& inst, const OpiPolynomial& X);
u64 f_opi_horner(const OpiInstance& inst, const OpiPolynomial& X);

// The constraint-system view: m = p-1 rows b_i = (gamma^{i j})_j with
// S_i = T_{gamma^i}; objective-preserving by b_i.x = X(gamma^i). The
// weight cap defaults from the dual distance n+1.
MaxLinsatInstance reduce_to_maxlinsat(const OpiInstance& inst);

struct InstanceProfile {
    bool canonical;
    u64 n;  // custom profile only
    u64 r;
    static InstanceProfile make_canonical() { return {true, 0, 0}; }
    static InstanceProfile custom(u64 n, u64 r) { return {false, n, r}; }
};

// Independent uniform r-subsets for every z, deterministic under seed.
OpiInstance random_instance(u64 p, const InstanceProfile& profile, u64 seed);

// Interpolates through n random satisfiable points and keeps whatever
// else holds by chance; the returned objective is always >= n.
std::pair<OpiPolynomial, u64> truncation_heuristic(const OpiInstance& inst, u64 seed);

// Unique polynomial of degree < points.size() through the given
// (node, value) pairs, via the Lagrange basis.
OpiPolynomial interpolate(const Field& field, const std::vector<std::pair<u64, u64>>& points);

// JSON document {"p", "gamma", "n", "sets"}; sets ordered by z = 1..p-1,
// each sorted ascending. Round-trips bit-exactly.
std::string instance_to_json(const OpiInstance& inst);
OpiInstance instance_from_json(const std::string& text);

}  // namespace dqi
