#include "dqi/opi.hpp"

#include <algorithm>

#include <json.hpp>

#include "dqi/errors.hpp"
#include "dqi/ntt.hpp"
#include "dqi/rng.hpp"

namespace dqi {

namespace {

bool is_canonical_shape(u64 p, u64 n, u64 r) { return n == p / 10 + 1 && r == p / 2; }

// First r entries of a Fisher-Yates pass over 0..p-1, sorted.
IndexSet random_subset(Rng& rng, u64 p, u64 r) {
    std::vector<u64> pool(p);
    for (u64 z = 0; z < p; ++z) pool[z] = z;
    for (u64 i = 0; i < r; ++i) std::swap(pool[i], pool[i + rng.below(p - i)]);
    IndexSet out(pool.begin(), pool.begin() + r);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

OpiInstance make_opi_instance(const Field& field, u64 n, u64 gamma, std::vector<IndexSet> sets) {
    const u64 p = field.p();
    if (n == 0 || n >= p) throw DomainError("polynomial length must satisfy 1 <= n <= p-1");
    if (gamma == 0 || field.element_order(gamma) != p - 1)
        throw DomainError("gamma must generate the multiplicative group");
    if (sets.size() != p - 1) throw LengthMismatch("need one target set per z in F_p*");

    const u64 r = sets[0].size();
    if (r == 0 || r >= p) throw DegenerateSet("target sets must be nonempty proper subsets");
    for (IndexSet& set : sets) {
        if (set.size() != r) throw DegenerateSet("target sets must share one size");
        std::sort(set.begin(), set.end());
        for (size_t i = 0; i < set.size(); ++i) {
            if (set[i] >= p) throw DomainError("set member outside the field");
            if (i > 0 && set[i] == set[i - 1]) throw DegenerateSet("duplicate member in target set");
        }
    }
    return OpiInstance{field, n, gamma, std::move(sets), is_canonical_shape(p, n, r)};
}

u64 f_opi(const OpiInstance& inst, const OpiPolynomial& X) {
    const Field& f = inst.field;
    const u64 p = f.p();
    if (X.coeffs.size() != inst.n) throw LengthMismatch("coefficient vector length must equal n");

    std::vector<u64> padded(p - 1, 0);
    for (size_t i = 0; i < X.coeffs.size(); ++i) {
        // Degree < n <= p-1, so coefficients never wrap in the padding.
        padded[i] = f.add(padded[i], X.coeffs[i] % p);
    }
    const std::vector<u64> values = get_plan(f, inst.gamma)->ntt(padded);

    u64 count = 0;
    u64 z = 1;
    for (u64 j = 0; j < p - 1; ++j) {
        const IndexSet& set = inst.sets[z - 1];
        count += std::binary_search(set.begin(), set.end(), values[j]) ? 1 : 0;
        z = f.mul(z, inst.gamma);
    }
    return count;
}

u64 f_opi_horner(const OpiInstance& inst, const OpiPolynomial& X) {
    const Field& f = inst.field;
    const u64 p = f.p();
    if (X.coeffs.size() != inst.n) throw LengthMismatch("coefficient vector length must equal n");

    u64 count = 0;
    for (u64 z = 1; z < p; ++z) {
        u64 value = 0;
        for (size_t i = X.coeffs.size(); i-- > 0;) value = f.add(f.mul(value, z), X.coeffs[i] % p);
        const IndexSet& set = inst.sets[z - 1];
        count += std::binary_search(set.begin(), set.end(), value) ? 1 : 0;
    }
    return count;
}

MaxLinsatInstance reduce_to_maxlinsat(const OpiInstance& inst) {
    const Field& f = inst.field;
    const u64 p = f.p();
    const u64 m = p - 1;

    std::vector<std::vector<u64>> rows(m, std::vector<u64>(inst.n));
    std::vector<IndexSet> sets(m);
    u64 gi = 1;  // gamma^i
    for (u64 i = 1; i <= m; ++i) {
        gi = f.mul(gi, inst.gamma);
        u64 entry = 1;  // gamma^{i j}
        for (u64 j = 0; j < inst.n; ++j) {
            rows[i - 1][j] = entry;
            entry = f.mul(entry, gi);
        }
        sets[i - 1] = inst.sets[gi - 1];
    }
    const u64 ell = default_weight_cap(inst.n + 1, m, inst.r(), p);
    return make_instance(f, std::move(rows), std::move(sets), ell, true);
}

OpiInstance random_instance(u64 p, const InstanceProfile& profile, u64 seed) {
    Field field(p);
    u64 n = profile.n;
    u64 r = profile.r;
    if (profile.canonical) {
        n = p / 10 + 1;
        r = p / 2;
    }
    if (n == 0 || n >= p || r == 0 || r >= p) throw InvalidProfile("need 1 <= n <= p-1 and 1 <= r <= p-1");

    Rng rng(derive_seed(seed, "opi.instance"));
    std::vector<IndexSet> sets(p - 1);
    for (u64 z = 1; z < p; ++z) sets[z - 1] = random_subset(rng, p, r);
    return make_opi_instance(field, n, field.primitive_element(), std::move(sets));
}

OpiPolynomial interpolate(const Field& field, const std::vector<std::pair<u64, u64>>& points) {
    const u64 p = field.p();
    const size_t n = points.size();
    if (n == 0) throw LengthMismatch("need at least one interpolation point");
    for (size_t i = 0; i < n; ++i) {
        if (points[i].first >= p || points[i].second >= p)
            throw DomainError("interpolation point outside the field");
        for (size_t j = 0; j < i; ++j)
            if (points[i].first == points[j].first) throw DuplicateNode("repeated interpolation node");
    }

    // master(x) = prod (x - z_i), then per-point synthetic division.
    std::vector<u64> master(n + 1, 0);
    master[0] = 1;
    for (size_t i = 0; i < n; ++i) {
        const u64 neg = field.neg(points[i].first);
        for (size_t d = i + 1; d-- > 0;) {
            master[d + 1] = field.add(master[d + 1], master[d]);
            master[d] = field.mul(master[d], neg);
        }
    }

    std::vector<u64> coeffs(n, 0);
    std::vector<u64> basis(n);
    for (size_t i = 0; i < n; ++i) {
        const u64 z = points[i].first;
        // basis = master / (x - z), top coefficient first while dividing.
        u64 carry = master[n];
        for (size_t d = n; d-- > 0;) {
            basis[d] = carry;
            carry = field.add(master[d], field.mul(carry, z));
        }
        u64 denom = 0;
        for (size_t d = n; d-- > 0;) denom = field.add(field.mul(denom, z), basis[d]);
        const u64 scale = field.mul(points[i].second, field.inv(denom));
        for (size_t d = 0; d < n; ++d) coeffs[d] = field.add(coeffs[d], field.mul(scale, basis[d]));
    }
    return OpiPolynomial{std::move(coeffs)};
}

std::pair<OpiPolynomial, u64> truncation_heuristic(const OpiInstance& inst, u64 seed) {
    const Field& f = inst.field;
    const u64 p = f.p();
    Rng rng(derive_seed(seed, "opi.heuristic"));

    // n distinct nodes from F_p*.
    std::vector<u64> pool(p - 1);
    for (u64 z = 1; z < p; ++z) pool[z - 1] = z;
    for (u64 i = 0; i < inst.n; ++i) std::swap(pool[i], pool[i + rng.below(p - 1 - i)]);

    std::vector<std::pair<u64, u64>> points(inst.n);
    for (u64 i = 0; i < inst.n; ++i) {
        const u64 z = pool[i];
        const IndexSet& set = inst.sets[z - 1];
        points[i] = {z, set[rng.below(set.size())]};
    }
    OpiPolynomial X = interpolate(f, points);
    const u64 value = f_opi(inst, X);
    return {std::move(X), value};
}

std::string instance_to_json(const OpiInstance& inst) {
    nlohmann::json doc;
    doc["p"] = inst.field.p();
    doc["gamma"] = inst.gamma;
    doc["n"] = inst.n;
    doc["sets"] = inst.sets;
    return doc.dump(2) + "\n";
}

OpiInstance instance_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("instance file is not valid JSON: ") + e.what());
    }
    try {
        const u64 p = doc.at("p").get<u64>();
        const u64 gamma = doc.at("gamma").get<u64>();
        const u64 n = doc.at("n").get<u64>();
        auto sets = doc.at("sets").get<std::vector<IndexSet>>();
        return make_opi_instance(Field(p), n, gamma, std::move(sets));
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("instance file has a malformed field: ") + e.what());
    }
}

}  // namespace dqi
