#include "dqi/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dqi/errors.hpp"

namespace dqi {

namespace {

void require_rho(double rho) {
    if (!(rho > 0.0 && rho < 1.0)) throw DomainError("rho must lie in (0,1)");
}

// Eigenvalues of the spec strictly below x, by Sturm sequence count.
u64 eigen_count_below(const TridiagSpec& spec, double x) {
    const double tiny = std::numeric_limits<double>::min();
    u64 count = 0;
    double det = static_cast<double>(0) * spec.d - x;  // delta_0 = 0
    if (det < 0.0) ++count;
    for (u64 j = 1; j <= spec.ell; ++j) {
        if (det == 0.0) det = -tiny;
        const double a = tridiag_offdiag(spec, j);
        det = static_cast<double>(j) * spec.d - x - a * a / det;
        if (det < 0.0) ++count;
    }
    return count;
}

// One tridiagonal solve (A - sigma I) v = rhs with partial pivoting.
std::vector<double> shifted_solve(const TridiagSpec& spec, double sigma, std::vector<double> rhs) {
    const u64 n = spec.ell + 1;
    std::vector<double> dia(n), low(n, 0.0), upp(n, 0.0), upp2(n, 0.0);
    for (u64 j = 0; j < n; ++j) dia[j] = static_cast<double>(j) * spec.d - sigma;
    for (u64 j = 1; j < n; ++j) low[j] = upp[j - 1] = tridiag_offdiag(spec, j);

    const double tiny = 1e-300;
    for (u64 i = 0; i + 1 < n; ++i) {
        if (std::abs(low[i + 1]) > std::abs(dia[i])) {
            std::swap(dia[i], low[i + 1]);
            std::swap(upp[i], dia[i + 1]);
            if (i + 2 < n) std::swap(upp2[i], upp[i + 1]);
            std::swap(rhs[i], rhs[i + 1]);
        }
        if (dia[i] == 0.0) dia[i] = tiny;
        const double factor = low[i + 1] / dia[i];
        dia[i + 1] -= factor * upp[i];
        if (i + 2 < n) upp[i + 1] -= factor * upp2[i];
        rhs[i + 1] -= factor * rhs[i];
    }
    if (dia[n - 1] == 0.0) dia[n - 1] = tiny;

    std::vector<double> v(n);
    for (u64 i = n; i-- > 0;) {
        double acc = rhs[i];
        if (i + 1 < n) acc -= upp[i] * v[i + 1];
        if (i + 2 < n) acc -= upp2[i] * v[i + 2];
        v[i] = acc / dia[i];
    }
    return v;
}

std::vector<long double> binomial_pmf_table(u64 m, double q) {
    const long double lq = logl(static_cast<long double>(q));
    const long double l1q = log1pl(static_cast<long double>(-q));
    const long double lgm = lgammal(static_cast<long double>(m) + 1.0L);
    std::vector<long double> pmf(m + 1);
    for (u64 k = 0; k <= m; ++k) {
        const long double kd = static_cast<long double>(k);
        pmf[k] = expl(lgm - lgammal(kd + 1.0L) - lgammal(static_cast<long double>(m) - kd + 1.0L) +
                      kd * lq + (static_cast<long double>(m) - kd) * l1q);
    }
    return pmf;
}

}  // namespace

TridiagSpec make_tridiag(u64 m, u64 ell, double rho) {
    require_rho(rho);
    if (ell > m) throw DomainError("ell must not exceed m");
    return TridiagSpec{m, ell, (1.0 - 2.0 * rho) / std::sqrt(rho * (1.0 - rho))};
}

double tridiag_offdiag(const TridiagSpec& spec, u64 j) {
    if (j == 0 || j > spec.ell) throw DomainError("off-diagonal index out of range");
    const double jd = static_cast<double>(j);
    return std::sqrt(jd * (static_cast<double>(spec.m) - jd + 1.0));
}

std::pair<double, std::vector<double>> tridiag_extremal(const TridiagSpec& spec) {
    const u64 n = spec.ell + 1;
    if (n == 1) return {0.0, {1.0}};

    // Gershgorin bracket.
    double lo = 0.0, hi = 0.0;
    for (u64 k = 0; k < n; ++k) {
        const double radius = (k > 0 ? tridiag_offdiag(spec, k) : 0.0) +
                              (k + 1 < n ? tridiag_offdiag(spec, k + 1) : 0.0);
        lo = std::min(lo, static_cast<double>(k) * spec.d - radius);
        hi = std::max(hi, static_cast<double>(k) * spec.d + radius);
    }
    const double scale = std::max({1.0, std::abs(lo), std::abs(hi)});
    while (hi - lo > 1e-13 * scale) {
        const double mid = 0.5 * (lo + hi);
        if (eigen_count_below(spec, mid) >= n)
            hi = mid;  // all eigenvalues below mid
        else
            lo = mid;
    }
    double lambda = 0.5 * (lo + hi);

    // Inverse iteration at the converged shift, then one Rayleigh update.
    std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
    for (int pass = 0; pass < 3; ++pass) {
        v = shifted_solve(spec, lambda, std::move(v));
        double norm = 0.0;
        for (double x : v) norm += x * x;
        norm = std::sqrt(norm);
        for (double& x : v) x /= norm;
    }
    double sum = 0.0;
    for (double x : v) sum += x;
    if (sum < 0.0)
        for (double& x : v) x = -x;
    // Perron vector is positive; shear off inverse-iteration dust.
    for (double& x : v) x = std::max(x, 0.0);
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    for (double& x : v) x /= norm;

    double rayleigh = 0.0;
    for (u64 k = 0; k < n; ++k) {
        double row = static_cast<double>(k) * spec.d * v[k];
        if (k > 0) row += tridiag_offdiag(spec, k) * v[k - 1];
        if (k + 1 < n) row += tridiag_offdiag(spec, k + 1) * v[k + 1];
        rayleigh += v[k] * row;
    }
    return {rayleigh, std::move(v)};
}

double asymptotic_ratio(double lambda, double rho) {
    if (!(lambda > 0.0 && lambda <= 0.5)) throw DomainError("lambda must lie in (0, 1/2]");
    require_rho(rho);
    if (rho >= 1.0 - lambda) return 1.0;
    const double s = std::sqrt(lambda * (1.0 - rho)) + std::sqrt(rho * (1.0 - lambda));
    return s * s;
}

double expectation_from_weights(u64 m, u64 ell, double rho, const std::vector<double>& w) {
    if (w.size() != ell + 1) throw LengthMismatch("need ell+1 weight entries");
    double norm_sq = 0.0;
    for (double x : w) norm_sq += x * x;
    if (std::abs(norm_sq - 1.0) > 1e-8) throw NormViolation("weights must be unit norm");

    const TridiagSpec spec = make_tridiag(m, ell, rho);
    double quad = 0.0;
    for (u64 k = 0; k <= ell; ++k) quad += static_cast<double>(k) * spec.d * w[k] * w[k];
    for (u64 j = 1; j <= ell; ++j) quad += 2.0 * tridiag_offdiag(spec, j) * w[j - 1] * w[j];
    return rho * static_cast<double>(m) + std::sqrt(rho * (1.0 - rho)) * quad;
}

BoundReport binomial_lower_bound(u64 m, u64 ell, double rho, double c, double lambda_star) {
    require_rho(rho);
    if (!(c > 0.0 && c < 0.5)) throw DomainError("need 0 < c < 1/2");
    if (!(lambda_star > 0.0)) throw DomainError("lambda_star must be positive");
    const double md = static_cast<double>(m);
    const double eld = static_cast<double>(ell);
    if (m < 64 || 4.0 * std::pow(md, 0.5 + c) > eld || 2 * ell > m)
        throw RegimeViolation("need 4 m^(1/2+c) <= ell <= m/2 (so m >= 64)");
    if (eld < lambda_star * md) throw RegimeViolation("need ell >= lambda_star * m");

    BoundReport report;
    report.lambda = eld / md;
    report.rho = rho;
    report.asymptotic = asymptotic_ratio(report.lambda, rho);
    report.correction_poly = (6.0 + 2.0 / std::sqrt(lambda_star)) / std::pow(md, 0.5 - c);
    report.correction_tail = 4.0 * std::exp(-std::pow(md, 2.0 * c) / 2.0);
    report.lower = report.asymptotic - report.correction_poly - report.correction_tail;

    const TridiagSpec spec = make_tridiag(m, ell, rho);
    const double eigen_bound =
        2.0 * std::sqrt(md) + eld * spec.d + 2.0 * std::sqrt(eld * (md - eld));
    report.upper_eigen = rho + std::sqrt(rho * (1.0 - rho)) * eigen_bound / md;
    report.upper_closed = report.asymptotic + 0.5 / std::sqrt(md);
    report.d_nonneg = spec.d >= 0.0;
    return report;
}

TailReport binomial_tail_check(u64 m, u64 ell, double c) {
    if (m == 0 || ell > m) throw DomainError("need 0 <= ell <= m, m >= 1");
    if (!(c > 0.0 && c < 0.5)) throw DomainError("need 0 < c < 1/2");
    const double md = static_cast<double>(m);
    const double delta = std::pow(md, 0.5 + c);
    if (4.0 * delta > static_cast<double>(ell)) throw RegimeViolation("need ell >= 4 m^(1/2+c)");

    TailReport report;
    report.q = static_cast<double>(ell) / md - std::pow(md, c - 0.5);
    report.bound = std::exp(-std::pow(md, 2.0 * c) / 2.0);

    const auto pmf = binomial_pmf_table(m, report.q);
    // Sum each tail from its far end so small terms accumulate first.
    long double upper = 0.0L;
    for (u64 k = m; k > ell; --k) upper += pmf[k];
    report.upper_tail = static_cast<double>(upper);

    const double cut = static_cast<double>(ell) - 2.0 * delta;  // mass strictly below
    long double lower = 0.0L;
    if (cut > 0.0) {
        const u64 last = static_cast<u64>(std::ceil(cut)) - 1;
        for (u64 k = 0; k <= last; ++k) lower += pmf[k];
    }
    report.lower_tail = static_cast<double>(lower);

    if (!(report.upper_tail <= report.bound && report.lower_tail <= report.bound))
        throw ContractError("binomial tail exceeds its bound");
    return report;
}

ModeReport binomial_mode_check(u64 m, double q) {
    if (m == 0) throw DomainError("need m >= 1");
    if (!(q > 0.0 && q < 1.0)) throw DomainError("q must lie in (0,1)");

    const auto pmf = binomial_pmf_table(m, q);
    ModeReport report;
    // pivot > 0, so ceil(pivot) >= 1 and the subtraction cannot wrap.
    const long double pivot = static_cast<long double>(q) * (static_cast<long double>(m) + 1.0L);
    report.kappa = std::min<u64>(static_cast<u64>(ceill(pivot)) - 1, m);

    // Non-strict unimodality around kappa; ties carry tiny rounding dust.
    for (u64 k = 0; k < m; ++k) {
        const long double slack = 1e-12L * (pmf[k] + pmf[k + 1]);
        const bool ok = k < report.kappa ? pmf[k] <= pmf[k + 1] + slack : pmf[k] + slack >= pmf[k + 1];
        if (!ok) throw ContractError("binomial pmf is not unimodal around kappa");
    }
    report.max_mass = static_cast<double>(pmf[report.kappa]);

    const double qm7 = q * (static_cast<double>(m) + 7.0);
    if (!(qm7 >= 7.0 && qm7 <= static_cast<double>(m)))
        throw RegimeViolation("mass bound needs 7 <= q(m+7) <= m");
    report.bound = 3.0 / std::sqrt(static_cast<double>(m) * q * (1.0 - q));
    if (!(report.max_mass <= report.bound)) throw ContractError("mode mass exceeds its bound");
    return report;
}

QramGateCounts qram_gate_counts(u64 m_cells) {
    if (m_cells < 2) throw DomainError("need at least two memory cells");

    QramGateCounts counts;
    counts.m_cells = m_cells;
    counts.linear_fredkin = 3 * m_cells - 2;
    counts.linear_ancilla = m_cells;
    counts.has_log = m_cells >= 4 && (m_cells & (m_cells - 1)) == 0;
    if (counts.has_log) {
        counts.log_fredkin = m_cells;
        counts.log_toffoli = 4 * m_cells - 8;
        counts.log_cnot = 4;
        u64 bits = 0;
        for (u64 v = 1; v < m_cells; v <<= 1) ++bits;
        counts.log_ancilla = bits;
    }
    return counts;
}

}  // namespace dqi
