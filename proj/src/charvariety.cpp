#include "dtlink/charvariety.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace dtlink {

cplx trace_t(cplx x, cplx y, cplx z, long long m) {
    const ChebPair p = cheb_pair(m, z);
    const cplx sq = p.s_j * p.s_j + p.s_jm1 * p.s_jm1;
    const cplx prod = p.s_j * p.s_jm1;
    return (x * y - z) * sq - (x * x + y * y - 4.0) * prod;
}

cplx riley_value(const DTLParams& params, cplx x, cplx y, cplx z) {
    const cplx t = trace_t(x, y, z, params.m);
    const ChebPair pz = cheb_pair(params.m, z);
    const ChebPair pt = cheb_pair(params.n, t);
    return pz.s_j * pt.s_jm1 - pz.s_jm1 * pt.s_j;
}

WordMatrices build_matrices(const RepPoint& p, const DTLParams& params) {
    const long long m = params.m, n = params.n;
    const cplx s1 = p.s1, s2 = p.s2, u = p.u;
    const cplx z = p.z();
    const ChebPair cz = cheb_pair(m, z);
    const cplx sm = cz.s_j, sm1 = cz.s_jm1;

    WordMatrices out;
    out.rho_a = {s1, 1.0, 0.0, 1.0 / s1};
    out.rho_b = {s2, 0.0, u, 1.0 / s2};

    // c = (b^-1 a)^m
    out.rho_c = {sm - (s2 / s1 - u) * sm1, sm1 / s2,
                 -s1 * u * sm1, sm - (s1 / s2) * sm1};

    // d = b c^-1 a c
    out.rho_d = {s1 * s2 * sm * sm - (s1 * s1 + s2 * s2) * sm * sm1 + (s1 * s2 + u) * sm1 * sm1,
                 s2 * sm * sm - (s1 + 1.0 / s1) * sm * sm1 + sm1 * sm1 / s2,
                 u * (s1 * sm * sm - (s2 + 1.0 / s2) * sm * sm1 + sm1 * sm1 / s1),
                 (1.0 / (s1 * s2) + u) * sm * sm - (1.0 / (s1 * s1) + 1.0 / (s2 * s2)) * sm * sm1 +
                     sm1 * sm1 / (s1 * s2)};

    // w = c d^n via the matrix-power identity
    out.rho_w = out.rho_c * sl2_power(out.rho_d, n);
    out.w11 = out.rho_w.a;
    out.w21 = out.rho_w.c;

    // wbar: the word with a and b exchanged
    const Mat2 ainv_b = out.rho_a.adjugate() * out.rho_b;
    const Mat2 cbar = sl2_power(ainv_b, m);
    const Mat2 dbar = out.rho_a * cbar.adjugate() * out.rho_b * cbar;
    out.rho_wbar = cbar * sl2_power(dbar, n);
    out.ow11 = out.rho_wbar.a;
    return out;
}

namespace {

struct RCache {
    std::map<long long, CanonicalCoeffs> entries;
    std::mutex mu;
};

RCache& r_cache() {
    static RCache cache;
    return cache;
}

CanonicalCoeffs expand_canonical(long long m) {
    // R = (q + 2 - z) A - 2 q B - z with A = S_m^2 + S_{m-1}^2, B = S_m S_{m-1}
    const UPolyZ sm = cheb_upoly(m);
    const UPolyZ sm1 = cheb_upoly(m - 1);
    const UPolyZ A = sm * sm + sm1 * sm1;
    const UPolyZ B = sm * sm1;

    const std::size_t deg = static_cast<std::size_t>(std::max<long long>(A.degree() + 1, 1)) + 1;
    CanonicalCoeffs out;
    out.c0.assign(deg + 1, mpz_class(0));
    out.c1.assign(deg + 1, mpz_class(0));
    for (long long k = 0; k <= A.degree(); ++k) {
        const mpz_class a = A.coeff(static_cast<std::size_t>(k));
        out.c0[static_cast<std::size_t>(k)] += 2 * a;     // +2A
        out.c1[static_cast<std::size_t>(k)] += a;         // +qA
        out.c0[static_cast<std::size_t>(k + 1)] -= a;     // -zA
    }
    for (long long k = 0; k <= B.degree(); ++k)
        out.c1[static_cast<std::size_t>(k)] -= 2 * B.coeff(static_cast<std::size_t>(k)); // -2qB
    out.c0[1] -= 1;                                        // -z
    while (out.c0.size() > 1 && out.c0.back() == 0 && out.c1.back() == 0) {
        out.c0.pop_back();
        out.c1.pop_back();
    }
    return out;
}

} // namespace

const CanonicalCoeffs& canonical_coeffs(long long m) {
    if (m == -1 || m == 0)
        throw error(errc::bad_index, "canonical component requires m != -1, 0");
    RCache& cache = r_cache();
    std::lock_guard<std::mutex> lock(cache.mu);
    auto it = cache.entries.find(m);
    if (it == cache.entries.end()) it = cache.entries.emplace(m, expand_canonical(m)).first;
    return it->second;
}

CPoly canonical_poly(long long m, cplx s) {
    if (s == cplx(0.0)) throw error(errc::bad_argument, "canonical_poly: s must be nonzero");
    const CanonicalCoeffs& cc = canonical_coeffs(m);
    const cplx q = s * s + 1.0 / (s * s);
    std::vector<cplx> coeffs(cc.c0.size());
    for (std::size_t k = 0; k < coeffs.size(); ++k)
        coeffs[k] = cplx(cc.c0[k].get_d(), 0.0) + cplx(cc.c1[k].get_d(), 0.0) * q;
    return CPoly(std::move(coeffs));
}

double canonical_residual(long long m, cplx s, cplx z) {
    const CPoly r = canonical_poly(m, s);
    const double scale = r.eval_scale(z);
    return std::abs(r.eval(z)) / (scale > 0.0 ? scale : 1.0);
}

cplx w11_canonical(long long m, cplx s, cplx z, double on_variety_tol) {
    if (canonical_residual(m, s, z) > on_variety_tol)
        throw error(errc::not_on_variety, "w11_canonical: (s, z) is not on R_{L_m} = 0");
    const ChebPair p = cheb_pair(m, z);
    return (p.s_j - p.s_jm1) * (p.s_j - p.s_jm1 / (s * s));
}

cplx smsm1_closed(cplx q, cplx z) { return (2.0 * z - (q + 2.0)) / ((z - 2.0) * (q - z)); }

cplx sqsum_closed(cplx q, cplx z) { return (z * z - 2.0 * q) / ((z - 2.0) * (q - z)); }

} // namespace dtlink
