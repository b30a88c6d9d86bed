#ifndef DTLINK_CHARVARIETY_HPP
#define DTLINK_CHARVARIETY_HPP

#include <complex>

#include "dtlink/chebyshev.hpp"
#include "dtlink/errors.hpp"
#include "dtlink/mat2.hpp"
#include "dtlink/polyring.hpp"

namespace dtlink {

/* Double twist link J(2m+1, 2n+1). The canonical-component formulas
 * (canonical_poly, w11_canonical and the closed forms below) require
 * m = n with m not in {-1, 0}; the representation machinery itself
 * works for any (m, n). */
struct DTLParams {
    long long m = 1;
    long long n = 1;
};

/* Nonabelian representation data: rho(a) = [s1 1; 0 1/s1],
 * rho(b) = [s2 0; u 1/s2]. */
struct RepPoint {
    cplx s1, s2, u;

    RepPoint(cplx s1_, cplx s2_, cplx u_) : s1(s1_), s2(s2_), u(u_) {
        if (s1 == cplx(0.0) || s2 == cplx(0.0) || u == cplx(0.0))
            throw error(errc::degenerate_parameter, "RepPoint: s1, s2, u must be nonzero");
    }

    cplx x() const { return s1 + 1.0 / s1; }             // tr rho(a)
    cplx y() const { return s2 + 1.0 / s2; }             // tr rho(b)
    cplx z() const { return s1 / s2 + s2 / s1 - u; }     // tr rho(a b^-1)
};

struct WordMatrices {
    Mat2 rho_a, rho_b, rho_c, rho_d, rho_w, rho_wbar;
    cplx w11;  // (1,1) entry of rho(w)
    cplx w21;  // (2,1) entry of rho(w); equals u*s1*riley_value on the nose
    cplx ow11; // (1,1) entry of rho(wbar)
};

/* t = tr rho(d) = (xy-z)(S_m^2 + S_{m-1}^2)(z) - (x^2+y^2-4) S_m S_{m-1}(z). */
cplx trace_t(cplx x, cplx y, cplx z, long long m);

/* Riley polynomial value w'_21 = S_m(z) S_{n-1}(t) - S_{m-1}(z) S_n(t). */
cplx riley_value(const DTLParams& params, cplx x, cplx y, cplx z);

/* All matrices from the closed Chebyshev forms. */
WordMatrices build_matrices(const RepPoint& p, const DTLParams& params);

/* R_{L_m}(s, z) as a polynomial in z:
 *   (s^2 + s^-2 + 2 - z)(S_m^2 + S_{m-1}^2) - 2(s^2 + s^-2) S_m S_{m-1} - z.
 * Expanded exactly once per m (coefficients linear in q = s^2 + s^-2)
 * and cached; evaluation substitutes the given s. */
CPoly canonical_poly(long long m, cplx s);

/* Exact expansion data: coefficient of z^k is c0[k] + c1[k]*q. */
struct CanonicalCoeffs {
    std::vector<mpz_class> c0, c1;
};
const CanonicalCoeffs& canonical_coeffs(long long m);

/* Residual |R_{L_m}(s, z)| scaled by the coefficient magnitude at z. */
double canonical_residual(long long m, cplx s, cplx z);

/* Factored w11 on the canonical component:
 * (S_m - S_{m-1})(S_m - s^-2 S_{m-1}) at z. Requires (s, z) on the
 * variety to residual < on_variety_tol, else throws NotOnVariety. */
cplx w11_canonical(long long m, cplx s, cplx z, double on_variety_tol = 1e-6);

/* Closed forms valid on R_{L_m}(s, z) = 0 (q = s^2 + s^-2):
 * S_m S_{m-1} = (2z - (q+2)) / ((z-2)(q-z)),
 * S_m^2 + S_{m-1}^2 = (z^2 - 2q) / ((z-2)(q-z)). */
cplx smsm1_closed(cplx q, cplx z);
cplx sqsum_closed(cplx q, cplx z);

} // namespace dtlink

#endif
