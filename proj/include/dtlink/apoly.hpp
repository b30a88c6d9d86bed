#ifndef DTLINK_APOLY_HPP
#define DTLINK_APOLY_HPP

#include <utility>
#include <vector>

#include "dtlink/polyring.hpp"

namespace dtlink {

/* A-polynomial machinery for the canonical component of L_m = J(2m+1, 2m+1).
 *
 * Peripheral coordinates: M = s1 and L = w11 * M^{-2m} (longitude wa^{-2m}),
 * so the (s, w) -> (M, L) substitution is s -> M, w -> L M^{2m}.
 *
 * Two independent constructions of the defining polynomial of the
 * peripheral image are provided and cross-checked:
 *  - branch_polynomial: the weighted three-term recurrence
 *      h_{j+1} = N h_j - D^2 h_{j-1},  h_0 = 1, h_1 = N - s rn^2,
 *    where z = N/D is the rational parameterization of the trace field
 *    by (s, w) and rn = s^2 w + 1; h_m generates the branch relation.
 *  - oracle_eliminate: Sylvester-resultant elimination of z from
 *    {P_m(x, z), D z - N} followed by exact removal of the reflection
 *    component (the r -> 1/r mirror), an independent route to the same
 *    polynomial.
 */

struct ApolyTuple {
    long long m = 0;
    MPolyZ a_first;  // in (M, L), primitive, sign-normalized
    MPolyZ a_second; // identical by the tuple symmetry
};

struct QSequence {
    std::vector<MPolyZ> entries; // Q_{-1}, Q_0, ..., Q_m in (s, w)
    const MPolyZ& q(long long j) const { return entries.at(static_cast<std::size_t>(j + 1)); }
};

/* The recurrence coefficients alpha, beta in (s, w). */
std::pair<MPolyZ, MPolyZ> alpha_beta();

/* Q_{-1} = Q_0 = 2, Q_j = alpha Q_{j-1} - Q_{j-2} + beta. */
QSequence q_poly(long long m);

/* P_m(x, z) = 2 + (z - x) S_m(z) S_{m-1}(z) in variables (x, z), by the
 * recurrence P_j = (z^2 - 2) P_{j-1} - P_{j-2} + 8 - z(z + x). */
MPolyZ p_poly(long long m);

/* Defining polynomial of the canonical branch in (s, w), primitive. */
MPolyZ branch_polynomial(long long m);

/* The r -> 1/r reflection component in (s, w), primitive. */
MPolyZ branch_polynomial_mirror(long long m);

/* Same reflection component via direct power expansion of S_m at z = N/D;
 * this is the route the elimination oracle divides by. */
MPolyZ branch_mirror_direct(long long m);

/* A(M, L) = (L - 1) * branch image, primitive; duplicated in the tuple. */
ApolyTuple a_polynomial(long long m);

/* (L - 1) Q_m(M, L M^{2m}) normalized, assembled from the q_poly
 * sequence. Kept for comparison only: the fixed-weight transformation
 * behind that recurrence is inconsistent beyond the first step, and the
 * result does not vanish on the peripheral image (see verify_on_variety,
 * which reports its residual next to the geometric one). */
MPolyZ a_polynomial_from_q(long long m);

/* Resultant-based elimination oracle; returns the branch relation in
 * (M, L), primitive, after removing the reflection component. */
MPolyZ oracle_eliminate(long long m);

/* Rational substitution data: z = N/D with D = s^2 (w+1)(s^2 w + 1). */
MPolyZ z_subst_num();
MPolyZ z_subst_den();

struct VarietyReport {
    long long m = 0;
    int requested = 0;
    int samples = 0;        // branch samples actually evaluated
    int solve_failures = 0;
    double max_scaled_a = 0.0;          // geometric A residual, scaled
    double max_scaled_a_from_q = 0.0;   // q-sequence A residual, scaled
    double max_t_minus_z = 0.0;         // canonical-component constraint
    double max_w11_matrix_diff = 0.0;   // closed form vs. word-product entry
    int zx_samples = 0;                 // z = x branch points (L = 1)
    double max_zx_scaled_a = 0.0;
};

/* Numeric sampling oracle: random s1 on and off the unit circle with
 * s2 = +-1 (mirrored: roles of a and b exchanged), z solved from the
 * branch equation, A evaluated at (M, L). */
VarietyReport verify_on_variety(long long m, int count, unsigned seed = 0, bool mirrored = false);

} // namespace dtlink

#endif
