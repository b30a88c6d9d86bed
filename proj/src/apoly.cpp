#include "dtlink/apoly.hpp"

#include <cmath>
#include <random>

#include "dtlink/charvariety.hpp"
#include "dtlink/chebyshev.hpp"
#include "dtlink/rootfinder.hpp"

namespace dtlink {

namespace {

const MPolyZ::Vars kSW{"s", "w"};
const MPolyZ::Vars kML{"M", "L"};

MPolyZ sw(long c, unsigned es, unsigned ew) { return MPolyZ::monomial(c, es, ew, kSW); }

MPolyZ rn_poly() { return sw(1, 2, 1) + sw(1, 0, 0); }          // s^2 w + 1
MPolyZ rd_poly() { return sw(1, 1, 1) + sw(1, 1, 0); }          // s (w + 1)

} // namespace

MPolyZ z_subst_den() { return sw(1, 1, 0) * rn_poly() * rd_poly(); }

MPolyZ z_subst_num() {
    const MPolyZ rn = rn_poly(), rd = rd_poly();
    return sw(2, 1, 0) * (rn * rn + rd * rd) - (sw(1, 2, 0) + sw(1, 0, 0)) * rn * rd;
}

std::pair<MPolyZ, MPolyZ> alpha_beta() {
    MPolyZ alpha(kSW);
    const long at[][3] = {{8, 4, 1},  {4, 4, 1},   {8, 3, -2}, {6, 3, 6},  {4, 3, 6},  {2, 3, -2},
                          {8, 2, 1},  {6, 2, -12}, {4, 2, 34}, {2, 2, -12}, {0, 2, 1},
                          {6, 1, -2}, {4, 1, 6},   {2, 1, 6},  {0, 1, -2}, {4, 0, 1},  {0, 0, 1}};
    for (const auto& t : at)
        alpha += sw(t[2], static_cast<unsigned>(t[0]), static_cast<unsigned>(t[1]));

    MPolyZ inner(kSW);
    const long bt[][3] = {{4, 4, 1}, {4, 3, -1}, {2, 3, -1}, {2, 2, -6},
                          {2, 1, -1}, {0, 1, -1}, {0, 0, 1}};
    for (const auto& t : bt)
        inner += sw(t[2], static_cast<unsigned>(t[0]), static_cast<unsigned>(t[1]));
    const MPolyZ s2m1 = sw(1, 2, 0) - sw(1, 0, 0); // s^2 - 1
    const MPolyZ beta = sw(-2, 0, 0) * s2m1 * s2m1 * inner;
    return {alpha, beta};
}

QSequence q_poly(long long m) {
    if (m < 1) throw error(errc::bad_index, "q_poly: m must be >= 1");
    const auto [alpha, beta] = alpha_beta();
    QSequence seq;
    seq.entries.push_back(MPolyZ::constant(2, kSW)); // Q_{-1}
    seq.entries.push_back(MPolyZ::constant(2, kSW)); // Q_0
    for (long long j = 1; j <= m; ++j) {
        const MPolyZ& q1 = seq.entries[seq.entries.size() - 1];
        const MPolyZ& q2 = seq.entries[seq.entries.size() - 2];
        seq.entries.push_back(alpha * q1 - q2 + beta);
    }
    return seq;
}

MPolyZ p_poly(long long m) {
    const MPolyZ::Vars xz{"x", "z"};
    MPolyZ pm1 = MPolyZ::constant(2, xz); // P_{-1}
    MPolyZ p0 = MPolyZ::constant(2, xz);  // P_0
    if (m <= 0) return p0;
    const MPolyZ z2m2 = MPolyZ::monomial(1, 0, 2, xz) - MPolyZ::constant(2, xz);
    const MPolyZ inhom = MPolyZ::constant(8, xz) - MPolyZ::monomial(1, 0, 2, xz) -
                         MPolyZ::monomial(1, 1, 1, xz); // 8 - z^2 - x z
    for (long long j = 1; j <= m; ++j) {
        MPolyZ next = z2m2 * p0 - pm1 + inhom;
        pm1 = p0;
        p0 = next;
    }
    return p0;
}

MPolyZ branch_polynomial(long long m) {
    if (m < 1) throw error(errc::bad_index, "branch_polynomial: m must be >= 1");
    const MPolyZ N = z_subst_num(), D = z_subst_den();
    const MPolyZ D2 = D * D;
    const MPolyZ rn = rn_poly();
    MPolyZ h0 = MPolyZ::constant(1, kSW);
    MPolyZ h1 = N - sw(1, 1, 0) * rn * rn;
    for (long long j = 1; j < m; ++j) {
        MPolyZ next = N * h1 - D2 * h0;
        h0 = h1;
        h1 = next;
    }
    return h1.strip_monomial().primitive();
}

MPolyZ branch_polynomial_mirror(long long m) {
    if (m < 1) throw error(errc::bad_index, "branch_polynomial_mirror: m must be >= 1");
    const MPolyZ N = z_subst_num(), D = z_subst_den();
    const MPolyZ D2 = D * D;
    const MPolyZ rd = rd_poly();
    MPolyZ h0 = MPolyZ::constant(1, kSW);
    MPolyZ h1 = N - sw(1, 1, 0) * rd * rd;
    for (long long j = 1; j < m; ++j) {
        MPolyZ next = N * h1 - D2 * h0;
        h0 = h1;
        h1 = next;
    }
    return h1.strip_monomial().primitive();
}

namespace {

MPolyZ to_ml_apoly(const MPolyZ& branch_sw, long long m) {
    const MPolyZ img = branch_sw.substitute_monomial(2 * m, kML);
    const MPolyZ lm1 = MPolyZ::monomial(1, 0, 1, kML) - MPolyZ::constant(1, kML);
    return (lm1 * img).strip_monomial().primitive();
}

} // namespace

ApolyTuple a_polynomial(long long m) {
    if (m < 1) throw error(errc::bad_index, "a_polynomial: m must be >= 1");
    ApolyTuple t;
    t.m = m;
    t.a_first = to_ml_apoly(branch_polynomial(m), m);
    t.a_second = t.a_first;
    return t;
}

MPolyZ a_polynomial_from_q(long long m) {
    const QSequence seq = q_poly(m);
    return to_ml_apoly(seq.q(m).strip_monomial().primitive(), m);
}

MPolyZ oracle_eliminate(long long m) {
    if (m < 1) throw error(errc::bad_index, "oracle_eliminate: m must be >= 1");
    const MPolyZ pm = p_poly(m); // in (x, z), degree <= 1 in x
    if (pm.degree1() > 1)
        throw error(errc::bad_argument, "oracle_eliminate: unexpected x-degree in P_m");

    // coefficients of z^k, with x -> (s^2 + 1)/s cleared by one factor s
    const long long dz = pm.degree2();
    ZPoly az(static_cast<std::size_t>(dz + 1), MPolyZ(kSW));
    for (long long k = 0; k <= dz; ++k) {
        const mpz_class a = pm.coeff(0, static_cast<unsigned>(k));
        const mpz_class b = pm.coeff(1, static_cast<unsigned>(k));
        MPolyZ c(kSW);
        if (a != 0) c += MPolyZ::monomial(a, 1, 0, kSW);
        if (b != 0) c += MPolyZ::monomial(b, 2, 0, kSW) + MPolyZ::monomial(b, 0, 0, kSW);
        az[static_cast<std::size_t>(k)] = c;
    }

    const ZPoly bz{-z_subst_num(), z_subst_den()};
    const MPolyZ res = resultant_z(az, bz).strip_monomial().primitive();
    const MPolyZ mirror = branch_mirror_direct(m);
    const MPolyZ quot = res.divexact(mirror);
    return to_ml_apoly(quot.strip_monomial().primitive(), m);
}

namespace {

/* sigma_j = D^j S_j(N/D), expanded directly from the integer
 * coefficients of S_j; used by the elimination oracle only. */
MPolyZ sigma_poly(long long j, const MPolyZ& N, const MPolyZ& D) {
    const UPolyZ sj = cheb_upoly(j);
    MPolyZ acc(kSW);
    if (sj.is_zero()) return acc;
    // Horner in N with D-homogenization
    for (long long k = sj.degree(); k >= 0; --k) {
        acc = acc * N;
        const mpz_class c = sj.coeff(static_cast<std::size_t>(k));
        if (c != 0) acc += MPolyZ::constant(c, kSW) * D.pow(static_cast<unsigned>(sj.degree() - k));
    }
    return acc;
}

} // namespace

MPolyZ branch_mirror_direct(long long m) {
    const MPolyZ N = z_subst_num(), D = z_subst_den();
    const MPolyZ rd = rd_poly();
    const MPolyZ hp = sigma_poly(m, N, D) - sw(1, 1, 0) * rd * rd * sigma_poly(m - 1, N, D);
    return hp.strip_monomial().primitive();
}

VarietyReport verify_on_variety(long long m, int count, unsigned seed, bool mirrored) {
    if (m < 1) throw error(errc::bad_index, "verify_on_variety: m must be >= 1");
    VarietyReport rep;
    rep.m = m;
    rep.requested = count;

    const ApolyTuple tup = a_polynomial(m);
    const MPolyZ a_geo = tup.a_first;
    const MPolyZ a_q = a_polynomial_from_q(m);

    const UPolyZ B = cheb_upoly(m) * cheb_upoly(m - 1); // S_m S_{m-1}

    auto scaled_abs = [](const MPolyZ& p, cplx M, cplx L) {
        double scale = 0.0;
        for (const auto& [e, c] : p.terms()) {
            double t = std::abs(c.get_d());
            for (unsigned i = 0; i < e.e1; ++i) t *= std::abs(M);
            for (unsigned i = 0; i < e.e2; ++i) t *= std::abs(L);
            scale += t;
        }
        return std::abs(p.eval(M, L)) / (scale > 0.0 ? scale : 1.0);
    };

    int sample_index = 0;
    while (rep.samples < count) {
        std::mt19937 rng(seed * 0x9E3779B9u + static_cast<unsigned>(sample_index));
        ++sample_index;
        std::uniform_real_distribution<double> uni(0.0, 1.0);

        const double theta = 0.15 + uni(rng) * (2.0 * M_PI - 0.3);
        const double radius = (sample_index % 2 == 0) ? 1.0 : std::exp(0.35 * (uni(rng) - 0.5));
        const cplx sfree = std::polar(radius, theta);
        const double pmone = (sample_index % 4 < 2) ? 1.0 : -1.0;

        const cplx s1 = mirrored ? cplx(pmone, 0.0) : sfree;
        const cplx s2 = mirrored ? sfree : cplx(pmone, 0.0);
        const cplx free_trace = sfree + 1.0 / sfree;

        // branch equation 2 + (z -+ free_trace) S_m S_{m-1}(z) = 0
        const cplx xt = pmone * free_trace;
        std::vector<cplx> hc(static_cast<std::size_t>(B.degree()) + 2, cplx(0.0));
        for (long long k = 0; k <= B.degree(); ++k) {
            const double bk = B.coeff(static_cast<std::size_t>(k)).get_d();
            hc[static_cast<std::size_t>(k) + 1] += bk;
            hc[static_cast<std::size_t>(k)] -= xt * bk;
        }
        hc[0] += 2.0;
        RootSet roots;
        try {
            roots = all_roots(CPoly(std::move(hc)));
        } catch (const error&) {
            ++rep.solve_failures;
            continue;
        }

        for (const cplx& z : roots.roots) {
            if (rep.samples >= count) break;
            const ChebPair cp = cheb_pair(m, z);
            // w11 with the +-1 eigenvalue folded in: (S_m - (+-1) sfree^-1 S_{m-1})^2
            const cplx root_w = cp.s_j - pmone * cp.s_jm1 / sfree;
            const cplx w11 = root_w * root_w;
            const cplx Mv = sfree;
            cplx Lv = w11;
            for (long long i = 0; i < 2 * m; ++i) Lv /= sfree;

            rep.max_scaled_a = std::max(rep.max_scaled_a, scaled_abs(a_geo, Mv, Lv));
            rep.max_scaled_a_from_q = std::max(rep.max_scaled_a_from_q, scaled_abs(a_q, Mv, Lv));

            // canonical-component constraint t = z
            const cplx x = s1 + 1.0 / s1, y = s2 + 1.0 / s2;
            rep.max_t_minus_z =
                std::max(rep.max_t_minus_z, std::abs(trace_t(x, y, z, m) - z) / (1.0 + std::abs(z)));

            // closed form against the literal word product
            const cplx u = s1 / s2 + s2 / s1 - z;
            if (std::abs(u) > 1e-8) {
                try {
                    const WordMatrices wm = build_matrices(RepPoint(s1, s2, u), {m, m});
                    const cplx entry = mirrored ? wm.ow11 : wm.w11;
                    rep.max_w11_matrix_diff = std::max(
                        rep.max_w11_matrix_diff, std::abs(entry - w11) / (1.0 + std::abs(w11)));
                } catch (const error&) {
                    ++rep.solve_failures;
                }
            }
            ++rep.samples;
        }

        // z - x = 0 branch: w11 = sfree^{2m}, so L = 1 and A vanishes
        if (sample_index % 8 == 1) {
            cplx Lv(1.0, 0.0);
            rep.max_zx_scaled_a = std::max(rep.max_zx_scaled_a, scaled_abs(a_geo, sfree, Lv));
            ++rep.zx_samples;
        }
    }
    return rep;
}

} // namespace dtlink
