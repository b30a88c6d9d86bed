#include "dtlink/volume.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <thread>

#include "dtlink/quadrature.hpp"
#include "dtlink/rootfinder.hpp"

namespace dtlink {

namespace {

constexpr double kSeedOffset = 1e-4;   // seeding angle is pi - kSeedOffset
constexpr double kRealClamp = 1e-10;   // |Im z| below this counts as real
constexpr double kGridStep = M_PI / 2000;
constexpr double kGridMinStep = 1e-7;
constexpr double kMoveBound = 0.05;    // per-step root movement bound

CPoly family_poly(long long m, double omega) {
    const cplx s = std::polar(1.0, omega / 2.0);
    return canonical_poly(m, s);
}

struct Sweep {
    std::vector<double> omegas;            // descending from pi - eps to alpha
    std::vector<std::vector<cplx>> rows;   // rows[i][b] = root of branch b at omegas[i]
    std::size_t branch_count = 0;
};

/* Simultaneous continuation of all roots: solve the full root set on a
 * refinement-adaptive grid and match by proximity, branch order fixed
 * by the sorted seed set. */
Sweep sweep_branches(long long m, double alpha) {
    Sweep sw;
    const double hi = M_PI - kSeedOffset;
    RootSet seeds = all_roots(family_poly(m, hi));
    sw.branch_count = seeds.roots.size();
    sw.omegas.push_back(hi);
    sw.rows.push_back(seeds.roots);

    double om = hi;
    double h = kGridStep;
    while (om - alpha > 1e-15) {
        const double om_next = std::max(alpha, om - h);
        RootSet rs = all_roots(family_poly(m, om_next));
        const std::vector<cplx>& prev = sw.rows.back();
        std::vector<cplx> row(sw.branch_count);
        std::vector<bool> used(sw.branch_count, false);
        double worst_move = 0.0;
        for (std::size_t b = 0; b < sw.branch_count; ++b) {
            double best = 0.0;
            std::size_t bi = sw.branch_count;
            for (std::size_t i = 0; i < rs.roots.size(); ++i) {
                if (used[i]) continue;
                const double d = std::abs(rs.roots[i] - prev[b]);
                if (bi == sw.branch_count || d < best) {
                    best = d;
                    bi = i;
                }
            }
            used[bi] = true;
            row[b] = rs.roots[bi];
            worst_move = std::max(worst_move, best);
        }
        if (worst_move > kMoveBound && h > kGridMinStep) {
            h = std::max(h / 2.0, kGridMinStep);
            continue;
        }
        sw.omegas.push_back(om_next);
        sw.rows.push_back(std::move(row));
        om = om_next;
        if (worst_move < kMoveBound / 4.0) h = std::min(h * 1.5, kGridStep);
    }
    return sw;
}

/* Root of branch b at arbitrary omega: interpolate between bracketing
 * grid rows and polish with Newton on the exact polynomial. */
cplx branch_root_at(const Sweep& sw, long long m, std::size_t b, bool mirrored, double omega) {
    const auto& oms = sw.omegas;
    // oms descending; find bracket
    std::size_t lo = 0, hi = oms.size() - 1;
    if (omega >= oms.front()) {
        lo = hi = 0;
    } else if (omega <= oms.back()) {
        lo = hi = oms.size() - 1;
    } else {
        while (hi - lo > 1) {
            const std::size_t mid = (lo + hi) / 2;
            if (oms[mid] >= omega)
                lo = mid;
            else
                hi = mid;
        }
    }
    cplx init;
    if (lo == hi) {
        init = sw.rows[lo][b];
    } else {
        const double t = (oms[lo] - omega) / (oms[lo] - oms[hi]);
        init = sw.rows[lo][b] + (sw.rows[hi][b] - sw.rows[lo][b]) * t;
    }
    if (mirrored) init = std::conj(init);
    const CPoly p = family_poly(m, omega);
    return newton_polish(p, init);
}

bool path_leaves_real_axis(const std::vector<std::vector<cplx>>& rows, std::size_t b) {
    for (const auto& row : rows)
        if (std::abs(row[b].imag()) > 1e-12) return true;
    return false;
}

} // namespace

double integrand(long long m, double omega, cplx z) {
    if (std::abs(z.imag()) < kRealClamp) return 0.0;
    const ChebPair p = cheb_pair(m, z);
    const cplx e = std::polar(1.0, omega);
    const double num = std::abs(p.s_j - p.s_jm1 / e);
    const double den = std::abs(p.s_j - p.s_jm1 * e);
    if (num == 0.0 || den == 0.0)
        throw error(errc::singular_point, "integrand: logarithm argument vanished");
    return std::log(num) - std::log(den);
}

bool volume_admissible(long long m, cplx z) {
    const ChebPair p = cheb_pair(m, z);
    return (p.s_j * std::conj(p.s_jm1)).imag() >= 0.0;
}

BranchSelection select_branch(long long m, double alpha, double tol) {
    if (m == -1 || m == 0) throw error(errc::bad_index, "select_branch: m must not be -1 or 0");
    if (!(alpha > 0.0 && alpha < M_PI))
        throw error(errc::bad_argument, "select_branch: alpha must lie in (0, pi)");

    const Sweep sw = sweep_branches(m, alpha);
    const std::size_t nb = sw.branch_count;

    BranchSelection sel;
    bool any_nonreal = false;

    // original branches then conjugate mirrors of the non-real ones
    std::vector<std::pair<std::size_t, bool>> ids; // (branch index, mirrored)
    for (std::size_t b = 0; b < nb; ++b) ids.emplace_back(b, false);
    for (std::size_t b = 0; b < nb; ++b)
        if (path_leaves_real_axis(sw.rows, b)) ids.emplace_back(b, true);

    for (const auto& [b, mirrored] : ids) {
        BranchPath path;
        path.samples.reserve(sw.omegas.size());
        for (std::size_t i = 0; i < sw.omegas.size(); ++i) {
            BranchSample s;
            s.omega = sw.omegas[i];
            s.z = mirrored ? std::conj(sw.rows[i][b]) : sw.rows[i][b];
            s.admissible = volume_admissible(m, s.z);
            s.residual = std::abs(family_poly(m, s.omega).eval(s.z));
            path.samples.push_back(s);
            if (std::abs(s.z.imag()) > kRealClamp) any_nonreal = true;
        }

        auto f = [&](double omega) {
            const cplx z = branch_root_at(sw, m, b, mirrored, omega);
            if (!volume_admissible(m, z)) return 0.0;
            return integrand(m, omega, z);
        };

        // split the quadrature wherever the branch crosses the real axis,
        // so slivers thinner than a Kronrod panel cannot be missed; both
        // grid endpoints of a crossing interval become panel boundaries
        std::vector<double> breaks{alpha};
        for (std::size_t i = 0; i + 1 < path.samples.size(); ++i) {
            const bool re_i = std::abs(path.samples[i].z.imag()) <= kRealClamp;
            const bool re_n = std::abs(path.samples[i + 1].z.imag()) <= kRealClamp;
            if (re_i != re_n) {
                breaks.push_back(path.samples[i].omega);
                breaks.push_back(path.samples[i + 1].omega);
            }
        }
        breaks.push_back(M_PI);
        std::sort(breaks.begin(), breaks.end());
        breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
        while (!breaks.empty() && breaks.front() < alpha) breaks.erase(breaks.begin());
        if (breaks.empty() || breaks.front() != alpha) breaks.insert(breaks.begin(), alpha);

        double value = 0.0, err = 0.0;
        bool converged = true;
        for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
            if (breaks[i + 1] - breaks[i] < 1e-14) continue;
            const QuadResult q = quad_gk15(f, breaks[i], breaks[i + 1], tol);
            value += q.value;
            err += q.error_estimate;
            sel.evaluations += q.evaluations;
            converged = converged && q.converged;
        }
        sel.branches.push_back(std::move(path));
        sel.integrals.push_back(value);
        sel.quad_errors.push_back(err);
        if (!converged)
            throw error(errc::quadrature_failure, "select_branch: quadrature did not converge");
    }

    if (!any_nonreal)
        throw error(errc::no_admissible_branch,
                    "select_branch: every branch stays real on [alpha, pi]");

    int best = 0;
    for (std::size_t i = 1; i < sel.integrals.size(); ++i)
        if (sel.integrals[i] > sel.integrals[best]) best = static_cast<int>(i);
    sel.chosen = best;
    return sel;
}

VolumeResult volume(long long m, double alpha, double tol) {
    if (m == -1 || m == 0) throw error(errc::bad_index, "volume: m must not be -1 or 0");
    if (!(alpha > 0.0 && alpha < M_PI))
        throw error(errc::bad_argument, "volume: alpha must lie in (0, pi)");
    if (!(tol > 0.0)) throw error(errc::bad_argument, "volume: tol must be positive");

    VolumeResult out;
    out.m = m;
    out.alpha = alpha;
    try {
        BranchSelection sel = select_branch(m, alpha, tol);
        const double v = sel.integrals[static_cast<std::size_t>(sel.chosen)];
        out.quad_error_estimate = sel.quad_errors[static_cast<std::size_t>(sel.chosen)];
        out.samples_used = sel.evaluations;
        out.branch_id = sel.chosen;
        if (v < 1e-10) {
            out.volume = 0.0;
            out.non_hyperbolic = true;
        } else {
            out.volume = v;
        }
    } catch (const error& e) {
        if (e.code() != errc::no_admissible_branch) throw;
        out.volume = 0.0;
        out.non_hyperbolic = true;
    }
    return out;
}

VolumeResult cyclic_cover_volume(long long m, long long k, double tol) {
    if (k < 3) throw error(errc::bad_argument, "cyclic_cover_volume: k must be >= 3");
    VolumeResult r = volume(m, 2.0 * M_PI / static_cast<double>(k), tol);
    r.volume *= static_cast<double>(k);
    r.quad_error_estimate *= static_cast<double>(k);
    return r;
}

namespace {

bool hyperbolic_at(long long m, double alpha) {
    // R_{L_m} has a non-real root exactly on the hyperbolic side
    for (double omega : {alpha, std::min(alpha + 1e-3, M_PI - 1e-9)}) {
        const RootSet rs = all_roots(family_poly(m, omega));
        for (const cplx& z : rs.roots)
            if (std::abs(z.imag()) > 1e-9) return true;
    }
    return false;
}

} // namespace

AlphaMaxEstimate estimate_alpha_max(long long m, double tol) {
    if (m == -1 || m == 0)
        throw error(errc::bad_index, "estimate_alpha_max: m must not be -1 or 0");
    double lo = 0.05, hi = M_PI - 1e-7;
    if (!hyperbolic_at(m, lo)) return {m, 2.0 * M_PI / 3.0, M_PI / 3.0}; // fallback bracket
    if (hyperbolic_at(m, hi)) return {m, hi, M_PI - hi};
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (hyperbolic_at(m, mid))
            lo = mid;
        else
            hi = mid;
    }
    return {m, 0.5 * (lo + hi), hi - lo};
}

std::vector<VolumeRow> volume_table(long long m, const std::vector<double>& angles, double tol,
                                    int threads) {
    std::vector<VolumeRow> rows(angles.size());
    auto work = [&](std::size_t i) {
        try {
            rows[i].result = volume(m, angles[i], tol);
        } catch (const std::exception& e) {
            rows[i].ok = false;
            rows[i].error = e.what();
        }
    };
    if (threads <= 1 || angles.size() <= 1) {
        for (std::size_t i = 0; i < angles.size(); ++i) work(i);
    } else {
        std::vector<std::thread> pool;
        std::size_t next = 0;
        std::mutex mu;
        const int nt = std::min<std::size_t>(threads, angles.size());
        for (int t = 0; t < nt; ++t)
            pool.emplace_back([&] {
                for (;;) {
                    std::size_t i;
                    {
                        std::lock_guard<std::mutex> lock(mu);
                        if (next >= angles.size()) return;
                        i = next++;
                    }
                    work(i);
                }
            });
        for (auto& th : pool) th.join();
    }
    return rows;
}

} // namespace dtlink
