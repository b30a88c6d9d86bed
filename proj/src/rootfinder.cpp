#include "dtlink/rootfinder.hpp"

#include <algorithm>
#include <cmath>

namespace dtlink {

cplx newton_polish(const CPoly& p, cplx z0, double tol, int max_iter) {
    cplx z = z0;
    for (int i = 0; i < max_iter; ++i) {
        const cplx f = p.eval(z);
        const cplx df = p.eval_derivative(z);
        if (df == cplx(0.0)) break;
        const cplx step = f / df;
        z -= step;
        if (std::abs(step) < tol * (1.0 + std::abs(z))) break;
    }
    return z;
}

RootSet all_roots(const CPoly& p, double tol, double cluster_tol) {
    const long long deg = p.degree();
    if (deg < 1) throw error(errc::degree_zero, "all_roots: degree must be >= 1");
    const auto& c = p.coefficients();

    // normalize by the leading coefficient
    std::vector<cplx> a(c.size());
    const cplx lead = c.back();
    for (std::size_t k = 0; k < c.size(); ++k) a[k] = c[k] / lead;
    const CPoly pn{std::vector<cplx>(a)};

    // initial guesses on a circle scaled by the Cauchy bound
    double bound = 0.0;
    for (std::size_t k = 0; k + 1 < a.size(); ++k) bound = std::max(bound, std::abs(a[k]));
    const double radius = 1.0 + bound;
    const std::size_t n = static_cast<std::size_t>(deg);
    std::vector<cplx> zs(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double th = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(n) + 0.41;
        zs[k] = radius * cplx(std::cos(th), std::sin(th));
    }

    const int max_iter = 400;
    bool converged = false;
    for (int it = 0; it < max_iter && !converged; ++it) {
        double worst = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const cplx f = pn.eval(zs[k]);
            const cplx df = pn.eval_derivative(zs[k]);
            cplx nk;
            if (df != cplx(0.0)) {
                nk = f / df;
            } else {
                nk = f; // fallback step when the derivative vanishes
            }
            cplx sum(0.0, 0.0);
            for (std::size_t j = 0; j < n; ++j) {
                if (j == k) continue;
                const cplx d = zs[k] - zs[j];
                if (d != cplx(0.0)) sum += 1.0 / d;
            }
            const cplx denom = 1.0 - nk * sum;
            const cplx w = denom == cplx(0.0) ? nk : nk / denom;
            zs[k] -= w;
            worst = std::max(worst, std::abs(w) / (1.0 + std::abs(zs[k])));
        }
        converged = worst < 1e-14;
    }
    if (!converged) {
        // accept if residuals already meet the contract after polish
        bool ok = true;
        for (std::size_t k = 0; k < n; ++k) {
            zs[k] = newton_polish(pn, zs[k]);
            if (std::abs(pn.eval(zs[k])) > tol * std::max(pn.eval_scale(zs[k]), 1e-300)) ok = false;
        }
        if (!ok) throw error(errc::no_convergence, "all_roots: Aberth iteration did not converge");
    } else {
        for (std::size_t k = 0; k < n; ++k) zs[k] = newton_polish(pn, zs[k]);
    }

    std::sort(zs.begin(), zs.end(), [](cplx x, cplx y) {
        return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
    });

    // collapse clusters to their centroid
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i + 1;
        while (j < n && std::abs(zs[j] - zs[j - 1]) < cluster_tol) ++j;
        if (j - i > 1) {
            cplx centroid(0.0, 0.0);
            for (std::size_t k = i; k < j; ++k) centroid += zs[k];
            centroid /= static_cast<double>(j - i);
            for (std::size_t k = i; k < j; ++k) zs[k] = centroid;
        }
        i = j;
    }

    RootSet out;
    out.degree = deg;
    out.roots = zs;
    out.residuals.resize(n);
    for (std::size_t k = 0; k < n; ++k) out.residuals[k] = std::abs(p.eval(zs[k]));
    return out;
}

BranchPath continue_branch(const std::function<CPoly(double)>& family, cplx z0, double omega0,
                           double omega1, const ContinuationOptions& opts,
                           const std::function<bool(double, cplx)>& admissible) {
    BranchPath path;
    const CPoly p0 = family(omega0);
    const double scale0 = std::max(p0.eval_scale(z0), 1e-300);
    if (std::abs(p0.eval(z0)) > 1e-8 * scale0)
        throw error(errc::bad_argument, "continue_branch: z0 is not a root of family(omega0)");

    auto push = [&](double om, cplx z, double residual) {
        BranchSample s;
        s.omega = om;
        s.z = z;
        s.residual = residual;
        s.admissible = admissible ? admissible(om, z) : true;
        path.samples.push_back(s);
    };

    cplx z = newton_polish(family(omega0), z0);
    push(omega0, z, std::abs(p0.eval(z)));
    if (omega0 == omega1) return path;

    const double dir = omega1 > omega0 ? 1.0 : -1.0;
    double om = omega0;
    double step = std::min(opts.step0, std::abs(omega1 - omega0));
    cplx z_prev = z;
    double om_prev = om;
    bool have_prev = false;

    // Newton with a doubled-step fallback for near-double roots
    auto correct = [&](const CPoly& p, cplx start, double scale, int& iters) -> std::pair<cplx, bool> {
        cplx cand = start;
        for (iters = 0; iters < opts.newton_cap; ++iters) {
            const cplx f = p.eval(cand);
            if (std::abs(f) < opts.residual_tol * scale) return {cand, true};
            const cplx df = p.eval_derivative(cand);
            if (df == cplx(0.0)) break;
            cand -= f / df;
        }
        for (int extra = 0; extra < 8; ++extra) {
            const cplx f = p.eval(cand);
            if (std::abs(f) < opts.residual_tol * scale) return {cand, true};
            const cplx df = p.eval_derivative(cand);
            if (df == cplx(0.0)) return {cand, false};
            cand -= (extra < 5 ? 2.0 : 1.0) * f / df; // multiplicity-2 steps, then polish
        }
        return {cand, std::abs(p.eval(cand)) < opts.residual_tol * scale};
    };

    while (dir * (omega1 - om) > 1e-15) {
        step = std::min(step, std::abs(omega1 - om));
        const double om_next = om + dir * step;
        // linear extrapolation predictor
        cplx pred = z;
        if (have_prev && om != om_prev) pred = z + (z - z_prev) * ((om_next - om) / (om - om_prev));

        const CPoly p = family(om_next);
        const double scale = std::max(p.eval_scale(pred), 1e-300);

        // candidate starts: the predictor, and for a real path possibly
        // crossing a collision, imaginary nudges (the real axis is a Newton
        // trap when the coefficients are real). The moving direction picks
        // the conjugate member deterministically.
        std::vector<cplx> starts{pred};
        if (std::abs(pred.imag()) < 1e-12) {
            const double delta = 0.5 * std::sqrt(step) * (1.0 + std::abs(pred));
            const double sgn = (z - z_prev).real() >= 0.0 ? 1.0 : -1.0;
            starts.push_back(pred + cplx(0.0, sgn * delta));
            starts.push_back(pred - cplx(0.0, sgn * delta));
        }

        const double trust = std::max({1e-3, 10.0 * (std::abs(z - z_prev) + step),
                                       4.0 * std::sqrt(step) * (1.0 + std::abs(z))});
        cplx accepted;
        int used = 0;
        bool ok = false;
        bool jumped = false;
        for (const cplx& start : starts) {
            int iters = 0;
            auto [cand, converged] = correct(p, start, scale, iters);
            if (!converged) continue;
            if (std::abs(cand - pred) > trust) {
                jumped = true;
                continue;
            }
            accepted = cand;
            used = iters;
            ok = true;
            break;
        }

        if (!ok) {
            if (step / 2.0 < opts.min_step) {
                if (jumped)
                    throw error(errc::branch_jump,
                                "continue_branch: corrector left the predicted neighborhood");
                throw error(errc::step_underflow, "continue_branch: step underflow");
            }
            step /= 2.0;
            continue;
        }
        z_prev = z;
        om_prev = om;
        have_prev = true;
        z = accepted;
        om = om_next;
        push(om, z, std::abs(p.eval(z)));
        if (used > opts.easy_iterations)
            step = std::max(step / 2.0, opts.min_step);
        else if (used <= 2 && step < opts.step0)
            step = std::min(opts.step0, step * 1.5);
    }
    return path;
}

} // namespace dtlink
