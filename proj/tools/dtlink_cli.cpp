/* Command-line front end: cone-manifold volumes, cyclic cover volumes,
 * hyperbolicity bounds, A-polynomial tuples, root sets and the
 * verification suites for the double twist links J(2m+1, 2m+1). */

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dtlink/apoly.hpp"
#include "dtlink/charvariety.hpp"
#include "dtlink/chebyshev.hpp"
#include "dtlink/rootfinder.hpp"
#include "dtlink/volume.hpp"

using dtlink::cplx;
using json = nlohmann::ordered_json;

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
}

std::string fmt_cplx(cplx z) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%.15g%+.15gi", z.real(), z.imag());
    return buf;
}

/* angles as decimal radians or exact multiples: "2pi/3", "0.95pi", "pi/2" */
double parse_angle(const std::string& text) {
    const auto pos = text.find("pi");
    if (pos == std::string::npos) return std::stod(text);
    const std::string pre = text.substr(0, pos);
    std::string post = text.substr(pos + 2);
    double value = pre.empty() ? 1.0 : std::stod(pre);
    value *= M_PI;
    if (!post.empty()) {
        if (post.front() != '/') throw CLI::ValidationError("angle", "expected N pi / D");
        value /= std::stod(post.substr(1));
    }
    return value;
}

std::vector<double> parse_angle_list(const std::string& text) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const std::string item =
            text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (!item.empty()) out.push_back(parse_angle(item));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

/* "1..3" or "2" */
std::pair<long long, long long> parse_m_range(const std::string& text) {
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
        const long long m = std::stoll(text);
        return {m, m};
    }
    return {std::stoll(text.substr(0, dots)), std::stoll(text.substr(dots + 2))};
}

json poly_json(const dtlink::MPolyZ& p) {
    json terms = json::array();
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it)
        terms.push_back(json{{"e_M", it->first.e1},
                             {"e_L", it->first.e2},
                             {"coeff", it->second.get_str()}});
    return json{{"poly_text", p.to_text()}, {"terms", terms}};
}

json volume_json(const dtlink::VolumeResult& r) {
    return json{{"m", r.m},
                {"alpha", r.alpha},
                {"volume", r.volume},
                {"non_hyperbolic", r.non_hyperbolic},
                {"branch_id", r.branch_id},
                {"quad_error_estimate", r.quad_error_estimate},
                {"samples_used", r.samples_used}};
}

struct Output {
    std::string format = "text";
    json doc;
    std::vector<std::string> text_lines;
    std::vector<std::string> csv_lines;

    void line(const std::string& s) { text_lines.push_back(s); }
    void csv(const std::string& s) { csv_lines.push_back(s); }

    void emit() const {
        if (format == "json") {
            std::fputs(doc.dump(2).c_str(), stdout);
            std::fputc('\n', stdout);
        } else if (format == "csv") {
            for (const auto& s : csv_lines) std::fputs((s + "\n").c_str(), stdout);
        } else {
            for (const auto& s : text_lines) std::fputs((s + "\n").c_str(), stdout);
        }
    }
};

int run_volume(long long m, const std::string& alpha_text, double tol, Output& out) {
    const double alpha = parse_angle(alpha_text);
    const dtlink::VolumeResult r = dtlink::volume(m, alpha, tol);
    out.doc = json{{"command", "volume"},
                   {"params", {{"m", m}, {"alpha", alpha}, {"tol", tol}}},
                   {"results", json::array({volume_json(r)})},
                   {"errors", json::array()}};
    out.csv("m,alpha,volume,non_hyperbolic,branch_id,quad_error_estimate");
    out.csv(std::to_string(m) + "," + fmt(alpha) + "," + fmt(r.volume) + "," +
            (r.non_hyperbolic ? "1" : "0") + "," + std::to_string(r.branch_id) + "," +
            fmt(r.quad_error_estimate));
    out.line("vol E_" + std::to_string(m) + "(" + fmt(alpha) + ") = " + fmt(r.volume) +
             (r.non_hyperbolic ? "  [non-hyperbolic]" : "") + "  (branch " +
             std::to_string(r.branch_id) + ", quad err " + fmt(r.quad_error_estimate) + ")");
    return r.non_hyperbolic ? 2 : 0;
}

int run_table(long long m, const std::string& angles_text, double tol, int threads, Output& out) {
    const std::vector<double> angles = parse_angle_list(angles_text);
    const auto rows = dtlink::volume_table(m, angles, tol, threads);
    json results = json::array();
    json errors = json::array();
    out.csv("m,alpha,volume,non_hyperbolic,branch_id,quad_error_estimate,status");
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& row = rows[i];
        if (row.ok) {
            results.push_back(volume_json(row.result));
            out.csv(std::to_string(m) + "," + fmt(angles[i]) + "," + fmt(row.result.volume) +
                    "," + (row.result.non_hyperbolic ? "1" : "0") + "," +
                    std::to_string(row.result.branch_id) + "," +
                    fmt(row.result.quad_error_estimate) + ",ok");
            out.line("alpha " + fmt(angles[i]) + "  vol " + fmt(row.result.volume) +
                     (row.result.non_hyperbolic ? "  [non-hyperbolic]" : ""));
        } else {
            errors.push_back(json{{"alpha", angles[i]}, {"error", row.error}});
            out.csv(std::to_string(m) + "," + fmt(angles[i]) + ",,,,,\"" + row.error + "\"");
            out.line("alpha " + fmt(angles[i]) + "  error: " + row.error);
        }
    }
    // thread count is an execution detail, not a parameter of the result
    out.doc = json{{"command", "table"},
                   {"params", {{"m", m}, {"tol", tol}}},
                   {"results", results},
                   {"errors", errors}};
    return 0;
}

int run_cover(long long m, long long k, double tol, Output& out) {
    const dtlink::VolumeResult r = dtlink::cyclic_cover_volume(m, k, tol);
    out.doc = json{{"command", "cover"},
                   {"params", {{"m", m}, {"k", k}, {"tol", tol}}},
                   {"results", json::array({volume_json(r)})},
                   {"errors", json::array()}};
    out.csv("m,k,cover_volume,non_hyperbolic");
    out.csv(std::to_string(m) + "," + std::to_string(k) + "," + fmt(r.volume) + "," +
            (r.non_hyperbolic ? "1" : "0"));
    out.line(std::to_string(k) + "-fold cyclic cover volume over L_" + std::to_string(m) +
             " = " + fmt(r.volume) + (r.non_hyperbolic ? "  [non-hyperbolic]" : ""));
    return r.non_hyperbolic ? 2 : 0;
}

int run_alphamax(long long m, double tol, Output& out) {
    const dtlink::AlphaMaxEstimate est = dtlink::estimate_alpha_max(m, tol);
    out.doc = json{{"command", "alphamax"},
                   {"params", {{"m", m}, {"tol", tol}}},
                   {"results",
                    json::array({json{{"m", est.m},
                                      {"alpha_max", est.alpha_max},
                                      {"alpha_max_over_pi", est.alpha_max / M_PI},
                                      {"bracket_width", est.bracket_width}}})},
                   {"errors", json::array()}};
    out.csv("m,alpha_max,bracket_width");
    out.csv(std::to_string(m) + "," + fmt(est.alpha_max) + "," + fmt(est.bracket_width));
    out.line("alpha_max(" + std::to_string(m) + ") = " + fmt(est.alpha_max) + "  (" +
             fmt(est.alpha_max / M_PI) + " pi, bracket " + fmt(est.bracket_width) + ")");
    return 0;
}

int run_apoly(long long m, bool from_q, Output& out) {
    const dtlink::MPolyZ a =
        from_q ? dtlink::a_polynomial_from_q(m) : dtlink::a_polynomial(m).a_first;
    const dtlink::ApolyTuple tup = dtlink::a_polynomial(m);
    json results = json::array();
    if (from_q) {
        results.push_back(poly_json(a));
    } else {
        results.push_back(poly_json(tup.a_first));
        results.push_back(poly_json(tup.a_second));
    }
    out.doc = json{{"command", "apoly"},
                   {"params", {{"m", m}, {"from_q", from_q}}},
                   {"results", results},
                   {"errors", json::array()}};
    out.csv("entry,poly_text");
    if (from_q) {
        out.csv("from_q," + a.to_text());
        out.line("A_from_q(M,L) = " + a.to_text());
    } else {
        out.csv("1," + tup.a_first.to_text());
        out.csv("2," + tup.a_second.to_text());
        out.line("A(M,L) tuple entry 1 = " + tup.a_first.to_text());
        out.line("A(M,L) tuple entry 2 = " + tup.a_second.to_text());
    }
    return 0;
}

int run_roots(long long m, const std::string& angles_text, double tol, Output& out) {
    const std::vector<double> angles = parse_angle_list(angles_text);
    json results = json::array();
    out.csv("m,omega,re,im,residual,admissible");
    for (double omega : angles) {
        const dtlink::CPoly p = dtlink::canonical_poly(m, std::polar(1.0, omega / 2.0));
        const dtlink::RootSet rs = dtlink::all_roots(p, tol);
        json roots = json::array();
        for (std::size_t i = 0; i < rs.roots.size(); ++i) {
            const cplx z = rs.roots[i];
            const bool adm = dtlink::volume_admissible(m, z);
            roots.push_back(json{{"re", z.real()},
                                 {"im", z.imag()},
                                 {"residual", rs.residuals[i]},
                                 {"admissible", adm}});
            out.csv(std::to_string(m) + "," + fmt(omega) + "," + fmt(z.real()) + "," +
                    fmt(z.imag()) + "," + fmt(rs.residuals[i]) + "," + (adm ? "1" : "0"));
            out.line("omega " + fmt(omega) + "  z = " + fmt_cplx(z) +
                     (adm ? "  [admissible]" : ""));
        }
        results.push_back(json{{"omega", omega}, {"roots", roots}});
    }
    out.doc = json{{"command", "roots"},
                   {"params", {{"m", m}, {"tol", tol}}},
                   {"results", results},
                   {"errors", json::array()}};
    return 0;
}

struct Suite {
    std::string name;
    long long m;
    bool pass;
    std::string detail;
};

void run_suites(long long mlo, long long mhi, unsigned seed, std::vector<Suite>& suites) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-4.0, 4.0);

    { // Chebyshev pair identities, all m-independent
        double worst = 0.0, worst3 = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const cplx v(u(rng), u(rng));
            for (long long j = -12; j <= 12; ++j) {
                const dtlink::ChebPair p = dtlink::cheb_pair(j, v);
                const cplx r = p.s_j * p.s_j + p.s_jm1 * p.s_jm1 - v * p.s_j * p.s_jm1 - 1.0;
                worst = std::max(worst, std::abs(r) / (1.0 + std::norm(p.s_j)));
                const dtlink::ChebPair p1 = dtlink::cheb_pair(j - 1, v);
                const dtlink::ChebPair p2 = dtlink::cheb_pair(j - 2, v);
                const cplx lhs = p.s_j * p.s_jm1;
                const cplx rhs = (v * v - 2.0) * p1.s_j * p1.s_jm1 - p2.s_j * p2.s_jm1 + v;
                worst3 = std::max(worst3, std::abs(lhs - rhs) / (1.0 + std::abs(lhs)));
            }
        }
        suites.push_back({"chebyshev-pair-identity", 0, worst < 1e-9, "residual " + fmt(worst)});
        suites.push_back(
            {"chebyshev-product-recurrence", 0, worst3 < 1e-9, "residual " + fmt(worst3)});
    }

    { // matrix power identity
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const cplx p(u(rng) / 4, u(rng) / 4), q(u(rng) / 4, u(rng) / 4);
            cplx r(u(rng) / 4, u(rng) / 4);
            if (std::abs(r) < 0.2) r += cplx(0.6, 0.3);
            const dtlink::Mat2 V = dtlink::Mat2{1, p, 0, 1} * dtlink::Mat2{1, 0, q, 1} *
                                   dtlink::Mat2{r, 0, 0, 1.0 / r};
            for (long long j : {-10LL, -5LL, 5LL, 10LL}) {
                dtlink::Mat2 direct = dtlink::Mat2::identity();
                const dtlink::Mat2 base = j >= 0 ? V : V.adjugate();
                for (long long t = 0; t < std::llabs(j); ++t) direct = direct * base;
                const dtlink::Mat2 closed = dtlink::sl2_power(V, j);
                worst = std::max(worst, (closed - direct).norm() / (1.0 + direct.norm()));
            }
        }
        suites.push_back({"sl2-power-oracle", 0, worst < 1e-10, "residual " + fmt(worst)});
    }

    for (long long m = mlo; m <= mhi; ++m) {
        { // canonical identities on the variety
            double worst = 0.0;
            int used = 0;
            std::mt19937 lr(seed + static_cast<unsigned>(m));
            std::uniform_real_distribution<double> uo(0.2, M_PI - 0.2);
            while (used < 100) {
                const double omega = uo(lr);
                const cplx s = std::polar(1.0, omega / 2.0);
                const dtlink::RootSet rs = dtlink::all_roots(dtlink::canonical_poly(m, s));
                for (const cplx& z : rs.roots) {
                    const cplx q = s * s + 1.0 / (s * s);
                    if (std::abs(z - 2.0) < 0.05 || std::abs(z - q) < 0.05) continue;
                    const dtlink::ChebPair p = dtlink::cheb_pair(m, z);
                    const cplx d = p.s_j - p.s_jm1;
                    const cplx f1 = p.s_j - p.s_jm1 * (s * s);
                    const cplx f2 = p.s_j - p.s_jm1 / (s * s);
                    worst = std::max(worst, std::abs(d * d * f1 * f2 - 1.0));
                    const cplx prod = p.s_j * p.s_jm1;
                    worst = std::max(worst, std::abs(prod - dtlink::smsm1_closed(q, z)) /
                                                (1.0 + std::abs(prod)));
                    ++used;
                }
            }
            suites.push_back(
                {"canonical-identities", m, worst < 1e-8, "residual " + fmt(worst)});
        }

        { // representation: closed word form against the literal product
            std::mt19937 lr(seed + 1000 + static_cast<unsigned>(m));
            std::uniform_real_distribution<double> ur(-1.2, 1.2);
            double worst = 0.0;
            for (int i = 0; i < 25; ++i) {
                cplx s1(ur(lr), ur(lr)), s2(ur(lr), ur(lr)), uu(ur(lr), ur(lr));
                if (std::abs(s1) < 0.3) s1 += cplx(0.8, 0.0);
                if (std::abs(s2) < 0.3) s2 += cplx(0.0, 0.8);
                if (std::abs(uu) < 0.3) uu += cplx(0.5, 0.5);
                const dtlink::RepPoint rp(s1, s2, uu);
                const dtlink::WordMatrices wm = dtlink::build_matrices(rp, {m, m});
                auto mat_pow = [](const dtlink::Mat2& M, long long k) {
                    dtlink::Mat2 acc = dtlink::Mat2::identity();
                    const dtlink::Mat2 base = k >= 0 ? M : M.adjugate();
                    for (long long t = 0; t < std::llabs(k); ++t) acc = acc * base;
                    return acc;
                };
                const dtlink::Mat2 binv_a = wm.rho_b.adjugate() * wm.rho_a;
                const dtlink::Mat2 b_ainv = wm.rho_b * wm.rho_a.adjugate();
                const dtlink::Mat2 inner =
                    mat_pow(b_ainv, m) * wm.rho_b * wm.rho_a * mat_pow(binv_a, m);
                const dtlink::Mat2 lit = mat_pow(binv_a, m) * mat_pow(inner, m);
                worst = std::max(worst, (wm.rho_w - lit).norm() / (1.0 + lit.norm()));
            }
            suites.push_back({"word-closed-form", m, worst < 1e-10, "residual " + fmt(worst)});
        }

        { // volume integrand against the factored w11
            double worst = 0.0;
            for (double omega : {0.7, 1.3, 1.9}) {
                const cplx s = std::polar(1.0, omega / 2.0);
                const dtlink::RootSet rs = dtlink::all_roots(dtlink::canonical_poly(m, s));
                for (const cplx& z : rs.roots) {
                    if (std::abs(z.imag()) < 1e-8) continue;
                    const double f = dtlink::integrand(m, omega, z);
                    const cplx w11 = dtlink::w11_canonical(m, s, z);
                    worst = std::max(worst,
                                     std::abs(f - 2.0 * std::log(std::abs(w11))) /
                                         (1.0 + std::abs(f)));
                }
            }
            suites.push_back({"schlafli-integrand", m, worst < 1e-8, "residual " + fmt(worst)});
        }

        if (m >= 1) { // A-polynomial oracles
            bool ok = true;
            std::string detail;
            if (m <= 5) {
                const dtlink::MPolyZ via_rec =
                    dtlink::a_polynomial(m).a_first.strip_monomial().primitive();
                const dtlink::MPolyZ via_res =
                    dtlink::oracle_eliminate(m).strip_monomial().primitive();
                ok = via_rec == via_res;
                detail = ok ? "elimination match" : "elimination MISMATCH";
            } else {
                detail = "elimination skipped (m > 5)";
            }
            const dtlink::VarietyReport rep = dtlink::verify_on_variety(m, 200, seed);
            ok = ok && rep.max_scaled_a < 1e-6;
            detail += ", variety residual " + fmt(rep.max_scaled_a);
            detail += ", q-form residual " + fmt(rep.max_scaled_a_from_q);
            suites.push_back({"apoly-oracles", m, ok, detail});
        }
    }
}

int run_verify(const std::string& mrange, unsigned seed, Output& out) {
    const auto [mlo, mhi] = parse_m_range(mrange);
    std::vector<Suite> suites;
    run_suites(std::max(mlo, 1LL), mhi, seed, suites);
    json results = json::array();
    bool all = true;
    out.csv("suite,m,status,detail");
    for (const auto& s : suites) {
        all = all && s.pass;
        results.push_back(
            json{{"suite", s.name}, {"m", s.m}, {"pass", s.pass}, {"detail", s.detail}});
        const std::string line = std::string(s.pass ? "PASS" : "FAIL") + "  " + s.name +
                                 (s.m ? "  m=" + std::to_string(s.m) : "") + "  (" + s.detail +
                                 ")";
        out.line(line);
        out.csv(s.name + "," + std::to_string(s.m) + "," + (s.pass ? "pass" : "fail") + ",\"" +
                s.detail + "\"");
    }
    out.doc = json{{"command", "verify"},
                   {"params", {{"m_lo", mlo}, {"m_hi", mhi}, {"seed", seed}}},
                   {"results", results},
                   {"errors", json::array()}};
    out.line(all ? "all suites passed" : "SUITE FAILURES PRESENT");
    return all ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"double twist link cone-manifold volumes and A-polynomials"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string format = "text";
    app.add_option("--format", format, "output format: text, json or csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));

    long long m = 1;
    double tol = 1e-9;
    int threads = 1;
    unsigned seed = 0;
    std::string alpha_text = "2pi/3";
    std::string angles_text;
    std::string mrange = "1..2";
    long long k = 3;
    bool from_q = false;

    auto* c_vol = app.add_subcommand("volume", "cone-manifold volume at one angle");
    c_vol->add_option("-m", m, "twist parameter")->required();
    c_vol->add_option("--alpha", alpha_text, "cone angle (radians or N pi / D)")->required();
    c_vol->add_option("--tol", tol, "quadrature tolerance");

    auto* c_table = app.add_subcommand("table", "volumes over a list of angles");
    c_table->add_option("-m", m, "twist parameter")->required();
    c_table->add_option("--angles", angles_text, "comma-separated angles")->required();
    c_table->add_option("--tol", tol, "quadrature tolerance");
    c_table->add_option("--threads", threads, "worker threads for table rows");

    auto* c_cover = app.add_subcommand("cover", "k-fold cyclic cover volume");
    c_cover->add_option("-m", m, "twist parameter")->required();
    c_cover->add_option("-k", k, "covering degree, k >= 3")->required();
    c_cover->add_option("--tol", tol, "quadrature tolerance");

    auto* c_amax = app.add_subcommand("alphamax", "hyperbolicity bound estimate");
    c_amax->add_option("-m", m, "twist parameter")->required();
    c_amax->add_option("--tol", tol, "bracket tolerance");

    auto* c_apoly = app.add_subcommand("apoly", "A-polynomial 2-tuple");
    c_apoly->add_option("-m", m, "twist parameter")->required();
    c_apoly->add_flag("--from-q", from_q, "assemble from the Q_m sequence instead (comparison only)");

    auto* c_roots = app.add_subcommand("roots", "roots of R_{L_m} at given angles");
    c_roots->add_option("-m", m, "twist parameter")->required();
    c_roots->add_option("--angles", angles_text, "comma-separated angles")->required();
    c_roots->add_option("--tol", tol, "root residual tolerance");

    auto* c_verify = app.add_subcommand("verify", "identity and oracle suites");
    c_verify->add_option("-m", mrange, "m or m range, e.g. 1..3");
    c_verify->add_option("--seed", seed, "seed for randomized suites");
    c_verify->add_option("--threads", threads, "accepted for symmetry; suites are ordered");
    c_verify->add_flag("--all", "run every suite (default)");

    CLI11_PARSE(app, argc, argv);

    Output out;
    out.format = format;
    int code = 0;
    try {
        if (c_vol->parsed()) code = run_volume(m, alpha_text, tol, out);
        else if (c_table->parsed()) code = run_table(m, angles_text, tol, threads, out);
        else if (c_cover->parsed()) code = run_cover(m, k, tol, out);
        else if (c_amax->parsed()) code = run_alphamax(m, tol, out);
        else if (c_apoly->parsed()) code = run_apoly(m, from_q, out);
        else if (c_roots->parsed()) code = run_roots(m, angles_text, tol, out);
        else if (c_verify->parsed()) code = run_verify(mrange, seed, out);
    } catch (const dtlink::error& e) {
        std::fprintf(stderr, "error [%s]: %s\n", dtlink::errc_name(e.code()), e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    out.emit();
    return code;
}
