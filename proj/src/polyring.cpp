#include "dtlink/polyring.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dtlink {

MPolyZ MPolyZ::constant(mpz_class c, Vars vars) {
    MPolyZ p(std::move(vars));
    if (c != 0) p.terms_[{0, 0}] = std::move(c);
    return p;
}

MPolyZ MPolyZ::monomial(mpz_class c, unsigned e1, unsigned e2, Vars vars) {
    MPolyZ p(std::move(vars));
    if (c != 0) p.terms_[{e1, e2}] = std::move(c);
    return p;
}

void MPolyZ::check_vars(const MPolyZ& o) const {
    if (vars_ != o.vars_)
        throw error(errc::var_mismatch, "MPolyZ: operands have different variable names");
}

long long MPolyZ::degree1() const {
    long long d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, static_cast<long long>(e.e1));
    return d;
}

long long MPolyZ::degree2() const {
    long long d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, static_cast<long long>(e.e2));
    return d;
}

mpz_class MPolyZ::coeff(unsigned e1, unsigned e2) const {
    auto it = terms_.find({e1, e2});
    return it == terms_.end() ? mpz_class(0) : it->second;
}

void MPolyZ::set_term(Exp2 e, mpz_class c) {
    if (c == 0)
        terms_.erase(e);
    else
        terms_[e] = std::move(c);
}

MPolyZ MPolyZ::operator+(const MPolyZ& o) const {
    check_vars(o);
    MPolyZ out(vars_);
    out.terms_ = terms_;
    for (const auto& [e, c] : o.terms_) {
        mpz_class& slot = out.terms_[e];
        slot += c;
        if (slot == 0) out.terms_.erase(e);
    }
    return out;
}

MPolyZ MPolyZ::operator-(const MPolyZ& o) const {
    check_vars(o);
    MPolyZ out(vars_);
    out.terms_ = terms_;
    for (const auto& [e, c] : o.terms_) {
        mpz_class& slot = out.terms_[e];
        slot -= c;
        if (slot == 0) out.terms_.erase(e);
    }
    return out;
}

MPolyZ MPolyZ::operator*(const MPolyZ& o) const {
    check_vars(o);
    MPolyZ out(vars_);
    for (const auto& [e1, c1] : terms_) {
        for (const auto& [e2, c2] : o.terms_) {
            Exp2 e{e1.e1 + e2.e1, e1.e2 + e2.e2};
            mpz_class& slot = out.terms_[e];
            slot += c1 * c2;
            if (slot == 0) out.terms_.erase(e);
        }
    }
    return out;
}

MPolyZ MPolyZ::operator-() const {
    MPolyZ out(vars_);
    for (const auto& [e, c] : terms_) out.terms_[e] = -c;
    return out;
}

MPolyZ MPolyZ::pow(unsigned n) const {
    MPolyZ acc = constant(1, vars_);
    for (unsigned i = 0; i < n; ++i) acc = acc * *this;
    return acc;
}

MPolyZ MPolyZ::substitute_monomial(long long shift, Vars new_vars) const {
    if (shift < 0)
        throw error(errc::bad_argument,
                    "substitute_monomial: negative shift must be cleared by the caller");
    MPolyZ out(std::move(new_vars));
    for (const auto& [e, c] : terms_) {
        Exp2 ne{static_cast<unsigned>(e.e1 + static_cast<unsigned long long>(shift) * e.e2), e.e2};
        mpz_class& slot = out.terms_[ne];
        slot += c;
        if (slot == 0) out.terms_.erase(ne);
    }
    return out;
}

mpz_class MPolyZ::content() const {
    mpz_class g = 0;
    for (const auto& [e, c] : terms_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

MPolyZ MPolyZ::primitive() const {
    if (terms_.empty()) throw error(errc::zero_polynomial, "primitive: zero polynomial");
    const mpz_class g = content();
    MPolyZ out(vars_);
    for (const auto& [e, c] : terms_) out.terms_[e] = c / g;
    // lex-leading coefficient positive
    if (out.terms_.rbegin()->second < 0)
        for (auto& [e, c] : out.terms_) c = -c;
    return out;
}

MPolyZ MPolyZ::strip_monomial() const {
    if (terms_.empty()) return *this;
    unsigned m1 = terms_.begin()->first.e1, m2 = terms_.begin()->first.e2;
    for (const auto& [e, c] : terms_) {
        m1 = std::min(m1, e.e1);
        m2 = std::min(m2, e.e2);
    }
    MPolyZ out(vars_);
    for (const auto& [e, c] : terms_) out.terms_[{e.e1 - m1, e.e2 - m2}] = c;
    return out;
}

MPolyZ MPolyZ::divexact(const MPolyZ& divisor) const {
    check_vars(divisor);
    if (divisor.is_zero()) throw error(errc::zero_polynomial, "divexact: division by zero");
    MPolyZ rem = *this;
    MPolyZ quot(vars_);
    const auto& dlt = *divisor.terms_.rbegin(); // lex-leading term of the divisor
    while (!rem.terms_.empty()) {
        const auto& rlt = *rem.terms_.rbegin();
        if (rlt.first.e1 < dlt.first.e1 || rlt.first.e2 < dlt.first.e2)
            throw error(errc::not_divisible, "divexact: leading monomial not divisible");
        if (!mpz_divisible_p(rlt.second.get_mpz_t(), dlt.second.get_mpz_t()))
            throw error(errc::not_divisible, "divexact: leading coefficient not divisible");
        Exp2 qe{rlt.first.e1 - dlt.first.e1, rlt.first.e2 - dlt.first.e2};
        mpz_class qc = rlt.second / dlt.second;
        quot.terms_[qe] = qc;
        rem -= MPolyZ::monomial(qc, qe.e1, qe.e2, vars_) * divisor;
    }
    return quot;
}

namespace {
cplx ipow(cplx base, unsigned e) {
    cplx acc(1.0, 0.0);
    while (e) {
        if (e & 1u) acc *= base;
        base *= base;
        e >>= 1u;
    }
    return acc;
}
} // namespace

cplx MPolyZ::eval(cplx v1, cplx v2) const {
    // Horner in the first variable, direct powers in the second
    cplx acc(0.0, 0.0);
    long long prev_e1 = -1;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto e = it->first;
        if (prev_e1 >= 0)
            for (long long k = prev_e1; k > static_cast<long long>(e.e1); --k) acc *= v1;
        prev_e1 = e.e1;
        acc += cplx(it->second.get_d(), 0.0) * ipow(v2, e.e2);
    }
    if (prev_e1 > 0)
        for (long long k = prev_e1; k > 0; --k) acc *= v1;
    return acc;
}

cplx MPolyZ::eval_coeff_of_2(unsigned k, cplx v1) const {
    cplx acc(0.0, 0.0);
    for (const auto& [e, c] : terms_)
        if (e.e2 == k) acc += cplx(c.get_d(), 0.0) * ipow(v1, e.e1);
    return acc;
}

std::string MPolyZ::to_text() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const mpz_class& c = it->second;
        const Exp2 e = it->first;
        const bool neg = c < 0;
        mpz_class ac = abs(c);
        if (first) {
            if (neg) os << "-";
            first = false;
        } else {
            os << (neg ? " - " : " + ");
        }
        std::vector<std::string> parts;
        if (ac != 1 || (e.e1 == 0 && e.e2 == 0)) parts.push_back(ac.get_str());
        auto var_part = [](const std::string& name, unsigned exp) {
            return exp == 1 ? name : name + "^" + std::to_string(exp);
        };
        if (e.e1 > 0) parts.push_back(var_part(vars_[0], e.e1));
        if (e.e2 > 0) parts.push_back(var_part(vars_[1], e.e2));
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (i) os << "*";
            os << parts[i];
        }
    }
    return os.str();
}

long long zpoly_degree(const ZPoly& p) {
    for (long long k = static_cast<long long>(p.size()) - 1; k >= 0; --k)
        if (!p[static_cast<std::size_t>(k)].is_zero()) return k;
    return -1;
}

MPolyZ resultant_z(const ZPoly& a, const ZPoly& b) {
    const long long da = zpoly_degree(a);
    const long long db = zpoly_degree(b);
    if (da < 1 || db < 1)
        throw error(errc::degree_zero, "resultant_z: both degrees must be >= 1");
    const MPolyZ::Vars vars = a[0].vars();
    const long long n = da + db;
    // Sylvester matrix: db shifted rows of a's coefficients, then da rows of b's
    std::vector<std::vector<MPolyZ>> m(static_cast<std::size_t>(n),
                                       std::vector<MPolyZ>(static_cast<std::size_t>(n), MPolyZ(vars)));
    for (long long r = 0; r < db; ++r)
        for (long long k = 0; k <= da; ++k) m[r][r + k] = a[static_cast<std::size_t>(da - k)];
    for (long long r = 0; r < da; ++r)
        for (long long k = 0; k <= db; ++k) m[db + r][r + k] = b[static_cast<std::size_t>(db - k)];

    // Bareiss fraction-free elimination
    MPolyZ prev = MPolyZ::constant(1, vars);
    int sign = 1;
    for (long long k = 0; k < n - 1; ++k) {
        if (m[k][k].is_zero()) {
            long long pivot = -1;
            for (long long r = k + 1; r < n; ++r)
                if (!m[r][k].is_zero()) {
                    pivot = r;
                    break;
                }
            if (pivot < 0) return MPolyZ(vars); // singular: resultant vanishes
            std::swap(m[static_cast<std::size_t>(k)], m[static_cast<std::size_t>(pivot)]);
            sign = -sign;
        }
        for (long long i = k + 1; i < n; ++i) {
            for (long long j = k + 1; j < n; ++j) {
                MPolyZ num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                m[i][j] = num.is_zero() ? MPolyZ(vars) : num.divexact(prev);
            }
            m[i][k] = MPolyZ(vars);
        }
        prev = m[k][k];
    }
    MPolyZ res = m[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(n - 1)];
    return sign < 0 ? -res : res;
}

cplx CPoly::eval(cplx z) const {
    cplx acc(0.0, 0.0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
    return acc;
}

cplx CPoly::eval_derivative(cplx z) const {
    cplx acc(0.0, 0.0);
    for (long long k = degree(); k >= 1; --k)
        acc = acc * z + c_[static_cast<std::size_t>(k)] * static_cast<double>(k);
    return acc;
}

double CPoly::eval_scale(cplx z) const {
    double acc = 0.0;
    const double az = std::abs(z);
    double p = 1.0;
    for (const auto& c : c_) {
        acc += std::abs(c) * p;
        p *= az;
    }
    return acc;
}

CPoly CPoly::scaled(cplx factor) const {
    std::vector<cplx> out(c_);
    for (auto& c : out) c *= factor;
    return CPoly(std::move(out));
}

} // namespace dtlink
