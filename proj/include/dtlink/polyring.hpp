#ifndef DTLINK_POLYRING_HPP
#define DTLINK_POLYRING_HPP

#include <array>
#include <complex>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "dtlink/errors.hpp"

namespace dtlink {

using cplx = std::complex<double>;

/* Exponent pair, ordered lexicographically with the first variable dominant. */
struct Exp2 {
    unsigned e1 = 0;
    unsigned e2 = 0;
    friend bool operator<(const Exp2& x, const Exp2& y) {
        return x.e1 != y.e1 ? x.e1 < y.e1 : x.e2 < y.e2;
    }
    friend bool operator==(const Exp2& x, const Exp2& y) { return x.e1 == y.e1 && x.e2 == y.e2; }
};

/* Sparse bivariate polynomial over arbitrary-precision integers.
 * No zero coefficients are stored; term order is lex ascending internally. */
class MPolyZ {
  public:
    using Vars = std::array<std::string, 2>;

    MPolyZ() : vars_{"s", "w"} {}
    explicit MPolyZ(Vars vars) : vars_(std::move(vars)) {}

    static MPolyZ constant(mpz_class c, Vars vars = {"s", "w"});
    static MPolyZ monomial(mpz_class c, unsigned e1, unsigned e2, Vars vars = {"s", "w"});

    const Vars& vars() const { return vars_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<Exp2, mpz_class>& terms() const { return terms_; }

    long long degree1() const; // degree in the first variable, -1 for zero
    long long degree2() const;
    mpz_class coeff(unsigned e1, unsigned e2) const;

    MPolyZ operator+(const MPolyZ& o) const;
    MPolyZ operator-(const MPolyZ& o) const;
    MPolyZ operator*(const MPolyZ& o) const;
    MPolyZ operator-() const;
    MPolyZ& operator+=(const MPolyZ& o) { return *this = *this + o; }
    MPolyZ& operator-=(const MPolyZ& o) { return *this = *this - o; }
    MPolyZ& operator*=(const MPolyZ& o) { return *this = *this * o; }
    bool operator==(const MPolyZ& o) const { return terms_ == o.terms_; }

    MPolyZ pow(unsigned n) const;

    /* Substitute (v1, v2) -> (M, L*M^shift); exact, requires shift >= 0. */
    MPolyZ substitute_monomial(long long shift, Vars new_vars = {"M", "L"}) const;

    /* Divide by integer content and normalize the sign so that the
     * lex-leading coefficient is positive. Throws ZeroPolynomial. */
    MPolyZ primitive() const;
    mpz_class content() const;

    /* Strip the common monomial factor v1^a v2^b. */
    MPolyZ strip_monomial() const;

    /* Exact division; throws NotDivisible if the quotient is not exact. */
    MPolyZ divexact(const MPolyZ& divisor) const;

    cplx eval(cplx v1, cplx v2) const;

    /* Evaluate the integer coefficient of v2^k as a polynomial in v1 at v1. */
    cplx eval_coeff_of_2(unsigned k, cplx v1) const;

    /* Terms sorted descending lex, written c*V1^a*V2^b joined by +/-,
     * unit exponents and coefficients omitted. */
    std::string to_text() const;

    void set_term(Exp2 e, mpz_class c); // c = 0 erases

  private:
    void check_vars(const MPolyZ& o) const;

    std::map<Exp2, mpz_class> terms_;
    Vars vars_;
};

/* Univariate polynomial in an eliminated variable with MPolyZ coefficients,
 * ascending degree. */
using ZPoly = std::vector<MPolyZ>;

long long zpoly_degree(const ZPoly& p);

/* Sylvester resultant eliminating the outer variable, computed by
 * fraction-free (Bareiss) elimination. Requires both degrees >= 1. */
MPolyZ resultant_z(const ZPoly& a, const ZPoly& b);

/* Univariate polynomial with complex coefficients, ascending degree. */
class CPoly {
  public:
    CPoly() = default;
    explicit CPoly(std::vector<cplx> coeffs) : c_(std::move(coeffs)) { trim(); }

    bool is_zero() const { return c_.empty(); }
    long long degree() const { return static_cast<long long>(c_.size()) - 1; }
    const std::vector<cplx>& coefficients() const { return c_; }

    cplx eval(cplx z) const;
    cplx eval_derivative(cplx z) const;
    /* Magnitude bound sum |c_k| |z|^k used as the residual scale. */
    double eval_scale(cplx z) const;

    CPoly scaled(cplx factor) const;

  private:
    void trim() {
        while (!c_.empty() && c_.back() == cplx(0.0, 0.0)) c_.pop_back();
    }
    std::vector<cplx> c_;
};

} // namespace dtlink

#endif
