#ifndef DTLINK_CHEBYSHEV_HPP
#define DTLINK_CHEBYSHEV_HPP

#include <complex>
#include <vector>

#include <gmpxx.h>

#include "dtlink/errors.hpp"
#include "dtlink/mat2.hpp"

namespace dtlink {

/* Chebyshev polynomials of the second kind,
 *   S_0(v) = 1, S_1(v) = v, S_j(v) = v S_{j-1}(v) - S_{j-2}(v),
 * extended to all integer j by running the recurrence backwards
 * (S_{-1} = 0, S_{-2} = -1, and in general S_{-j-2} = -S_j).
 */

/* Consecutive values (S_j(v), S_{j-1}(v)) at one point. */
struct ChebPair {
    long long j;
    cplx s_j;
    cplx s_jm1;
    cplx v;
};

ChebPair cheb_pair(long long j, cplx v);

/* Exact univariate polynomial with arbitrary-precision integer
 * coefficients, stored ascending; the zero polynomial has no terms. */
class UPolyZ {
  public:
    UPolyZ() = default;
    explicit UPolyZ(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { trim(); }
    static UPolyZ constant(long v) { return v == 0 ? UPolyZ() : UPolyZ({mpz_class(v)}); }
    static UPolyZ variable() { return UPolyZ({mpz_class(0), mpz_class(1)}); }

    bool is_zero() const { return c_.empty(); }
    long long degree() const { return static_cast<long long>(c_.size()) - 1; }
    const std::vector<mpz_class>& coefficients() const { return c_; }
    mpz_class coeff(std::size_t k) const { return k < c_.size() ? c_[k] : mpz_class(0); }

    UPolyZ operator+(const UPolyZ& o) const;
    UPolyZ operator-(const UPolyZ& o) const;
    UPolyZ operator*(const UPolyZ& o) const;
    UPolyZ operator-() const;
    bool operator==(const UPolyZ& o) const { return c_ == o.c_; }

    template <class T>
    T eval(const T& v) const {
        T acc{};
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            T cv;
            assign_coeff(cv, *it);
            acc = acc * v + cv;
        }
        return acc;
    }

  private:
    static void assign_coeff(cplx& out, const mpz_class& z) { out = cplx(z.get_d(), 0.0); }
    static void assign_coeff(double& out, const mpz_class& z) { out = z.get_d(); }
    static void assign_coeff(mpq_class& out, const mpz_class& z) { out = z; }
    static void assign_coeff(mpz_class& out, const mpz_class& z) { out = z; }

    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<mpz_class> c_;
};

/* Exact coefficients of S_j, any integer j. */
UPolyZ cheb_upoly(long long j);

/* V^j = S_j(tr V) I - S_{j-1}(tr V) V^{-1} for V in SL(2,C).
 * Throws NotUnimodular when |det V - 1| > tol. */
Mat2 sl2_power(const Mat2& V, long long j, double det_tol = 1e-9);

} // namespace dtlink

#endif
