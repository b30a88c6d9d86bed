#include "dtlink/chebyshev.hpp"

#include <cmath>
#include <cstdlib>

namespace dtlink {

ChebPair cheb_pair(long long j, cplx v) {
    // pair state (S_k, S_{k-1}), starting at k = 0 with (1, 0)
    cplx hi(1.0, 0.0), lo(0.0, 0.0);
    if (j >= 0) {
        for (long long k = 0; k < j; ++k) {
            cplx next = v * hi - lo;
            lo = hi;
            hi = next;
        }
    } else {
        for (long long k = 0; k > j; --k) {
            cplx prev = v * lo - hi; // S_{k-2} = v S_{k-1} - S_k
            hi = lo;
            lo = prev;
        }
    }
    return {j, hi, lo, v};
}

UPolyZ cheb_upoly(long long j) {
    UPolyZ hi = UPolyZ::constant(1);
    UPolyZ lo; // zero
    const UPolyZ v = UPolyZ::variable();
    if (j >= 0) {
        for (long long k = 0; k < j; ++k) {
            UPolyZ next = v * hi - lo;
            lo = hi;
            hi = next;
        }
    } else {
        for (long long k = 0; k > j; --k) {
            UPolyZ prev = v * lo - hi;
            hi = lo;
            lo = prev;
        }
    }
    return hi;
}

UPolyZ UPolyZ::operator+(const UPolyZ& o) const {
    std::vector<mpz_class> out(std::max(c_.size(), o.c_.size()), mpz_class(0));
    for (std::size_t i = 0; i < c_.size(); ++i) out[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) out[i] += o.c_[i];
    return UPolyZ(std::move(out));
}

UPolyZ UPolyZ::operator-(const UPolyZ& o) const {
    std::vector<mpz_class> out(std::max(c_.size(), o.c_.size()), mpz_class(0));
    for (std::size_t i = 0; i < c_.size(); ++i) out[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) out[i] -= o.c_[i];
    return UPolyZ(std::move(out));
}

UPolyZ UPolyZ::operator*(const UPolyZ& o) const {
    if (c_.empty() || o.c_.empty()) return UPolyZ();
    std::vector<mpz_class> out(c_.size() + o.c_.size() - 1, mpz_class(0));
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t k = 0; k < o.c_.size(); ++k) out[i + k] += c_[i] * o.c_[k];
    return UPolyZ(std::move(out));
}

UPolyZ UPolyZ::operator-() const {
    std::vector<mpz_class> out(c_);
    for (auto& x : out) x = -x;
    return UPolyZ(std::move(out));
}

Mat2 sl2_power(const Mat2& V, long long j, double det_tol) {
    const cplx det = V.det();
    const double scale = 1.0 + V.norm() * V.norm();
    if (std::abs(det - cplx(1.0, 0.0)) > det_tol * scale)
        throw error(errc::not_unimodular, "sl2_power: matrix determinant is not 1");
    const ChebPair p = cheb_pair(j, V.trace());
    const Mat2 vinv = V.adjugate();
    return Mat2::identity() * p.s_j - vinv * p.s_jm1;
}

} // namespace dtlink
