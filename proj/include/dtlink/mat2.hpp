#ifndef DTLINK_MAT2_HPP
#define DTLINK_MAT2_HPP

#include <cmath>
#include <complex>

namespace dtlink {

using cplx = std::complex<double>;

/* 2x2 complex matrix, row major: [a b; c d]. */
struct Mat2 {
    cplx a{0}, b{0}, c{0}, d{0};

    static Mat2 identity() { return {1, 0, 0, 1}; }

    cplx trace() const { return a + d; }
    cplx det() const { return a * d - b * c; }

    // adjugate; equals the inverse when det = 1
    Mat2 adjugate() const { return {d, -b, -c, a}; }

    Mat2 operator*(const Mat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d,
                c * o.a + d * o.c, c * o.b + d * o.d};
    }
    Mat2 operator+(const Mat2& o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
    Mat2 operator-(const Mat2& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
    Mat2 operator*(cplx s) const { return {a * s, b * s, c * s, d * s}; }

    double norm() const {
        return std::sqrt(std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d));
    }
};

inline Mat2 operator*(cplx s, const Mat2& m) { return m * s; }

} // namespace dtlink

#endif
