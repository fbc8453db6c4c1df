#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace ottoref {

using cplx = std::complex<double>;

/// Complex 2-vector in the fixed {|up>, |down>} basis.
struct Vec2 {
    cplx a{0.0}, b{0.0};

    double norm2() const { return std::norm(a) + std::norm(b); }
    double norm() const { return std::sqrt(norm2()); }
};

inline Vec2 operator*(cplx s, const Vec2& v) { return {s * v.a, s * v.b}; }

/// <u|v> with the physics convention (antilinear in the first slot).
inline cplx inner(const Vec2& u, const Vec2& v)
{
    return std::conj(u.a) * v.a + std::conj(u.b) * v.b;
}

/// Dense complex 2x2 matrix, row-major.
struct Mat2 {
    cplx m00{0.0}, m01{0.0}, m10{0.0}, m11{0.0};

    Mat2& operator+=(const Mat2& o)
    {
        m00 += o.m00; m01 += o.m01; m10 += o.m10; m11 += o.m11;
        return *this;
    }
    Mat2& operator-=(const Mat2& o)
    {
        m00 -= o.m00; m01 -= o.m01; m10 -= o.m10; m11 -= o.m11;
        return *this;
    }
    Mat2& operator*=(cplx s)
    {
        m00 *= s; m01 *= s; m10 *= s; m11 *= s;
        return *this;
    }
};

inline Mat2 operator+(Mat2 x, const Mat2& y) { return x += y; }
inline Mat2 operator-(Mat2 x, const Mat2& y) { return x -= y; }
inline Mat2 operator*(cplx s, Mat2 x) { return x *= s; }
inline Mat2 operator*(double s, Mat2 x) { return x *= cplx(s); }

inline Mat2 operator*(const Mat2& x, const Mat2& y)
{
    return {x.m00 * y.m00 + x.m01 * y.m10, x.m00 * y.m01 + x.m01 * y.m11,
            x.m10 * y.m00 + x.m11 * y.m10, x.m10 * y.m01 + x.m11 * y.m11};
}

inline Vec2 operator*(const Mat2& x, const Vec2& v)
{
    return {x.m00 * v.a + x.m01 * v.b, x.m10 * v.a + x.m11 * v.b};
}

inline Mat2 dagger(const Mat2& x)
{
    return {std::conj(x.m00), std::conj(x.m10), std::conj(x.m01), std::conj(x.m11)};
}

inline cplx trace(const Mat2& x) { return x.m00 + x.m11; }

inline Mat2 commutator(const Mat2& x, const Mat2& y) { return x * y - y * x; }

/// |u><v|
inline Mat2 outer(const Vec2& u, const Vec2& v)
{
    return {u.a * std::conj(v.a), u.a * std::conj(v.b),
            u.b * std::conj(v.a), u.b * std::conj(v.b)};
}

/// <u| X |v>
inline cplx sandwich(const Vec2& u, const Mat2& x, const Vec2& v)
{
    return inner(u, x * v);
}

inline Mat2 identity2() { return {1.0, 0.0, 0.0, 1.0}; }
inline Mat2 pauli_x() { return {0.0, 1.0, 1.0, 0.0}; }
inline Mat2 pauli_y() { return {0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0}; }
inline Mat2 pauli_z() { return {1.0, 0.0, 0.0, -1.0}; }

inline double frobenius_norm(const Mat2& x)
{
    return std::sqrt(std::norm(x.m00) + std::norm(x.m01) + std::norm(x.m10) + std::norm(x.m11));
}

/// Max entrywise deviation from Hermiticity, |X - X^dag|.
inline double hermiticity_defect(const Mat2& x)
{
    double d = std::abs(x.m01 - std::conj(x.m10));
    d = std::max(d, std::abs(std::imag(x.m00)));
    return std::max(d, std::abs(std::imag(x.m11)));
}

/// Eigenvalues of a Hermitian 2x2 matrix, ascending. Uses only the upper triangle.
inline std::array<double, 2> eigvals_hermitian(const Mat2& x)
{
    const double a = std::real(x.m00);
    const double d = std::real(x.m11);
    const double h = 0.5 * (a + d);
    const double r = std::hypot(0.5 * (a - d), std::abs(x.m01));
    return {h - r, h + r};
}

/// Trace distance (1/2)*||x - y||_1 for Hermitian x, y.
inline double trace_distance(const Mat2& x, const Mat2& y)
{
    const auto ev = eigvals_hermitian(x - y);
    return 0.5 * (std::abs(ev[0]) + std::abs(ev[1]));
}

}  // namespace ottoref
