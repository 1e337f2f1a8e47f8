#ifndef SPINERGY_GRID_HPP
#define SPINERGY_GRID_HPP

#include <array>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "spinergy/quaternion.hpp"

namespace spinergy {

// 2x2 real matrix, row index first.
struct Mat2 {
    double m11 = 0, m12 = 0, m21 = 0, m22 = 0;

    friend Mat2 operator+(Mat2 a, Mat2 b) { return {a.m11+b.m11, a.m12+b.m12, a.m21+b.m21, a.m22+b.m22}; }
    friend Mat2 operator-(Mat2 a, Mat2 b) { return {a.m11-b.m11, a.m12-b.m12, a.m21-b.m21, a.m22-b.m22}; }
    friend Mat2 operator*(double c, Mat2 a) { return {c*a.m11, c*a.m12, c*a.m21, c*a.m22}; }
    friend Mat2 operator*(Mat2 a, Mat2 b) {
        return {a.m11*b.m11 + a.m12*b.m21, a.m11*b.m12 + a.m12*b.m22,
                a.m21*b.m11 + a.m22*b.m21, a.m21*b.m12 + a.m22*b.m22};
    }
    Vec2 apply(Vec2 v) const { return {m11*v.v1 + m12*v.v2, m21*v.v1 + m22*v.v2}; }
    Mat2 transpose() const { return {m11, m21, m12, m22}; }
    double trace() const { return m11 + m22; }
    double det() const { return m11*m22 - m12*m21; }
};

inline Mat2 mat2_identity() { return {1, 0, 0, 1}; }

struct Vec3 {
    double x = 0, y = 0, z = 0;
    friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x+b.x, a.y+b.y, a.z+b.z}; }
    friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x-b.x, a.y-b.y, a.z-b.z}; }
    friend Vec3 operator*(double c, Vec3 a) { return {c*a.x, c*a.y, c*a.z}; }
};
inline double norm(Vec3 a) { return std::sqrt(a.x*a.x + a.y*a.y + a.z*a.z); }
inline Mat2 outer(Vec2 a, Vec2 b) { return {a.v1*b.v1, a.v1*b.v2, a.v2*b.v1, a.v2*b.v2}; }
inline double frob_dot(Mat2 a, Mat2 b) { return a.m11*b.m11 + a.m12*b.m12 + a.m21*b.m21 + a.m22*b.m22; }
inline Mat2 traceless(Mat2 a) {
    double t = 0.5*a.trace();
    return {a.m11 - t, a.m12, a.m21, a.m22 - t};
}

// Square periodic grid over the unit square of lattice coordinates. N even, >= 8.
struct Grid {
    int n = 0;
    Grid() = default;
    explicit Grid(int n_) : n(n_) {
        if (n < 8 || n % 2 != 0) throw std::invalid_argument("grid size must be even and >= 8");
    }
    double h() const { return 1.0 / n; }
    std::size_t nodes() const { return std::size_t(n) * n; }
};

// Node-sampled field on the unit square, value(s + e_i) = wrap_sign[i] * value(s).
// Tensorial fields (scalars, covectors, endomorphisms) have wrap_sign = +1;
// spinor fields carry the character of their spin structure.
template <class T>
struct GridField {
    int n = 0;
    std::array<double, 2> wrap_sign{1.0, 1.0};
    std::vector<T> v;

    GridField() = default;
    explicit GridField(int n_, T fill = T{}) : n(n_), v(std::size_t(n_)*n_, fill) {}

    T& at(int i, int j) { return v[std::size_t(i)*n + j]; }
    const T& at(int i, int j) const { return v[std::size_t(i)*n + j]; }

    // value with twisted wraparound; |off| < n assumed
    T wrapped(int i, int j) const {
        double s = 1.0;
        if (i < 0) { i += n; s *= wrap_sign[0]; } else if (i >= n) { i -= n; s *= wrap_sign[0]; }
        if (j < 0) { j += n; s *= wrap_sign[1]; } else if (j >= n) { j -= n; s *= wrap_sign[1]; }
        const T& t = v[std::size_t(i)*n + j];
        return s == 1.0 ? t : static_cast<T>(s * t);
    }
};

using ScalarField = GridField<double>;
using CovectorField = GridField<Vec2>;
using Matrix2Field = GridField<Mat2>;
using QuatField = GridField<Quat>;

namespace detail {
// treat T as a block of doubles for the stencil kernels
template <class T> constexpr int comps();
template <> constexpr int comps<double>() { return 1; }
template <> constexpr int comps<Vec2>() { return 2; }
template <> constexpr int comps<Quat>() { return 4; }
template <> constexpr int comps<Mat2>() { return 4; }
template <> constexpr int comps<Vec3>() { return 3; }
} // namespace detail

// 4th-order central difference d/ds_axis with twisted wraparound.
template <class T>
void derivative_into(const GridField<T>& f, int axis, GridField<T>& out) {
    const int n = f.n, nc = detail::comps<T>();
    if (out.n != n) out = GridField<T>(n);
    out.wrap_sign = f.wrap_sign;
    const double c = n / 12.0; // 1/(12 h)
    const double tw = f.wrap_sign[axis];
    const double* src = reinterpret_cast<const double*>(f.v.data());
    double* dst = reinterpret_cast<double*>(out.v.data());
    if (axis == 0) {
        for (int i = 0; i < n; ++i) {
            int ip1 = i+1, im1 = i-1, ip2 = i+2, im2 = i-2;
            double sp1 = 1, sm1 = 1, sp2 = 1, sm2 = 1;
            if (ip1 >= n) { ip1 -= n; sp1 = tw; }
            if (ip2 >= n) { ip2 -= n; sp2 = tw; }
            if (im1 < 0) { im1 += n; sm1 = tw; }
            if (im2 < 0) { im2 += n; sm2 = tw; }
            const double* rp1 = src + std::size_t(ip1)*n*nc;
            const double* rm1 = src + std::size_t(im1)*n*nc;
            const double* rp2 = src + std::size_t(ip2)*n*nc;
            const double* rm2 = src + std::size_t(im2)*n*nc;
            double* o = dst + std::size_t(i)*n*nc;
            for (int k = 0; k < n*nc; ++k)
                o[k] = (8.0*(sp1*rp1[k] - sm1*rm1[k]) - (sp2*rp2[k] - sm2*rm2[k])) * c;
        }
    } else {
        for (int i = 0; i < n; ++i) {
            const double* r = src + std::size_t(i)*n*nc;
            double* o = dst + std::size_t(i)*n*nc;
            // interior columns carry no wraparound
            for (int k = 2*nc; k < (n-2)*nc; ++k)
                o[k] = (8.0*(r[k+nc] - r[k-nc]) - (r[k+2*nc] - r[k-2*nc])) * c;
            for (int j : {0, 1, n-2, n-1}) {
                int jp1 = j+1, jm1 = j-1, jp2 = j+2, jm2 = j-2;
                double sp1 = 1, sm1 = 1, sp2 = 1, sm2 = 1;
                if (jp1 >= n) { jp1 -= n; sp1 = tw; }
                if (jp2 >= n) { jp2 -= n; sp2 = tw; }
                if (jm1 < 0) { jm1 += n; sm1 = tw; }
                if (jm2 < 0) { jm2 += n; sm2 = tw; }
                for (int k = 0; k < nc; ++k)
                    o[j*nc+k] = (8.0*(sp1*r[jp1*nc+k] - sm1*r[jm1*nc+k])
                                 - (sp2*r[jp2*nc+k] - sm2*r[jm2*nc+k])) * c;
            }
        }
    }
}

template <class T>
GridField<T> derivative(const GridField<T>& f, int axis) {
    GridField<T> out;
    derivative_into(f, axis, out);
    return out;
}

template <class T, class F>
GridField<T> map_field(int n, F&& fn) {
    GridField<T> out(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out.at(i, j) = fn(double(i)/n, double(j)/n);
    return out;
}

} // namespace spinergy

#endif
