#ifndef SPINERGY_QUATERNION_HPP
#define SPINERGY_QUATERNION_HPP

#include <cmath>

namespace spinergy {

// Rank-1 quaternionic model of the spinor module over a flat surface.
// The Clifford action of an orthonormal frame (e1, e2) is fixed once and
// for all as left multiplication by i and j, so the volume element acts
// as left multiplication by k and right multiplications commute with
// everything geometric.
struct Quat {
    double w = 0, x = 0, y = 0, z = 0;

    constexpr Quat() = default;
    constexpr Quat(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}

    Quat& operator+=(const Quat& q) { w += q.w; x += q.x; y += q.y; z += q.z; return *this; }
    Quat& operator-=(const Quat& q) { w -= q.w; x -= q.x; y -= q.y; z -= q.z; return *this; }
    Quat& operator*=(double c) { w *= c; x *= c; y *= c; z *= c; return *this; }

    friend Quat operator+(Quat a, const Quat& b) { return a += b; }
    friend Quat operator-(Quat a, const Quat& b) { return a -= b; }
    friend Quat operator*(Quat a, double c) { return a *= c; }
    friend Quat operator*(double c, Quat a) { return a *= c; }
    friend Quat operator-(const Quat& a) { return {-a.w, -a.x, -a.y, -a.z}; }

    friend Quat operator*(const Quat& a, const Quat& b) {
        return {a.w*b.w - a.x*b.x - a.y*b.y - a.z*b.z,
                a.w*b.x + a.x*b.w + a.y*b.z - a.z*b.y,
                a.w*b.y - a.x*b.z + a.y*b.w + a.z*b.x,
                a.w*b.z + a.x*b.y - a.y*b.x + a.z*b.w};
    }
};

inline Quat conj(const Quat& q) { return {q.w, -q.x, -q.y, -q.z}; }

// real inner product <q,p> = Re(conj(q) p)
inline double dot(const Quat& a, const Quat& b) { return a.w*b.w + a.x*b.x + a.y*b.y + a.z*b.z; }
inline double norm2(const Quat& q) { return dot(q, q); }
inline double norm(const Quat& q) { return std::sqrt(norm2(q)); }

inline constexpr Quat quat_one{1, 0, 0, 0};
inline constexpr Quat quat_i{0, 1, 0, 0};
inline constexpr Quat quat_j{0, 0, 1, 0};
inline constexpr Quat quat_k{0, 0, 0, 1};

// Tangent vector in orthonormal-frame components.
struct Vec2 {
    double v1 = 0, v2 = 0;

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.v1 + b.v1, a.v2 + b.v2}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.v1 - b.v1, a.v2 - b.v2}; }
    friend Vec2 operator*(double c, Vec2 a) { return {c*a.v1, c*a.v2}; }
    friend Vec2 operator-(Vec2 a) { return {-a.v1, -a.v2}; }
};

inline double dot(Vec2 a, Vec2 b) { return a.v1*b.v1 + a.v2*b.v2; }
inline double norm(Vec2 a) { return std::sqrt(dot(a, a)); }

// rotation by +pi/2 (the complex structure in the oriented frame)
inline Vec2 rot90(Vec2 v) { return {-v.v2, v.v1}; }

// Clifford action X . q = (v1 i + v2 j) q
inline Quat clifford_mul(Vec2 X, const Quat& q) {
    return {-X.v1*q.x - X.v2*q.y,
             X.v1*q.w + X.v2*q.z,
             X.v2*q.w - X.v1*q.z,
             X.v1*q.y - X.v2*q.x};
}

// volume-element action omega . q = k q
inline Quat omega_mul(const Quat& q) { return {-q.z, -q.y, q.x, q.w}; }

// e^{t omega} = cos t + sin t k
inline Quat omega_exp(double t) { return {std::cos(t), 0, 0, std::sin(t)}; }

// right quaternionic structure q . c
inline Quat right_mul(const Quat& q, const Quat& c) { return q*c; }

} // namespace spinergy

#endif
