#ifndef SPINERGY_LATTICE_HPP
#define SPINERGY_LATTICE_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <tuple>

#include "spinergy/grid.hpp"

namespace spinergy {

// Lattice in the euclidean plane, columns of B are the generators.
struct Lattice {
    Vec2 gamma1{1, 0}, gamma2{0, 1};

    Mat2 basis() const { return {gamma1.v1, gamma2.v1, gamma1.v2, gamma2.v2}; }
    double area() const {
        double d = std::abs(basis().det());
        if (d <= 0) throw std::invalid_argument("lattice generators are linearly dependent");
        return d;
    }
};

// Character chi : lattice -> {+1,-1}; (+1,+1) is the non-bounding structure.
struct SpinCharacter {
    int chi1 = 1, chi2 = 1;

    SpinCharacter() = default;
    SpinCharacter(int c1, int c2) : chi1(c1), chi2(c2) {
        if ((chi1 != 1 && chi1 != -1) || (chi2 != 1 && chi2 != -1))
            throw std::invalid_argument("character values must be +1 or -1");
    }
    bool non_bounding() const { return chi1 == 1 && chi2 == 1; }
};

// Constant flat metric in unit-square lattice coordinates together with the
// parallel orthonormal frame E = G^{-1/2}: covariant derivative along the
// frame vector e_i is sum_j E(j,i) d/ds_j.
struct FlatMetric {
    Mat2 g = mat2_identity();
    Mat2 ginv = mat2_identity();
    Mat2 frame = mat2_identity();       // E
    Mat2 frame_inv = mat2_identity();   // E^{-1} = G^{1/2}
    double sqrt_det = 1.0;

    FlatMetric() = default;
    explicit FlatMetric(Mat2 g_) {
        double asym = std::abs(g_.m12 - g_.m21);
        if (asym > 1e-12 * (std::abs(g_.m11) + std::abs(g_.m22)))
            throw std::invalid_argument("metric not positive definite");
        g = g_;
        g.m12 = g.m21 = 0.5 * (g_.m12 + g_.m21);
        double tr = g.trace(), det = g.det();
        if (det <= 0 || tr <= 0) throw std::invalid_argument("metric not positive definite");
        double disc = std::sqrt(std::max(0.0, 0.25*tr*tr - det));
        double l1 = 0.5*tr + disc, l2 = 0.5*tr - disc; // eigenvalues, l1 >= l2 > 0
        if (l2 <= 0) throw std::invalid_argument("metric not positive definite");
        sqrt_det = std::sqrt(det);
        // symmetric square roots: sqrt(G) = (G + sqrt(det) I)/(sqrt(l1)+sqrt(l2))
        double s = std::sqrt(l1) + std::sqrt(l2);
        frame_inv = (1.0/s) * (g + sqrt_det*mat2_identity());
        double fd = frame_inv.det();
        frame = (1.0/fd) * Mat2{frame_inv.m22, -frame_inv.m12, -frame_inv.m21, frame_inv.m11};
        ginv = frame * frame.transpose();
    }

    double lambda_min() const {
        double tr = g.trace(), det = g.det();
        return 0.5*tr - std::sqrt(std::max(0.0, 0.25*tr*tr - det));
    }
};

inline FlatMetric covariant_frame(Mat2 g) { return FlatMetric(g); }

inline FlatMetric metric_of(const Lattice& lat) {
    Mat2 b = lat.basis();
    return FlatMetric(b.transpose() * b);
}

// Area-preserving deformation of the flat moduli: stretch 1+t along the
// lattice-coordinate direction (1,1), compress along (1,-1).
inline FlatMetric deformed_metric(const FlatMetric& base, double t) {
    if (!(t > -1.0)) throw std::invalid_argument("deformation parameter must exceed -1");
    double a = 1.0 + t, b = 1.0/(1.0 + t);
    Mat2 d{0.5*(a + b), 0.5*(a - b), 0.5*(a - b), 0.5*(a + b)};
    return FlatMetric(d.transpose() * base.g * d);
}

// Spin-structure counts on a closed oriented genus-gamma surface:
// total 2^{2 gamma}, of which 2^{gamma-1}(2^gamma + 1) bound and
// 2^{gamma-1}(2^gamma - 1) do not.
struct SpinStructureCount {
    std::uint64_t total = 0, bounding = 0, nonbounding = 0;
};

inline SpinStructureCount spin_structure_count(int gamma) {
    if (gamma < 0 || gamma > 31) throw std::invalid_argument("genus out of range");
    std::uint64_t p = std::uint64_t(1) << gamma; // 2^gamma
    SpinStructureCount c;
    c.total = p * p;
    c.bounding = p * (p + 1) / 2;
    c.nonbounding = p * (p - 1) / 2;
    return c;
}

} // namespace spinergy

#endif
