#ifndef SPINERGY_FAMILIES_HPP
#define SPINERGY_FAMILIES_HPP

#include <string>
#include <vector>

#include "spinergy/functional.hpp"

namespace spinergy {

// Flat-torus saddle family phi = cos(theta) e^{a1(x) w} psi1 + sin(theta) e^{a2(x) w} psi2
// with psi1 = 1, psi2 = j and constant covectors a1, a2 (euclidean components).
// Defaults put a1 = (pi/ell) e1, a2 = (pi/ell) e2, the critical normalization.
struct SaddleParams {
    double ell = 1.0;
    double theta = 0.78539816339744831; // pi/4
    double slope = 0.0;                 // d theta / dt along the moduli curve
    Vec2 alpha1{0, 0}, alpha2{0, 0};    // zero means "derive from ell"

    Vec2 a1() const { return (alpha1.v1 == 0 && alpha1.v2 == 0) ? Vec2{3.14159265358979324/ell, 0} : alpha1; }
    Vec2 a2() const { return (alpha2.v1 == 0 && alpha2.v2 == 0) ? Vec2{0, 3.14159265358979324/ell} : alpha2; }
};

// descent check: e^{a_i(gamma) w} = chi(gamma) for both generators
bool saddle_descends(const SaddleParams& p, const Lattice& lat, SpinCharacter chi,
                     double tol = 1e-9);

SpinorField build_saddle(const SaddleParams& p, const Lattice& lat, SpinCharacter chi, Grid grid);

// seam mismatch max |phi(s + e_i) - chi_i phi(s)| of the raw ansatz, used to
// quantify rejected lattices
double saddle_seam_mismatch(const SaddleParams& p, const Lattice& lat, SpinCharacter chi, Grid grid);

SpinorField build_parallel(const Lattice& lat, SpinCharacter chi, Grid grid);

// energy along the area-preserving moduli deformation
struct ModuliPoint { double f_closed = 0, energy_discrete = 0; };
ModuliPoint moduli_energy_curve(const SaddleParams& p, const Lattice& lat, SpinCharacter chi,
                                Grid grid, double t);

// Richardson second difference of a curve at 0 with steps h and h/10
template <class F>
double second_derivative_richardson(F&& f, double h1 = 1e-2, double h2 = 1e-3) {
    double f0 = f(0.0);
    auto d2 = [&](double h) { return (f(h) - 2.0*f0 + f(-h)) / (h*h); };
    double a = d2(h1), b = d2(h2);
    return (h1*h1*b - h2*h2*a) / (h1*h1 - h2*h2);
}

// Twistor data on the round sphere: grad_X phi = a X.phi + b J(X).phi.
struct TwistorParams { double a = 0.5, b = 0.0; };

struct TwistorReport {
    double curvature = 0;        // K = 4(a^2+b^2)
    double area = 0;             // 4 pi / K
    double energy = 0;           // 1/2 |A|^2 area
    double traceless_residual = 0;   // || (A^t A + beta x beta)_0 ||
    double equality_residual = 0;    // | 2 |grad phi|^2 - K |
    double det_residual = 0;         // | 4 det A - K |
    bool parallel_flag = false;      // a = b = 0 degenerates to flat data
};

TwistorReport twistor_closed_form_check(const TwistorParams& p);

enum class FlatCriticalVerdict { absolute_minimiser, saddle_family, inconsistent };

struct ClassifyReport {
    FlatCriticalVerdict verdict = FlatCriticalVerdict::inconsistent;
    double beta_parallel = 0;    // ||grad beta||_inf
    double beta_in_kernel = 0;   // ||A(beta#)||_inf
    double norm_match = 0;       // || |A|^2 - |beta|^2 ||_inf
    double rotation_identity = 0; // dA(e1,e2) + 2 b(e2) J A(e1) - 2 b(e1) J A(e2)
};

// precondition: the pair comes from a point with gradient residual below tol
ClassifyReport classify_flat_critical(const PairField& pair, const SpinorField& phi, double tol);

std::string to_string(FlatCriticalVerdict v);

// absolute-minimiser characterization: beta = 0, A traceless symmetric, div A small
bool tt_predicate(const PairField& pair, double tol = 1e-8);

} // namespace spinergy

#endif
