#ifndef SPINERGY_IMMERSION_HPP
#define SPINERGY_IMMERSION_HPP

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "spinergy/functional.hpp"

namespace spinergy {

// 2-jet of an arclength profile curve u -> (axial, radius)
struct CurveJet { double x = 0, r = 0, dx = 0, dr = 0, ddx = 0, ddr = 0; };

struct ProfilePiece {
    double u0 = 0, u1 = 0;
    std::function<CurveJet(double)> jet;
};

// piecewise-smooth arclength generating curve, radius > 0 off the axis
struct ProfileCurve {
    std::vector<ProfilePiece> pieces;
    double u_begin() const { return pieces.front().u0; }
    double u_end() const { return pieces.back().u1; }
    CurveJet eval(double u) const;
};

// catenoid / circular-arc / flat-annulus generating curve (one half of the
// handle); truncated where the annulus reaches radius 2b
ProfileCurve handle_profile(double L);

struct RevolutionSurface {
    ProfileCurve profile;
    bool doubled = false;   // reflect through the waist plane
};

// mean curvature of the revolved surface at profile parameter u
double revolution_mean_curvature(const CurveJet& j);

// 1/2 integral H^2 over the surface of revolution, adaptive composite
// Gauss-Legendre per smooth piece
double willmore_revolution(const RevolutionSurface& surf, double rel_tol = 1e-12);

// checks used by the test suite
double profile_unit_speed_residual(const ProfileCurve& c, int samples);
double profile_c1_mismatch(const ProfileCurve& c);

// independent reduction of the handle energy to a 1d closed form,
// W = pi [ (L - s)/s + int_{-alpha}^0 dtheta / (b + R sin theta) ], s = sqrt(1+L^2)
double handle_willmore_closed_form(double L, bool doubled);

// 2 (a + R) / (2 b) for the rescaled handle; closed-form identity of the remark
double handle_neck_distance(double L);
double handle_neck_identity_residual(double L);

// product torus S^1_r x S^1_delta inside T^2 x S^1_delta: quadrature of
// 1/2 (kappa/2)^2 over the cross-section circle
double willmore_product_torus(double r, double delta);

// energy bookkeeping of the glued almost-minimiser: sum of doubled-handle
// energies (closed form) + base Willmore + topological term pi |gamma - 1|
double almost_minimiser_energy(int gamma, const std::vector<double>& handle_Ls,
                               double base_willmore);

// ---- spinorial Weierstrass map -------------------------------------------------

// isometric R^3-valued 1-form xi(X) = Im(conj(phi) (JX) phi); closed exactly
// when D phi = H phi for a real function H
struct WeierstrassForm {
    GridField<Vec3> comp1, comp2;   // frame components
    FlatMetric metric;
};

WeierstrassForm weierstrass_form(const SpinorField& phi);
double weierstrass_closedness(const WeierstrassForm& xi);
double weierstrass_isometry_residual(const WeierstrassForm& xi);

struct ImmersionResult {
    GridField<Vec3> F;
    Vec3 period1, period2;
    double closedness = 0;
    double period_path_dependence = 0;
};

ImmersionResult weierstrass_integrate(const SpinorField& phi, double closedness_tol = 1e-8);

void write_obj(std::ostream& os, const GridField<Vec3>& F);

struct MeanCurvatureResult {
    ScalarField h;
    bool proportional = false;
    double residual = 0;   // max |D phi - H phi|
};

MeanCurvatureResult mean_curvature_from_spinor(const SpinorField& phi, double tol = 1e-6);

} // namespace spinergy

#endif
