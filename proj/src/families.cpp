#include "spinergy/families.hpp"

#include <cmath>

namespace spinergy {

namespace {
constexpr double kPi = 3.14159265358979324;

// e^{t w} = chi as a residual: chi = +1 wants t in 2 pi Z, chi = -1 wants odd multiples
double phase_mismatch(double t, int chi) {
    double target = (chi == 1) ? 0.0 : kPi;
    double r = std::remainder(t - target, 2.0*kPi);
    return std::abs(r);
}
} // namespace

bool saddle_descends(const SaddleParams& p, const Lattice& lat, SpinCharacter chi, double tol) {
    Vec2 a1 = p.a1(), a2 = p.a2();
    for (int gen = 0; gen < 2; ++gen) {
        Vec2 g = (gen == 0) ? lat.gamma1 : lat.gamma2;
        int c = (gen == 0) ? chi.chi1 : chi.chi2;
        if (phase_mismatch(dot(a1, g), c) > tol) return false;
        if (phase_mismatch(dot(a2, g), c) > tol) return false;
    }
    return true;
}

namespace {
QuatField saddle_raw(const SaddleParams& p, const Lattice& lat, Grid grid) {
    const int n = grid.n;
    Vec2 a1 = p.a1(), a2 = p.a2();
    Mat2 b = lat.basis();
    // lattice-coordinate coefficients of the phases alpha_i(B s)
    double c11 = a1.v1*b.m11 + a1.v2*b.m21, c12 = a1.v1*b.m12 + a1.v2*b.m22;
    double c21 = a2.v1*b.m11 + a2.v2*b.m21, c22 = a2.v1*b.m12 + a2.v2*b.m22;
    double ct = std::cos(p.theta), st = std::sin(p.theta);
    QuatField f(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double s1 = double(i)/n, s2 = double(j)/n;
            f.at(i, j) = ct*omega_exp(c11*s1 + c12*s2)
                       + st*(omega_exp(c21*s1 + c22*s2)*quat_j);
        }
    return f;
}
} // namespace

SpinorField build_saddle(const SaddleParams& p, const Lattice& lat, SpinCharacter chi, Grid grid) {
    if (!saddle_descends(p, lat, chi))
        throw std::invalid_argument("spinor does not descend to this lattice/character");
    return SpinorField(saddle_raw(p, lat, grid), chi, metric_of(lat));
}

double saddle_seam_mismatch(const SaddleParams& p, const Lattice& lat, SpinCharacter chi, Grid grid) {
    QuatField f = saddle_raw(p, lat, grid);
    // continuum seam: phi(s + e_i) vs chi_i phi(s); evaluate analytically at s and s + e_i
    const int n = grid.n;
    Vec2 a1 = p.a1(), a2 = p.a2();
    Mat2 b = lat.basis();
    double c11 = a1.v1*b.m11 + a1.v2*b.m21, c12 = a1.v1*b.m12 + a1.v2*b.m22;
    double c21 = a2.v1*b.m11 + a2.v2*b.m21, c22 = a2.v1*b.m12 + a2.v2*b.m22;
    double ct = std::cos(p.theta), st = std::sin(p.theta);
    auto value = [&](double s1, double s2) {
        return ct*omega_exp(c11*s1 + c12*s2) + st*(omega_exp(c21*s1 + c22*s2)*quat_j);
    };
    double r = 0;
    for (int k = 0; k < n; ++k) {
        double s = double(k)/n;
        r = std::max(r, norm(value(s + 0.0, 1.0) - double(chi.chi2)*value(s, 0.0)));
        r = std::max(r, norm(value(1.0, s + 0.0) - double(chi.chi1)*value(0.0, s)));
    }
    return r;
}

SpinorField build_parallel(const Lattice& lat, SpinCharacter chi, Grid grid) {
    if (!chi.non_bounding())
        throw std::invalid_argument("parallel spinors require the non-bounding structure");
    QuatField f(grid.n, quat_one);
    return SpinorField(std::move(f), chi, metric_of(lat));
}

ModuliPoint moduli_energy_curve(const SaddleParams& p, const Lattice& lat, SpinCharacter chi,
                                Grid grid, double t) {
    if (!(std::abs(t) < 1.0)) throw std::invalid_argument("moduli parameter must satisfy |t| < 1");
    double theta_t = p.theta + p.slope*t;
    double c2 = std::cos(theta_t)*std::cos(theta_t), s2 = std::sin(theta_t)*std::sin(theta_t);
    ModuliPoint out;
    out.f_closed = c2/((1.0 + t)*(1.0 + t)) + s2*(1.0 + t)*(1.0 + t);
    SaddleParams pt = p;
    pt.theta = theta_t;
    SpinorField phi = build_saddle(pt, lat, chi, grid);
    out.energy_discrete = energy(phi, deformed_metric(metric_of(lat), t));
    return out;
}

TwistorReport twistor_closed_form_check(const TwistorParams& p) {
    TwistorReport r;
    double k = 4.0*(p.a*p.a + p.b*p.b);
    r.curvature = k;
    if (k == 0) { r.parallel_flag = true; return r; }
    Mat2 a{p.a, -p.b, p.b, p.a};            // A = a Id + b J
    Mat2 s = a.transpose()*a;               // beta = 0
    r.traceless_residual = std::abs(traceless(s).m11) + std::abs(traceless(s).m12)
                         + std::abs(traceless(s).m21) + std::abs(traceless(s).m22);
    double n2 = frob_dot(a, a);             // |grad phi|^2 = |A|^2
    r.equality_residual = std::abs(2.0*n2 - k);
    r.det_residual = std::abs(4.0*a.det() - k);
    r.area = 4.0*kPi/k;
    r.energy = 0.5*n2*r.area;
    return r;
}

std::string to_string(FlatCriticalVerdict v) {
    switch (v) {
        case FlatCriticalVerdict::absolute_minimiser: return "absolute_minimiser";
        case FlatCriticalVerdict::saddle_family: return "saddle_family";
        default: return "inconsistent";
    }
}

ClassifyReport classify_flat_critical(const PairField& pair, const SpinorField& phi, double tol) {
    GradientPair g = neg_gradient_pair(pair, phi);
    if (gradient_linf(g) > tol) throw std::invalid_argument("input not critical");

    ClassifyReport rep;
    auto db = frame_gradient(pair.beta, pair.metric);
    double amax = 0, bmax = 0;
    for (std::size_t k = 0; k < pair.beta.v.size(); ++k) {
        const Mat2& a = pair.endo.v[k];
        const Vec2& b = pair.beta.v[k];
        rep.beta_parallel = std::max({rep.beta_parallel,
                                      std::abs(db[0].v[k].v1), std::abs(db[0].v[k].v2),
                                      std::abs(db[1].v[k].v1), std::abs(db[1].v[k].v2)});
        rep.beta_in_kernel = std::max(rep.beta_in_kernel, norm(a.apply(b)));
        rep.norm_match = std::max(rep.norm_match, std::abs(frob_dot(a, a) - dot(b, b)));
        amax = std::max(amax, std::sqrt(frob_dot(a, a)));
        bmax = std::max(bmax, norm(b));
    }
    // dA(e1,e2) = -2 b(e2) J(A(e1)) + 2 b(e1) J(A(e2))
    auto da = frame_gradient(pair.endo, pair.metric);
    for (std::size_t k = 0; k < pair.endo.v.size(); ++k) {
        const Mat2& a = pair.endo.v[k];
        const Vec2& b = pair.beta.v[k];
        Vec2 dA_col{da[0].v[k].m12 - da[1].v[k].m11, da[0].v[k].m22 - da[1].v[k].m21};
        Vec2 rhs = -2.0*b.v2*rot90(Vec2{a.m11, a.m21}) + 2.0*b.v1*rot90(Vec2{a.m12, a.m22});
        rep.rotation_identity = std::max(rep.rotation_identity, norm(dA_col - rhs));
    }
    if (amax < tol && bmax < tol) {
        rep.verdict = FlatCriticalVerdict::absolute_minimiser;
    } else if (rep.beta_parallel < tol && rep.beta_in_kernel < tol &&
               rep.norm_match < tol && rep.rotation_identity < tol) {
        rep.verdict = FlatCriticalVerdict::saddle_family;
    } else {
        rep.verdict = FlatCriticalVerdict::inconsistent;
    }
    return rep;
}

bool tt_predicate(const PairField& pair, double tol) {
    CovectorField divA = divergence(pair.endo, pair.metric);
    for (std::size_t k = 0; k < pair.endo.v.size(); ++k) {
        const Mat2& a = pair.endo.v[k];
        if (norm(pair.beta.v[k]) > tol) return false;
        if (std::abs(a.trace()) > tol) return false;
        if (std::abs(a.m12 - a.m21) > tol) return false;
        if (norm(divA.v[k]) > tol) return false;
    }
    return true;
}

} // namespace spinergy
