#include "spinergy/immersion.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace spinergy {

namespace {
constexpr double kPi = 3.14159265358979324;

// Gauss-Legendre nodes/weights on [-1,1] by Newton iteration
struct GaussRule {
    std::vector<double> x, w;
    explicit GaussRule(int n) : x(n), w(n) {
        for (int i = 0; i < (n + 1)/2; ++i) {
            double z = std::cos(kPi*(i + 0.75)/(n + 0.5));
            double pp = 0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1, p1 = 0;
                for (int k = 0; k < n; ++k) {
                    double p2 = p1; p1 = p0;
                    p0 = ((2.0*k + 1.0)*z*p1 - k*p2)/(k + 1.0);
                }
                pp = n*(z*p0 - p1)/(z*z - 1.0);
                double dz = p0/pp;
                z -= dz;
                if (std::abs(dz) < 1e-15) break;
            }
            x[i] = -z; x[n-1-i] = z;
            w[i] = w[n-1-i] = 2.0/((1.0 - z*z)*pp*pp);
        }
    }
};

const GaussRule& rule32() { static GaussRule r(32); return r; }

double integrate_piece(const std::function<double(double)>& f, double a, double b,
                       int subdiv) {
    const GaussRule& g = rule32();
    double total = 0;
    double h = (b - a)/subdiv;
    for (int s = 0; s < subdiv; ++s) {
        double lo = a + s*h, mid = lo + 0.5*h;
        double acc = 0;
        for (std::size_t k = 0; k < g.x.size(); ++k) acc += g.w[k]*f(mid + 0.5*h*g.x[k]);
        total += 0.5*h*acc;
    }
    return total;
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol) {
    double prev = integrate_piece(f, a, b, 1);
    for (int subdiv = 2; subdiv <= 64; subdiv *= 2) {
        double cur = integrate_piece(f, a, b, subdiv);
        if (std::abs(cur - prev) <= rel_tol*std::max(1.0, std::abs(cur))) return cur;
        prev = cur;
    }
    return prev;
}
} // namespace

CurveJet ProfileCurve::eval(double u) const {
    for (const ProfilePiece& p : pieces)
        if (u <= p.u1 || &p == &pieces.back()) return p.jet(u);
    return pieces.back().jet(u);
}

ProfileCurve handle_profile(double L) {
    if (!(L > 0)) throw std::invalid_argument("handle parameter must be positive");
    double s = std::sqrt(1.0 + L*L);
    double a = std::asinh(L) - L*s;
    double b = 2.0*s;
    double R = 1.0 + L*L;
    double alpha = std::asin(1.0/s);
    double u1 = L, u2 = L + alpha*R;
    double u3 = u2 + b;             // annulus out to radius 2b

    ProfileCurve c;
    c.pieces.push_back({0.0, u1, [](double u) {
        double q = std::sqrt(1.0 + u*u);
        CurveJet j;
        j.x = std::asinh(u); j.r = q;
        j.dx = 1.0/q;        j.dr = u/q;
        j.ddx = -u/(q*q*q);  j.ddr = 1.0/(q*q*q);
        return j;
    }});
    c.pieces.push_back({u1, u2, [a, b, R, alpha, u1](double u) {
        double th = (u - u1)/R - alpha;
        CurveJet j;
        j.x = a + R*std::cos(th); j.r = b + R*std::sin(th);
        j.dx = -std::sin(th);     j.dr = std::cos(th);
        j.ddx = -std::cos(th)/R;  j.ddr = -std::sin(th)/R;
        return j;
    }});
    c.pieces.push_back({u2, u3, [a, b, R, u2](double u) {
        CurveJet j;
        j.x = a + R; j.r = b + (u - u2);
        j.dx = 0;    j.dr = 1;
        return j;
    }});
    return c;
}

double revolution_mean_curvature(const CurveJet& j) {
    if (!(j.r > 0)) throw std::invalid_argument("profile crosses the rotation axis");
    double k_meridian = j.ddx*j.dr - j.ddr*j.dx;
    double k_parallel = j.dx/j.r;
    return 0.5*(k_meridian + k_parallel);
}

double willmore_revolution(const RevolutionSurface& surf, double rel_tol) {
    double total = 0;
    for (const ProfilePiece& p : surf.profile.pieces) {
        auto f = [&](double u) {
            CurveJet j = p.jet(u);
            double h = revolution_mean_curvature(j);
            return 0.5*h*h*2.0*kPi*j.r;
        };
        total += integrate_adaptive(f, p.u0, p.u1, rel_tol);
    }
    return surf.doubled ? 2.0*total : total;
}

double profile_unit_speed_residual(const ProfileCurve& c, int samples) {
    double r = 0;
    double a = c.u_begin(), b = c.u_end();
    for (int k = 0; k < samples; ++k) {
        double u = a + (b - a)*(k + 0.5)/samples;
        CurveJet j = c.eval(u);
        r = std::max(r, std::abs(std::hypot(j.dx, j.dr) - 1.0));
    }
    return r;
}

double profile_c1_mismatch(const ProfileCurve& c) {
    double r = 0;
    for (std::size_t k = 0; k + 1 < c.pieces.size(); ++k) {
        double u = c.pieces[k].u1;
        CurveJet a = c.pieces[k].jet(u), b = c.pieces[k+1].jet(u);
        r = std::max({r, std::abs(a.x - b.x), std::abs(a.r - b.r),
                      std::abs(a.dx - b.dx), std::abs(a.dr - b.dr)});
    }
    return r;
}

double handle_willmore_closed_form(double L, bool doubled) {
    double s = std::sqrt(1.0 + L*L);
    double b = 2.0*s, R = 1.0 + L*L;
    double alpha = std::asin(1.0/s);
    // I1 = int_{-alpha}^0 dtheta/(b + R sin theta) via t = tan(theta/2)
    auto anti = [&](double t) {
        double disc = R*R - b*b;
        if (disc > 1e-12) {
            double q = std::sqrt(disc);
            return (1.0/q)*std::log(std::abs((b*t + R - q)/(b*t + R + q)));
        }
        if (disc < -1e-12) {
            double q = std::sqrt(-disc);
            return (2.0/q)*std::atan((b*t + R)/q);
        }
        return -2.0/(b*t + R);
    };
    double t0 = std::tan(-0.5*alpha);
    double i1 = anti(0.0) - anti(t0);
    double w = kPi*((L - s)/s + i1);
    return doubled ? 2.0*w : w;
}

double handle_neck_distance(double L) {
    if (!(L > 0)) throw std::invalid_argument("handle parameter must be positive");
    double s = std::sqrt(1.0 + L*L);
    return 0.5*(std::asinh(L)/s + s - L);
}

double handle_neck_identity_residual(double L) {
    double s = std::sqrt(1.0 + L*L);
    double a = std::asinh(L) - L*s;
    double R = 1.0 + L*L, b = 2.0*s;
    return std::abs(2.0*(a + R)/(2.0*b) - handle_neck_distance(L));
}

double willmore_product_torus(double r, double delta) {
    if (!(r > 0) || !(delta > 0)) throw std::invalid_argument("product torus needs positive radii");
    auto f = [&](double) {
        double h = 0.5/r;       // cross-section curvature 1/r, flat fiber
        return 0.5*h*h*delta;   // area element du x delta
    };
    return integrate_adaptive(f, 0.0, 2.0*kPi*r, 1e-13);
}

double almost_minimiser_energy(int gamma, const std::vector<double>& handle_Ls,
                               double base_willmore) {
    if (gamma < 1) throw std::invalid_argument("genus must be at least 1");
    if (int(handle_Ls.size()) != gamma - 1)
        throw std::invalid_argument("handle count must equal genus - 1");
    double e = base_willmore + kPi*std::abs(gamma - 1.0);
    for (double L : handle_Ls) e += 2.0*kPi/std::sqrt(1.0 + L*L);
    return e;
}

// ---- Weierstrass ----------------------------------------------------------------

WeierstrassForm weierstrass_form(const SpinorField& phi) {
    if (max_unit_deviation(phi) > 1e-6) throw std::invalid_argument("spinor not unit length");
    const int n = phi.n();
    WeierstrassForm xi{GridField<Vec3>(n), GridField<Vec3>(n), phi.metric};
    for (std::size_t k = 0; k < phi.values.v.size(); ++k) {
        const Quat& q = phi.values.v[k];
        Quat c = conj(q);
        Quat v1 = c*clifford_mul({0, 1}, q);    // conj(phi) (J e1) phi, J e1 = e2
        Quat v2 = c*clifford_mul({-1, 0}, q);   // J e2 = -e1
        xi.comp1.v[k] = {v1.x, v1.y, v1.z};
        xi.comp2.v[k] = {v2.x, v2.y, v2.z};
    }
    return xi;
}

double weierstrass_closedness(const WeierstrassForm& xi) {
    auto d1 = frame_gradient(xi.comp2, xi.metric);
    auto d2 = frame_gradient(xi.comp1, xi.metric);
    double r = 0;
    for (std::size_t k = 0; k < xi.comp1.v.size(); ++k)
        r = std::max(r, norm(d1[0].v[k] - d2[1].v[k]));
    return r;
}

double weierstrass_isometry_residual(const WeierstrassForm& xi) {
    double r = 0;
    for (std::size_t k = 0; k < xi.comp1.v.size(); ++k) {
        r = std::max(r, std::abs(norm(xi.comp1.v[k]) - 1.0));
        r = std::max(r, std::abs(norm(xi.comp2.v[k]) - 1.0));
    }
    return r;
}

ImmersionResult weierstrass_integrate(const SpinorField& phi, double closedness_tol) {
    WeierstrassForm xi = weierstrass_form(phi);
    ImmersionResult res;
    res.closedness = weierstrass_closedness(xi);
    if (res.closedness > closedness_tol)
        throw std::invalid_argument("spinor not Weierstrass-integrable (D phi != H phi)");

    const int n = phi.n();
    const double h = 1.0/n;
    const Mat2& ei = phi.metric.frame_inv;   // E^{-1}: frame components of d/ds_a
    // lattice-coordinate components of xi
    GridField<Vec3> xl1(n), xl2(n);
    for (std::size_t k = 0; k < xl1.v.size(); ++k) {
        xl1.v[k] = ei.m11*xi.comp1.v[k] + ei.m21*xi.comp2.v[k];
        xl2.v[k] = ei.m12*xi.comp1.v[k] + ei.m22*xi.comp2.v[k];
    }
    // line integration from the origin node, axis 0 first then axis 1 (trapezoid)
    res.F = GridField<Vec3>(n);
    for (int i = 1; i < n; ++i)
        res.F.at(i, 0) = res.F.at(i-1, 0) + 0.5*h*(xl1.at(i-1, 0) + xl1.at(i, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 1; j < n; ++j)
            res.F.at(i, j) = res.F.at(i, j-1) + 0.5*h*(xl2.at(i, j-1) + xl2.at(i, j));

    // periods: full loops in each lattice direction (periodic trapezoid = mean)
    auto loop_mean = [&](const GridField<Vec3>& f, int axis, int fixed) {
        Vec3 acc{};
        for (int k = 0; k < n; ++k) {
            const Vec3& v = axis == 0 ? f.at(k, fixed) : f.at(fixed, k);
            acc = acc + v;
        }
        return (1.0/n)*acc;
    };
    res.period1 = loop_mean(xl1, 0, 0);
    res.period2 = loop_mean(xl2, 1, 0);
    Vec3 alt1 = loop_mean(xl1, 0, n/2), alt2 = loop_mean(xl2, 1, n/2);
    res.period_path_dependence = std::max(norm(alt1 - res.period1), norm(alt2 - res.period2));
    return res;
}

void write_obj(std::ostream& os, const GridField<Vec3>& F) {
    const int n = F.n;
    char buf[128];
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Vec3& p = F.at(i, j);
            std::snprintf(buf, sizeof buf, "v %.9g %.9g %.9g\n", p.x, p.y, p.z);
            os << buf;
        }
    auto vid = [&](int i, int j) { return i*n + j + 1; };
    for (int i = 0; i + 1 < n; ++i)
        for (int j = 0; j + 1 < n; ++j) {
            os << "f " << vid(i, j) << ' ' << vid(i+1, j) << ' ' << vid(i+1, j+1) << '\n';
            os << "f " << vid(i, j) << ' ' << vid(i+1, j+1) << ' ' << vid(i, j+1) << '\n';
        }
}

MeanCurvatureResult mean_curvature_from_spinor(const SpinorField& phi, double tol) {
    QuatField d = dirac(phi);
    MeanCurvatureResult res{ScalarField(phi.n()), true, 0};
    for (std::size_t k = 0; k < d.v.size(); ++k) {
        double hval = dot(d.v[k], phi.values.v[k]) / norm2(phi.values.v[k]);
        res.h.v[k] = hval;
        res.residual = std::max(res.residual, norm(d.v[k] - hval*phi.values.v[k]));
    }
    res.proportional = res.residual < tol;
    return res;
}

} // namespace spinergy
