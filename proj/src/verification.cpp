#include "spinergy/verification.hpp"

#include <cmath>

#include "spinergy/parallel.hpp"

namespace spinergy {

double circle_action_residual(const SpinorField& phi) {
    QuatField d = dirac(phi);
    // a phi + b omega.phi = (a + b k) phi ; |D((a+bk)phi)|^2 = |D phi|^2
    const Quat u{0.6, 0, 0, 0.8};
    SpinorField rot = phi;
    for (Quat& q : rot.values.v) q = u*q;
    QuatField dr = dirac(rot);
    double r = 0;
    for (std::size_t k = 0; k < d.v.size(); ++k)
        r = std::max(r, std::abs(norm2(dr.v[k]) - norm2(d.v[k])));
    return r;
}

double integrated_dirac_energy_gap(const SpinorField& phi) {
    QuatField d = dirac(phi);
    ScalarField dn(phi.n());
    for (std::size_t k = 0; k < d.v.size(); ++k) dn.v[k] = norm2(d.v[k]);
    double a = integral(dn, phi.metric);
    double b = integral(grad_norm2_density(phi), phi.metric);
    return std::abs(a - b);
}

namespace {

struct SampleResiduals {
    double two_route = 0, trace_curl = 0, dirac_sq = 0, curv = 0, integ = 0;
    double lichnerowicz = 0, rescale = 0, circle = 0;
    void take_max(const SampleResiduals& o) {
        two_route = std::max(two_route, o.two_route);
        trace_curl = std::max(trace_curl, o.trace_curl);
        dirac_sq = std::max(dirac_sq, o.dirac_sq);
        curv = std::max(curv, o.curv);
        integ = std::max(integ, o.integ);
        lichnerowicz = std::max(lichnerowicz, o.lichnerowicz);
        rescale = std::max(rescale, o.rescale);
        circle = std::max(circle, o.circle);
    }
};

SampleResiduals sample_residuals(const SpinorField& phi, double c_scale) {
    SampleResiduals r;
    PairField pair = pair_from_spinor(phi);
    GradientPair qg = neg_gradient_general(phi);
    GradientPair qp = neg_gradient_pair(pair, phi);
    for (std::size_t k = 0; k < qg.metric_dir.v.size(); ++k) {
        Mat2 d = qg.metric_dir.v[k] - qp.metric_dir.v[k];
        r.two_route = std::max({r.two_route, std::abs(d.m11), std::abs(d.m12),
                                std::abs(d.m21), std::abs(d.m22)});
        r.two_route = std::max(r.two_route, norm(qg.spinor_dir.v[k] - qp.spinor_dir.v[k]));
    }
    r.trace_curl = trace_gradient_identity(phi);
    r.dirac_sq = dirac_square_identity(phi);
    CurvatureResiduals cr = curvature_identity(phi);
    r.curv = std::max(cr.gauss, cr.one_form);
    r.integ = integrability_residual(pair);
    r.lichnerowicz = integrated_dirac_energy_gap(phi);
    r.rescale = rescaling_check(phi, c_scale);
    r.circle = circle_action_residual(phi);
    return r;
}

} // namespace

std::vector<IdentityTable> run_identity_suite(const IdentitySuiteConfig& cfg) {
    const SpinCharacter structures[4] = {{1, 1}, {-1, 1}, {1, -1}, {-1, -1}};
    const Lattice lat;   // unit square; identities are lattice-independent
    std::vector<SampleResiduals> per_n(cfg.grid_sizes.size());

    for (std::size_t ni = 0; ni < cfg.grid_sizes.size(); ++ni) {
        Grid grid(cfg.grid_sizes[ni]);
        std::vector<SampleResiduals> partial(4);
        parallel_for(0, 4, [&](int si) {
            for (int s = 0; s < cfg.samples_per_structure; ++s) {
                std::uint64_t seed = cfg.seed + 1000003ull*si + 7ull*s;
                SpinorField phi = random_spinor(lat, structures[si], grid, seed);
                double c_scale = 0.5 + 1.5*double((seed*2654435761ull) % 1000)/1000.0;
                partial[si].take_max(sample_residuals(phi, c_scale));
            }
        });
        for (const auto& p : partial) per_n[ni].take_max(p);
    }

    auto make_table = [&](const std::string& name, auto member) {
        IdentityTable t;
        t.name = name;
        t.grid_sizes = cfg.grid_sizes;
        for (const auto& r : per_n) t.residuals.push_back(r.*member);
        for (std::size_t k = 0; k + 1 < t.residuals.size(); ++k) {
            double a = t.residuals[k], b = t.residuals[k + 1];
            t.orders.push_back((a > 0 && b > 0) ? std::log2(a/b) : 0.0);
        }
        double rmax = 0;
        for (double r : t.residuals) rmax = std::max(rmax, r);
        t.exact = rmax <= cfg.residual_floor;
        bool order_ok = true;
        for (double o : t.orders) order_ok = order_ok && o >= cfg.min_order;
        t.passed = t.exact ||
                   (order_ok && t.residuals.back() < cfg.max_residual_finest);
        return t;
    };

    std::vector<IdentityTable> out;
    out.push_back(make_table("gradient_two_route", &SampleResiduals::two_route));
    out.push_back(make_table("trace_quarter_curl", &SampleResiduals::trace_curl));
    out.push_back(make_table("dirac_square", &SampleResiduals::dirac_sq));
    out.push_back(make_table("gauss_from_pair", &SampleResiduals::curv));
    out.push_back(make_table("pair_integrability", &SampleResiduals::integ));
    out.push_back(make_table("lichnerowicz_integral", &SampleResiduals::lichnerowicz));
    out.push_back(make_table("scale_invariance", &SampleResiduals::rescale));
    out.push_back(make_table("circle_action", &SampleResiduals::circle));
    return out;
}

} // namespace spinergy
