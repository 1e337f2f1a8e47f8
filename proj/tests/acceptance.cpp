// Acceptance gate: one criterion per subcommand, one PASS/FAIL line per clause.
#include <chrono>
#include <cmath>
#include <cstring>
#include <iostream>
#include <random>

#include "spinergy/families.hpp"
#include "spinergy/io.hpp"
#include "spinergy/flow.hpp"
#include "spinergy/immersion.hpp"
#include "spinergy/verification.hpp"

using namespace spinergy;

namespace {

constexpr double kPi = 3.14159265358979324;
bool all_ok = true;

void clause(const std::string& name, bool ok, const std::string& detail) {
    all_ok = all_ok && ok;
    std::cout << (ok ? "PASS " : "FAIL ") << name << "  " << detail << '\n';
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Lattice saddle_lattice(double ell, int cover = 1) {
    return {{cover*ell, cover*ell}, {cover*ell, -cover*ell}};
}

// ---- 1: saddle energy and gradient decay -----------------------------------------

void criterion_saddle_energy() {
    auto t0 = std::chrono::steady_clock::now();
    Lattice lat = saddle_lattice(1.0);
    SaddleParams p;
    double e = energy(build_saddle(p, lat, {-1, -1}, Grid(256)));
    clause("1.energy", std::abs(e - kPi*kPi) < 1e-6,
           "E(256) = " + fmt9(e) + ", |E - pi^2| = " + fmt9(std::abs(e - kPi*kPi)));

    double res[3];
    int idx = 0;
    for (int n : {64, 128, 256}) {
        GradientPair q = neg_gradient_general(build_saddle(p, lat, {-1, -1}, Grid(n)));
        res[idx++] = gradient_linf(q);
    }
    // the discrete saddle is critical to rounding, far below any h^3 envelope;
    // order >= 3 or residuals at the floor both certify the decay clause
    bool at_floor = res[0] < 1e-10 && res[1] < 1e-10 && res[2] < 1e-10;
    bool ordered = res[0] > 0 && res[1] > 0 && res[2] > 0 &&
                   std::log2(res[0]/res[1]) >= 3.0 && std::log2(res[1]/res[2]) >= 3.0;
    clause("1.gradient_decay", at_floor || ordered,
           "residuals = {" + fmt9(res[0]) + ", " + fmt9(res[1]) + ", " +
           fmt9(res[2]) + "}" + (at_floor ? " (rounding floor)" : ""));

    double dt = seconds_since(t0);
    clause("1.runtime", dt < 30.0, fmt9(dt) + " s < 30 s");
}

// ---- 2: second variation ----------------------------------------------------------

void criterion_second_variation() {
    Lattice lat = saddle_lattice(1.0);
    for (double c : {-1.0, 0.0, 1.0}) {
        SaddleParams p;
        p.slope = c;
        double want = 8*c + 4;
        auto fc = [&](double t) {
            return moduli_energy_curve(p, lat, {-1, -1}, Grid(16), t).f_closed;
        };
        double closed = second_derivative_richardson(fc);
        clause("2.closed_form[c=" + std::to_string(int(c)) + "]",
               std::abs(closed - want) < 1e-6,
               "f''(0) = " + fmt9(closed) + " vs " + fmt9(want));
        auto fd = [&](double t) {
            return moduli_energy_curve(p, lat, {-1, -1}, Grid(256), t).energy_discrete/(kPi*kPi);
        };
        double disc = second_derivative_richardson(fd);
        clause("2.discrete[c=" + std::to_string(int(c)) + "]",
               std::abs(disc - want) < 1e-4,
               "f''(0) = " + fmt9(disc) + " vs " + fmt9(want));
    }
}

// ---- 3: handle willmore ------------------------------------------------------------

void criterion_handle_willmore() {
    // First clause pins the quadrature to the reference value pi/sqrt(1+L^2).
    // The quadrature is independently validated (sphere, Clifford torus,
    // closed-form reduction of this very profile); the reference constant does
    // not belong to this profile, so the clause records the discrepancy
    // honestly instead of softening the check.
    for (double L : {1.0, 5.0, 10.0, 100.0}) {
        double w = willmore_revolution({handle_profile(L), false});
        double stated = kPi/std::sqrt(1.0 + L*L);
        double reduction = handle_willmore_closed_form(L, false);
        clause("3.stated_value[L=" + std::to_string(int(L)) + "]",
               std::abs(w - stated) < 1e-8,
               "quadrature = " + fmt9(w) + ", stated = " + fmt9(stated) +
               ", independent reduction = " + fmt9(reduction) +
               " (|quad - reduction| = " + fmt9(std::abs(w - reduction)) + ")");
    }
    bool neck = true;
    for (double L : {1.0, 5.0, 20.0}) neck = neck && handle_neck_identity_residual(L) < 1e-12;
    clause("3.neck_identity", neck, "residual < 1e-12 at L in {1,5,20}");
    double w629 = willmore_revolution({handle_profile(629.0), true});
    clause("3.epsilon_gate", w629 < 0.01 && 2*kPi/std::sqrt(1.0 + 629.0*629.0) < 0.01,
           "doubled W(629) = " + fmt9(w629) + " < 0.01");
}

// ---- 4: infimum bookkeeping --------------------------------------------------------

void criterion_infimum_bookkeeping() {
    for (int gamma : {2, 3}) {
        std::vector<double> Ls(gamma - 1, 2000.0);
        double e = almost_minimiser_energy(gamma, Ls, 0.0);
        double target = kPi*(gamma - 1);
        clause("4.gamma" + std::to_string(gamma), std::abs(e - target) < 0.01,
               "energy = " + fmt9(e) + " vs pi|gamma-1| = " + fmt9(target));
    }
}

// ---- 5: sphere closed forms --------------------------------------------------------

void criterion_sphere() {
    TwistorReport k1 = twistor_closed_form_check({0.5, 0.0});
    TwistorReport k2 = twistor_closed_form_check({0.0, 0.5});
    clause("5.killing_orbit",
           std::abs(k1.energy - kPi) < 1e-12 && std::abs(k2.energy - kPi) < 1e-12 &&
           std::abs(k1.energy - k2.energy) < 1e-12,
           "E(1/2,0) = E(0,1/2) = pi");
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    bool ok = true;
    double worst = 0;
    for (int t = 0; t < 20; ++t) {
        double a = u(rng), b = u(rng);
        if (a == 0 && b == 0) a = 1;
        TwistorReport r = twistor_closed_form_check({a, b});
        double err = std::max({std::abs(r.energy - kPi), r.traceless_residual,
                               r.equality_residual, r.det_residual});
        worst = std::max(worst, err);
        ok = ok && err < 1e-12;
    }
    clause("5.random_constants", ok, "worst residual over 20 draws = " + fmt9(worst));
}

// ---- 6: identity suite -------------------------------------------------------------

void criterion_identity_suite() {
    auto t0 = std::chrono::steady_clock::now();
    IdentitySuiteConfig cfg;   // 50 samples/structure, N in {32,64,128,256}
    cfg.max_residual_finest = 1e-4;
    auto tables = run_identity_suite(cfg);
    const char* wanted[] = {"gradient_two_route", "trace_quarter_curl", "dirac_square",
                            "gauss_from_pair", "pair_integrability", "lichnerowicz_integral"};
    for (const char* name : wanted) {
        for (const auto& t : tables)
            if (t.name == name) {
                std::string orders;
                for (double o : t.orders) orders += (orders.empty() ? "" : ",") + fmt9(o);
                clause("6." + t.name, t.passed,
                       "residual@256 = " + fmt9(t.residuals.back()) +
                       (t.exact ? " (rounding floor)" : ", orders = {" + orders + "}"));
            }
    }
    double dt = seconds_since(t0);
    clause("6.runtime", dt < 300.0, fmt9(dt) + " s < 300 s");
}

// ---- 7: gradient duality -----------------------------------------------------------

void criterion_gradient_duality() {
    Lattice lat;
    double worst_s = 0;
    for (int trial = 0; trial < 3; ++trial) {
        SpinorField phi = random_spinor(lat, {-1, 1}, Grid(64), 300 + trial);
        SpinorField dir = random_spinor(lat, {-1, 1}, Grid(64), 400 + trial, 0.3);
        QuatField psi(64);
        for (std::size_t k = 0; k < psi.v.size(); ++k) {
            const Quat& p = phi.values.v[k];
            psi.v[k] = dir.values.v[k] - dot(dir.values.v[k], p)*p;
        }
        GradientPair q = neg_gradient_general(phi);
        ScalarField dens(64);
        for (std::size_t k = 0; k < dens.v.size(); ++k) dens.v[k] = dot(q.spinor_dir.v[k], psi.v[k]);
        double pairing = -integral(dens, phi.metric);
        auto e_of = [&](double eps) {
            SpinorField f = phi;
            for (std::size_t k = 0; k < f.values.v.size(); ++k) {
                Quat v = f.values.v[k] + eps*psi.v[k];
                f.values.v[k] = (1.0/norm(v))*v;
            }
            return energy(f);
        };
        auto fd = [&](double eps) { return (e_of(eps) - e_of(-eps))/(2*eps); };
        double rich = (4*fd(5e-3) - fd(1e-2))/3;
        worst_s = std::max(worst_s, std::abs(rich - pairing));
    }
    clause("7.spinor_slot", worst_s < 1e-6, "worst |fd - pairing| = " + fmt9(worst_s));

    Lattice slat = saddle_lattice(1.0);
    FlatMetric base = metric_of(slat);
    double worst_m = 0;
    for (int trial = 0; trial < 3; ++trial) {
        SpinorField phi = trial == 0
            ? build_saddle(SaddleParams{}, slat, {-1, -1}, Grid(64))
            : random_spinor(slat, {-1, -1}, Grid(64), 500 + trial);
        GradientPair q = neg_gradient_general(phi);
        double eps_g = 1e-6;
        Mat2 gdot = (1.0/(2*eps_g))*(deformed_metric(base, eps_g).g - deformed_metric(base, -eps_g).g);
        Mat2 pf = base.frame.transpose()*gdot*base.frame;
        ScalarField dens(64);
        for (std::size_t k = 0; k < dens.v.size(); ++k)
            dens.v[k] = frob_dot(q.metric_dir.v[k], pf);
        double pairing = -integral(dens, base);
        auto e_of = [&](double t) { return energy(phi, deformed_metric(base, t)); };
        auto fd = [&](double eps) { return (e_of(eps) - e_of(-eps))/(2*eps); };
        double rich = (4*fd(5e-3) - fd(1e-2))/3;
        worst_m = std::max(worst_m, std::abs(rich - pairing));
    }
    clause("7.metric_slot", worst_m < 1e-6, "worst |fd - pairing| = " + fmt9(worst_m));
}

// ---- 8: flow experiments -----------------------------------------------------------

void criterion_flow() {
    {
        auto t0 = std::chrono::steady_clock::now();
        Lattice lat;
        SpinorField phi0 = perturb_spinor(build_parallel(lat, {1, 1}, Grid(128)), 0.1, 7, lat);
        FlowSettings cfg;
        cfg.tol = 1e-5;
        cfg.t_max = 1.0;
        cfg.stop_below_energy = 9e-9;   // the criterion is the energy level itself
        FlowResult res = flow_run(phi0, cfg);
        double dt = seconds_since(t0);
        clause("8.parallel_relaxation",
               res.status != "max_time" && res.energy_monotone && res.state.energy < 1e-8,
               "status = " + res.status + ", E = " + fmt9(res.state.energy) +
               ", monotone = " + (res.energy_monotone ? "yes" : "no") +
               ", steps = " + std::to_string(res.steps));
        clause("8.parallel_runtime", dt < 120.0, fmt9(dt) + " s < 120 s");
    }
    {
        auto t0 = std::chrono::steady_clock::now();
        SaddleParams p;
        SpinorField saddle = build_saddle(p, saddle_lattice(1.0, 2), {1, 1}, Grid(64));
        SpinorField phi0 = perturb_towards_parallel(saddle, 0.25);
        FlowSettings cfg;
        cfg.tol = 1e-7;
        cfg.t_max = 6.0;
        cfg.stop_below_energy = kPi*kPi - 0.01;
        FlowResult res = flow_run(phi0, cfg);
        double dt = seconds_since(t0);
        clause("8.saddle_escape",
               res.status == "energy_target" && res.energy_monotone &&
               res.state.energy < kPi*kPi - 0.01,
               "E fell to " + fmt9(res.state.energy) + " < pi^2 - 0.01 after " +
               std::to_string(res.steps) + " steps");
        clause("8.saddle_runtime", dt < 120.0, fmt9(dt) + " s < 120 s");
    }
}

// ---- 9: weierstrass ----------------------------------------------------------------

void criterion_weierstrass() {
    Lattice lat{{1.25, 0.35}, {-0.15, 0.85}};
    SpinorField par = build_parallel(lat, {1, 1}, Grid(64));
    ImmersionResult im = weierstrass_integrate(par);
    clause("9.parallel_plane",
           im.closedness < 1e-10 &&
           std::abs(norm(im.period1) - norm(lat.gamma1)) < 1e-10 &&
           std::abs(norm(im.period2) - norm(lat.gamma2)) < 1e-10,
           "closedness = " + fmt9(im.closedness) +
           ", |P1| - |g1| = " + fmt9(norm(im.period1) - norm(lat.gamma1)));
    SaddleParams p;
    SpinorField sad = build_saddle(p, saddle_lattice(1.0), {-1, -1}, Grid(64));
    double resid = weierstrass_closedness(weierstrass_form(sad));
    bool rejected = false;
    try {
        (void)weierstrass_integrate(sad);
    } catch (const std::invalid_argument&) {
        rejected = true;
    }
    clause("9.saddle_rejected", rejected && resid > 0.1,
           "closedness residual = " + fmt9(resid) + " > 0.1");
}

// ---- 10: classification ------------------------------------------------------------

void criterion_classification() {
    SaddleParams p;
    SpinorField sad = build_saddle(p, saddle_lattice(1.0), {-1, -1}, Grid(128));
    ClassifyReport r = classify_flat_critical(pair_from_spinor(sad), sad, 1e-5);
    clause("10.saddle",
           r.verdict == FlatCriticalVerdict::saddle_family &&
           r.beta_parallel < 1e-5 && r.beta_in_kernel < 1e-5 &&
           r.norm_match < 1e-5 && r.rotation_identity < 1e-5,
           "verdict = " + to_string(r.verdict) +
           ", residuals = {" + fmt9(r.beta_parallel) + ", " +
           fmt9(r.beta_in_kernel) + ", " + fmt9(r.norm_match) + ", " +
           fmt9(r.rotation_identity) + "}");
    SpinorField par = build_parallel(Lattice{}, {1, 1}, Grid(64));
    ClassifyReport rp = classify_flat_critical(pair_from_spinor(par), par, 1e-8);
    clause("10.parallel", rp.verdict == FlatCriticalVerdict::absolute_minimiser,
           "verdict = " + to_string(rp.verdict));
}

// ---- 11: conformal minimiser -------------------------------------------------------

void criterion_conformal() {
    const int n = 64;
    FlatMetric m = metric_of(Lattice{});
    std::mt19937_64 rng(11);
    std::normal_distribution<double> g(0.0, 1.0);
    std::uniform_real_distribution<double> uph(0.0, 2*kPi);
    std::uniform_int_distribution<int> uf(-2, 2);
    auto smooth = [&]() {
        ScalarField f(n);
        for (int mode = 0; mode < 6; ++mode) {
            int n1 = uf(rng), n2 = uf(rng);
            if (n1 == 0 && n2 == 0) continue;
            double a = g(rng)/(1 + n1*n1 + n2*n2), ph = uph(rng);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    f.at(i, j) += a*std::cos(2*kPi*(n1*double(i)/n + n2*double(j)/n) + ph);
        }
        return f;
    };
    double worst_flat = 0;
    for (int trial = 0; trial < 20; ++trial) {
        ScalarField f = smooth(), w = smooth();
        auto df = frame_gradient(f, m);
        auto dw = frame_gradient(w, m);
        CovectorField beta(n);
        for (std::size_t k = 0; k < beta.v.size(); ++k)
            beta.v[k] = {df[0].v[k] + dw[1].v[k] + g(rng)*0.1,
                         df[1].v[k] - dw[0].v[k] + g(rng)*0.1};
        ConformalMin cm = conformal_minimise(beta, m);
        worst_flat = std::max(worst_flat, max_abs(star_d(cm.beta_tilde, m)));
    }
    clause("11.random_fields", worst_flat < 1e-8,
           "worst ||d beta~||_inf = " + fmt9(worst_flat));

    ScalarField f = smooth();
    auto df = frame_gradient(f, m);
    CovectorField closed(n);
    for (std::size_t k = 0; k < closed.v.size(); ++k)
        closed.v[k] = {df[0].v[k] + 0.4, df[1].v[k] - 0.7};
    ConformalMin cm = conformal_minimise(closed, m);
    clause("11.closed_input", max_abs(cm.u) < 1e-10,
           "||u||_inf = " + fmt9(max_abs(cm.u)));
}

} // namespace

int main(int argc, char** argv) {
    std::string which = argc > 1 ? argv[1] : "all";
    auto want = [&](const char* name) { return which == "all" || which == name; };
    if (want("saddle_energy")) criterion_saddle_energy();
    if (want("second_variation")) criterion_second_variation();
    if (want("handle_willmore")) criterion_handle_willmore();
    if (want("infimum_bookkeeping")) criterion_infimum_bookkeeping();
    if (want("sphere_closed_forms")) criterion_sphere();
    if (want("identity_suite")) criterion_identity_suite();
    if (want("gradient_duality")) criterion_gradient_duality();
    if (want("flow_experiments")) criterion_flow();
    if (want("weierstrass")) criterion_weierstrass();
    if (want("classification")) criterion_classification();
    if (want("conformal_minimiser")) criterion_conformal();
    return all_ok ? 0 : 1;
}
