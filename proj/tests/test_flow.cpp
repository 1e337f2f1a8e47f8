#include <doctest.h>

#include <cmath>

#include "spinergy/flow.hpp"
#include "spinergy/families.hpp"

using namespace spinergy;

namespace {
constexpr double kPi = 3.14159265358979324;
Lattice saddle_lattice(double ell, int cover = 1) {
    return {{cover*ell, cover*ell}, {cover*ell, -cover*ell}};
}
} // namespace

TEST_CASE("parallel spinor is a fixed point") {
    SpinorField phi = build_parallel(Lattice{}, {1, 1}, Grid(32));
    FlowState s = make_flow_state(phi);
    CHECK(s.energy == 0);
    double dt = flow_dt_bound(phi.metric, 32);
    FlowState s2 = flow_step(s, dt);
    double drift = 0;
    for (std::size_t k = 0; k < phi.values.v.size(); ++k)
        drift = std::max(drift, norm(s2.phi.values.v[k] - phi.values.v[k]));
    CHECK(drift < 1e-13);
}

TEST_CASE("saddle is a fixed point of the discrete flow") {
    SaddleParams p;
    SpinorField phi = build_saddle(p, saddle_lattice(1.0), {-1, -1}, Grid(64));
    FlowState s = make_flow_state(phi);
    double dt = flow_dt_bound(phi.metric, 64);
    double t_total = 0;
    FlowState cur = s;
    while (t_total < 200*dt) {
        cur = flow_step(cur, dt);
        t_total = cur.time;
    }
    double drift = 0;
    for (std::size_t k = 0; k < phi.values.v.size(); ++k)
        drift = std::max(drift, norm(cur.phi.values.v[k] - phi.values.v[k]));
    CHECK(drift/t_total < 1e-8);   // drift per unit time at discretization level
}

TEST_CASE("perturbed parallel spinor relaxes monotonically") {
    Lattice lat;
    SpinorField base = build_parallel(lat, {1, 1}, Grid(32));
    SpinorField phi0 = perturb_spinor(base, 0.1, 99, lat);
    FlowSettings cfg;
    cfg.tol = 1e-3;
    cfg.t_max = 2.0;
    cfg.sample_stride = 1;
    FlowResult res = flow_run(phi0, cfg);
    CHECK(res.status == "converged");
    CHECK(res.energy_monotone);
    for (std::size_t k = 0; k + 1 < res.samples.size(); ++k)
        CHECK(res.samples[k+1].energy <= res.samples[k].energy + 1e-12);
    CHECK(res.state.energy < 1e-6);
    // limit point is critical at the working tolerance
    CHECK(res.state.grad_norm < cfg.tol);
    GradientPair q = neg_gradient_pair(pair_from_spinor(res.state.phi), res.state.phi);
    ScalarField dens(res.state.phi.n());
    for (std::size_t k = 0; k < dens.v.size(); ++k) dens.v[k] = norm2(q.spinor_dir.v[k]);
    CHECK(std::sqrt(integral(dens, res.state.phi.metric)) < 2*cfg.tol);
}

TEST_CASE("unit norm is exactly preserved by the projection") {
    Lattice lat;
    SpinorField phi0 = perturb_spinor(build_parallel(lat, {1, 1}, Grid(32)), 0.1, 3, lat);
    FlowState s = make_flow_state(phi0);
    double dt = flow_dt_bound(phi0.metric, 32);
    for (int k = 0; k < 5; ++k) s = flow_step(s, dt);
    for (const Quat& q : s.phi.values.v) {
        CHECK(std::abs(norm(q) - 1.0) < 5e-16);   // exact up to one rounding of the norm
    }
}

TEST_CASE("dissipation identity") {
    Lattice lat;
    SpinorField phi0 = perturb_spinor(build_parallel(lat, {1, 1}, Grid(32)), 0.2, 17, lat);
    FlowState s = make_flow_state(phi0);
    double dt = 0.25*flow_dt_bound(phi0.metric, 32);
    FlowState s2 = flow_step(s, dt);
    double lhs = (s2.energy - s.energy)/dt;
    double g_mid = 0.5*(s.grad_norm + s2.grad_norm);
    double rhs = -g_mid*g_mid;
    CHECK(std::abs(lhs - rhs) < 0.05*std::abs(rhs));
}

TEST_CASE("already-converged input returns immediately") {
    SpinorField phi = build_parallel(Lattice{}, {1, 1}, Grid(16));
    FlowSettings cfg;
    cfg.tol = 1e-6;
    FlowResult res = flow_run(phi, cfg);
    CHECK(res.status == "converged");
    CHECK(res.steps == 0);
}

TEST_CASE("saddle escape on the double cover") {
    // On T_ell with the bounding character every unit spinor has energy >= pi^2
    // (each generator loop joins antipodes), so the escape below pi^2 runs on
    // the double cover where the same field is critical with energy 4 pi^2.
    SaddleParams p;
    Lattice lat2 = saddle_lattice(1.0, 2);
    SpinorField saddle = build_saddle(p, lat2, {1, 1}, Grid(48));
    CHECK(std::abs(energy(saddle) - 4*kPi*kPi) < 2e-3);
    SpinorField phi0 = perturb_towards_parallel(saddle, 0.25);
    FlowSettings cfg;
    cfg.tol = 1e-6;
    cfg.t_max = 6.0;
    cfg.stop_below_energy = kPi*kPi - 0.01;
    FlowResult res = flow_run(phi0, cfg);
    CHECK(res.status == "energy_target");
    CHECK(res.energy_monotone);
    CHECK(res.state.energy < kPi*kPi - 0.01);
}

TEST_CASE("step collapse reports an error") {
    SpinorField phi = build_parallel(Lattice{}, {1, 1}, Grid(16));
    FlowState s = make_flow_state(phi);
    double dt = 1e-13;
    CHECK_THROWS_WITH((void)flow_step(s, dt), "flow step collapse");
}
