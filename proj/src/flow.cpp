#include "spinergy/flow.hpp"

#include <cmath>
#include <stdexcept>

namespace spinergy {

namespace {

// workspace-backed evaluation; avoids reallocating fields per stage
struct FlowWork {
    QuatField d0, d1, p, q, t;
    QuatField k1, k2, k3, k4, tmp, trial;

    // spinor-direction negative gradient; optionally also the discrete energy
    // and the L2 norm of the gradient (one fused sweep over the stencils)
    void grad(const QuatField& phi, const FlatMetric& m, QuatField& out,
              double* energy_out = nullptr, double* gnorm_out = nullptr) {
        derivative_into(phi, 0, d0);
        derivative_into(phi, 1, d1);
        const Mat2& gi = m.ginv;
        const int n = phi.n;
        if (p.n != n) { p = QuatField(n); q = QuatField(n); }
        p.wrap_sign = q.wrap_sign = phi.wrap_sign;
        double etotal = 0;
        for (int i = 0; i < n; ++i) {
            double row = 0;
            for (int j = 0; j < n; ++j) {
                std::size_t k = std::size_t(i)*n + j;
                p.v[k] = gi.m11*d0.v[k] + gi.m12*d1.v[k];
                q.v[k] = gi.m21*d0.v[k] + gi.m22*d1.v[k];
                if (energy_out) row += dot(d0.v[k], p.v[k]) + dot(d1.v[k], q.v[k]);
            }
            etotal += row;
        }
        if (energy_out) *energy_out = 0.5*etotal*m.sqrt_det/(double(n)*n);
        derivative_into(p, 0, d0);
        derivative_into(q, 1, t);
        if (out.n != n) out = QuatField(n);
        out.wrap_sign = phi.wrap_sign;
        double gtotal = 0;
        for (int i = 0; i < n; ++i) {
            double row = 0;
            for (int j = 0; j < n; ++j) {
                std::size_t k = std::size_t(i)*n + j;
                Quat lap = d0.v[k] + t.v[k];             // = -nabla*nabla phi
                double lam = dot(lap, phi.v[k]) / norm2(phi.v[k]);
                Quat g = lap - lam*phi.v[k];             // pointwise orthogonal
                out.v[k] = g;
                if (gnorm_out) row += norm2(g);
            }
            gtotal += row;
        }
        if (gnorm_out) *gnorm_out = std::sqrt(gtotal*m.sqrt_det/(double(n)*n));
    }
};

} // namespace

double flow_dt_bound(const FlatMetric& m, int n) {
    double h = 1.0/n;
    return 0.2*h*h*m.lambda_min()/4.0;
}

FlowState make_flow_state(SpinorField phi) {
    FlowState s{std::move(phi), 0, 0, 0};
    FlowWork w;
    QuatField g;
    w.grad(s.phi.values, s.phi.metric, g, &s.energy, &s.grad_norm);
    return s;
}

namespace {

// one accepted RK4 + projection step; k1 = grad at entry state when known
FlowState step_impl(const FlowState& s, double& dt, FlowWork& w, long* rejected,
                    bool have_k1) {
    if (!(dt > 0)) throw std::invalid_argument("flow step size must be positive");
    const FlatMetric& m = s.phi.metric;
    const QuatField& phi = s.phi.values;
    const std::size_t sz = phi.v.size();
    if (!have_k1) w.grad(phi, m, w.k1);
    if (w.tmp.n != phi.n) w.tmp = QuatField(phi.n);
    w.tmp.wrap_sign = phi.wrap_sign;
    double bound = flow_dt_bound(m, phi.n);
    dt = std::min(dt, bound);
    for (;;) {
        if (dt < 1e-12) throw std::runtime_error("flow step collapse");
        for (std::size_t k = 0; k < sz; ++k) w.tmp.v[k] = phi.v[k] + 0.5*dt*w.k1.v[k];
        w.grad(w.tmp, m, w.k2);
        for (std::size_t k = 0; k < sz; ++k) w.tmp.v[k] = phi.v[k] + 0.5*dt*w.k2.v[k];
        w.grad(w.tmp, m, w.k3);
        for (std::size_t k = 0; k < sz; ++k) w.tmp.v[k] = phi.v[k] + dt*w.k3.v[k];
        w.grad(w.tmp, m, w.k4);
        FlowState out;
        out.phi = s.phi;
        QuatField& nv = out.phi.values;
        for (std::size_t k = 0; k < sz; ++k) {
            Quat v = phi.v[k] + (dt/6.0)*(w.k1.v[k] + 2.0*w.k2.v[k] + 2.0*w.k3.v[k] + w.k4.v[k]);
            nv.v[k] = (1.0/norm(v))*v;
        }
        // gradient of the proposed state doubles as the next step's first stage
        w.grad(nv, m, w.trial, &out.energy, &out.grad_norm);
        if (out.energy > s.energy + 1e-12) {
            dt *= 0.5;
            if (rejected) ++*rejected;
            continue;
        }
        out.time = s.time + dt;
        std::swap(w.k1, w.trial);
        return out;
    }
}

} // namespace

FlowState flow_step(const FlowState& s, double& dt) {
    FlowWork w;
    return step_impl(s, dt, w, nullptr, false);
}

FlowResult flow_run(SpinorField phi0, const FlowSettings& cfg) {
    if (!(cfg.tol > 0)) throw std::invalid_argument("flow tolerance must be positive");
    FlowResult res;
    res.state = make_flow_state(std::move(phi0));
    double dt = cfg.dt0 > 0 ? cfg.dt0 : flow_dt_bound(res.state.phi.metric, res.state.phi.n());
    FlowWork w;
    bool have_k1 = false;
    res.samples.push_back({res.state.time, res.state.energy, res.state.grad_norm, dt});
    if (res.state.grad_norm < cfg.tol) { res.status = "converged"; return res; }
    while (res.state.time < cfg.t_max) {
        FlowState next = step_impl(res.state, dt, w, &res.rejected, have_k1);
        have_k1 = true;
        if (next.energy > res.state.energy + 1e-12) res.energy_monotone = false;
        res.state = std::move(next);
        ++res.steps;
        if (res.steps % cfg.sample_stride == 0 || res.state.grad_norm < cfg.tol)
            res.samples.push_back({res.state.time, res.state.energy, res.state.grad_norm, dt});
        if (res.state.grad_norm < cfg.tol) { res.status = "converged"; return res; }
        if (cfg.stop_below_energy > 0 && res.state.energy < cfg.stop_below_energy) {
            res.status = "energy_target";
            return res;
        }
    }
    res.status = "max_time";
    return res;
}

SpinorField perturb_spinor(const SpinorField& phi, double amplitude, std::uint64_t seed,
                           const Lattice& lat) {
    SpinorField dir = random_spinor(lat, phi.twist, Grid(phi.n()), seed, 0.5, 6);
    SpinorField out = phi;
    for (std::size_t k = 0; k < out.values.v.size(); ++k) {
        Quat q = out.values.v[k] + amplitude*dir.values.v[k];
        out.values.v[k] = (1.0/norm(q))*q;
    }
    return out;
}

SpinorField perturb_towards_parallel(const SpinorField& phi, double amplitude) {
    if (!phi.twist.non_bounding())
        throw std::invalid_argument("parallel-direction perturbation needs the non-bounding structure");
    SpinorField out = phi;
    for (std::size_t k = 0; k < out.values.v.size(); ++k) {
        const Quat& p = out.values.v[k];
        Quat dir = quat_one - dot(quat_one, p)*p;
        Quat q = p + amplitude*dir;
        out.values.v[k] = (1.0/norm(q))*q;
    }
    return out;
}

} // namespace spinergy
