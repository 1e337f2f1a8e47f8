#ifndef SPINERGY_FLOW_HPP
#define SPINERGY_FLOW_HPP

#include <functional>
#include <string>
#include <vector>

#include "spinergy/functional.hpp"

namespace spinergy {

// Normalized negative-gradient flow in the spinor slot at fixed flat metric.
struct FlowState {
    SpinorField phi;
    double time = 0;
    double energy = 0;
    double grad_norm = 0;   // L2 norm of the spinor-direction gradient
};

struct FlowSample { double time, energy, grad_norm, dt; };

struct FlowSettings {
    double dt0 = 0;          // 0: start at the stability bound
    double tol = 1e-4;       // terminal grad_norm
    double t_max = 1.0;
    int sample_stride = 25;  // telemetry every k-th accepted step
    double stop_below_energy = -1; // optional early exit once energy < value
};

struct FlowResult {
    FlowState state;
    std::string status;                 // "converged" | "max_time" | "energy_target"
    long steps = 0;
    long rejected = 0;
    bool energy_monotone = true;
    std::vector<FlowSample> samples;
};

double flow_dt_bound(const FlatMetric& m, int n);

FlowState make_flow_state(SpinorField phi);

// one accepted RK4 + projection step; halves dt on energy increase
FlowState flow_step(const FlowState& s, double& dt);

FlowResult flow_run(SpinorField phi0, const FlowSettings& cfg);

// seeded smooth perturbation of a state, pointwise orthogonal direction blended
// and re-normalized
SpinorField perturb_spinor(const SpinorField& phi, double amplitude, std::uint64_t seed,
                           const Lattice& lat);
SpinorField perturb_towards_parallel(const SpinorField& phi, double amplitude);

} // namespace spinergy

#endif
