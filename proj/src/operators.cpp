#include "spinergy/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace spinergy {

ScalarField laplacian(const ScalarField& f, const FlatMetric& m) {
    ScalarField out = rough_laplacian(f, m);
    for (double& x : out.v) x = -x;
    return out;
}

namespace {
double mean(const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x;
    return s / double(v.size());
}
void subtract_mean(std::vector<double>& v) {
    double mu = mean(v);
    for (double& x : v) x -= mu;
}
double dotv(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k]*b[k];
    return s;
}
} // namespace

ScalarField poisson_solve(const ScalarField& rho, const FlatMetric& m, double tol, int max_iter) {
    const int n = rho.n;
    double rho_scale = max_abs(rho);
    double mu = mean(rho.v);
    if (std::abs(mu) * m.sqrt_det > 1e-10 * std::max(1.0, rho_scale))
        throw std::invalid_argument("Poisson RHS not mean-free");

    // CG on A = -lap (SPD on mean-free fields); lap u = rho becomes A u = -rho.
    // Constant coefficients keep the iteration count modest at these sizes.
    ScalarField b = rho;
    for (double& x : b.v) x = -x;
    subtract_mean(b.v);
    ScalarField x(n), r = b, p = b;
    double rs = dotv(r.v, r.v);
    double b0 = std::sqrt(dotv(b.v, b.v));
    // a source at the rounding floor solves to the zero potential
    if (b0 <= 1e-12 * std::max(1.0, rho_scale) * n) return x;
    for (int it = 0; it < max_iter; ++it) {
        if (std::sqrt(rs) <= tol * b0) break;
        ScalarField ap = laplacian(p, m);
        for (double& xv : ap.v) xv = -xv;
        double denom = dotv(p.v, ap.v);
        if (!(denom > 1e-14 * rs)) break;   // semidefinite direction: converged range part
        double alpha = rs / denom;
        for (std::size_t k = 0; k < x.v.size(); ++k) {
            x.v[k] += alpha * p.v[k];
            r.v[k] -= alpha * ap.v[k];
        }
        subtract_mean(r.v);
        double rs2 = dotv(r.v, r.v);
        double beta = rs2 / rs;
        for (std::size_t k = 0; k < p.v.size(); ++k) p.v[k] = r.v[k] + beta * p.v[k];
        rs = rs2;
    }
    subtract_mean(x.v);
    return x;
}

} // namespace spinergy
