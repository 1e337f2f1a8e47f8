#ifndef SPINERGY_OPERATORS_HPP
#define SPINERGY_OPERATORS_HPP

#include "spinergy/grid.hpp"
#include "spinergy/lattice.hpp"

namespace spinergy {

// Covariant derivative along the parallel orthonormal frame vector e_i.
// Flat metric, so no connection terms: D_i = sum_j E(j,i) d/ds_j.
template <class T>
GridField<T> frame_derivative(const GridField<T>& f, int i, const FlatMetric& m) {
    GridField<T> d0 = derivative(f, 0), d1 = derivative(f, 1);
    double c0 = (i == 0) ? m.frame.m11 : m.frame.m12;
    double c1 = (i == 0) ? m.frame.m21 : m.frame.m22;
    GridField<T> out(f.n);
    out.wrap_sign = f.wrap_sign;
    for (std::size_t k = 0; k < f.v.size(); ++k) out.v[k] = c0*d0.v[k] + c1*d1.v[k];
    return out;
}

template <class T>
std::array<GridField<T>, 2> frame_gradient(const GridField<T>& f, const FlatMetric& m) {
    GridField<T> d0 = derivative(f, 0), d1 = derivative(f, 1);
    std::array<GridField<T>, 2> out{GridField<T>(f.n), GridField<T>(f.n)};
    out[0].wrap_sign = out[1].wrap_sign = f.wrap_sign;
    for (std::size_t k = 0; k < f.v.size(); ++k) {
        out[0].v[k] = m.frame.m11*d0.v[k] + m.frame.m21*d1.v[k];
        out[1].v[k] = m.frame.m12*d0.v[k] + m.frame.m22*d1.v[k];
    }
    return out;
}

// integral against the riemannian volume, sum f sqrt(det G) h^2
inline double integral(const ScalarField& f, const FlatMetric& m) {
    // row sums first, then ordered sum: deterministic under parallel sweeps
    double total = 0;
    for (int i = 0; i < f.n; ++i) {
        double row = 0;
        for (int j = 0; j < f.n; ++j) row += f.at(i, j);
        total += row;
    }
    return total * m.sqrt_det / (double(f.n) * f.n);
}

inline double max_abs(const ScalarField& f) {
    double r = 0;
    for (double x : f.v) r = std::max(r, std::abs(x));
    return r;
}

// Hodge star on 1-forms in the orthonormal coframe: *e1 = e2, *e2 = -e1.
inline CovectorField hodge_star_1form(const CovectorField& beta) {
    CovectorField out(beta.n);
    for (std::size_t k = 0; k < beta.v.size(); ++k) out.v[k] = {-beta.v[k].v2, beta.v[k].v1};
    return out;
}

// *d beta = D1 beta2 - D2 beta1 (scalar)
inline ScalarField star_d(const CovectorField& beta, const FlatMetric& m) {
    auto d = frame_gradient(beta, m);
    ScalarField out(beta.n);
    for (std::size_t k = 0; k < out.v.size(); ++k) out.v[k] = d[0].v[k].v2 - d[1].v[k].v1;
    return out;
}

// divergence with the sign convention div T = -sum_k (D_k T)(e_k, .)
inline ScalarField divergence(const CovectorField& beta, const FlatMetric& m) {
    auto d = frame_gradient(beta, m);
    ScalarField out(beta.n);
    for (std::size_t k = 0; k < out.v.size(); ++k) out.v[k] = -(d[0].v[k].v1 + d[1].v[k].v2);
    return out;
}

// div A as a vector field, (div A)_k = -sum_i D_i A(k,i)
inline CovectorField divergence(const Matrix2Field& a, const FlatMetric& m) {
    auto d = frame_gradient(a, m);
    CovectorField out(a.n);
    for (std::size_t k = 0; k < out.v.size(); ++k)
        out.v[k] = {-(d[0].v[k].m11 + d[1].v[k].m12), -(d[0].v[k].m21 + d[1].v[k].m22)};
    return out;
}

// composed rough laplacian nabla*nabla = -sum_i D_i D_i, adjoint-exact for
// the discrete energy (central stencils are antisymmetric)
template <class T>
GridField<T> rough_laplacian(const GridField<T>& f, const FlatMetric& m) {
    GridField<T> d0 = derivative(f, 0), d1 = derivative(f, 1);
    const Mat2& gi = m.ginv;
    GridField<T> p(f.n), q(f.n);
    p.wrap_sign = q.wrap_sign = f.wrap_sign;
    for (std::size_t k = 0; k < f.v.size(); ++k) {
        p.v[k] = gi.m11*d0.v[k] + gi.m12*d1.v[k];
        q.v[k] = gi.m21*d0.v[k] + gi.m22*d1.v[k];
    }
    GridField<T> dp = derivative(p, 0), dq = derivative(q, 1);
    GridField<T> out(f.n);
    out.wrap_sign = f.wrap_sign;
    for (std::size_t k = 0; k < f.v.size(); ++k) out.v[k] = -1.0*(dp.v[k] + dq.v[k]);
    return out;
}

// scalar laplacian sum_i D_i D_i (negative spectrum), same composed stencils
ScalarField laplacian(const ScalarField& f, const FlatMetric& m);

// Solve laplacian(u) = rho with mean(u) = 0 by conjugate gradients.
// rho must be mean-free (closed-surface solvability).
ScalarField poisson_solve(const ScalarField& rho, const FlatMetric& m,
                          double tol = 1e-11, int max_iter = 100000);

} // namespace spinergy

#endif
