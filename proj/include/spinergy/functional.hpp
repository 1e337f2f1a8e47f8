#ifndef SPINERGY_FUNCTIONAL_HPP
#define SPINERGY_FUNCTIONAL_HPP

#include "spinergy/spinor_field.hpp"

namespace spinergy {

// The covariant derivative of a unit spinor splits pointwise against the
// orthonormal frame {phi, e1.phi, e2.phi, omega.phi}:
//   D_X phi = A(X).phi + beta(X) omega.phi,
// with A(k,i) = <D_i phi, e_k.phi> and beta_i = <D_i phi, omega.phi>.
struct PairField {
    Matrix2Field endo;    // A in frame components
    CovectorField beta;
    FlatMetric metric;
};

// Metric-direction and spinor-direction components of the negative gradient.
struct GradientPair {
    Matrix2Field metric_dir;   // symmetric 2-tensor in the orthonormal coframe
    QuatField spinor_dir;      // pointwise orthogonal to phi
    FlatMetric metric;
};

PairField pair_from_spinor(const SpinorField& phi);

// 1/2 integral |grad phi|^2, with the metric stored on the field
double energy(const SpinorField& phi);
double energy(const SpinorField& phi, const FlatMetric& m);

// D phi = e1 . D_1 phi + e2 . D_2 phi
QuatField dirac(const SpinorField& phi);
// same operator assembled from the pair decomposition (independent path)
QuatField dirac_from_pair(const PairField& pair, const SpinorField& phi);

GradientPair neg_gradient_general(const SpinorField& phi);
GradientPair neg_gradient_pair(const PairField& pair, const SpinorField& phi);

// || Tr(metric gradient) - (*d beta)/4 ||_inf
double trace_gradient_identity(const SpinorField& phi);

// || K - 4 det A + 2 *d beta ||_inf and || K *beta - div grad_{J.} beta ||_inf
// (flat metrics: K = 0 stored field)
struct CurvatureResiduals { double gauss = 0, one_form = 0; };
CurvatureResiduals curvature_identity(const SpinorField& phi);

// || div(A o J) + 2 (J o A o J)(beta#) ||_inf
double integrability_residual(const PairField& pair);

// || <D^2 phi, phi> - |D phi|^2 + *d beta ||_inf
double dirac_square_identity(const SpinorField& phi);

// Hodge-minimization of the conformal class: u with d(beta - *du/2) = 0
struct ConformalMin { ScalarField u; CovectorField beta_tilde; };
ConformalMin conformal_minimise(const CovectorField& beta, const FlatMetric& m);

// | E(c^2 g, phi) - E(g, phi) |, the dimension-two scale invariance
double rescaling_check(const SpinorField& phi, double c);

// helpers shared by tests and experiments
ScalarField grad_norm2_density(const SpinorField& phi);           // |grad phi|^2
double pair_norm2_max_deviation(const SpinorField& phi);          // vs |A|^2+|beta|^2
QuatField spinor_gradient(const SpinorField& phi);                // spinor-direction gradient alone
double gradient_linf(const GradientPair& q);

} // namespace spinergy

#endif
