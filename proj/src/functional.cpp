#include "spinergy/functional.hpp"

namespace spinergy {

PairField pair_from_spinor(const SpinorField& phi) {
    if (max_unit_deviation(phi) > 1e-6) throw std::invalid_argument("spinor not unit length");
    auto d = frame_gradient(phi.values, phi.metric);
    const int n = phi.n();
    PairField out{Matrix2Field(n), CovectorField(n), phi.metric};
    for (std::size_t k = 0; k < phi.values.v.size(); ++k) {
        const Quat& q = phi.values.v[k];
        Quat e1q = clifford_mul({1, 0}, q), e2q = clifford_mul({0, 1}, q), oq = omega_mul(q);
        out.endo.v[k] = {dot(d[0].v[k], e1q), dot(d[1].v[k], e1q),
                         dot(d[0].v[k], e2q), dot(d[1].v[k], e2q)};
        out.beta.v[k] = {dot(d[0].v[k], oq), dot(d[1].v[k], oq)};
    }
    return out;
}

ScalarField grad_norm2_density(const SpinorField& phi) {
    auto d = frame_gradient(phi.values, phi.metric);
    ScalarField out(phi.n());
    for (std::size_t k = 0; k < out.v.size(); ++k)
        out.v[k] = norm2(d[0].v[k]) + norm2(d[1].v[k]);
    return out;
}

double energy(const SpinorField& phi, const FlatMetric& m) {
    auto d0 = derivative(phi.values, 0), d1 = derivative(phi.values, 1);
    // |grad phi|^2 = sum_{jl} Ginv(j,l) <d_j phi, d_l phi>
    const Mat2& gi = m.ginv;
    double total = 0;
    const int n = phi.n();
    for (int i = 0; i < n; ++i) {
        double row = 0;
        for (int j = 0; j < n; ++j) {
            std::size_t k = std::size_t(i)*n + j;
            row += gi.m11*norm2(d0.v[k]) + gi.m22*norm2(d1.v[k]) + 2.0*gi.m12*dot(d0.v[k], d1.v[k]);
        }
        total += row;
    }
    return 0.5 * total * m.sqrt_det / (double(n)*n);
}

double energy(const SpinorField& phi) { return energy(phi, phi.metric); }

QuatField dirac(const SpinorField& phi) {
    auto d = frame_gradient(phi.values, phi.metric);
    QuatField out(phi.n());
    out.wrap_sign = phi.values.wrap_sign;
    for (std::size_t k = 0; k < out.v.size(); ++k)
        out.v[k] = clifford_mul({1, 0}, d[0].v[k]) + clifford_mul({0, 1}, d[1].v[k]);
    return out;
}

QuatField dirac_from_pair(const PairField& pair, const SpinorField& phi) {
    // multiplying out e_k . A(e_k) . phi + beta(e_k) e_k . omega . phi in the
    // fixed Clifford model gives
    //   D phi = -Tr A phi - Tr(A o J) omega.phi + (beta o J)# . phi
    QuatField out(phi.n());
    out.wrap_sign = phi.values.wrap_sign;
    for (std::size_t k = 0; k < out.v.size(); ++k) {
        const Mat2& a = pair.endo.v[k];
        const Vec2& b = pair.beta.v[k];
        const Quat& q = phi.values.v[k];
        out.v[k] = -a.trace()*q - (a.m12 - a.m21)*omega_mul(q)
                   + clifford_mul({b.v2, -b.v1}, q);
    }
    return out;
}

namespace {

// (grad_{J(.)} beta)^sym, equal to div T for the wedge 3-tensor of the pair
Matrix2Field grad_jbeta_sym(const CovectorField& beta, const FlatMetric& m) {
    auto d = frame_gradient(beta, m);
    Matrix2Field out(beta.n);
    for (std::size_t k = 0; k < out.v.size(); ++k) {
        double b1_1 = d[0].v[k].v1, b1_2 = d[1].v[k].v1;
        double b2_1 = d[0].v[k].v2, b2_2 = d[1].v[k].v2;
        double off = 0.5*(b2_2 - b1_1);
        out.v[k] = {b1_2, off, off, -b2_1};
    }
    return out;
}

QuatField project_gradient(const QuatField& w, const QuatField& phi) {
    QuatField out(w.n);
    out.wrap_sign = phi.wrap_sign;
    for (std::size_t k = 0; k < w.v.size(); ++k) {
        double lam = dot(w.v[k], phi.v[k]) / norm2(phi.v[k]);
        out.v[k] = -1.0*w.v[k] + lam*phi.v[k];
    }
    return out;
}

} // namespace

QuatField spinor_gradient(const SpinorField& phi) {
    QuatField w = rough_laplacian(phi.values, phi.metric);
    return project_gradient(w, phi.values);
}

GradientPair neg_gradient_general(const SpinorField& phi) {
    auto d = frame_gradient(phi.values, phi.metric);
    const int n = phi.n();
    // beta recomputed directly; div T needs only beta
    CovectorField beta(n);
    for (std::size_t k = 0; k < beta.v.size(); ++k) {
        Quat oq = omega_mul(phi.values.v[k]);
        beta.v[k] = {dot(d[0].v[k], oq), dot(d[1].v[k], oq)};
    }
    Matrix2Field divT = grad_jbeta_sym(beta, phi.metric);
    GradientPair out{Matrix2Field(n), QuatField(n), phi.metric};
    for (std::size_t k = 0; k < divT.v.size(); ++k) {
        double g11 = dot(d[0].v[k], d[0].v[k]);
        double g12 = dot(d[0].v[k], d[1].v[k]);
        double g22 = dot(d[1].v[k], d[1].v[k]);
        double n2 = g11 + g22;
        Mat2 gradgrad{g11, g12, g12, g22};
        out.metric_dir.v[k] = -0.25*n2*mat2_identity() - 0.25*divT.v[k] + 0.5*gradgrad;
    }
    out.spinor_dir = spinor_gradient(phi);
    return out;
}

GradientPair neg_gradient_pair(const PairField& pair, const SpinorField& phi) {
    const int n = pair.endo.n;
    Matrix2Field njb = grad_jbeta_sym(pair.beta, pair.metric);
    CovectorField divA = divergence(pair.endo, pair.metric);
    ScalarField divb = divergence(pair.beta, pair.metric);
    GradientPair out{Matrix2Field(n), QuatField(n), pair.metric};
    out.spinor_dir.wrap_sign = phi.values.wrap_sign;
    for (std::size_t k = 0; k < njb.v.size(); ++k) {
        const Mat2& a = pair.endo.v[k];
        const Vec2& b = pair.beta.v[k];
        Mat2 ata = a.transpose() * a;
        Mat2 s = ata + outer(b, b);
        out.metric_dir.v[k] = -0.25*njb.v[k] + 0.5*traceless(s);
        const Quat& q = phi.values.v[k];
        out.spinor_dir.v[k] = -1.0*(clifford_mul(divA.v[k], q) + divb.v[k]*omega_mul(q));
    }
    return out;
}

double gradient_linf(const GradientPair& q) {
    double r = 0;
    for (const Mat2& m : q.metric_dir.v)
        r = std::max({r, std::abs(m.m11), std::abs(m.m12), std::abs(m.m21), std::abs(m.m22)});
    for (const Quat& s : q.spinor_dir.v) r = std::max(r, norm(s));
    return r;
}

double trace_gradient_identity(const SpinorField& phi) {
    GradientPair g = neg_gradient_general(phi);
    PairField p = pair_from_spinor(phi);
    ScalarField sdb = star_d(p.beta, phi.metric);
    double r = 0;
    for (std::size_t k = 0; k < sdb.v.size(); ++k)
        r = std::max(r, std::abs(g.metric_dir.v[k].trace() - 0.25*sdb.v[k]));
    return r;
}

CurvatureResiduals curvature_identity(const SpinorField& phi) {
    PairField p = pair_from_spinor(phi);
    ScalarField sdb = star_d(p.beta, phi.metric);
    CurvatureResiduals res;
    for (std::size_t k = 0; k < sdb.v.size(); ++k) {
        double detA = p.endo.v[k].det();
        res.gauss = std::max(res.gauss, std::abs(4.0*detA - 2.0*sdb.v[k])); // K = 0
    }
    // K *beta = div grad_{J(.)} beta with K = 0: the mixed-derivative commutator
    auto d = frame_gradient(p.beta, phi.metric);
    Matrix2Field njb(p.beta.n);
    for (std::size_t k = 0; k < njb.v.size(); ++k) {
        // full grad_{J(.)} beta, rows indexed by the J-ed direction
        njb.v[k] = {d[1].v[k].v1, d[1].v[k].v2, -d[0].v[k].v1, -d[0].v[k].v2};
    }
    // treat rows as the 2-tensor M(X,Y) = (grad_{JX} beta)(Y); div contracts X
    auto dm = frame_gradient(njb, phi.metric);
    for (std::size_t k = 0; k < njb.v.size(); ++k) {
        double c1 = -(dm[0].v[k].m11 + dm[1].v[k].m21);
        double c2 = -(dm[0].v[k].m12 + dm[1].v[k].m22);
        res.one_form = std::max(res.one_form, std::hypot(c1, c2));
    }
    return res;
}

double integrability_residual(const PairField& pair) {
    const int n = pair.endo.n;
    // A o J as a matrix field: (A o J)(e1) = A(e2), (A o J)(e2) = -A(e1)
    Matrix2Field aj(n);
    for (std::size_t k = 0; k < aj.v.size(); ++k) {
        const Mat2& a = pair.endo.v[k];
        aj.v[k] = {a.m12, -a.m11, a.m22, -a.m21};
    }
    CovectorField divAJ = divergence(aj, pair.metric);
    double r = 0;
    for (std::size_t k = 0; k < divAJ.v.size(); ++k) {
        const Mat2& a = pair.endo.v[k];
        Vec2 jb = rot90(pair.beta.v[k]);
        Vec2 jaj = rot90(a.apply(jb));
        Vec2 resid = divAJ.v[k] + 2.0*jaj;
        r = std::max(r, norm(resid));
    }
    return r;
}

double dirac_square_identity(const SpinorField& phi) {
    QuatField d1 = dirac(phi);
    SpinorField dphi(d1, phi.twist, phi.metric, false);
    QuatField d2 = dirac(dphi);
    PairField p = pair_from_spinor(phi);
    ScalarField sdb = star_d(p.beta, phi.metric);
    double r = 0;
    for (std::size_t k = 0; k < sdb.v.size(); ++k) {
        double lhs = dot(d2.v[k], phi.values.v[k]);
        double rhs = norm2(d1.v[k]) - sdb.v[k];
        r = std::max(r, std::abs(lhs - rhs));
    }
    return r;
}

ConformalMin conformal_minimise(const CovectorField& beta, const FlatMetric& m) {
    // beta = harmonic + d[beta] + delta{beta}; with {beta} = w vol the coexact
    // part satisfies lap w = -*d beta, and u = -2w kills d beta~ exactly in
    // the composed discrete calculus
    ScalarField sdb = star_d(beta, m);
    for (double& x : sdb.v) x = -x;
    ScalarField w = poisson_solve(sdb, m);
    ConformalMin out{ScalarField(beta.n), beta};
    auto dw = frame_gradient(w, m);
    for (std::size_t k = 0; k < w.v.size(); ++k) {
        out.u.v[k] = -2.0*w.v[k];
        // beta~ = beta - (1/2) * du = beta + *dw
        out.beta_tilde.v[k].v1 += -dw[1].v[k];
        out.beta_tilde.v[k].v2 += dw[0].v[k];
    }
    return out;
}

double rescaling_check(const SpinorField& phi, double c) {
    if (!(c > 0)) throw std::invalid_argument("rescaling factor must be positive");
    FlatMetric scaled(c*c*phi.metric.g);
    return std::abs(energy(phi, scaled) - energy(phi));
}

double pair_norm2_max_deviation(const SpinorField& phi) {
    PairField p = pair_from_spinor(phi);
    ScalarField n2 = grad_norm2_density(phi);
    double r = 0;
    for (std::size_t k = 0; k < n2.v.size(); ++k) {
        const Mat2& a = p.endo.v[k];
        double pn = frob_dot(a, a) + dot(p.beta.v[k], p.beta.v[k]);
        r = std::max(r, std::abs(n2.v[k] - pn));
    }
    return r;
}

} // namespace spinergy
