#ifndef SPINERGY_SPINOR_FIELD_HPP
#define SPINERGY_SPINOR_FIELD_HPP

#include <cstdint>
#include <random>
#include <stdexcept>

#include "spinergy/operators.hpp"

namespace spinergy {

// Unit spinor field on a flat torus: quaternion values on the lattice grid,
// twisted periodicity given by the spin character, metric carried along.
struct SpinorField {
    QuatField values;
    SpinCharacter twist;
    FlatMetric metric;

    SpinorField() = default;
    SpinorField(QuatField f, SpinCharacter chi, FlatMetric m, bool enforce_unit = true)
        : values(std::move(f)), twist(chi), metric(m) {
        values.wrap_sign = {double(chi.chi1), double(chi.chi2)};
        if (enforce_unit) normalize_checked();
    }

    int n() const { return values.n; }

    // pointwise normalization; rejects inputs farther than 1e-6 from unit
    void normalize_checked() {
        for (Quat& q : values.v) {
            double r = norm(q);
            if (std::abs(r - 1.0) > 1e-6) throw std::invalid_argument("spinor not unit length");
            q *= 1.0 / r;
        }
    }
    void project_unit() {
        for (Quat& q : values.v) q *= 1.0 / norm(q);
    }

    SpinorField with_metric(const FlatMetric& m) const {
        SpinorField out = *this;
        out.metric = m;
        return out;
    }
};

inline double max_unit_deviation(const SpinorField& phi) {
    double r = 0;
    for (const Quat& q : phi.values.v) r = std::max(r, std::abs(norm(q) - 1.0));
    return r;
}

// Smooth random unit spinor: seam-compatible unit-modulus base wave plus a
// few damped low-frequency modes, pointwise normalized. Mild amplitudes keep
// the C^4 norms small so identity residuals stay truncation-dominated.
inline SpinorField random_spinor(const Lattice& lat, SpinCharacter chi, Grid grid,
                                 std::uint64_t seed, double amp = 0.12, int extra_modes = 5) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> uang(0.0, 6.283185307179586);
    std::uniform_int_distribution<int> ufreq(-1, 1);
    const int n = grid.n;
    const double t1 = chi.chi1 < 0 ? 0.5 : 0.0;
    const double t2 = chi.chi2 < 0 ? 0.5 : 0.0;

    for (int attempt = 0; attempt < 64; ++attempt) {
        Quat q0{gauss(rng), gauss(rng), gauss(rng), gauss(rng)};
        q0 *= 1.0 / norm(q0);
        QuatField f(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double s1 = double(i)/n, s2 = double(j)/n;
                f.at(i, j) = omega_exp(6.283185307179586*(t1*s1 + t2*s2)) * q0;
            }
        for (int mno = 0; mno < extra_modes; ++mno) {
            int n1 = ufreq(rng), n2 = ufreq(rng);
            double k1 = n1 + t1, k2 = n2 + t2;
            double ph = uang(rng);
            Quat a{gauss(rng), gauss(rng), gauss(rng), gauss(rng)};
            if (k1 == 0 && k2 == 0) continue;
            a *= amp / (norm(a) * (1.0 + n1*n1 + n2*n2));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    double w = std::cos(6.283185307179586*(k1*double(i)/n + k2*double(j)/n) + ph);
                    f.at(i, j) += w * a;
                }
        }
        double mn = 1e300;
        for (const Quat& q : f.v) mn = std::min(mn, norm(q));
        if (mn < 0.5) continue;
        for (Quat& q : f.v) q *= 1.0 / norm(q);
        return SpinorField(std::move(f), chi, metric_of(lat));
    }
    throw std::runtime_error("random spinor generation failed");
}

} // namespace spinergy

#endif
