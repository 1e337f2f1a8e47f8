#include <doctest.h>

#include <random>

#include "spinergy/quaternion.hpp"

using namespace spinergy;

namespace {
std::mt19937_64 rng(42);
std::normal_distribution<double> gauss(0.0, 1.0);

Quat random_quat() { return {gauss(rng), gauss(rng), gauss(rng), gauss(rng)}; }
Quat random_unit_quat() {
    Quat q = random_quat();
    return (1.0/norm(q))*q;
}
Vec2 random_vec() { return {gauss(rng), gauss(rng)}; }
} // namespace

TEST_CASE("multiplication table") {
    CHECK(norm(quat_i*quat_i + quat_one) == 0);
    CHECK(norm(quat_j*quat_j + quat_one) == 0);
    CHECK(norm(quat_k*quat_k + quat_one) == 0);
    CHECK(norm(quat_i*quat_j - quat_k) == 0);
    CHECK(norm(quat_j*quat_i + quat_k) == 0);
    CHECK(norm(quat_i*quat_j*quat_k + quat_one) == 0);
}

TEST_CASE("associativity and multiplicativity of the norm") {
    for (int t = 0; t < 200; ++t) {
        Quat a = random_quat(), b = random_quat(), c = random_quat();
        CHECK(norm((a*b)*c - a*(b*c)) < 1e-13*norm(a)*norm(b)*norm(c));
        CHECK(std::abs(norm(a*b) - norm(a)*norm(b)) < 1e-12*norm(a)*norm(b));
    }
}

TEST_CASE("clifford action basics") {
    // X=(1,0), q=1 -> i
    CHECK(norm(clifford_mul({1, 0}, quat_one) - quat_i) == 0);
    // X=(0,1), q=i -> ji = -k
    CHECK(norm(clifford_mul({0, 1}, quat_i) + quat_k) == 0);
    // |X.q| = |X| for unit q
    for (int t = 0; t < 50; ++t) {
        Quat q = random_unit_quat();
        CHECK(std::abs(norm(clifford_mul({3, 4}, q)) - 5.0) < 1e-13);
    }
}

TEST_CASE("clifford relations") {
    for (int t = 0; t < 200; ++t) {
        Vec2 x = random_vec();
        Quat q = random_quat(), p = random_quat();
        // X.(X.q) = -|X|^2 q
        Quat xxq = clifford_mul(x, clifford_mul(x, q));
        CHECK(norm(xxq + dot(x, x)*q) < 1e-13*dot(x, x)*norm(q));
        // <X.q, X.p> = |X|^2 <q,p>
        CHECK(dot(clifford_mul(x, q), clifford_mul(x, p))
              == doctest::Approx(dot(x, x)*dot(q, p)).epsilon(1e-12));
    }
}

TEST_CASE("omega action") {
    CHECK(norm(omega_mul(quat_one) - quat_k) == 0);
    CHECK(norm(omega_mul(quat_k) + quat_one) == 0);
    for (int t = 0; t < 100; ++t) {
        Quat q = random_unit_quat();
        CHECK(std::abs(dot(omega_mul(q), q)) < 1e-14);           // q-bar k q pure imaginary
        CHECK(norm(omega_mul(omega_mul(q)) + q) < 1e-14);        // omega^2 = -1
    }
}

TEST_CASE("omega exponential") {
    const double pi = 3.14159265358979324;
    CHECK(norm(omega_exp(0) - quat_one) == 0);
    CHECK(norm(omega_exp(pi) + quat_one) < 1e-15);
    CHECK(norm(omega_exp(pi/2) - quat_k) < 1e-15);
    std::uniform_real_distribution<double> u(-5, 5);
    for (int t = 0; t < 100; ++t) {
        double s = u(rng), w = u(rng);
        CHECK(norm(omega_exp(s + w) - omega_exp(s)*omega_exp(w)) < 1e-14);
    }
}

TEST_CASE("right multiplication commutes with the left actions") {
    CHECK(norm(right_mul(quat_i, quat_j) - quat_k) == 0);
    for (int t = 0; t < 200; ++t) {
        Vec2 x = random_vec();
        Quat q = random_quat(), c = random_quat();
        Quat lhs = right_mul(clifford_mul(x, q), c);
        Quat rhs = clifford_mul(x, right_mul(q, c));
        CHECK(norm(lhs - rhs) < 1e-13*(1 + norm(q))*(1 + norm(c)));
        CHECK(norm(right_mul(omega_mul(q), c) - omega_mul(right_mul(q, c))) < 1e-13*norm(q)*norm(c));
        Quat cu = (1.0/norm(c))*c;
        CHECK(std::abs(norm(right_mul(q, cu)) - norm(q)) < 1e-13*norm(q));
    }
}

TEST_CASE("unit frame {q, X.q, JX.q, omega.q} is orthonormal") {
    for (int t = 0; t < 1000; ++t) {
        Quat q = random_unit_quat();
        Vec2 x = random_vec();
        double nx = norm(x);
        if (nx < 1e-3) continue;
        x = (1.0/nx)*x;
        Quat f[4] = {q, clifford_mul(x, q), clifford_mul(rot90(x), q), omega_mul(q)};
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
                double want = a == b ? 1.0 : 0.0;
                CHECK(std::abs(dot(f[a], f[b]) - want) < 1e-12);
            }
    }
}

TEST_CASE("omega intertwines the clifford action with the rotation") {
    for (int t = 0; t < 200; ++t) {
        Vec2 x = random_vec();
        Quat q = random_quat();
        Quat lhs = omega_mul(clifford_mul(x, q));
        Quat rhs = clifford_mul(rot90(x), q);
        CHECK(norm(lhs - rhs) < 1e-14*(1 + norm(x)*norm(q)));
    }
}
