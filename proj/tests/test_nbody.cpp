#include "doctest.h"
#include "planetary/kepler.hpp"
#include "planetary/nbody.hpp"
#include "planetary/symplectic.hpp"
#include "support.hpp"

#include <random>

using namespace planetary;
using testing_support::thrown_kind;
using testing_support::vec_diff;

namespace {

CartesianState circular(double r, const MassSystem& ms) {
    CartesianState s;
    s.x.push_back({r, 0, 0});
    s.y.push_back({0, ms.mu(0) * std::sqrt(ms.M(0) / r), 0});
    return s;
}

CartesianState rotated(const CartesianState& s, double angle) {
    CartesianState r = s;
    const Mat3 R = rot3(angle);
    for (int i = 0; i < s.n(); ++i) {
        r.x[i] = R * s.x[i];
        r.y[i] = R * s.y[i];
    }
    return r;
}

}  // namespace

TEST_SUITE("nbody") {

TEST_CASE("barycentric reduction") {
    BarycentricState b;
    b.u = {{-0.5, 0, 0}, {0.5, 0, 0}};
    b.v = {{0, 0, 0}, {1, 2, 3}};
    const CartesianState s = reduce_heliocentric(b);
    CHECK(vec_diff(s.y[0], {0.5, 0, 0}) == 0.0);
    CHECK(vec_diff(s.x[0], {1, 2, 3}) == 0.0);
    b.u[0] = {0, 0, 0};
    CHECK(thrown_kind([&] { reduce_heliocentric(b); }) == "FrameError");

    std::mt19937_64 rng(2);
    const MassSystem ms = sampling_masses(3);
    const CartesianState st = sample_state(rng, 3, ms);
    const BarycentricState lifted = lift_barycentric(st, {0.3, -0.2, 0.1});
    const CartesianState back = reduce_heliocentric(lifted);
    for (int i = 0; i < 3; ++i) {
        CHECK(vec_diff(back.x[i], st.x[i]) < 1e-12 * norm(st.x[i]));
        CHECK(vec_diff(back.y[i], st.y[i]) == 0.0);
    }
}

TEST_CASE("heliocentric energy equals the many-body energy") {
    std::mt19937_64 rng(8);
    MassSystem ms = sampling_masses(2);
    ms.mu_scaling.reset();
    MassSystem heavy{1.0, {0.01, 0.002}, std::nullopt};
    const CartesianState st = sample_state(rng, 2, heavy);
    const double h = hamiltonian(st, heavy);
    const double ref = manybody_hamiltonian(lift_barycentric(st), heavy.m0, heavy.m);
    CHECK(std::abs(h - ref) < 1e-12 * std::abs(ref));
}

TEST_CASE("energy examples") {
    MassSystem one{1.0, {1e-3}, 1e-3};
    const double r = 2.5;
    CHECK(std::abs(hamiltonian(circular(r, one), one) + one.mu(0) * one.M(0) / (2 * r)) < 1e-15);

    std::mt19937_64 rng(1);
    MassSystem two = sampling_masses(2);
    two.mu_scaling = 0.0;
    const CartesianState st = sample_state(rng, 2, two);
    double kepler = 0.0;
    for (int i = 0; i < 2; ++i) kepler += kepler_energy(st.y[i], st.x[i], two.mu(i), two.M(i));
    CHECK(hamiltonian(st, two) == kepler);
}

TEST_CASE("invariance under rotations and the reflection") {
    std::mt19937_64 rng(6);
    const MassSystem ms = sampling_masses(3);
    for (int t = 0; t < 10; ++t) {
        const CartesianState st = sample_state(rng, 3, ms);
        const double h = hamiltonian(st, ms);
        const CartesianState rs = rotated(st, 0.37 * (t + 1));
        CHECK(std::abs(hamiltonian(rs, ms) - h) < 1e-12 * std::abs(h));
        const Vec3 c = angular_momenta(st).total, cr = angular_momenta(rs).total;
        CHECK(std::abs(norm(cr) - norm(c)) < 1e-12 * norm(c));
        CHECK(std::abs(cr.z - c.z) < 1e-12 * norm(c));
        const CartesianState fl = reflect_r2minus(st);
        CHECK(std::abs(hamiltonian(fl, ms) - h) < 1e-12 * std::abs(h));
        const CartesianState twice = reflect_r2minus(fl);
        for (int i = 0; i < 3; ++i) CHECK((twice.x[i] == st.x[i] && twice.y[i] == st.y[i]));
    }
}

TEST_CASE("angular momenta") {
    std::mt19937_64 rng(12);
    const MassSystem ms = sampling_masses(2);
    const CartesianState st = sample_state(rng, 2, ms);
    const AngularMomenta am = angular_momenta(st);
    CHECK(am.S[1] == am.C[0] + am.C[1]);
    CHECK(am.total == am.S[1]);
    CartesianState planar = st;
    for (int i = 0; i < 2; ++i) planar.x[i].z = planar.y[i].z = 0.0;
    for (const Vec3& c : angular_momenta(planar).C) CHECK((c.x == 0.0 && c.y == 0.0));
}

TEST_CASE("collision detection") {
    MassSystem ms{1.0, {1e-3, 1e-3}, 1e-3};
    CartesianState st;
    st.x = {{1, 0, 0}, {1, 0, 0}};
    st.y = {{0, 1e-3, 0}, {0, 1e-3, 0}};
    CHECK(thrown_kind([&] { hamiltonian(st, ms); }) == "CollisionError");
}

TEST_CASE("circular two-body orbit closes after one period") {
    MassSystem ms{1.0, {1e-3}, 1e-3};
    const double a = 1.7;
    const CartesianState s = circular(a, ms);
    const double period = 2 * kPi * std::sqrt(a * a * a / ms.M(0));
    const Propagation p = propagate(s, ms, period, period / 1e4);
    CHECK(vec_diff(p.state.x[0], s.x[0]) < 1e-6 * a);
    CHECK(p.energy_drift < 1e-9);
    const Propagation none = propagate(s, ms, 0.0, 0.1);
    CHECK(none.state.x[0] == s.x[0]);
}

}  // TEST_SUITE
