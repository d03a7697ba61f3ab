#include "doctest.h"
#include "planetary/charts.hpp"
#include "planetary/kepler.hpp"
#include "planetary/nbody.hpp"
#include "planetary/symplectic.hpp"
#include "support.hpp"

#include <random>

using namespace planetary;
using testing_support::thrown_kind;

namespace {

// Two planets on circular orbits about tilted planes, outer first.
CartesianState circular_pair(const MassSystem& ms, double incl_outer, double incl_inner) {
    CartesianState s;
    const double a[2] = {10.0, 3.0}, incl[2] = {incl_outer, incl_inner}, node[2] = {0.4, 1.3};
    for (int i = 0; i < 2; ++i) {
        const auto el = testing_support::elements(a[i], 0.0, incl[i], node[i], 0.0, 0.7 * (i + 1), ms.mu(i), ms.M(i));
        const PhasePoint p = cartesian_from_elements(el);
        s.x.push_back(p.x);
        s.y.push_back(p.y);
    }
    return s;
}

}  // namespace

TEST_SUITE("charts") {

TEST_CASE("round trips and conserved data on every chart") {
    for (const std::string& chart : chart_names()) {
        if (chart == "broken") continue;
        CAPTURE(chart);
        const SymplecticReport r = check_chart(chart, 2, 30, 17);
        CHECK(r.roundtrip_max < 1e-9);
        for (const auto& [k, v] : r.conserved_residuals) {
            CAPTURE(k);
            CHECK(v < 1e-10);
        }
    }
    for (const char* chart : {"delaunay", "poincare", "deprit", "depritaa", "kmap", "pmap", "rps"}) {
        CAPTURE(chart);
        CHECK(check_chart(chart, 3, 20, 18).roundtrip_max < 1e-9);
    }
}

TEST_CASE("two-form controls") {
    CHECK(check_two_form("cartesian", 2, 10, 1).two_form_residual_max < 1e-12);
    CHECK(check_two_form("broken", 2, 10, 1).two_form_residual_max > 1e-2);
    CHECK(!report_passes(check_chart("broken", 2, 10, 1)));
}

TEST_CASE("two-form residual shrinks like the square of the step") {
    for (const char* chart : {"poincare", "kmap", "pmap"}) {
        CAPTURE(chart);
        const double coarse = check_two_form(chart, 2, 20, 3, 2e-5).two_form_residual_max;
        const double fine = check_two_form(chart, 2, 20, 3, 1e-5).two_form_residual_max;
        CHECK(coarse / fine > 3.6);
        CHECK(coarse / fine < 4.4);
    }
}

TEST_CASE("one-form") {
    CHECK(check_one_form("kmap", 2, 20, 4).one_form_residual_max < 1e-7);
    CHECK(check_one_form("kmap", 3, 20, 4).one_form_residual_max < 1e-7);
    CHECK(check_one_form("deprit", 2, 20, 4).one_form_residual_max < 1e-8);
}

TEST_CASE("chart registry errors") {
    const MassSystem ms = sampling_masses(2);
    CHECK(thrown_kind([&] { chart_spec("nope", 2, ms); }) == "InvalidInput");
    const MassSystem three = sampling_masses(3);
    CHECK(thrown_kind([&] { chart_spec("rpspi", 3, three); }) == "Unsupported");
}

TEST_CASE("Poincare variables") {
    const MassSystem ms = sampling_masses(2);
    std::mt19937_64 rng(21);
    for (int t = 0; t < 20; ++t) {
        const DelaunayAA d = delaunay_from_cartesian(sample_state(rng, 2, ms), ms);
        const PoincareState p = poincare_from_delaunay(d);
        for (int i = 0; i < 2; ++i) {
            CHECK(std::abs(p.uh[i] * p.uh[i] + p.ux[i] * p.ux[i] - 2 * (d.Lambda[i] - d.G[i])) < 1e-12 * d.Lambda[i]);
            CHECK(angle_distance(p.lambda[i], d.ell[i] + d.g[i] + d.zeta[i]) < 1e-12);
        }
        const DelaunayAA back = delaunay_from_poincare(p);
        for (int i = 0; i < 2; ++i) {
            CHECK(std::abs(back.G[i] - d.G[i]) < 1e-12 * d.Lambda[i]);
            CHECK(std::abs(back.Z[i] - d.Z[i]) < 1e-12 * d.Lambda[i]);
            CHECK(angle_distance(back.g[i], d.g[i]) < 1e-10);
            CHECK(angle_distance(back.zeta[i], d.zeta[i]) < 1e-10);
        }
    }
    DelaunayAA flat;
    flat.Lambda = flat.G = flat.Z = {2.0, 1.0};
    flat.ell = {0.3, 0.4};
    flat.g = flat.zeta = {0.0, 0.0};
    const PoincareState z0 = poincare_from_delaunay(flat);
    for (int i = 0; i < 2; ++i) CHECK((z0.uh[i] == 0 && z0.ux[i] == 0 && z0.up[i] == 0 && z0.uq[i] == 0));
}

TEST_CASE("Delaunay and Deprit boundaries") {
    MassSystem ms = sampling_masses(2);
    const CartesianState planar = circular_pair(ms, 0.0, 0.0);
    CHECK(thrown_kind([&] { deprit_from_cartesian(planar); }) == "DegenerateNode");
    CartesianState one = planar;
    one.x.pop_back();
    one.y.pop_back();
    MassSystem single{1.0, {1.0}, 1e-3};
    CHECK(thrown_kind([&] { delaunay_from_cartesian(one, single); }) != "");
}

TEST_CASE("Jacobi node reduction") {
    const JacobiReduction eq = jacobi_reduction(2.0, 2.0, 3.0);
    CHECK(eq.Z1 == doctest::Approx(1.5));
    CHECK(eq.Z2 == doctest::Approx(1.5));
    const JacobiReduction r = jacobi_reduction(3.0, 4.0, 5.0);
    CHECK(std::abs(r.Z1 - 1.8) < 1e-15);
    CHECK(std::abs(r.Z2 - 3.2) < 1e-15);
    CHECK(std::abs(r.node_gap - kPi) < 1e-15);
    CHECK(thrown_kind([] { jacobi_reduction(1.0, 1.0, 3.0); }) == "GeometryError");
}

TEST_CASE("Deprit and K agree on the shared integrals") {
    const MassSystem ms = sampling_masses(3);
    std::mt19937_64 rng(31);
    int done = 0;
    while (done < 20) {
        const CartesianState s = sample_state(rng, 3, ms);
        const DepritState d = deprit_from_cartesian(s);
        const KState k = k_from_cartesian(s);
        const Vec3 C = angular_momenta(s).total;
        CHECK(std::abs(d.Psi[1] - norm(C)) < 1e-12 * norm(C));
        CHECK(std::abs(d.Psi[2] - C.z) < 1e-12 * norm(C));
        CHECK(std::abs(k.chi[1] - d.Psi[1]) < 1e-12 * norm(C));
        CHECK(std::abs(k.chi[2] - d.Psi[2]) < 1e-12 * norm(C));
        CHECK(angle_distance(k.kappa[2], d.psi[2]) < 1e-12);
        ++done;
    }
}

TEST_CASE("P chart structure for two planets") {
    const MassSystem ms = sampling_masses(2);
    std::mt19937_64 rng(41);
    for (int t = 0; t < 30; ++t) {
        const CartesianState s = sample_state(rng, 2, ms);
        const PState p = p_from_cartesian(s, ms);
        const AngularMomenta am = angular_momenta(s);
        const double C = norm(am.total);
        CHECK(std::abs(p.Theta[0] - norm(am.C[0])) < 1e-13 * C);
        CHECK(std::abs(p.chi[0] - C) < 1e-12 * C);
        CHECK(std::abs(p.chi[1] - am.total.z) < 1e-12 * C);
        const double T1 = p.Theta[0], T2 = p.Theta[1];
        const double C2 = std::sqrt(C * C + T1 * T1 - 2 * T2 * T2 +
                                    2 * std::sqrt((C * C - T2 * T2) * (T1 * T1 - T2 * T2)) * std::cos(p.vartheta[1]));
        CHECK(std::abs(C2 - norm(am.C[1])) < 1e-10 * C);
    }
    CHECK(std::abs(p_planet_momentum(3.0, 1.0, 0.0, 0.0) - 4.0) < 1e-15);
    CHECK(std::abs(p_planet_momentum(3.0, 1.0, 0.0, kPi) - 2.0) < 1e-15);
}

TEST_CASE("reflection acts as a sign flip in K and P") {
    for (int n : {2, 3}) {
        const MassSystem ms = sampling_masses(n);
        std::mt19937_64 rng(50 + n);
        for (int t = 0; t < 20; ++t) {
            const CartesianState s = sample_state(rng, n, ms);
            const KState lhs = k_from_cartesian(reflect_r2minus(s)), rhs = reflect_k(k_from_cartesian(s));
            const PState pl = p_from_cartesian(reflect_r2minus(s), ms), pr = reflect_p(p_from_cartesian(s, ms));
            for (int i = 0; i < n; ++i) {
                CHECK(std::abs(lhs.Theta[i] - rhs.Theta[i]) < 1e-10);
                CHECK(std::abs(lhs.chi[i] - rhs.chi[i]) < 1e-10);
                CHECK(std::abs(lhs.R[i] - rhs.R[i]) < 1e-10);
                CHECK(angle_distance(lhs.vartheta[i], rhs.vartheta[i]) < 1e-10);
                CHECK(angle_distance(lhs.kappa[i], rhs.kappa[i]) < 1e-10);
                CHECK(std::abs(lhs.r[i] - rhs.r[i]) < 1e-10);
                CHECK(std::abs(pl.Theta[i] - pr.Theta[i]) < 1e-10);
                CHECK(std::abs(pl.chi[i] - pr.chi[i]) < 1e-10);
                CHECK(std::abs(pl.Lambda[i] - pr.Lambda[i]) < 1e-10);
                CHECK(angle_distance(pl.vartheta[i], pr.vartheta[i]) < 1e-10);
                CHECK(angle_distance(pl.kappa[i], pr.kappa[i]) < 1e-10);
                CHECK(angle_distance(pl.ell[i], pr.ell[i]) < 1e-10);
            }
        }
    }
}

TEST_CASE("regularized variables") {
    const MassSystem ms = sampling_masses(2);
    std::mt19937_64 rng(61);
    for (int t = 0; t < 20; ++t) {
        const CartesianState s = sample_state(rng, 2, ms);
        const DepritAA aa = deprit_actionangle(deprit_from_cartesian(s), ms);
        const RpsState r = rps_from_depritaa(aa);
        const Vec3 C = angular_momenta(s).total;
        CHECK(std::abs(r.p[1] * r.p[1] + r.q[1] * r.q[1] - 2 * (norm(C) - C.z)) < 1e-10 * norm(C));
        const DepritAA back = depritaa_from_rps(r);
        for (int i = 0; i < 2; ++i) CHECK(std::abs(back.Gamma[i] - aa.Gamma[i]) < 1e-11 * aa.Lambda[i]);
    }
    DepritAA circ;
    circ.Lambda = circ.Gamma = {3.0, 1.0};
    circ.Psi = {3.5, 3.2};
    circ.ell = {0.1, 0.2};
    circ.gamma = {0.3, 0.4};
    circ.psi = {0.5, 0.6};
    const RpsState r = rps_from_depritaa(circ);
    for (int i = 0; i < 2; ++i) CHECK((r.eta[i] == 0.0 && r.xi[i] == 0.0));
}

TEST_CASE("retrograde involution") {
    const MassSystem ms = sampling_masses(2, true);
    std::mt19937_64 rng(71);
    int done = 0, tries = 0;
    while (done < 50 && tries++ < 500) {
        const CartesianState s = sample_state(rng, 2, ms, true);
        RetroState st;
        try {
            st = retro_from_depritaa(deprit_actionangle(deprit_from_cartesian(s), ms));
        } catch (const Error&) {
            continue;
        }
        const RetroComplex c = retro_to_complex(st);
        const RetroComplex twice = rps_retrograde_involution(rps_retrograde_involution(c));
        CHECK((twice.Lambda == c.Lambda && twice.lambda == c.lambda && twice.t == c.t && twice.T == c.T));
        const double h = hamiltonian_retro(st, ms);
        CHECK(std::abs(h - hamiltonian_rps_involuted(rps_retrograde_involution(c), ms)) < 1e-10 * std::abs(h));
        const double Cn = norm(angular_momenta(s).total);
        CHECK(std::abs(retro_total_momentum(c) - Cn) < 1e-10 * Cn);
        ++done;
    }
    CHECK(done == 50);
}

}  // TEST_SUITE
