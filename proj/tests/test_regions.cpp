#include "doctest.h"
#include "oracles.hpp"
#include "planetary/regions.hpp"
#include "support.hpp"

#include <random>

using namespace planetary;
using testing_support::thrown_kind;

namespace {

DiophantineSpec make_spec(std::vector<int> blocks, std::vector<double> gammas, double tau, int K) {
    DiophantineSpec s;
    s.block_dims = std::move(blocks);
    s.gammas = std::move(gammas);
    s.tau = tau;
    s.cutoff = K;
    return s;
}

std::uint64_t brute_lattice_count(int d, int K) {
    std::uint64_t c = 0;
    std::vector<int> k(d, -K);
    while (true) {
        int l1 = 0;
        for (int v : k) l1 += std::abs(v);
        if (l1 > 0 && l1 <= K) ++c;
        int i = d - 1;
        while (i >= 0 && k[i] == K) k[i--] = -K;
        if (i < 0) break;
        ++k[i];
    }
    return c / 2;
}

}  // namespace

TEST_SUITE("regions") {

TEST_CASE("lattice count") {
    for (int d : {1, 2, 3})
        for (int K : {1, 4, 9}) CHECK(lattice_count(d, K) == brute_lattice_count(d, K));
    CHECK(lattice_count(3, 50) == 85900);
    CHECK(lattice_count(4, 50) > kLatticeBudget);
    const DiophantineSpec big = make_spec({2, 2}, {0.1, 0.01}, 3, 50);
    CHECK(thrown_kind([&] { diophantine_check({1, 2, 3, 4}, big); }) == "BudgetExceeded");
}

TEST_CASE("Diophantine examples") {
    const DiophantineResult res = diophantine_check({1.0, 1.0}, make_spec({2}, {0.1}, 2, 30));
    CHECK(!res.passes);
    CHECK(res.witness == std::vector<int>{1, -1});
    const double golden = (1 + std::sqrt(5.0)) / 2;
    CHECK(diophantine_check({1.0, golden}, make_spec({2}, {0.1}, 2, 50)).passes);
    // two scales: the second block sees only its own, much smaller gamma
    const double delta = 1e-3;
    CHECK(diophantine_check({1.0, delta}, make_spec({1, 1}, {0.5, 1e-5}, 2, 20)).passes);
    CHECK(!diophantine_check({1.0, delta}, make_spec({1, 1}, {0.5, 1e-2}, 2, 20)).passes);
    CHECK(thrown_kind([] { diophantine_check({1.0}, make_spec({2}, {0.1}, 2, 5)); }) == "InvalidInput");
    CHECK(thrown_kind([] { diophantine_check({1.0, 2.0}, make_spec({1, 1}, {0.1, 0.2}, 2, 5)); }) == "InvalidInput");
}

TEST_CASE("single block equals the classical test") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int t = 0; t < 20; ++t) {
        const std::vector<double> w{u(rng), u(rng), u(rng)};
        const DiophantineResult r = diophantine_check(w, make_spec({3}, {0.02}, 3, 15));
        bool classical = true;
        for (int a = -15; a <= 15; ++a)
            for (int b = -15; b <= 15; ++b)
                for (int c = -15; c <= 15; ++c) {
                    const int l1 = std::abs(a) + std::abs(b) + std::abs(c);
                    if (l1 == 0 || l1 > 15) continue;
                    if (std::abs(w[0] * a + w[1] * b + w[2] * c) < 0.02 / std::pow(double(l1), 3)) classical = false;
                }
        CHECK(r.passes == classical);
    }
}

TEST_CASE("scan agrees with the box oracle") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1, 1);
    const std::vector<std::vector<int>> layouts{{2}, {1, 2}, {1, 1, 1}};
    for (const auto& blocks : layouts) {
        std::vector<double> gammas{0.05, 0.01, 0.002};
        gammas.resize(blocks.size());
        for (int t = 0; t < 10; ++t) {
            std::vector<double> w;
            for (int v : blocks)
                for (int c = 0; c < v; ++c) w.push_back(u(rng));
            if (t % 3 == 0) w.back() = w.front() * 0.5;  // exact resonance
            const int K = int(w.size()) == 2 ? 40 : 20;
            const DiophantineResult r = diophantine_check(w, make_spec(blocks, gammas, double(w.size()), K));
            const auto want = oracle::diophantine_box(w, blocks, gammas, double(w.size()), K);
            CHECK(r.passes == want.passes);
            CHECK(r.witness == want.witness);
            CHECK(r.witness_block == want.block);
            CHECK(r.min_slack == want.min_slack);
        }
    }
}

TEST_CASE("spacing and gamma ladders") {
    CHECK(spacing_exponent3(2, 1) == 3);
    CHECK(spacing_exponent3(2, 2) == 0);
    CHECK(spacing_exponent3(3, 1) == 10);
    CHECK(spacing_exponent3(3, 2) == 7);
    const auto a = spacing_ladder(2, 0.1, {1.0, 2.0});
    CHECK(a[1].lower == 1.0);
    CHECK(a[1].upper == 2.0);
    CHECK(std::abs(a[0].lower - 10.0) < 1e-13);
    CHECK(std::abs(a[0].upper - 20.0) < 1e-13);

    const GammaLadder g2 = gamma_ladder(2, 1e-3, a, 0.1, {0.5, 0.4});
    CHECK(g2.blocks == std::vector<int>{1, 1, 2});
    CHECK(std::abs(g2.gammas[0] - 0.1 / (10.0 * 0.5)) < 1e-15);
    CHECK(std::abs(g2.gammas[2] - 1e-3 * 4.0 / 1000.0 * 0.1 / 0.5) < 1e-18);
    const auto a3 = spacing_ladder(3, 0.2, {1.0, 1.5});
    const GammaLadder g3 = gamma_ladder(3, 1e-3, a3, 0.1, {0.5, 0.4, 0.3});
    CHECK(g3.blocks == std::vector<int>{1, 1, 1, 3, 1});
    int total = 0;
    for (int b : g3.blocks) total += b;
    CHECK(total == 7);
}

TEST_CASE("holomorphy parameters") {
    MassSystem ms{1.0, {1.0, 2.0}, 1e-3};
    HolomorphyConfig cfg{{0.3, 0.4}, {0.5, 0.6}, {0.9, 0.95}, 0.25};
    const auto a = spacing_ladder(2, 0.1, {1.0, 2.0});
    const HolomorphyParams h = holomorphy_params(cfg, ms, a);
    for (int i = 0; i < 2; ++i) {
        CHECK(h.theta[i] == cfg.s * std::sqrt(h.Lambda_minus[i]));
        CHECK(std::abs(h.Lambda_minus[i] - ms.mu(i) * std::sqrt(ms.M(i) * a[i].lower)) < 1e-15);
    }
    CHECK(h.Theta_plus.size() == 1);
}

TEST_CASE("tangent geometry") {
    const TangentGeometry tg = tangent_geometry();
    const double closed = 0.25 * std::sqrt(0.3 * (69 + 11 * std::sqrt(33.0)));
    CHECK(std::abs(tg.k_lower - closed) < 1e-12);
    const double searched = oracle::golden_min([](double x) { return (1 + x) * std::sqrt((4 + x) / 5) / x; }, 0.5, 10);
    CHECK(std::abs(tg.k_lower - searched) < 1e-12);
    CHECK(std::abs(tg.k_lower - 1.57) < 5e-3);
    CHECK(std::abs(tg.a_tangent - (1 + std::sqrt(33.0)) / 2) < 1e-13);
    CHECK(std::abs(tg.c_tangent - (-17 + std::sqrt(33.0)) / 32) < 1e-13);
    CHECK(tg.cubic_residual < 1e-12);
    CHECK(tg.double_root_residual < 1e-10);

    const auto roots = cubic_real_roots(0, -9, -8);
    const auto want = oracle::companion_real_roots({0, -9, -8});
    REQUIRE(roots.size() == 3);
    CHECK(std::abs(roots[0] - (1 - std::sqrt(33.0)) / 2) < 1e-13);
    CHECK(std::abs(roots[1] + 1) < 1e-13);
    CHECK(std::abs(roots[2] - (1 + std::sqrt(33.0)) / 2) < 1e-13);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(roots[i] - want[i]) < 1e-12);
}

TEST_CASE("critical angular momentum root") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(0.1, 5.0);
    for (int t = 0; t < 30; ++t) {
        const double C = u(rng), L2 = C * (1.0 + u(rng));
        const double r = cstar_root(L2, C);
        // x^3 + 6C x^2 + 9C^2 x + 4C^3 - 5 L2^2 C
        const auto roots = oracle::companion_real_roots({6 * C, 9 * C * C, 4 * C * C * C - 5 * L2 * L2 * C});
        double pos = -1;
        for (double v : roots)
            if (v > 0) pos = v;
        CHECK(std::abs(r - pos) < 1e-10 * pos);
        CHECK(std::abs(5 * L2 * L2 * C - (C + r) * (C + r) * (4 * C + r)) < 1e-10 * 5 * L2 * L2 * C);
    }
    double prev = 0;
    for (double L2 : {1.0, 2.0, 4.0, 8.0, 16.0, 32.0}) {
        const double r = cstar_root(L2, 1.0);
        CHECK(r > prev);
        prev = r;
    }
    CHECK(thrown_kind([] { cstar_root(0.8, 1.0); }) == "DomainError");
}

TEST_CASE("region definitions") {
    CoexistenceParams P;
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> u(0, 1);
    for (int t = 0; t < 200; ++t) {
        const double L1 = 1 + 10 * u(rng), L2 = L1 + 1.0 - 0.5 * u(rng);
        CHECK(!region_membership({L1, L2, 0.5}, P, RegionSet::L2));
    }
    const double top = P.C / (2 * std::sqrt(P.alpha_plus));
    for (int t = 0; t < 200; ++t) {
        const double L2 = 2 * P.C + (top - 2 * P.C) * (0.001 + 0.998 * u(rng));
        CHECK(region_membership({3.0, L2, 1.0}, P, RegionSet::L3));
    }
    CHECK(std::string(region_name(RegionSet::L1sub)) == "L1_sub");
    CHECK(region_from_name("L_su") == RegionSet::Lsu);
    CHECK(thrown_kind([] { region_from_name("L9"); }) == "InvalidInput");
}

TEST_CASE("coexistence witness") {
    CoexistenceParams P;
    const CoexistenceWitness w = coexistence_witness(P);
    CHECK(w.min_margin >= 1e-6);
    for (const Margin& m : allinequalities_margins(w.point.Lambda1, w.point.Lambda2, P)) {
        CAPTURE(m.name);
        CHECK(m.slack >= 1e-6);
    }
    for (RegionSet s : {RegionSet::L1, RegionSet::L2, RegionSet::L3, RegionSet::Ls, RegionSet::Lu, RegionSet::Gs,
                        RegionSet::Gu, RegionSet::Lsu})
        CHECK(region_membership(w.point, P, s));

    CoexistenceParams thin = P;
    thin.eps = 0.001;
    const CoexistenceWitness wt = coexistence_witness(thin);
    CHECK(region_membership(wt.point, thin, RegionSet::L2));

    CoexistenceParams bad = P;
    bad.alpha_plus = 0.25;
    CHECK(thrown_kind([&] { coexistence_witness(bad); }) == "InvalidParams");
    bad = P;
    bad.Lambda_plus = 5.0;
    CHECK(thrown_kind([&] { coexistence_witness(bad); }) == "InvalidParams");
}

TEST_CASE("raster") {
    CoexistenceParams P;
    const auto cells = region_raster(P, 40, 40, 20.0);
    CHECK(cells.size() == 1600);
    bool any = false;
    for (const auto& c : cells) any = any || c.mask != 0;
    CHECK(any);
}

}  // TEST_SUITE
