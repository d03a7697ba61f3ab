// Command-line front end. Exit codes: 0 ok, 1 usage or parse error, 2 domain error, 3 check failed.
#include <algorithm>
#include <cstdio>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "planetary/errors.hpp"
#include "planetary/io.hpp"
#include "planetary/regions.hpp"
#include "planetary/secular.hpp"
#include "planetary/symplectic.hpp"

using namespace planetary;

namespace {

constexpr int kOk = 0, kUsage = 1, kDomain = 2, kCheckFailed = 3;

int code_for(const Error& e) {
    const std::string& k = e.kind();
    if (k == "ParseError" || k == "IOError" || k == "Usage") return kUsage;
    return kDomain;
}

int guarded(const std::function<int()>& body) {
    try {
        return body();
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return code_for(e);
    }
}

bool known_chart(const std::string& name) {
    const auto& names = chart_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

struct MassFlags {
    double m0 = 1.0;
    std::vector<double> masses;
    std::optional<double> mu = 1e-3;

    void add(CLI::App* app) {
        app->add_option("--m0", m0, "central mass");
        app->add_option("--masses", masses, "planet masses, outer first")->delimiter(',');
        app->add_option("--mu", mu, "coupling scale");
    }
    MassSystem get(std::size_t n) const {
        MassSystem ms = secular_masses();
        if (!masses.empty()) ms.m = masses;
        ms.m0 = m0;
        ms.mu_scaling = mu;
        if (ms.m.size() != n) fail("Usage", "need " + std::to_string(n) + " planet masses");
        ms.validate();
        return ms;
    }
};

// ---- convert

int run_convert(const std::string& from, const std::string& to, const std::string& in, const std::string& out) {
    if (!known_chart(from) || !known_chart(to)) fail("Usage", "unknown chart; known: cartesian, delaunay, ...");
    const std::string text = read_text_file(in);
    StateFile cart;
    if (from == "cartesian") {
        cart = parse_state_file(text);
    } else {
        const ChartFile cf = parse_chart_file(text);
        if (cf.chart != from) fail("ParseError", "file holds chart '" + cf.chart + "', expected '" + from + "'");
        const ChartSpec spec = chart_spec(from, cf.masses.n(), cf.masses);
        cart.masses = cf.masses;
        cart.state = unflatten(spec.to_cartesian(cf.values));
    }
    std::string result;
    if (to == "cartesian") {
        result = serialize_state_file(cart);
    } else {
        const ChartSpec spec = chart_spec(to, cart.masses.n(), cart.masses);
        result = serialize_chart_file({to, cart.masses, spec.from_cartesian(cart.state)});
    }
    write_text_file(out, result);
    return kOk;
}

// ---- secular

bool herman_passes(const SecularSpectrum& s) {
    return s.herman_residuals[0] < 1e-6 * s.Qv.max_abs() && s.herman_residuals[1] < 1e-6 * s.Qh.max_abs();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Planetary charts, secular theory and coexistence regions"};
    app.require_subcommand(1);
    int code = kOk;

    // convert
    std::string from, to, in, out;
    auto* conv = app.add_subcommand("convert", "convert a state between charts");
    conv->add_option("--from", from, "source chart")->required();
    conv->add_option("--to", to, "target chart")->required();
    conv->add_option("--in", in, "input file")->required();
    conv->add_option("--out", out, "output file")->required();
    conv->callback([&] { code = guarded([&] { return run_convert(from, to, in, out); }); });

    // check
    std::string chart;
    int samples = 100, n = 2;
    std::uint64_t seed = 7;
    double step = 1e-5;
    auto* chk = app.add_subcommand("check", "symplecticity, round trips and conserved quantities of a chart");
    chk->add_option("--chart", chart, "chart id")->required();
    chk->add_option("--samples", samples, "sample count");
    chk->add_option("--seed", seed, "random seed");
    chk->add_option("--step", step, "relative finite-difference step");
    chk->add_option("--n", n, "planet count");
    chk->callback([&] {
        code = guarded([&] {
            if (!known_chart(chart)) fail("Usage", "unknown chart '" + chart + "'");
            const SymplecticReport r = check_chart(chart, n, samples, seed, step);
            std::cout << report_json(r);
            return report_passes(r) ? kOk : kCheckFailed;
        });
    });

    // secular
    auto* sec = app.add_subcommand("secular", "averaged theory");
    sec->require_subcommand(1);
    MassFlags mflags;
    std::vector<double> lambda;
    int nodes = 256, sec_n = 2;
    double fd = 0.0;
    auto add_spectrum_flags = [&](CLI::App* c) {
        c->add_option("--lambda", lambda, "actions, outer first")->required()->delimiter(',');
        c->add_option("--n", sec_n, "planet count");
        c->add_option("--nodes", nodes, "quadrature nodes per angle");
        c->add_option("--step", fd, "second-difference step in z (0: automatic)");
        mflags.add(c);
    };
    auto spectrum = [&](bool gate) {
        return guarded([&] {
            if (int(lambda.size()) != sec_n) fail("Usage", "--lambda needs " + std::to_string(sec_n) + " values");
            QuadratureSpec q;
            q.nodes_per_angle = nodes;
            q.dims = sec_n;
            const SecularSpectrum s = quadratic_forms(lambda, mflags.get(lambda.size()), q, fd);
            const bool ok = herman_passes(s);
            std::cout << spectrum_json(s, lambda, ok);
            return !gate || ok ? kOk : kCheckFailed;
        });
    };
    auto* spec_cmd = sec->add_subcommand("spectrum", "quadratic secular forms and their eigenvalues");
    add_spectrum_flags(spec_cmd);
    spec_cmd->callback([&] { code = spectrum(false); });
    auto* herman = sec->add_subcommand("herman", "exit 0 iff both resonance identities hold to 1e-6");
    add_spectrum_flags(herman);
    herman->callback([&] { code = spectrum(true); });

    double ls = 1.5, lalpha = 0.1;
    int lj = 1;
    auto* lap = sec->add_subcommand("laplace", "Laplace coefficient");
    lap->add_option("--s", ls, "exponent");
    lap->add_option("--j", lj, "index");
    lap->add_option("--alpha", lalpha, "ratio in [0, 1)");
    lap->callback([&] {
        code = guarded([&] {
            const double v = laplace_coefficient(ls, lj, lalpha);
            std::printf("s,j,alpha,value\n%.17g,%d,%.17g,%.17g\n", ls, lj, lalpha, v);
            return kOk;
        });
    });

    std::vector<double> alphas = {0.1, 0.05, 0.025};
    auto* f2 = sec->add_subcommand("f2", "second-order closed form against quadrature");
    f2->add_option("--alpha", alphas, "semi-major axis ratios")->delimiter(',');
    f2->add_option("--nodes", nodes, "quadrature nodes per angle");
    mflags.add(f2);
    f2->callback([&] {
        code = guarded([&] {
            QuadratureSpec q;
            q.nodes_per_angle = nodes;
            std::cout << scaling_csv(f2_scaling_study(alphas, mflags.get(2), {}, q));
            return kOk;
        });
    });

    auto* retro = sec->add_subcommand("retro", "retrograde sigma matrix and spectrum");
    retro->add_option("--lambda", lambda, "actions, outer first")->required()->delimiter(',');
    mflags.add(retro);
    retro->callback([&] {
        code = guarded([&] {
            if (lambda.size() != 2) fail("Usage", "--lambda needs 2 values");
            std::cout << retro_json(retro_spectrum(lambda, mflags.get(2)));
            return kOk;
        });
    });

    // region
    auto* reg = app.add_subcommand("region", "Diophantine sets and coexistence regions");
    reg->require_subcommand(1);
    std::vector<double> omega, gammas;
    std::vector<int> blocks;
    double tau = 2.0;
    int K = 20;
    auto* dio = reg->add_subcommand("dioph", "multi-scale Diophantine check by exhaustive scan");
    dio->add_option("--omega", omega, "frequency vector")->required()->delimiter(',');
    dio->add_option("--gamma", gammas, "one gamma per block")->required()->delimiter(',');
    dio->add_option("--blocks", blocks, "block dimensions (default: one block)")->delimiter(',');
    dio->add_option("--tau", tau, "exponent");
    dio->add_option("--K", K, "cutoff on |k|_1");
    dio->callback([&] {
        code = guarded([&] {
            DiophantineSpec s;
            s.block_dims = blocks.empty() ? std::vector<int>{int(omega.size())} : blocks;
            s.gammas = gammas;
            s.tau = tau;
            s.cutoff = K;
            const DiophantineResult r = diophantine_check(omega, s);
            std::cout << diophantine_json(r);
            return r.passes ? kOk : kCheckFailed;
        });
    });

    CoexistenceParams cp;
    std::optional<double> lam_minus, lam_plus;
    auto add_region_flags = [&](CLI::App* c) {
        c->add_option("--C", cp.C, "total angular momentum");
        c->add_option("--eps", cp.eps, "strip width");
        c->add_option("--alpha-minus", cp.alpha_minus, "lower axis ratio");
        c->add_option("--alpha-plus", cp.alpha_plus, "upper axis ratio");
        c->add_option("--k-minus", cp.k_minus, "lower slope");
        c->add_option("--k-plus", cp.k_plus, "upper slope");
        c->add_option("--lambda-minus", lam_minus, "lower action bound (default C/2)");
        c->add_option("--lambda-plus", lam_plus, "upper action bound (default 15 C)");
        c->add_option("--c", cp.c, "constant in (0, 1)");
    };
    auto finish_params = [&] {
        cp.Lambda_minus = lam_minus.value_or(0.5 * cp.C);
        cp.Lambda_plus = lam_plus.value_or(15.0 * cp.C);
    };
    auto* coex = reg->add_subcommand("coexist", "search a point of the three coexistence sets");
    add_region_flags(coex);
    coex->callback([&] {
        code = guarded([&] {
            finish_params();
            try {
                const CoexistenceWitness w = coexistence_witness(cp);
                std::cout << witness_json(w, cp);
                return kOk;
            } catch (const Error& e) {
                if (e.kind() != "NotFound") throw;
                std::cerr << e.what() << "\n";
                return kCheckFailed;
            }
        });
    });

    std::string raster_out;
    int nx = 200, ny = 200;
    double extent = 20.0;
    auto* ras = reg->add_subcommand("raster", "membership raster in x = Lambda1/C, y = Lambda2/C");
    add_region_flags(ras);
    ras->add_option("--out", raster_out, "CSV file")->required();
    ras->add_option("--nx", nx, "cells along x");
    ras->add_option("--ny", ny, "cells along y");
    ras->add_option("--extent", extent, "side of the square");
    ras->callback([&] {
        code = guarded([&] {
            finish_params();
            write_text_file(raster_out, raster_csv(region_raster(cp, nx, ny, extent)));
            return kOk;
        });
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }
    return code;
}
