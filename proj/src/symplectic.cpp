#include "planetary/symplectic.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include "planetary/charts.hpp"
#include "planetary/errors.hpp"
#include "planetary/kepler.hpp"

namespace planetary {

std::vector<double> flatten(const CartesianState& s) {
    std::vector<double> v;
    v.reserve(6 * s.n());
    for (const Vec3& y : s.y) v.insert(v.end(), {y.x, y.y, y.z});
    for (const Vec3& x : s.x) v.insert(v.end(), {x.x, x.y, x.z});
    return v;
}

CartesianState unflatten(const std::vector<double>& v) {
    if (v.size() % 6 != 0) fail("InvalidInput", "flat Cartesian vector length must be a multiple of 6");
    const int n = int(v.size() / 6);
    CartesianState s;
    for (int i = 0; i < n; ++i) s.y.push_back({v[3 * i], v[3 * i + 1], v[3 * i + 2]});
    for (int i = 0; i < n; ++i) s.x.push_back({v[3 * (n + i)], v[3 * (n + i) + 1], v[3 * (n + i) + 2]});
    return s;
}

std::string ChartSpec::ordering() const {
    std::ostringstream os;
    for (std::size_t k = 0; k < momenta.size(); ++k) os << (k ? " " : "") << "(" << momenta[k] << "," << angles[k] << ")";
    return os.str();
}

namespace {

using Flat = std::vector<double>;

void append(Flat& out, const std::vector<double>& v) { out.insert(out.end(), v.begin(), v.end()); }

std::vector<std::vector<double>> split(const Flat& v, int blocks) {
    const int m = int(v.size()) / blocks;
    std::vector<std::vector<double>> out(blocks);
    for (int b = 0; b < blocks; ++b) out[b].assign(v.begin() + b * m, v.begin() + (b + 1) * m);
    return out;
}

std::vector<std::string> labels(const std::string& base, int n) {
    std::vector<std::string> l;
    for (int i = 1; i <= n; ++i) l.push_back(base + std::to_string(i));
    return l;
}

void set_labels(ChartSpec& c, const std::vector<std::string>& mom, const std::vector<std::string>& ang, int n) {
    for (const auto& b : mom) for (const auto& s : labels(b, n)) c.momenta.push_back(s);
    for (const auto& b : ang) for (const auto& s : labels(b, n)) c.angles.push_back(s);
}

// periodic mask: the first `fixed` momentum blocks are never periodic; angle blocks per flag
std::vector<bool> mask(int n, int blocks, const std::vector<bool>& angle_periodic) {
    std::vector<bool> m(2 * blocks * n, false);
    for (int b = 0; b < blocks; ++b)
        for (int i = 0; i < n; ++i) m[(blocks + b) * n + i] = angle_periodic[b];
    return m;
}

std::map<std::string, double> total_momentum_check(double Cchart, double Zchart, const CartesianState& s) {
    const Vec3 C = angular_momenta(s).total;
    return {{"C", Cchart - norm(C)}, {"Z", Zchart - C.z}};
}

}  // namespace

const std::vector<std::string>& chart_names() {
    static const std::vector<std::string> names{"cartesian", "delaunay", "poincare", "deprit", "depritaa",
                                                "kmap", "pmap", "rps", "rpspi", "broken"};
    return names;
}

MassSystem sampling_masses(int n, bool retro) {
    if (n < 1) fail("InvalidInput", "need at least one planet");
    static const double base[3] = {1.0, 2.0, 8.0};
    MassSystem ms;
    ms.m0 = 1.0;
    for (int i = 0; i < n; ++i) ms.m.push_back(base[i % 3]);
    if (retro && n == 2) ms.m = {0.2, 1.0};
    ms.mu_scaling = 1e-3;
    return ms;
}

MassSystem sampling_masses(const std::string& chart, int n) { return sampling_masses(n, chart == "rpspi"); }

ChartSpec chart_spec(const std::string& name, int n, const MassSystem& ms) {
    if (n < 1) fail("InvalidInput", "need at least one planet");
    if (ms.n() != n) fail("InvalidInput", "mass system size differs from n");
    ChartSpec c;
    c.name = name;
    c.n = n;

    if (name == "cartesian") {
        c.exact_one_form = true;
        for (int i = 1; i <= n; ++i)
            for (const char* k : {"x", "y", "z"}) {
                c.momenta.push_back(std::string("y") + std::to_string(i) + k);
                c.angles.push_back(std::string("x") + std::to_string(i) + k);
            }
        c.periodic.assign(6 * n, false);
        c.from_cartesian = [](const CartesianState& s) { return flatten(s); };
        c.to_cartesian = [](const Flat& v) { return v; };
        c.conserved = [](const Flat&, const CartesianState&) { return std::map<std::string, double>{}; };
        return c;
    }
    if (name == "delaunay") {
        set_labels(c, {"Lambda", "G", "Z"}, {"ell", "g", "zeta"}, n);
        c.periodic = mask(n, 3, {true, true, true});
        c.from_cartesian = [ms](const CartesianState& s) {
            const DelaunayAA d = delaunay_from_cartesian(s, ms);
            Flat v;
            for (const auto* b : {&d.Lambda, &d.G, &d.Z, &d.ell, &d.g, &d.zeta}) append(v, *b);
            return v;
        };
        c.to_cartesian = [ms](const Flat& v) {
            const auto b = split(v, 6);
            return flatten(delaunay_to_cartesian({b[0], b[1], b[2], b[3], b[4], b[5]}, ms));
        };
        c.conserved = [n](const Flat& v, const CartesianState& s) {
            double Z = 0.0;
            for (int i = 0; i < n; ++i) Z += v[2 * n + i];
            return std::map<std::string, double>{{"Z", Z - angular_momenta(s).total.z}};
        };
        return c;
    }
    if (name == "poincare" || name == "broken") {
        set_labels(c, {"Lambda", "uh", "up"}, {"lambda", "ux", "uq"}, n);
        c.periodic = mask(n, 3, {true, false, false});
        // the fault-injected variant stretches the first mean longitude by 10%
        const double stretch = name == "broken" ? 1.1 : 1.0;
        c.from_cartesian = [ms, stretch](const CartesianState& s) {
            const PoincareState p = poincare_from_delaunay(delaunay_from_cartesian(s, ms));
            Flat v;
            for (const auto* b : {&p.Lambda, &p.uh, &p.up, &p.lambda, &p.ux, &p.uq}) append(v, *b);
            if (stretch != 1.0) v[3 * p.Lambda.size()] /= stretch;
            return v;
        };
        c.to_cartesian = [ms, stretch](const Flat& v) {
            auto b = split(v, 6);
            b[3][0] *= stretch;
            const PoincareState p{b[0], b[1], b[2], b[3], b[4], b[5]};
            return flatten(delaunay_to_cartesian(delaunay_from_poincare(p), ms));
        };
        c.conserved = [n](const Flat& v, const CartesianState& s) {
            double Z = 0.0;
            for (int i = 0; i < n; ++i) {
                const double uh = v[n + i], up = v[2 * n + i], ux = v[4 * n + i], uq = v[5 * n + i];
                Z += v[i] - 0.5 * (uh * uh + ux * ux) - 0.5 * (up * up + uq * uq);
            }
            return std::map<std::string, double>{{"Z", Z - angular_momenta(s).total.z}};
        };
        return c;
    }
    if (name == "deprit" || name == "depritaa") {
        if (n < 2) fail("Unsupported", name + " needs n >= 2");
        const bool aa = name == "depritaa";
        c.exact_one_form = !aa;
        if (aa) {
            set_labels(c, {"Lambda", "Gamma", "Psi"}, {"ell", "gamma", "psi"}, n);
            c.periodic = mask(n, 3, {true, true, true});
        } else {
            set_labels(c, {"R", "G", "Psi"}, {"r", "phi", "psi"}, n);
            c.periodic = mask(n, 3, {false, true, true});
        }
        c.from_cartesian = [ms, aa](const CartesianState& s) {
            const DepritState d = deprit_from_cartesian(s);
            Flat v;
            if (aa) {
                const DepritAA a = deprit_actionangle(d, ms);
                for (const auto* b : {&a.Lambda, &a.Gamma, &a.Psi, &a.ell, &a.gamma, &a.psi}) append(v, *b);
            } else {
                for (const auto* b : {&d.R, &d.G, &d.Psi, &d.r, &d.phi, &d.psi}) append(v, *b);
            }
            return v;
        };
        c.to_cartesian = [ms, aa](const Flat& v) {
            const auto b = split(v, 6);
            if (aa) return flatten(deprit_to_cartesian(deprit_from_actionangle({b[0], b[1], b[2], b[3], b[4], b[5]}, ms)));
            return flatten(deprit_to_cartesian({b[0], b[1], b[2], b[3], b[4], b[5]}));
        };
        c.conserved = [n](const Flat& v, const CartesianState& s) {
            return total_momentum_check(v[3 * n - 2], v[3 * n - 1], s);
        };
        return c;
    }
    if (name == "kmap" || name == "pmap") {
        if (n < 2) fail("Unsupported", name + " needs n >= 2");
        const bool k = name == "kmap";
        c.exact_one_form = k;
        if (k) {
            set_labels(c, {"Theta", "chi", "R"}, {"vartheta", "kappa", "r"}, n);
            c.periodic = mask(n, 3, {true, true, false});
        } else {
            set_labels(c, {"Theta", "chi", "Lambda"}, {"vartheta", "kappa", "ell"}, n);
            c.periodic = mask(n, 3, {true, true, true});
        }
        c.from_cartesian = [ms, k](const CartesianState& s) {
            Flat v;
            if (k) {
                const KState q = k_from_cartesian(s);
                for (const auto* b : {&q.Theta, &q.chi, &q.R, &q.vartheta, &q.kappa, &q.r}) append(v, *b);
            } else {
                const PState q = p_from_cartesian(s, ms);
                for (const auto* b : {&q.Theta, &q.chi, &q.Lambda, &q.vartheta, &q.kappa, &q.ell}) append(v, *b);
            }
            return v;
        };
        c.to_cartesian = [ms, k](const Flat& v) {
            const auto b = split(v, 6);
            if (k) return flatten(k_to_cartesian({b[0], b[1], b[2], b[3], b[4], b[5]}));
            return flatten(p_to_cartesian({b[0], b[1], b[2], b[3], b[4], b[5]}, ms));
        };
        c.conserved = [n](const Flat& v, const CartesianState& s) {
            return total_momentum_check(v[2 * n - 2], v[2 * n - 1], s);
        };
        return c;
    }
    if (name == "rps") {
        if (n < 2) fail("Unsupported", "rps needs n >= 2");
        set_labels(c, {"Lambda", "eta", "p"}, {"lambda", "xi", "q"}, n);
        c.periodic = mask(n, 3, {true, false, false});
        c.from_cartesian = [ms](const CartesianState& s) {
            const RpsState r = rps_from_depritaa(deprit_actionangle(deprit_from_cartesian(s), ms));
            Flat v;
            for (const auto* b : {&r.Lambda, &r.eta, &r.p, &r.lambda, &r.xi, &r.q}) append(v, *b);
            return v;
        };
        c.to_cartesian = [ms](const Flat& v) {
            const auto b = split(v, 6);
            const RpsState r{b[0], b[1], b[2], b[3], b[4], b[5]};
            return flatten(deprit_to_cartesian(deprit_from_actionangle(depritaa_from_rps(r), ms)));
        };
        c.conserved = [n](const Flat& v, const CartesianState& s) {
            const Vec3 C = angular_momenta(s).total;
            const double pn = v[3 * n - 1], qn = v[6 * n - 1];
            const auto b = split(v, 6);
            const DepritAA d = depritaa_from_rps({b[0], b[1], b[2], b[3], b[4], b[5]});
            return std::map<std::string, double>{{"pn2+qn2-2(C-Z)", pn * pn + qn * qn - 2.0 * (norm(C) - C.z)},
                                                 {"C", d.Psi[n - 2] - norm(C)},
                                                 {"Z", d.Psi[n - 1] - C.z}};
        };
        return c;
    }
    if (name == "rpspi") {
        if (n != 2) fail("Unsupported", "rpspi is defined for n = 2 only");
        c.retro = true;
        c.momenta = {"Lambda1", "Lambda2", "eta1", "eta2", "p", "P"};
        c.angles = {"lambda1", "lambda2", "xi1", "xi2", "q", "Q"};
        c.periodic = {false, false, false, false, false, false, true, true, false, false, false, false};
        c.from_cartesian = [ms](const CartesianState& s) {
            const RetroState r = retro_from_depritaa(deprit_actionangle(deprit_from_cartesian(s), ms));
            return Flat{r.Lambda[0], r.Lambda[1], r.eta[0], r.eta[1], r.p, r.P,
                        r.lambda[0], r.lambda[1], r.xi[0], r.xi[1], r.q, r.Q};
        };
        c.to_cartesian = [ms](const Flat& v) {
            RetroState r;
            r.Lambda = {v[0], v[1]};
            r.eta = {v[2], v[3]};
            r.p = v[4];
            r.P = v[5];
            r.lambda = {v[6], v[7]};
            r.xi = {v[8], v[9]};
            r.q = v[10];
            r.Q = v[11];
            return flatten(deprit_to_cartesian(deprit_from_actionangle(depritaa_from_retro(r), ms)));
        };
        c.conserved = [](const Flat& v, const CartesianState& s) {
            RetroState r;
            r.Lambda = {v[0], v[1]};
            r.eta = {v[2], v[3]};
            r.p = v[4];
            r.P = v[5];
            r.lambda = {v[6], v[7]};
            r.xi = {v[8], v[9]};
            r.q = v[10];
            r.Q = v[11];
            const Vec3 C = angular_momenta(s).total;
            const double Cc = retro_total_momentum(retro_to_complex(r));
            return std::map<std::string, double>{{"C-(Lambda2-Lambda1-i t.t*)", norm(C) - Cc},
                                                 {"P2+Q2-2(C-Z)", r.P * r.P + r.Q * r.Q - 2.0 * (norm(C) - C.z)}};
        };
        return c;
    }
    fail("InvalidInput", "unknown chart '" + name + "'");
}

CartesianState sample_state(std::mt19937_64& rng, int n, const MassSystem& ms, bool retro, const SamplingDomain& dom) {
    std::uniform_real_distribution<double> U(0.0, 1.0);
    auto uni = [&](double a, double b) { return a + (b - a) * U(rng); };
    for (int attempt = 0; attempt < 10000; ++attempt) {
        std::vector<double> a(n);
        a[0] = dom.a_outer;
        for (int j = 1; j < n; ++j) a[j] = a[j - 1] * uni(dom.ratio_min, dom.ratio_max);

        // orbit normals from the innermost planet outwards, each tilted from the previous
        std::vector<Vec3> normal(n);
        Vec3 prev = kE3;
        for (int j = n - 1; j >= 0; --j) {
            double t = uni(dom.tilt_min, dom.tilt_max);
            if (retro && j == 0) t = kPi - t;
            const double az = uni(0.0, kTwoPi);
            Vec3 u = unit(std::abs(prev.z) < 0.9 ? cross(kE3, prev) : cross(kE1, prev));
            const Vec3 v = cross(prev, u);
            normal[j] = unit(prev * std::cos(t) + (u * std::cos(az) + v * std::sin(az)) * std::sin(t));
            prev = normal[j];
        }

        CartesianState s;
        for (int j = 0; j < n; ++j) {
            TwoBodyElements el;
            el.mu = ms.mu(j);
            el.M = ms.M(j);
            el.a = a[j];
            el.e = uni(dom.e_min, dom.e_max);
            el.C = normal[j] * (el.Lambda() * std::sqrt(1.0 - el.e * el.e));
            const Vec3 u = unit(std::abs(normal[j].z) < 0.9 ? cross(kE3, normal[j]) : cross(kE1, normal[j]));
            const Vec3 v = cross(normal[j], u);
            const double w = uni(0.0, kTwoPi);
            el.P = u * std::cos(w) + v * std::sin(w);
            el.mean_anomaly = uni(0.0, kTwoPi);
            const PhasePoint p = cartesian_from_elements(el);
            s.y.push_back(p.y);
            s.x.push_back(p.x);
        }

        // every inclination the charts see stays in [tilt_min, pi - tilt_min]: planets and total
        // against the reference plane, and each pair merged along the outer-first chain
        const AngularMomenta am = angular_momenta(s);
        const double guard = std::sin(dom.tilt_min);
        auto clear = [guard](const Vec3& a, const Vec3& b) { return norm(cross(a, b)) > guard * norm(a) * norm(b); };
        bool ok = clear(am.total, kE3);
        Vec3 partial = am.C[0];
        for (int j = 0; j < n && ok; ++j) {
            ok = clear(am.C[j], kE3);
            if (j > 0 && ok) {
                ok = clear(partial, am.C[j]);
                partial = partial + am.C[j];
            }
        }
        if (ok) return s;
    }
    fail("DomainTooTight", "could not sample a state away from equatorial configurations");
}

namespace {

double component_error(const Flat& got, const Flat& want, const std::vector<bool>* periodic) {
    double m = 0.0;
    for (std::size_t i = 0; i < want.size(); ++i) {
        const double d = (periodic && (*periodic)[i]) ? angle_distance(got[i], want[i]) : std::abs(got[i] - want[i]);
        m = std::max(m, d / std::max(1.0, std::abs(want[i])));
    }
    return m;
}

double two_form_residual(const ChartSpec& c, const Flat& p, double step) {
    const Matrix J = fd_jacobian(c.to_cartesian, p, step);
    const int dc = J.rows / 2;  // Cartesian half-dimension
    const int dq = J.cols / 2;  // chart half-dimension
    double m = 0.0;
    for (int a = 0; a < J.cols; ++a)
        for (int b = 0; b < J.cols; ++b) {
            double v = 0.0;
            for (int k = 0; k < dc; ++k) v += J(k, a) * J(dc + k, b) - J(dc + k, a) * J(k, b);
            double omega = 0.0;
            if (a < dq && b == a + dq) omega = 1.0;
            if (b < dq && a == b + dq) omega = -1.0;
            m = std::max(m, std::abs(v - omega));
        }
    return m;
}

// Max over two random loops of |loop integral of y.dx - loop integral of sum P dQ|,
// normalised by the loop's coordinate area; plus a pointwise test for exact charts.
double one_form_residual(const ChartSpec& c, const Flat& p, double step, std::mt19937_64& rng) {
    std::normal_distribution<double> N01(0.0, 1.0);
    const int dim = int(p.size()), half = dim / 2;
    auto direction = [&] {
        Flat d(dim);
        double nn = 0.0;
        for (int j = 0; j < dim; ++j) {
            d[j] = N01(rng) * std::max(1.0, std::abs(p[j]));
            nn = std::max(nn, std::abs(d[j]));
        }
        for (double& x : d) x /= nn;
        return d;
    };
    double scale = 1e-300;
    for (int k = 0; k < half; ++k) scale = std::max(scale, std::abs(p[k]));

    double worst = 0.0;
    if (c.exact_one_form) {
        const Flat d = direction();
        Flat pp = p, pm = p;
        for (int j = 0; j < dim; ++j) {
            pp[j] += step * d[j];
            pm[j] -= step * d[j];
        }
        const Flat xp = c.to_cartesian(pp), xm = c.to_cartesian(pm), x0 = c.to_cartesian(p);
        const int dc = int(x0.size()) / 2;
        double lhs = 0.0, rhs = 0.0;
        for (int k = 0; k < dc; ++k) lhs += x0[k] * (xp[dc + k] - xm[dc + k]) / (2.0 * step);
        for (int k = 0; k < half; ++k) rhs += p[k] * d[half + k];
        worst = std::abs(lhs - rhs) / scale;
    }

    const double rho = 1e-3;
    const int nodes = 64;
    const Flat d1 = direction(), d2 = direction();
    std::vector<Flat> xs(nodes);
    for (int m = 0; m < nodes; ++m) {
        const double s = kTwoPi * m / nodes;
        Flat q = p;
        for (int j = 0; j < dim; ++j) q[j] += rho * (std::cos(s) * d1[j] + std::sin(s) * d2[j]);
        xs[m] = c.to_cartesian(q);
    }
    const int dc = int(xs[0].size()) / 2;
    // loop integral of y.x'(s) ds = 2 pi sum_k conj(Y_k) (i k) X_k with DFT coefficients
    double cart = 0.0;
    for (int comp = 0; comp < dc; ++comp) {
        for (int k = 1; k < nodes / 2; ++k) {
            std::complex<double> X = 0.0, Y = 0.0;
            for (int m = 0; m < nodes; ++m) {
                const std::complex<double> w = std::polar(1.0, -kTwoPi * k * m / nodes);
                X += xs[m][dc + comp] * w;
                Y += xs[m][comp] * w;
            }
            X /= double(nodes);
            Y /= double(nodes);
            // modes k and -k together
            cart += 2.0 * kTwoPi * (std::conj(Y) * std::complex<double>(0.0, k) * X).real();
        }
    }
    double chart = 0.0;
    for (int k = 0; k < half; ++k) chart += kPi * rho * rho * (d1[k] * d2[half + k] - d2[k] * d1[half + k]);
    worst = std::max(worst, std::abs(cart - chart) / (rho * rho));
    return worst;
}

struct Sample {
    CartesianState state;
    Flat point;
};

// Draws a sample on which the chart and its inverse both evaluate, resampling on chart errors.
Sample draw(const ChartSpec& c, const MassSystem& ms, std::mt19937_64& rng, int& budget) {
    while (budget-- > 0) {
        try {
            Sample s;
            s.state = sample_state(rng, c.n, ms, c.retro);
            s.point = c.from_cartesian(s.state);
            c.to_cartesian(s.point);
            return s;
        } catch (const Error&) {
        }
    }
    fail("DomainTooTight", "chart '" + c.name + "' failed on too many sampled states");
}

enum Parts { kTwo = 1, kOne = 2, kConserved = 4, kRound = 8 };

SymplecticReport run(const std::string& chart, int n, int samples, std::uint64_t seed, double step, int parts) {
    if (samples < 1) fail("InvalidInput", "samples must be positive");
    const MassSystem ms = sampling_masses(chart, n);
    const ChartSpec c = chart_spec(chart, n, ms);
    SymplecticReport r;
    r.chart = chart;
    r.ordering = c.ordering();
    r.n = n;
    r.samples = samples;
    r.seed = seed;
    r.step = step;
    std::mt19937_64 rng(seed);
    int budget = 10 * samples;
    for (int k = 0; k < samples; ++k) {
        // any chart failure inside a stencil or loop discards the sample
        for (;;) {
            const Sample s = draw(c, ms, rng, budget);
            try {
                SymplecticReport one;
                if (parts & kTwo) one.two_form_residual_max = two_form_residual(c, s.point, step);
                if (parts & kOne) one.one_form_residual_max = one_form_residual(c, s.point, step, rng);
                if (parts & kRound) {
                    const Flat cart = flatten(s.state);
                    const Flat back = c.to_cartesian(s.point);
                    const Flat again = c.from_cartesian(unflatten(back));
                    one.roundtrip_max = std::max(component_error(back, cart, nullptr),
                                                 component_error(again, s.point, &c.periodic));
                }
                if (parts & kConserved) {
                    const double Cn = std::max(1e-300, norm(angular_momenta(s.state).total));
                    for (const auto& [key, v] : c.conserved(s.point, s.state)) one.conserved_residuals[key] = std::abs(v) / Cn;
                }
                r.two_form_residual_max = std::max(r.two_form_residual_max, one.two_form_residual_max);
                r.one_form_residual_max = std::max(r.one_form_residual_max, one.one_form_residual_max);
                r.roundtrip_max = std::max(r.roundtrip_max, one.roundtrip_max);
                for (const auto& [key, v] : one.conserved_residuals) {
                    double& slot = r.conserved_residuals[key];
                    slot = std::max(slot, v);
                }
                break;
            } catch (const Error&) {
            }
        }
    }
    return r;
}

}  // namespace

SymplecticReport check_two_form(const std::string& chart, int n, int samples, std::uint64_t seed, double step) {
    return run(chart, n, samples, seed, step, kTwo);
}

SymplecticReport check_one_form(const std::string& chart, int n, int samples, std::uint64_t seed, double step) {
    return run(chart, n, samples, seed, step, kOne);
}

SymplecticReport check_conserved(const std::string& chart, int n, int samples, std::uint64_t seed) {
    return run(chart, n, samples, seed, 1e-5, kConserved);
}

SymplecticReport check_chart(const std::string& chart, int n, int samples, std::uint64_t seed, double step) {
    return run(chart, n, samples, seed, step, kTwo | kOne | kConserved | kRound);
}

CheckThresholds check_thresholds(int n) {
    return {n <= 2 ? 1e-6 : 1e-5, 1e-7, 1e-9, 1e-10};
}

bool report_passes(const SymplecticReport& r) {
    const CheckThresholds t = check_thresholds(r.n);
    if (!(r.two_form_residual_max < t.two_form) || !(r.one_form_residual_max < t.one_form) ||
        !(r.roundtrip_max < t.roundtrip))
        return false;
    for (const auto& [k, v] : r.conserved_residuals)
        if (!(v < t.conserved)) return false;
    return true;
}

}  // namespace planetary
