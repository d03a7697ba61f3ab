#include "planetary/regions.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "planetary/errors.hpp"

namespace planetary {

namespace {

constexpr double kTwoPiConst = 6.283185307179586476925286766559;

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Calls visit(k) for every k with |k|_1 == r whose first nonzero entry is positive,
// in lexicographic order.
void shell(int d, int r, std::vector<int>& k, int pos, int remaining, bool seen,
           const std::function<void(const std::vector<int>&)>& visit) {
    if (pos == d - 1) {
        if (remaining == 0) {
            if (!seen) return;
            k[pos] = 0;
            visit(k);
            return;
        }
        if (seen) {
            k[pos] = -remaining;
            visit(k);
        }
        k[pos] = remaining;
        visit(k);
        return;
    }
    for (int v = seen ? -remaining : 0; v <= remaining; ++v) {
        k[pos] = v;
        shell(d, r, k, pos + 1, remaining - std::abs(v), seen || v != 0, visit);
    }
}

}  // namespace

void DiophantineSpec::validate() const {
    if (block_dims.empty()) fail("InvalidInput", "no Diophantine blocks");
    if (block_dims.size() != gammas.size()) fail("InvalidInput", "one gamma per block is needed");
    for (int v : block_dims)
        if (v < 1) fail("InvalidInput", "block dimensions must be positive");
    for (std::size_t j = 0; j < gammas.size(); ++j) {
        if (!(gammas[j] > 0.0)) fail("InvalidInput", "gammas must be positive");
        if (j > 0 && gammas[j] > gammas[j - 1]) fail("InvalidInput", "gammas must be weakly decreasing");
    }
    if (!(tau > 0.0)) fail("InvalidInput", "tau must be positive");
    if (cutoff < 1) fail("InvalidInput", "cutoff must be positive");
}

int DiophantineSpec::dimension() const {
    int d = 0;
    for (int v : block_dims) d += v;
    return d;
}

std::uint64_t lattice_count(int d, int K) {
    // points of the closed l1 ball: sum_i 2^i C(d, i) C(K, i)
    double total = 0.0;
    for (int i = 0; i <= std::min(d, K); ++i) total += std::ldexp(binomial(d, i) * binomial(K, i), i);
    const double half = (total - 1.0) / 2.0;
    if (half > 1.8e19) return std::numeric_limits<std::uint64_t>::max();
    return std::uint64_t(half + 0.5);
}

DiophantineResult diophantine_check(const std::vector<double>& omega, const DiophantineSpec& spec) {
    spec.validate();
    const int d = spec.dimension();
    if (int(omega.size()) != d)
        fail("InvalidInput", "omega has " + std::to_string(omega.size()) + " entries, blocks need " + std::to_string(d));
    if (lattice_count(d, spec.cutoff) > kLatticeBudget)
        fail("BudgetExceeded", "more than " + std::to_string(kLatticeBudget) + " lattice points for K = " +
                                   std::to_string(spec.cutoff));
    std::vector<int> block_of(d);
    for (int b = 0, i = 0; b < int(spec.block_dims.size()); ++b)
        for (int c = 0; c < spec.block_dims[b]; ++c) block_of[i++] = b;

    DiophantineResult res;
    res.min_slack = std::numeric_limits<double>::infinity();
    std::vector<int> k(d, 0);
    for (int r = 1; r <= spec.cutoff; ++r) {
        const double bound_scale = std::pow(double(r), spec.tau);
        shell(d, r, k, 0, r, false, [&](const std::vector<int>& kk) {
            ++res.scanned;
            double dotp = 0.0;
            int first = -1;
            for (int i = 0; i < d; ++i) {
                dotp += omega[i] * kk[i];
                if (first < 0 && kk[i] != 0) first = i;
            }
            const int block = block_of[first];
            const double slack = std::abs(dotp) - spec.gammas[block] / bound_scale;
            if (slack < res.min_slack) {
                res.min_slack = slack;
                res.witness = kk;
                res.witness_block = block;
            }
        });
    }
    res.passes = res.min_slack >= 0.0;
    return res;
}

int spacing_exponent3(int n, int i) { return (1 << (n + 1)) - (1 << (i + 1)) + i - n; }

std::vector<AxisBounds> spacing_ladder(int n, double alpha, AxisBounds innermost) {
    if (n < 1) fail("InvalidInput", "n must be positive");
    if (!(alpha > 0.0) || !(alpha < 1.0)) fail("InvalidInput", "alpha must lie in (0, 1)");
    std::vector<AxisBounds> out(n);
    for (int i = 1; i <= n; ++i) {
        const double f = std::pow(alpha, spacing_exponent3(n, i) / 3.0);
        out[i - 1] = {innermost.lower / f, innermost.upper / f};
    }
    return out;
}

GammaLadder gamma_ladder(int n, double mu, const std::vector<AxisBounds>& a, double gamma_bar,
                         const std::vector<double>& theta) {
    if (n < 2) fail("InvalidInput", "the ladder needs n >= 2");
    if (int(a.size()) != n || int(theta.size()) != n) fail("InvalidInput", "need one axis range and theta per planet");
    GammaLadder g;
    for (int j = 1; j <= n; ++j) g.blocks.push_back(1);
    if (n == 2) {
        g.blocks.push_back(2);
    } else {
        g.blocks.push_back(3);
        for (int j = n + 2; j <= 2 * n - 2; ++j) g.blocks.push_back(2);
        g.blocks.push_back(1);
    }
    for (int j = 1; j <= n; ++j) g.gammas.push_back(gamma_bar / (a[j - 1].lower * theta[j - 1]));
    for (int j = n + 1; j <= 2 * n - 1; ++j) {
        const double outer = a[2 * n - j - 1].lower;  // a^-_{2n-j}
        const double inner = a[2 * n - j].upper;      // a^+_{2n-j+1}
        g.gammas.push_back(mu * inner * inner / (outer * outer * outer) * gamma_bar / theta[j - n - 1]);
    }
    return g;
}

HolomorphyParams holomorphy_params(const HolomorphyConfig& cfg, const MassSystem& ms, const std::vector<AxisBounds>& a) {
    const int n = ms.n();
    if (int(a.size()) != n || int(cfg.D.size()) != n || int(cfg.C_lower.size()) != n || int(cfg.C_upper.size()) != n)
        fail("InvalidInput", "holomorphy constants need one entry per planet");
    if (!(cfg.s > 0.0) || !(cfg.s < 1.0)) fail("InvalidInput", "s must lie in (0, 1)");
    HolomorphyParams h;
    for (int i = 0; i < n; ++i) {
        h.Lambda_minus.push_back(ms.mu(i) * std::sqrt(ms.M(i) * a[i].lower));
        h.Lambda_plus.push_back(ms.mu(i) * std::sqrt(ms.M(i) * a[i].upper));
        h.G_plus.push_back(cfg.C_upper[i] * h.Lambda_minus[i]);
        h.G_minus.push_back(cfg.C_lower[i] * h.Lambda_plus[i]);
        h.theta.push_back(cfg.s * std::sqrt(h.Lambda_minus[i]));
    }
    for (int j = 1; j < n; ++j) {
        h.Theta_plus.push_back(cfg.s * h.G_minus[0]);
        h.vartheta_plus.push_back(cfg.D[j] * h.Lambda_minus[j] / h.G_plus[0]);
    }
    return h;
}

double cstar_root(double Lambda2, double C) {
    if (!(Lambda2 > 0.0) || !(C > 0.0)) fail("InvalidInput", "Lambda2 and C must be positive");
    auto p = [&](double x) { return 5.0 * Lambda2 * Lambda2 * C - (C + x) * (C + x) * (4.0 * C + x); };
    if (!(p(0.0) > 0.0)) fail("DomainError", "no positive root: 5 Lambda2^2 <= 4 C^2");
    double lo = 0.0, hi = std::max(C, Lambda2);
    while (p(hi) > 0.0) hi *= 2.0;
    // p decreases on x > 0, so the bracket holds exactly one root
    for (int it = 0; it < 200 && hi - lo > 1e-13 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (p(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<double> cubic_real_roots(double b, double c, double d) {
    const double p = c - b * b / 3.0;
    const double q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
    const double shift = -b / 3.0;
    std::vector<double> t;
    const double disc = q * q / 4.0 + p * p * p / 27.0;
    if (p < 0.0 && disc <= 0.0) {
        const double m = 2.0 * std::sqrt(-p / 3.0);
        const double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
        const double phi = std::acos(arg) / 3.0;
        for (int k = 0; k < 3; ++k) t.push_back(m * std::cos(phi - kTwoPiConst * k / 3.0));
    } else {
        const double s = std::sqrt(std::max(0.0, disc));
        t.push_back(std::cbrt(-q / 2.0 + s) + std::cbrt(-q / 2.0 - s));
    }
    std::vector<double> roots;
    for (double v : t) {
        double x = v + shift;
        for (int it = 0; it < 3; ++it) {
            const double f = ((x + b) * x + c) * x + d;
            const double df = (3.0 * x + 2.0 * b) * x + c;
            if (df == 0.0) break;
            x -= f / df;
        }
        roots.push_back(x);
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

TangentGeometry tangent_geometry() {
    const double r33 = std::sqrt(33.0);
    TangentGeometry g;
    g.k_lower = 0.25 * std::sqrt(0.3 * (69.0 + 11.0 * r33));
    g.k_upper = 2.0;
    g.a_tangent = 0.5 * (1.0 + r33);
    g.c_tangent = (-17.0 + r33) / 32.0;
    const double a = g.a_tangent, c = g.c_tangent, k2 = g.k_lower * g.k_lower;
    g.cubic_residual = std::abs(a * a * a - 9.0 * a - 8.0);
    const double P = ((a + 6.0 - 5.0 * k2) * a + 9.0) * a + 4.0;
    const double dP = (3.0 * a + 2.0 * (6.0 - 5.0 * k2)) * a + 9.0;
    g.double_root_residual = std::max(std::abs(P), std::abs(dP));
    g.factor_residual = std::max({std::abs(-(2.0 * a + c) - (6.0 - 5.0 * k2)), std::abs(a * a + 2.0 * a * c - 9.0),
                                  std::abs(-a * a * c - 4.0)});
    return g;
}

void CoexistenceParams::validate() const {
    auto bad = [](const std::string& m) { fail("InvalidParams", m); };
    if (!(C > 0.0)) bad("C must be positive");
    if (!(eps > 0.0)) bad("eps must be positive");
    if (!(alpha_minus > 0.0) || !(alpha_minus < alpha_plus) || !(alpha_plus < 1.0)) bad("need 0 < alpha_- < alpha_+ < 1");
    if (!(k_minus > 1.0) || !(k_minus < k_plus)) bad("need 1 < k_- < k_+");
    if (!(Lambda_minus > 0.0) || !(Lambda_minus < Lambda_plus)) bad("need 0 < Lambda_- < Lambda_+");
    if (!(c > 0.0) || !(c < 1.0)) bad("c must lie in (0, 1)");
}

std::array<double, 2> k_from_masses(const MassSystem& ms, double alpha_minus, double alpha_plus) {
    if (ms.n() != 2) fail("InvalidInput", "k_pm is defined for two planets");
    const double f = ms.mu(1) / ms.mu(0) * std::sqrt(ms.M(1) / ms.M(0));
    return {f * std::sqrt(alpha_minus), f * std::sqrt(alpha_plus)};
}

const char* region_name(RegionSet s) {
    switch (s) {
        case RegionSet::L0: return "L0";
        case RegionSet::Ls: return "L_s";
        case RegionSet::Gs: return "G_s";
        case RegionSet::Lu: return "L_u";
        case RegionSet::Gu: return "G_u";
        case RegionSet::Lsu: return "L_su";
        case RegionSet::L1: return "L1";
        case RegionSet::L2: return "L2";
        case RegionSet::L3: return "L3";
        case RegionSet::L1sub: return "L1_sub";
        case RegionSet::L2sub: return "L2_sub";
        case RegionSet::L3sub: return "L3_sub";
    }
    return "?";
}

RegionSet region_from_name(const std::string& name) {
    for (RegionSet s : {RegionSet::L0, RegionSet::Ls, RegionSet::Gs, RegionSet::Lu, RegionSet::Gu, RegionSet::Lsu,
                        RegionSet::L1, RegionSet::L2, RegionSet::L3, RegionSet::L1sub, RegionSet::L2sub,
                        RegionSet::L3sub})
        if (name == region_name(s)) return s;
    fail("InvalidInput", "unknown region '" + name + "'");
}

namespace {

double unstable_cubic(double L2, double C, double w) {
    const double t = w * L2;
    return 5.0 * L2 * L2 * C - (C + t) * (C + t) * (4.0 * C + t);
}

double curve(double L1, double C) { return (C + L1) * std::sqrt((4.0 * C + L1) / (5.0 * C)); }

}  // namespace

bool region_membership(const RegionPoint& pt, const CoexistenceParams& P, RegionSet which) {
    const double L1 = pt.Lambda1, L2 = pt.Lambda2, T1 = pt.Theta1, C = P.C;
    const double w = 2.0 * std::sqrt(P.alpha_plus);  // as printed in the combined list
    const double wc = w / P.c;                       // the unstable-side definitions carry 1/c
    auto in_L0 = [&] {
        return P.Lambda_minus <= L1 && L1 <= P.Lambda_plus && P.k_minus * L1 <= L2 && L2 <= P.k_plus * L1;
    };
    switch (which) {
        case RegionSet::L0: return in_L0();
        case RegionSet::Ls: return in_L0() && std::abs(L2 - L1 - C) < P.eps;
        case RegionSet::Gs: return 0.0 < L1 - T1 && L1 - T1 < P.eps;
        case RegionSet::Lu:
            return in_L0() && unstable_cubic(L2, C, wc) > 0.0 && L1 > C && L2 > std::max(C + wc * L1, 2.0 * C);
        case RegionSet::Gu: {
            if (!(5.0 * L2 * L2 > 4.0 * C * C)) return false;
            const double lo = std::max(wc * L1, C);
            const double hi = std::min(L1, cstar_root(L2, C));
            return lo < T1 && T1 < hi;
        }
        case RegionSet::Lsu: return 5.0 * L2 * L2 * C - (C + L1) * (C + L1) * (4.0 * C + L1) > 0.0;
        case RegionSet::L1:
            return P.Lambda_minus < L1 && L1 < P.Lambda_plus && L1 > C && L2 > 2.0 * C &&
                   std::max(P.k_minus * L1, curve(L1, C)) < L2 && L2 <= P.k_plus * L1;
        case RegionSet::L2: return 0.0 < L2 - L1 - C && L2 - L1 - C < P.eps && L2 > C + w * L1 && L1 > C;
        case RegionSet::L3: return unstable_cubic(L2, C, w) > 0.0 && L2 > 2.0 * C;
        case RegionSet::L1sub: return curve(L1, C) < L2 && L2 <= 2.0 * L1;
        case RegionSet::L2sub: return 0.0 < L2 - L1 - C && L2 - L1 - C < P.eps && L1 > C;
        case RegionSet::L3sub: return 2.0 * C < L2 && L2 < C / w;
    }
    return false;
}

std::vector<Margin> allinequalities_margins(double Lambda1, double Lambda2, const CoexistenceParams& P) {
    const double x = Lambda1 / P.C, y = Lambda2 / P.C;
    const double lm = P.Lambda_minus / P.C, lp = P.Lambda_plus / P.C, e = P.eps / P.C;
    const double w = 2.0 * std::sqrt(P.alpha_plus);
    const double t = w * y;
    return {
        {"Lambda_- < Lambda_1", x - lm},
        {"Lambda_1 < Lambda_+", lp - x},
        {"k_- Lambda_1 <= Lambda_2", y - P.k_minus * x},
        {"Lambda_2 <= k_+ Lambda_1", P.k_plus * x - y},
        {"5 L2^2 C - (C + 2 sqrt(a+) L2)^2 (4C + 2 sqrt(a+) L2) > 0", 5.0 * y * y - (1.0 + t) * (1.0 + t) * (4.0 + t)},
        {"Lambda_1 > C", x - 1.0},
        {"Lambda_2 > C + 2 sqrt(a+) Lambda_1", y - (1.0 + w * x)},
        {"Lambda_2 > 2C", y - 2.0},
        {"|Lambda_2 - Lambda_1 - C| < eps", e - std::abs(y - x - 1.0)},
        {"5 L2^2 C - (C + L1)^2 (4C + L1) > 0", 5.0 * y * y - (1.0 + x) * (1.0 + x) * (4.0 + x)},
    };
}

std::vector<Margin> subset_margins(double Lambda1, double Lambda2, const CoexistenceParams& P) {
    const double x = Lambda1 / P.C, y = Lambda2 / P.C, e = P.eps / P.C;
    const double w = 2.0 * std::sqrt(P.alpha_plus);
    return {
        {"L1: Lambda_2 above the curve", y - (1.0 + x) * std::sqrt((4.0 + x) / 5.0)},
        {"L1: Lambda_2 <= 2 Lambda_1", 2.0 * x - y},
        {"L2: Lambda_2 - Lambda_1 - C > 0", y - x - 1.0},
        {"L2: Lambda_2 - Lambda_1 - C < eps", e - (y - x - 1.0)},
        {"L2: Lambda_1 > C", x - 1.0},
        {"L3: Lambda_2 > 2C", y - 2.0},
        {"L3: Lambda_2 < C / (2 sqrt(a+))", 1.0 / w - y},
    };
}

namespace {

struct Evaluation {
    bool feasible = false;
    double margin = -std::numeric_limits<double>::infinity();
    RegionPoint point;
};

// Full check of a homogenized point: every printed inequality, the proof subsets, the
// stable and unstable action sets, and a common Theta_1.
Evaluation evaluate(double x, double y, const CoexistenceParams& P) {
    Evaluation ev;
    const double L1 = x * P.C, L2 = y * P.C;
    double m = std::numeric_limits<double>::infinity();
    for (const Margin& g : allinequalities_margins(L1, L2, P)) m = std::min(m, g.slack);
    for (const Margin& g : subset_margins(L1, L2, P)) m = std::min(m, g.slack);
    ev.margin = m;
    if (!(m > 0.0)) return ev;
    RegionPoint pt{L1, L2, 0.0};
    for (RegionSet s : {RegionSet::Ls, RegionSet::Lu, RegionSet::Lsu, RegionSet::L1, RegionSet::L2, RegionSet::L3})
        if (!region_membership(pt, P, s)) return ev;
    // the Theta_1 window: max(C-bar_-, Lambda_1 - eps) < Theta_1 < Lambda_1
    const double lo = std::max({std::max(2.0 / P.c * std::sqrt(P.alpha_plus) * L1, P.C), L1 - P.eps});
    if (!(lo < L1)) return ev;
    pt.Theta1 = 0.5 * (lo + L1);
    if (!region_membership(pt, P, RegionSet::Gs) || !region_membership(pt, P, RegionSet::Gu)) return ev;
    ev.feasible = true;
    ev.point = pt;
    return ev;
}

// Inequalities that do not involve the thin strip around Lambda_2 = Lambda_1 + C.
bool broad_ok(double x, double y, const CoexistenceParams& P, double h) {
    const double L1 = x * P.C, L2 = y * P.C;
    for (const Margin& g : allinequalities_margins(L1, L2, P))
        if (g.name.find("eps") == std::string::npos && !(g.slack > -h * 50.0)) return false;
    // the strip y - x - 1 in (0, e) must cross the cell
    const double e = P.eps / P.C, s = y - x - 1.0;
    return s + h > 0.0 && s - h < e;
}

}  // namespace

CoexistenceWitness coexistence_witness(const CoexistenceParams& P) {
    P.validate();
    const TangentGeometry tg = tangent_geometry();
    if (!(P.alpha_plus < 1.0 / 16.0)) fail("InvalidParams", "alpha_+ must be below 1/16");
    if (!(P.k_minus < tg.k_lower)) fail("InvalidParams", "k_- must be below the tangent slope");
    if (!(P.k_plus > tg.k_upper)) fail("InvalidParams", "k_+ must exceed 2");
    if (!(P.Lambda_minus < P.C)) fail("InvalidParams", "Lambda_- must be below C");
    if (!(P.Lambda_plus > 0.5 * (13.0 + std::sqrt(185.0)) * P.C))
        fail("InvalidParams", "Lambda_+ must exceed (13 + sqrt 185) C / 2");

    constexpr int kBase = 200, kRefine = 16, kLevels = 3;
    constexpr double kExtent = 20.0;
    constexpr std::size_t kMaxCandidates = 1024;
    struct Cell {
        double x0, y0, h;
    };
    std::vector<Cell> cells;
    for (int i = 0; i < kBase; ++i)
        for (int j = 0; j < kBase; ++j) cells.push_back({i * kExtent / kBase, j * kExtent / kBase, kExtent / kBase});

    CoexistenceWitness w;
    for (int level = 0; level < kLevels; ++level) {
        Evaluation best;
        std::vector<Cell> next;
        for (const Cell& c : cells) {
            ++w.cells;
            const double x = c.x0 + 0.5 * c.h, y = c.y0 + 0.5 * c.h;
            const Evaluation ev = evaluate(x, y, P);
            if (ev.feasible && ev.margin > best.margin) best = ev;  // strict: earliest cell wins ties
            if (level + 1 < kLevels && next.size() < kMaxCandidates * kRefine * kRefine && broad_ok(x, y, P, c.h)) {
                // at most kMaxCandidates parents per level, taken in scan order
                const double hs = c.h / kRefine;
                for (int a = 0; a < kRefine; ++a)
                    for (int b = 0; b < kRefine; ++b) next.push_back({c.x0 + a * hs, c.y0 + b * hs, hs});
            }
        }
        if (best.feasible) {
            w.point = best.point;
            w.level = level;
            w.margins = allinequalities_margins(best.point.Lambda1, best.point.Lambda2, P);
            for (const Margin& m : subset_margins(best.point.Lambda1, best.point.Lambda2, P)) w.margins.push_back(m);
            w.min_margin = best.margin;
            return w;
        }
        cells = std::move(next);
        if (cells.empty()) break;
    }
    fail("NotFound", "no coexistence point after " + std::to_string(w.cells) + " cells");
}

const std::vector<RegionSet>& raster_sets() {
    static const std::vector<RegionSet> sets = {RegionSet::L0,  RegionSet::Ls,    RegionSet::Lu,    RegionSet::Lsu,
                                                RegionSet::L1,  RegionSet::L2,    RegionSet::L3,    RegionSet::L1sub,
                                                RegionSet::L2sub, RegionSet::L3sub};
    return sets;
}

std::vector<RasterCell> region_raster(const CoexistenceParams& P, int nx, int ny, double extent) {
    P.validate();
    if (nx < 1 || ny < 1 || !(extent > 0.0)) fail("InvalidInput", "raster needs positive sizes");
    std::vector<RasterCell> out;
    out.reserve(std::size_t(nx) * ny);
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j) {
            RasterCell c;
            c.x = (i + 0.5) * extent / nx;
            c.y = (j + 0.5) * extent / ny;
            const RegionPoint pt{c.x * P.C, c.y * P.C, 0.0};
            const auto& sets = raster_sets();
            for (std::size_t b = 0; b < sets.size(); ++b)
                if (region_membership(pt, P, sets[b])) c.mask |= 1u << b;
            out.push_back(c);
        }
    return out;
}

}  // namespace planetary
