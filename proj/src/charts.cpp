#include "planetary/charts.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "planetary/errors.hpp"
#include "planetary/kepler.hpp"

namespace planetary {

namespace {

// cos b * e3 - sin b * (e3 x e1), sin b >= 0: the vector at angle b from e3,
// tilted away from e3 so that e3 x result points along e1.
Vec3 tilt(const Vec3& e1, const Vec3& e3, double cosb, const char* what) {
    if (!(std::abs(cosb) <= 1.0 + 1e-12))
        fail("InclinationOutOfRange", std::string(what) + ": cosine outside [-1, 1]");
    const double c = std::clamp(cosb, -1.0, 1.0);
    const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    return e3 * c - cross(e3, e1) * s;
}

Vec3 node(const Vec3& a, const Vec3& b, const char* what) {
    const Vec3 v = cross(a, b);
    if (!(norm(v) > kDegenerate * norm(a) * norm(b)))
        fail("DegenerateNode", std::string(what) + " vanishes");
    return v;
}

double radial(const Vec3& y, const Vec3& x) { return dot(y, x) / norm(x); }

double checked_sqrt(double radicand, const char* what) {
    if (radicand < -kRadicandClamp) fail("InvalidInput", std::string("negative radicand in ") + what);
    return std::sqrt(std::max(0.0, radicand));
}

// atan2 with the origin mapped to 0
double polar_angle(double s, double c) { return (s == 0.0 && c == 0.0) ? 0.0 : wrap_angle(std::atan2(s, c)); }

void require_size(std::size_t got, int n, const char* what) {
    if (int(got) != n) fail("InvalidInput", std::string(what) + ": inconsistent vector sizes");
}

// Direction of the total angular momentum from (C, Z, zeta), together with the
// horizontal node k x C.
void top_of_chain(double C, double Z, double zeta, Vec3& Chat, Vec3& nubar) {
    if (!(C > 0.0)) fail("InvalidInput", "total angular momentum must be positive");
    nubar = {std::cos(zeta), std::sin(zeta), 0.0};
    Chat = tilt(nubar, kE3, Z / C, "Z/C");
}

PhasePoint body_from_direction(const Vec3& xhat, const Vec3& Cvec, double R, double r) {
    if (!(r > 0.0)) fail("InvalidInput", "radius must be positive");
    PhasePoint p;
    p.x = xhat * r;
    p.y = xhat * R + cross(Cvec, xhat) / r;
    return p;
}

// Output of the position- or perihelion-based frame chain shared by the two charts.
struct ChainResult {
    std::vector<Vec3> C;    // planet angular momenta
    std::vector<Vec3> dir;  // unit position (or perihelion) directions
};

// Inverse of the chain k -> C -> u_n -> S_{n-1} -> ... -> u_1 used by both
// position-based and perihelion-based charts; u_j is the unit vector in the chain.
ChainResult invert_chain(const std::vector<double>& Theta, const std::vector<double>& chi,
                         const std::vector<double>& vartheta, const std::vector<double>& kappa) {
    const int n = int(Theta.size());
    if (n < 2) fail("InvalidInput", "chain charts need n >= 2");
    // |S_j| for j = 1..n (1-based): |S_1| = Theta_1, |S_j| = chi_{j-1}
    std::vector<double> Snorm(n + 1, 0.0);
    Snorm[1] = Theta[0];
    for (int j = 2; j <= n; ++j) Snorm[j] = chi[j - 2];
    for (int j = 1; j <= n; ++j)
        if (!(Snorm[j] > 0.0)) fail("InvalidInput", "partial angular momenta must be positive");

    Vec3 Shat, nu;
    top_of_chain(chi[n - 2], chi[n - 1], kappa[n - 1], Shat, nu);

    ChainResult out{std::vector<Vec3>(n), std::vector<Vec3>(n)};
    for (int j = n; j >= 2; --j) {
        const Vec3 nhat = rotate_about(nu, Shat, kappa[j - 2]);
        const Vec3 u = tilt(nhat, Shat, Theta[j - 1] / Snorm[j], "position inclination");
        nu = rotate_about(nhat, u, vartheta[j - 1]);
        const Vec3 Sprev = tilt(nu, u, Theta[j - 1] / Snorm[j - 1], "partial momentum inclination");
        out.C[j - 1] = Shat * Snorm[j] - Sprev * Snorm[j - 1];
        out.dir[j - 1] = u;
        Shat = Sprev;
    }
    const Vec3 n1 = rotate_about(nu, Shat, vartheta[0]);
    out.dir[0] = cross(n1, Shat);
    out.C[0] = Shat * Snorm[1];
    return out;
}

// Forward chain: data common to both chain charts, given the unit directions u_j.
struct ChainCoords {
    std::vector<double> Theta, chi, vartheta, kappa;
};

ChainCoords forward_chain(const AngularMomenta& am, const std::vector<Vec3>& u) {
    const int n = int(u.size());
    if (n < 2) fail("InvalidInput", "chain charts need n >= 2");
    std::vector<Vec3> nu(n + 1), nh(n + 1);  // 1-based
    nu[n] = node(kE3, am.total, "node k x C");
    for (int j = 1; j <= n - 1; ++j) nu[j] = node(u[j], am.S[j - 1], "chain node");
    for (int j = 1; j <= n; ++j) nh[j] = node(am.S[j - 1], u[j - 1], "chain node");

    ChainCoords c{std::vector<double>(n), std::vector<double>(n), std::vector<double>(n),
                  std::vector<double>(n)};
    c.Theta[0] = norm(am.C[0]);
    c.vartheta[0] = oriented_angle(nu[1], nh[1], am.C[0]);
    for (int j = 2; j <= n; ++j) {
        c.Theta[j - 1] = dot(am.S[j - 1], u[j - 1]);
        c.vartheta[j - 1] = oriented_angle(nh[j], nu[j - 1], u[j - 1]);
    }
    c.chi[n - 1] = am.total.z;
    c.kappa[n - 1] = oriented_angle(kE1, nu[n], kE3);
    for (int j = 1; j <= n - 1; ++j) {
        c.chi[j - 1] = norm(am.S[j]);
        c.kappa[j - 1] = oriented_angle(nu[j + 1], nh[j + 1], am.S[j]);
    }
    return c;
}

}  // namespace

DelaunayAA delaunay_from_cartesian(const CartesianState& s, const MassSystem& ms) {
    const int n = s.n();
    require_size(s.y.size(), n, "delaunay_from_cartesian");
    require_size(ms.m.size(), n, "delaunay_from_cartesian");
    DelaunayAA d;
    for (int i = 0; i < n; ++i) {
        const TwoBodyElements el = elements_from_cartesian(s.y[i], s.x[i], ms.mu(i), ms.M(i));
        if (el.e < kNearCircular) fail("NearCircular", "planet " + std::to_string(i + 1));
        const double G = norm(el.C);
        const double Z = el.C.z;
        if (G - std::abs(Z) < kNearEquatorial * G) fail("NearEquatorial", "planet " + std::to_string(i + 1));
        const Vec3 nbar = cross(kE3, el.C);
        d.Lambda.push_back(el.Lambda());
        d.G.push_back(G);
        d.Z.push_back(Z);
        d.ell.push_back(el.mean_anomaly);
        d.g.push_back(oriented_angle(nbar, el.P, el.C));
        d.zeta.push_back(oriented_angle(kE1, nbar, kE3));
    }
    return d;
}

CartesianState delaunay_to_cartesian(const DelaunayAA& d, const MassSystem& ms) {
    const int n = int(d.Lambda.size());
    require_size(ms.m.size(), n, "delaunay_to_cartesian");
    CartesianState s;
    for (int i = 0; i < n; ++i) {
        const double L = d.Lambda[i], G = d.G[i], Z = d.Z[i];
        if (!(L > 0.0) || !(G > 0.0) || !(G <= L * (1.0 + 1e-12)) || !(std::abs(Z) <= G * (1.0 + 1e-12)))
            fail("InvalidInput", "Delaunay actions need 0 < G <= Lambda and |Z| <= G");
        const PlanarPolar pp = actionangle_to_planar(L, std::min(G, L), d.ell[i], d.g[i], ms.mu(i), ms.M(i));
        const PhasePoint planar = planar_state(pp.r, pp.R, G, pp.phi);
        const Mat3 rot = rot3(d.zeta[i]) * rot1(std::acos(std::clamp(Z / G, -1.0, 1.0)));
        s.y.push_back(rot * planar.y);
        s.x.push_back(rot * planar.x);
    }
    return s;
}

PoincareState poincare_from_delaunay(const DelaunayAA& d) {
    const int n = int(d.Lambda.size());
    PoincareState p;
    for (int i = 0; i < n; ++i) {
        const double re = checked_sqrt(2.0 * (d.Lambda[i] - d.G[i]), "2(Lambda - G)");
        const double ri = checked_sqrt(2.0 * (d.G[i] - d.Z[i]), "2(G - Z)");
        const double w = d.g[i] + d.zeta[i];
        p.Lambda.push_back(d.Lambda[i]);
        p.uh.push_back(re * std::cos(w));
        p.up.push_back(ri * std::cos(d.zeta[i]));
        p.lambda.push_back(wrap_angle(d.ell[i] + w));
        p.ux.push_back(-re * std::sin(w));
        p.uq.push_back(-ri * std::sin(d.zeta[i]));
    }
    return p;
}

DelaunayAA delaunay_from_poincare(const PoincareState& p) {
    const int n = int(p.Lambda.size());
    DelaunayAA d;
    for (int i = 0; i < n; ++i) {
        const double G = p.Lambda[i] - 0.5 * (p.uh[i] * p.uh[i] + p.ux[i] * p.ux[i]);
        const double Z = G - 0.5 * (p.up[i] * p.up[i] + p.uq[i] * p.uq[i]);
        const double zeta = polar_angle(-p.uq[i], p.up[i]);
        const double w = polar_angle(-p.ux[i], p.uh[i]);
        d.Lambda.push_back(p.Lambda[i]);
        d.G.push_back(G);
        d.Z.push_back(Z);
        d.ell.push_back(wrap_angle(p.lambda[i] - w));
        d.g.push_back(wrap_angle(w - zeta));
        d.zeta.push_back(zeta);
    }
    return d;
}

JacobiReduction jacobi_reduction(double G1, double G2, double G) {
    const double tol = 1e-12 * std::max({G1, G2, G, 1e-300});
    if (!(G > 0.0) || !(G1 >= 0.0) || !(G2 >= 0.0) || G < std::abs(G1 - G2) - tol || G > G1 + G2 + tol)
        fail("GeometryError", "triangle inequality |G1 - G2| <= G <= G1 + G2 violated");
    const double d = (G1 * G1 - G2 * G2) / (2.0 * G);
    return {0.5 * G + d, 0.5 * G - d, kPi};
}

DepritState deprit_from_cartesian(const CartesianState& s) {
    const int n = s.n();
    if (n < 2) fail("InvalidInput", "Deprit chart needs n >= 2");
    const AngularMomenta am = angular_momenta(s);
    // nodes, 1-based up to n+1
    std::vector<Vec3> nu(n + 2);
    for (int j = 2; j <= n; ++j) nu[j] = node(am.S[j - 1], am.C[j - 1], "Deprit node");
    nu[1] = -nu[2];
    nu[n + 1] = node(kE3, am.total, "node k x C");

    DepritState d;
    for (int i = 1; i <= n; ++i) {
        d.R.push_back(radial(s.y[i - 1], s.x[i - 1]));
        d.r.push_back(norm(s.x[i - 1]));
        d.G.push_back(norm(am.C[i - 1]));
        d.phi.push_back(oriented_angle(nu[i], s.x[i - 1], am.C[i - 1]));
    }
    for (int i = 1; i <= n - 1; ++i) {
        d.Psi.push_back(norm(am.S[i]));
        d.psi.push_back(oriented_angle(nu[i + 2], nu[i + 1], am.S[i]));
    }
    d.Psi.push_back(am.total.z);
    d.psi.push_back(oriented_angle(kE1, nu[n + 1], kE3));
    return d;
}

namespace detail {

// Geometric inverse of the Deprit chart. When `signed_first` is set the first
// planet's G may be negative; its orbit normal is then S_1 / G_1.
CartesianState deprit_to_cartesian_impl(const DepritState& d, bool signed_first) {
    const int n = int(d.G.size());
    if (n < 2) fail("InvalidInput", "Deprit chart needs n >= 2");
    for (const auto* v : {&d.R, &d.Psi, &d.r, &d.phi, &d.psi}) require_size(v->size(), n, "Deprit state");
    for (int i = signed_first ? 1 : 0; i < n; ++i)
        if (!(d.G[i] > 0.0)) fail("InvalidInput", "Deprit G must be positive");

    Vec3 Chat, nubar;
    top_of_chain(d.Psi[n - 2], d.Psi[n - 1], d.psi[n - 1], Chat, nubar);

    std::vector<Vec3> S(n + 1), Cv(n + 1), nu(n + 2);  // 1-based
    S[n] = Chat * d.Psi[n - 2];
    nu[n + 1] = nubar;
    for (int i = n - 1; i >= 1; --i) {
        const double Snorm = d.Psi[i - 1];
        const Vec3 Shat = S[i + 1] / Snorm;
        nu[i + 1] = rotate_about(nu[i + 2], Shat, d.psi[i - 1]);
        const double G = d.G[i];
        const double Sprev = i >= 2 ? d.Psi[i - 2] : d.G[0];
        const double cosb = (Snorm * Snorm + G * G - Sprev * Sprev) / (2.0 * Snorm * G);
        if (!(std::abs(cosb) <= 1.0 + 1e-10))
            fail("InvalidInput", "Deprit chain violates the triangle inequality");
        Cv[i + 1] = tilt(nu[i + 1], Shat, std::clamp(cosb, -1.0, 1.0), "Deprit inclination") * G;
        S[i] = S[i + 1] - Cv[i + 1];
    }
    Cv[1] = S[1];
    nu[1] = -nu[2];

    CartesianState s;
    for (int i = 1; i <= n; ++i) {
        const double G = d.G[i - 1];
        const Vec3 Chat_i = (signed_first && i == 1) ? Cv[1] / G : unit(Cv[i]);
        const Vec3 nuh = unit(nu[i]);
        const double c = std::cos(d.phi[i - 1]), sn = std::sin(d.phi[i - 1]);
        const Vec3 xhat = nuh * c + cross(Chat_i, nuh) * sn;
        const PhasePoint p = body_from_direction(xhat, Chat_i * G, d.R[i - 1], d.r[i - 1]);
        s.y.push_back(p.y);
        s.x.push_back(p.x);
    }
    return s;
}

}  // namespace detail

CartesianState deprit_to_cartesian(const DepritState& d) { return detail::deprit_to_cartesian_impl(d, false); }

DepritAA deprit_actionangle(const DepritState& d, const MassSystem& ms) {
    const int n = int(d.G.size());
    require_size(ms.m.size(), n, "deprit_actionangle");
    DepritAA a;
    a.Psi = d.Psi;
    a.psi = d.psi;
    for (int i = 0; i < n; ++i) {
        const PlanarActionAngle aa = planar_to_actionangle(d.R[i], d.G[i], d.r[i], d.phi[i], ms.mu(i), ms.M(i));
        a.Lambda.push_back(aa.Lambda);
        a.Gamma.push_back(aa.Gamma);
        a.ell.push_back(aa.ell);
        a.gamma.push_back(aa.gamma);
    }
    return a;
}

DepritState deprit_from_actionangle(const DepritAA& a, const MassSystem& ms) {
    const int n = int(a.Lambda.size());
    require_size(ms.m.size(), n, "deprit_from_actionangle");
    DepritState d;
    d.Psi = a.Psi;
    d.psi = a.psi;
    for (int i = 0; i < n; ++i) {
        const PlanarPolar pp = actionangle_to_planar(a.Lambda[i], a.Gamma[i], a.ell[i], a.gamma[i], ms.mu(i), ms.M(i));
        d.R.push_back(pp.R);
        d.G.push_back(a.Gamma[i]);
        d.r.push_back(pp.r);
        d.phi.push_back(wrap_angle(pp.phi));
    }
    return d;
}

KState k_from_cartesian(const CartesianState& s) {
    const int n = s.n();
    const AngularMomenta am = angular_momenta(s);
    std::vector<Vec3> u;
    for (const Vec3& x : s.x) u.push_back(unit(x));
    const ChainCoords c = forward_chain(am, u);
    KState k{c.Theta, c.chi, {}, c.vartheta, c.kappa, {}};
    for (int i = 0; i < n; ++i) {
        k.R.push_back(radial(s.y[i], s.x[i]));
        k.r.push_back(norm(s.x[i]));
    }
    return k;
}

CartesianState k_to_cartesian(const KState& k) {
    const int n = int(k.Theta.size());
    for (const auto* v : {&k.chi, &k.R, &k.vartheta, &k.kappa, &k.r}) require_size(v->size(), n, "K state");
    const ChainResult ch = invert_chain(k.Theta, k.chi, k.vartheta, k.kappa);
    CartesianState s;
    for (int j = 0; j < n; ++j) {
        const PhasePoint p = body_from_direction(ch.dir[j], ch.C[j], k.R[j], k.r[j]);
        s.y.push_back(p.y);
        s.x.push_back(p.x);
    }
    return s;
}

PState p_from_cartesian(const CartesianState& s, const MassSystem& ms) {
    const int n = s.n();
    require_size(ms.m.size(), n, "p_from_cartesian");
    const AngularMomenta am = angular_momenta(s);
    std::vector<Vec3> u;
    PState p;
    for (int i = 0; i < n; ++i) {
        const TwoBodyElements el = elements_from_cartesian(s.y[i], s.x[i], ms.mu(i), ms.M(i));
        if (el.e < kNearCircular) fail("NearCircular", "planet " + std::to_string(i + 1));
        u.push_back(el.P);
        p.Lambda.push_back(el.Lambda());
        p.ell.push_back(el.mean_anomaly);
    }
    const ChainCoords c = forward_chain(am, u);
    p.Theta = c.Theta;
    p.chi = c.chi;
    p.vartheta = c.vartheta;
    p.kappa = c.kappa;
    return p;
}

CartesianState p_to_cartesian(const PState& p, const MassSystem& ms) {
    const int n = int(p.Theta.size());
    for (const auto* v : {&p.chi, &p.Lambda, &p.vartheta, &p.kappa, &p.ell}) require_size(v->size(), n, "P state");
    require_size(ms.m.size(), n, "p_to_cartesian");
    const ChainResult ch = invert_chain(p.Theta, p.chi, p.vartheta, p.kappa);
    CartesianState s;
    for (int j = 0; j < n; ++j) {
        TwoBodyElements el;
        el.mu = ms.mu(j);
        el.M = ms.M(j);
        const double L = p.Lambda[j];
        if (!(L > 0.0)) fail("InvalidInput", "Lambda must be positive");
        el.a = L * L / (el.mu * el.mu * el.M);
        const double G = norm(ch.C[j]);
        if (!(G <= L * (1.0 + 1e-12))) fail("InvalidInput", "planet angular momentum exceeds Lambda");
        el.e = std::sqrt(std::max(0.0, 1.0 - (G / L) * (G / L)));
        el.C = ch.C[j];
        el.P = ch.dir[j];
        el.mean_anomaly = p.ell[j];
        const PhasePoint q = cartesian_from_elements(el);
        s.y.push_back(q.y);
        s.x.push_back(q.x);
    }
    return s;
}

double p_planet_momentum(double chi_outer, double chi_inner, double Theta, double vartheta) {
    const double a = chi_outer * chi_outer - Theta * Theta;
    const double b = chi_inner * chi_inner - Theta * Theta;
    if (a * b < 0.0) fail("InvalidInput", "chain radicand negative");
    const double v = chi_outer * chi_outer + chi_inner * chi_inner - 2.0 * Theta * Theta +
                     2.0 * std::sqrt(a * b) * std::cos(vartheta);
    return std::sqrt(std::max(0.0, v));
}

RpsState rps_from_depritaa(const DepritAA& d) {
    const int n = int(d.Lambda.size());
    for (const auto* v : {&d.Gamma, &d.Psi, &d.ell, &d.gamma, &d.psi}) require_size(v->size(), n, "DepritAA");
    // tail sums psi^n_i, 1-based with psi^n_0 = psi^n_1
    std::vector<double> tail(n + 2, 0.0);
    for (int i = n; i >= 1; --i) tail[i] = tail[i + 1] + d.psi[i - 1];
    tail[0] = tail[1];
    RpsState r;
    for (int i = 1; i <= n; ++i) {
        const double Gnext = i < n ? d.Gamma[i] : 0.0;
        const double Pprev = i >= 2 ? d.Psi[i - 2] : d.Gamma[0];
        const double re = checked_sqrt(2.0 * (d.Lambda[i - 1] - d.Gamma[i - 1]), "2(Lambda - Gamma)");
        const double ri = checked_sqrt(2.0 * (Gnext + Pprev - d.Psi[i - 1]), "2(Gamma + Psi - Psi)");
        const double w = d.gamma[i - 1] + tail[i - 1];
        r.Lambda.push_back(d.Lambda[i - 1]);
        r.lambda.push_back(wrap_angle(d.ell[i - 1] + w));
        r.eta.push_back(re * std::cos(w));
        r.xi.push_back(-re * std::sin(w));
        r.p.push_back(ri * std::cos(tail[i]));
        r.q.push_back(-ri * std::sin(tail[i]));
    }
    return r;
}

DepritAA depritaa_from_rps(const RpsState& r) {
    const int n = int(r.Lambda.size());
    for (const auto* v : {&r.eta, &r.p, &r.lambda, &r.xi, &r.q}) require_size(v->size(), n, "RPS state");
    DepritAA d;
    d.Lambda = r.Lambda;
    d.Gamma.resize(n);
    d.Psi.resize(n);
    d.ell.resize(n);
    d.gamma.resize(n);
    d.psi.resize(n);
    for (int i = 0; i < n; ++i) d.Gamma[i] = r.Lambda[i] - 0.5 * (r.eta[i] * r.eta[i] + r.xi[i] * r.xi[i]);
    double Pprev = d.Gamma[0];
    std::vector<double> tail(n + 1);  // 1-based psi^n_i
    for (int i = 1; i <= n; ++i) {
        const double Gnext = i < n ? d.Gamma[i] : 0.0;
        d.Psi[i - 1] = Gnext + Pprev - 0.5 * (r.p[i - 1] * r.p[i - 1] + r.q[i - 1] * r.q[i - 1]);
        Pprev = d.Psi[i - 1];
        tail[i] = polar_angle(-r.q[i - 1], r.p[i - 1]);
    }
    for (int i = 1; i <= n; ++i) d.psi[i - 1] = wrap_angle(tail[i] - (i < n ? tail[i + 1] : 0.0));
    for (int i = 1; i <= n; ++i) {
        const double w = polar_angle(-r.xi[i - 1], r.eta[i - 1]);
        const double before = i >= 2 ? tail[i - 1] : tail[1];
        d.gamma[i - 1] = wrap_angle(w - before);
        d.ell[i - 1] = wrap_angle(r.lambda[i - 1] - w);
    }
    return d;
}

KState reflect_k(const KState& k) {
    KState r = k;
    const int n = int(k.Theta.size());
    for (int j = 1; j < n; ++j) {
        r.Theta[j] = -k.Theta[j];
        r.vartheta[j] = wrap_angle(-k.vartheta[j]);
    }
    r.chi[n - 1] = -k.chi[n - 1];
    r.kappa[n - 1] = wrap_angle(-k.kappa[n - 1]);
    return r;
}

PState reflect_p(const PState& p) {
    PState r = p;
    const int n = int(p.Theta.size());
    for (int j = 1; j < n; ++j) {
        r.Theta[j] = -p.Theta[j];
        r.vartheta[j] = wrap_angle(-p.vartheta[j]);
    }
    r.chi[n - 1] = -p.chi[n - 1];
    r.kappa[n - 1] = wrap_angle(-p.kappa[n - 1]);
    return r;
}

}  // namespace planetary
