#include "planetary/kepler.hpp"

#include <algorithm>
#include <cmath>

#include "planetary/errors.hpp"

namespace planetary {

namespace {

double kepler_residual(double xi, double e, double ell) { return xi - e * std::sin(xi) - ell; }

}  // namespace

double solve_kepler(double e, double ell) {
    if (!(e >= 0.0) || !(e < 1.0)) fail("InvalidEccentricity", "eccentricity must lie in [0, 1)");
    if (!std::isfinite(ell)) fail("InvalidInput", "non-finite mean anomaly");
    const double l = wrap_angle(ell);
    if (e == 0.0) return l;

    double xi = l + e * std::sin(l);
    for (int it = 0; it < 50; ++it) {
        const double f = kepler_residual(xi, e, l);
        const double fp = 1.0 - e * std::cos(xi);
        const double step = f / fp;
        xi -= step;
        if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(xi))) break;
    }
    if (std::isfinite(xi) && std::abs(kepler_residual(xi, e, l)) < 1e-13) return xi;

    // Newton wandered (high e near perihelion): bisection on the monotone residual.
    double lo = 0.0, hi = kTwoPi;
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (kepler_residual(mid, e, l) > 0.0) hi = mid;
        else lo = mid;
    }
    xi = 0.5 * (lo + hi);
    for (int it = 0; it < 3; ++it) xi -= kepler_residual(xi, e, l) / (1.0 - e * std::cos(xi));
    if (!(std::abs(kepler_residual(xi, e, l)) < 1e-13))
        fail("SolverFailure", "Kepler equation did not converge");
    return xi;
}

PhasePoint planar_state(double r, double R, double G, double phi) {
    if (!(r > 0.0)) fail("GeometryError", "planar state needs r > 0");
    const double c = std::cos(phi), s = std::sin(phi);
    PhasePoint p;
    p.x = {r * c, r * s, 0.0};
    p.y = {R * c - (G / r) * s, R * s + (G / r) * c, 0.0};
    return p;
}

double TwoBodyElements::Lambda() const { return mu * std::sqrt(M * a); }
double TwoBodyElements::mean_motion() const { return std::sqrt(M / (a * a * a)); }

double kepler_energy(const Vec3& y, const Vec3& x, double mu, double M) {
    return dot(y, y) / (2.0 * mu) - mu * M / norm(x);
}

TwoBodyElements elements_from_cartesian(const Vec3& y, const Vec3& x, double mu, double M) {
    const double r = norm(x);
    if (!(r > 0.0)) fail("CollisionState", "body at the origin");
    const double h = kepler_energy(y, x, mu, M);
    if (!(h < 0.0)) fail("NotElliptic", "two-body energy is not negative");

    TwoBodyElements el;
    el.mu = mu;
    el.M = M;
    el.a = -mu * M / (2.0 * h);
    el.C = cross(x, y);
    const double L = el.Lambda();
    const double G = norm(el.C);
    el.e = std::sqrt(std::max(0.0, 1.0 - (G / L) * (G / L)));

    const Vec3 xhat = x / r;
    if (el.e < kNearCircular) {
        // perihelion undefined; the current position serves as reference
        el.P = xhat;
        el.mean_anomaly = 0.0;
        return el;
    }
    const Vec3 evec = cross(y, el.C) / (mu * mu * M) - xhat;
    // drop any out-of-plane roundoff before normalising
    const Vec3 Chat = el.C / G;
    el.P = unit(evec - Chat * dot(evec, Chat));
    const double ecos = 1.0 - r / el.a;
    const double esin = dot(x, y) / L;
    const double xi = std::atan2(esin, ecos);
    el.mean_anomaly = wrap_angle(xi - esin);
    return el;
}

PhasePoint cartesian_from_elements(const TwoBodyElements& el) {
    if (!(el.a > 0.0) || !(el.e >= 0.0) || !(el.e < 1.0) || !(el.mu > 0.0) || !(el.M > 0.0))
        fail("InvalidElements", "a > 0, 0 <= e < 1 and positive masses required");
    const double G = norm(el.C);
    const double L = el.Lambda();
    const double sq = std::sqrt(1.0 - el.e * el.e);
    if (!(std::abs(G - L * sq) <= 1e-10 * L))
        fail("InvalidElements", "|C| inconsistent with a and e");
    if (!(std::abs(norm(el.P) - 1.0) <= 1e-10) || !(std::abs(dot(el.P, el.C)) <= 1e-10 * G))
        fail("InvalidElements", "perihelion must be a unit vector orthogonal to C");

    const Vec3 Q = cross(el.C / G, el.P);
    const double xi = solve_kepler(el.e, el.mean_anomaly);
    const double c = std::cos(xi), s = std::sin(xi);
    PhasePoint out;
    out.x = el.a * ((c - el.e) * el.P + sq * s * Q);
    const double v = el.mu * el.mean_motion() * el.a / (1.0 - el.e * c);
    out.y = v * (-s * el.P + sq * c * Q);
    return out;
}

PlanarActionAngle planar_to_actionangle(double R, double G, double r, double phi, double mu,
                                        double M) {
    if (!(r > 0.0)) fail("CollisionState", "r must be positive");
    const double h = R * R / (2.0 * mu) + G * G / (2.0 * mu * r * r) - mu * M / r;
    if (!(h < 0.0)) fail("NotElliptic", "two-body energy is not negative");
    const double a = -mu * M / (2.0 * h);
    const double L = mu * std::sqrt(M * a);
    const double e = std::sqrt(std::max(0.0, 1.0 - (G / L) * (G / L)));
    if (e < kNearCircular) fail("NearCircular", "eccentricity below threshold");
    const double ecos = 1.0 - r / a;
    const double esin = R * r / L;
    const double xi = std::atan2(esin, ecos);
    const double f = std::atan2((G / L) * std::sin(xi), std::cos(xi) - e);
    return {L, G, wrap_angle(xi - esin), wrap_angle(phi - f)};
}

PlanarPolar actionangle_to_planar(double Lambda, double Gamma, double ell, double gamma,
                                  double mu, double M) {
    if (!(Lambda != 0.0)) fail("InvalidInput", "Lambda must be nonzero");
    const double ratio = Gamma / Lambda;
    if (!(std::abs(ratio) <= 1.0 + 1e-12)) fail("InvalidInput", "|Gamma| exceeds |Lambda|");
    const double a = Lambda * Lambda / (mu * mu * M);
    const double e = std::sqrt(std::max(0.0, 1.0 - ratio * ratio));
    const double xi = solve_kepler(e, ell);
    const double c = std::cos(xi), s = std::sin(xi);
    const double den = 1.0 - e * c;
    PlanarPolar out;
    out.r = a * den;
    out.R = Lambda * e * s / out.r;
    const double f = std::atan2(ratio * s, c - e);
    out.phi = gamma + f;
    return out;
}

}  // namespace planetary
