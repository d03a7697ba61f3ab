#pragma once

#include "planetary/geometry.hpp"

namespace planetary {

// Eccentric anomaly xi with xi - e sin xi = ell (ell reduced mod 2pi, xi in [0, 2pi)).
double solve_kepler(double e, double ell);

struct PhasePoint {
    Vec3 y;  // momentum
    Vec3 x;  // position
};

// Planar pair in the k-plane: x* = r(cos phi, sin phi, 0),
// y* = R x*/r + (G/r)(-sin phi, cos phi, 0).
PhasePoint planar_state(double r, double R, double G, double phi);

struct TwoBodyElements {
    double a = 1.0;
    double e = 0.0;
    Vec3 C;      // angular momentum vector
    Vec3 P;      // unit perihelion direction
    double mu = 1.0;
    double M = 1.0;
    double mean_anomaly = 0.0;

    double Lambda() const;
    double mean_motion() const;
};

double kepler_energy(const Vec3& y, const Vec3& x, double mu, double M);

TwoBodyElements elements_from_cartesian(const Vec3& y, const Vec3& x, double mu, double M);
PhasePoint cartesian_from_elements(const TwoBodyElements& el);

// Orbit-plane action-angle maps: (R, G, r, phi) <-> (Lambda, Gamma = G, ell, gamma),
// gamma being the perihelion angle measured from the same origin as phi.
struct PlanarActionAngle {
    double Lambda, Gamma, ell, gamma;
};
struct PlanarPolar {
    double R, r, phi;
};

PlanarActionAngle planar_to_actionangle(double R, double G, double r, double phi, double mu,
                                        double M);
// Accepts signed Lambda and Gamma; the formulas are written so that
// (Lambda, Gamma, ell, gamma) -> (-Lambda, -Gamma, -ell, -gamma) mirrors the orbit.
PlanarPolar actionangle_to_planar(double Lambda, double Gamma, double ell, double gamma,
                                  double mu, double M);

inline constexpr double kNearCircular = 1e-8;

}  // namespace planetary
