#pragma once

#include <optional>
#include <vector>

#include "planetary/geometry.hpp"

namespace planetary {

struct MassSystem {
    double m0 = 1.0;
    std::vector<double> m;
    std::optional<double> mu_scaling;  // small parameter multiplying the coupling

    int n() const { return int(m.size()); }
    double coupling() const { return mu_scaling.value_or(1.0); }
    // reduced masses: m0 m_i / (m0 + mu m_i) and m0 + mu m_i (mu = 1 when unscaled)
    double mu(int i) const;
    double M(int i) const;
    void validate() const;
};

struct CartesianState {
    std::vector<Vec3> y;
    std::vector<Vec3> x;
    int n() const { return int(x.size()); }
};

struct BarycentricState {
    std::vector<Vec3> u;  // indices 0..n, 0 is the central mass
    std::vector<Vec3> v;
};

CartesianState reduce_heliocentric(const BarycentricState& b);
BarycentricState lift_barycentric(const CartesianState& s, const Vec3& x0 = {});

// Full (1+n)-body energy with masses m0, m_1..m_n, before any reduction.
double manybody_hamiltonian(const BarycentricState& b, double m0, const std::vector<double>& m);

double hamiltonian(const CartesianState& s, const MassSystem& ms);
// The coupling part only: sum_{i<j} (y_i.y_j/m0 - m_i m_j/|x_i - x_j|).
double perturbation(const CartesianState& s, const MassSystem& ms);

struct AngularMomenta {
    std::vector<Vec3> C;  // x_i cross y_i
    std::vector<Vec3> S;  // partial sums
    Vec3 total;
};
AngularMomenta angular_momenta(const CartesianState& s);

struct Propagation {
    CartesianState state;
    double energy_drift = 0.0;  // relative
};
// Classical RK4 on Hamilton's equations; a reference oracle, not a production integrator.
Propagation propagate(const CartesianState& s, const MassSystem& ms, double t, double dt);

// Flips the second component of every position and momentum.
CartesianState reflect_r2minus(const CartesianState& s);

}  // namespace planetary
