#include "planetary/nbody.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "planetary/errors.hpp"

namespace planetary {

double MassSystem::mu(int i) const {
    const double c = coupling();
    return m0 * m[i] / (m0 + c * m[i]);
}

double MassSystem::M(int i) const { return m0 + coupling() * m[i]; }

void MassSystem::validate() const {
    if (m.empty()) fail("InvalidInput", "at least one planet required");
    if (!(m0 > 0.0)) fail("InvalidInput", "central mass must be positive");
    for (double mi : m)
        if (!(mi > 0.0)) fail("InvalidInput", "planet masses must be positive");
    if (mu_scaling && !(*mu_scaling >= 0.0)) fail("InvalidInput", "mu_scaling must be >= 0");
}

CartesianState reduce_heliocentric(const BarycentricState& b) {
    if (b.u.size() != b.v.size() || b.u.size() < 2)
        fail("InvalidInput", "barycentric state needs matching u, v with n+1 >= 2 entries");
    Vec3 total;
    double scale = 0.0;
    for (const Vec3& u : b.u) {
        total += u;
        scale = std::max(scale, norm(u));
    }
    if (norm(total) > 1e-10 * std::max(scale, 1e-300))
        fail("FrameError", "total linear momentum does not vanish");
    CartesianState s;
    for (std::size_t i = 1; i < b.u.size(); ++i) {
        s.x.push_back(b.v[i] - b.v[0]);
        s.y.push_back(b.u[i]);
    }
    return s;
}

BarycentricState lift_barycentric(const CartesianState& s, const Vec3& x0) {
    BarycentricState b;
    Vec3 u0;
    for (const Vec3& y : s.y) u0 -= y;
    b.u.push_back(u0);
    b.v.push_back(x0);
    for (int i = 0; i < s.n(); ++i) {
        b.u.push_back(s.y[i]);
        b.v.push_back(s.x[i] + x0);
    }
    return b;
}

double manybody_hamiltonian(const BarycentricState& b, double m0, const std::vector<double>& m) {
    std::vector<double> mass{m0};
    mass.insert(mass.end(), m.begin(), m.end());
    double h = 0.0;
    for (std::size_t i = 0; i < mass.size(); ++i) h += dot(b.u[i], b.u[i]) / (2.0 * mass[i]);
    for (std::size_t i = 0; i < mass.size(); ++i)
        for (std::size_t j = i + 1; j < mass.size(); ++j)
            h -= mass[i] * mass[j] / norm(b.v[i] - b.v[j]);
    return h;
}

namespace {

void check_collisions(const CartesianState& s) {
    double scale = 0.0;
    for (const Vec3& x : s.x) scale = std::max(scale, norm(x));
    const double tol = 1e-12 * scale;
    for (int i = 0; i < s.n(); ++i) {
        if (!(norm(s.x[i]) > tol)) fail("CollisionError", "planet " + std::to_string(i + 1) + " at the origin");
        for (int j = i + 1; j < s.n(); ++j)
            if (!(norm(s.x[i] - s.x[j]) > tol))
                fail("CollisionError", "planets " + std::to_string(i + 1) + " and " + std::to_string(j + 1) + " collide");
    }
}

}  // namespace

double perturbation(const CartesianState& s, const MassSystem& ms) {
    double f = 0.0;
    for (int i = 0; i < s.n(); ++i)
        for (int j = i + 1; j < s.n(); ++j)
            f += dot(s.y[i], s.y[j]) / ms.m0 - ms.m[i] * ms.m[j] / norm(s.x[i] - s.x[j]);
    return f;
}

double hamiltonian(const CartesianState& s, const MassSystem& ms) {
    if (s.n() != ms.n()) fail("InvalidInput", "state and mass system sizes differ");
    check_collisions(s);
    double h = 0.0;
    for (int i = 0; i < s.n(); ++i) {
        const double mu = ms.mu(i);
        h += dot(s.y[i], s.y[i]) / (2.0 * mu) - mu * ms.M(i) / norm(s.x[i]);
    }
    return h + ms.coupling() * perturbation(s, ms);
}

AngularMomenta angular_momenta(const CartesianState& s) {
    AngularMomenta a;
    Vec3 sum;
    for (int i = 0; i < s.n(); ++i) {
        const Vec3 c = cross(s.x[i], s.y[i]);
        a.C.push_back(c);
        sum += c;
        a.S.push_back(sum);
    }
    a.total = sum;
    return a;
}

namespace {

struct Derivative {
    std::vector<Vec3> dy, dx;
};

Derivative vector_field(const CartesianState& s, const MassSystem& ms) {
    const int n = s.n();
    const double c = ms.coupling();
    Derivative d{std::vector<Vec3>(n), std::vector<Vec3>(n)};
    Vec3 ysum;
    for (const Vec3& y : s.y) ysum += y;
    for (int i = 0; i < n; ++i) {
        const double mu = ms.mu(i);
        d.dx[i] = s.y[i] / mu + (c / ms.m0) * (ysum - s.y[i]);
        const double r = norm(s.x[i]);
        d.dy[i] = s.x[i] * (-mu * ms.M(i) / (r * r * r));
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const Vec3 dij = s.x[i] - s.x[j];
            const double rij = norm(dij);
            d.dy[i] -= dij * (c * ms.m[i] * ms.m[j] / (rij * rij * rij));
        }
    }
    return d;
}

CartesianState axpy(const CartesianState& s, const Derivative& d, double h) {
    CartesianState r = s;
    for (int i = 0; i < s.n(); ++i) {
        r.y[i] += d.dy[i] * h;
        r.x[i] += d.dx[i] * h;
    }
    return r;
}

}  // namespace

Propagation propagate(const CartesianState& s, const MassSystem& ms, double t, double dt) {
    if (!(dt > 0.0) || !(t >= 0.0)) fail("InvalidInput", "need dt > 0 and t >= 0");
    const double e0 = hamiltonian(s, ms);
    CartesianState cur = s;
    double time = 0.0;
    while (time < t) {
        const double h = std::min(dt, t - time);
        try {
            const Derivative k1 = vector_field(cur, ms);
            const Derivative k2 = vector_field(axpy(cur, k1, h / 2), ms);
            const Derivative k3 = vector_field(axpy(cur, k2, h / 2), ms);
            const Derivative k4 = vector_field(axpy(cur, k3, h), ms);
            for (int i = 0; i < cur.n(); ++i) {
                cur.y[i] += (k1.dy[i] + 2.0 * k2.dy[i] + 2.0 * k3.dy[i] + k4.dy[i]) * (h / 6.0);
                cur.x[i] += (k1.dx[i] + 2.0 * k2.dx[i] + 2.0 * k3.dx[i] + k4.dx[i]) * (h / 6.0);
            }
            time += h;
            check_collisions(cur);
        } catch (const Error& e) {
            fail("CollisionError", "at t = " + std::to_string(time) + ": " + e.what());
        }
    }
    Propagation p;
    p.state = cur;
    p.energy_drift = std::abs(hamiltonian(cur, ms) - e0) / std::max(std::abs(e0), 1e-300);
    return p;
}

CartesianState reflect_r2minus(const CartesianState& s) {
    CartesianState r = s;
    for (int i = 0; i < s.n(); ++i) {
        r.x[i].y = -r.x[i].y;
        r.y[i].y = -r.y[i].y;
    }
    return r;
}

}  // namespace planetary
