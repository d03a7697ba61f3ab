#include <cmath>

#include "planetary/charts.hpp"
#include "planetary/errors.hpp"
#include "planetary/kepler.hpp"

namespace planetary {

namespace detail {
CartesianState deprit_to_cartesian_impl(const DepritState& d, bool signed_first);
}

namespace {

using cplx = std::complex<double>;
const double kSqrt2 = std::sqrt(2.0);
const cplx kI{0.0, 1.0};

double root(double radicand, const char* what) {
    if (radicand < -kRadicandClamp) fail("InvalidInput", std::string("negative radicand in ") + what);
    return std::sqrt(std::max(0.0, radicand));
}

double polar_angle(double s, double c) { return (s == 0.0 && c == 0.0) ? 0.0 : wrap_angle(std::atan2(s, c)); }

}  // namespace

RetroState retro_from_depritaa(const DepritAA& d) {
    if (d.Lambda.size() != 2) fail("Unsupported", "the retrograde chart is defined for n = 2 only");
    const double C = d.Psi[0], Z = d.Psi[1];
    const double gz = d.psi[0] + d.psi[1];
    const double th1 = -d.gamma[0] + gz;
    const double th2 = d.gamma[1] + gz;
    const double r1 = root(2.0 * (d.Lambda[0] - d.Gamma[0]), "2(Lambda_1 - Gamma_1)");
    const double r2 = root(2.0 * (d.Lambda[1] - d.Gamma[1]), "2(Lambda_2 - Gamma_2)");
    const double r3 = root(2.0 * (C - d.Gamma[1] + d.Gamma[0]), "2(C - Gamma_2 + Gamma_1)");
    const double rT = root(2.0 * (C - Z), "2(C - Z)");
    RetroState r;
    r.Lambda = {d.Lambda[0], d.Lambda[1]};
    r.lambda = {wrap_angle(d.ell[0] - th1), wrap_angle(d.ell[1] + th2)};
    r.eta = {-r1 * std::cos(th1), r2 * std::cos(th2)};
    r.xi = {-r1 * std::sin(th1), -r2 * std::sin(th2)};
    r.p = -r3 * std::cos(gz);
    r.q = -r3 * std::sin(gz);
    r.P = rT * std::cos(d.psi[1]);
    r.Q = -rT * std::sin(d.psi[1]);
    return r;
}

DepritAA depritaa_from_retro(const RetroState& r) {
    const double th1 = polar_angle(-r.xi[0], -r.eta[0]);
    const double th2 = polar_angle(-r.xi[1], r.eta[1]);
    const double th3 = polar_angle(-r.q, -r.p);
    const double zeta = polar_angle(-r.Q, r.P);
    DepritAA d;
    d.Lambda = {r.Lambda[0], r.Lambda[1]};
    d.Gamma = {r.Lambda[0] - 0.5 * (r.eta[0] * r.eta[0] + r.xi[0] * r.xi[0]),
               r.Lambda[1] - 0.5 * (r.eta[1] * r.eta[1] + r.xi[1] * r.xi[1])};
    const double C = d.Gamma[1] - d.Gamma[0] + 0.5 * (r.p * r.p + r.q * r.q);
    d.Psi = {C, C - 0.5 * (r.P * r.P + r.Q * r.Q)};
    d.psi = {wrap_angle(th3 - zeta), zeta};
    d.gamma = {wrap_angle(th3 - th1), wrap_angle(th2 - th3)};
    d.ell = {wrap_angle(r.lambda[0] + th1), wrap_angle(r.lambda[1] - th2)};
    return d;
}

RetroComplex retro_to_complex(const RetroState& r) {
    RetroComplex c;
    c.Lambda = r.Lambda;
    c.lambda = r.lambda;
    c.t[0] = (kI * r.eta[0] - r.xi[0]) / kSqrt2;
    c.t[1] = (r.eta[1] - kI * r.xi[1]) / kSqrt2;
    c.t[2] = (kI * r.p - r.q) / kSqrt2;
    c.tstar[0] = (kI * r.eta[0] + r.xi[0]) / (kSqrt2 * kI);
    c.tstar[1] = (r.eta[1] + kI * r.xi[1]) / (kSqrt2 * kI);
    c.tstar[2] = (kI * r.p + r.q) / (kSqrt2 * kI);
    c.T = (r.P - kI * r.Q) / kSqrt2;
    c.Tstar = (r.P + kI * r.Q) / (kSqrt2 * kI);
    return c;
}

RetroState retro_from_complex(const RetroComplex& c) {
    RetroState r;
    r.Lambda = c.Lambda;
    r.lambda = c.lambda;
    // inverting the linear relations; the results are real for real states
    r.eta[0] = ((-kI * c.t[0] + c.tstar[0]) / kSqrt2).real();
    r.xi[0] = ((kI * c.tstar[0] - c.t[0]) / kSqrt2).real();
    r.eta[1] = ((c.t[1] + kI * c.tstar[1]) / kSqrt2).real();
    r.xi[1] = ((c.tstar[1] + kI * c.t[1]) / kSqrt2).real();
    r.p = ((-kI * c.t[2] + c.tstar[2]) / kSqrt2).real();
    r.q = ((kI * c.tstar[2] - c.t[2]) / kSqrt2).real();
    r.P = ((c.T + kI * c.Tstar) / kSqrt2).real();
    r.Q = ((c.Tstar + kI * c.T) / kSqrt2).real();
    return r;
}

RetroComplex rps_retrograde_involution(const RetroComplex& c) {
    RetroComplex r = c;
    r.Lambda[0] = -c.Lambda[0];
    r.lambda[0] = -c.lambda[0];  // not wrapped, so applying it twice is exact
    return r;
}

double retro_total_momentum(const RetroComplex& c) {
    cplx s = 0.0;
    for (int k = 0; k < 3; ++k) s += c.t[k] * c.tstar[k];
    return (c.Lambda[1] - c.Lambda[0] - kI * s).real();
}

double hamiltonian_retro(const RetroState& r, const MassSystem& ms) {
    if (ms.n() != 2) fail("Unsupported", "the retrograde chart is defined for n = 2 only");
    return hamiltonian(deprit_to_cartesian(deprit_from_actionangle(depritaa_from_retro(r), ms)), ms);
}

double hamiltonian_rps_involuted(const RetroComplex& c, const MassSystem& ms) {
    if (ms.n() != 2) fail("Unsupported", "the retrograde chart is defined for n = 2 only");
    // Prograde variables as complex numbers: eta - i xi = sqrt2 t, eta + i xi = sqrt2 i t*.
    // Squared radii are real. The radius is the square root with Im <= 0: for the negative
    // squared radii of the image it is -i sqrt|.|, which returns the physical phase, and for
    // real prograde states it is the ordinary root.
    auto phase = [](cplx t, cplx ts) {
        const cplx rho2 = 2.0 * kI * t * ts;  // eta^2 + xi^2
        const double r2 = rho2.real();
        const cplx rho = r2 >= 0.0 ? cplx(std::sqrt(r2), 0.0) : cplx(0.0, -std::sqrt(-r2));
        if (std::abs(rho) == 0.0) return 0.0;
        return wrap_angle(std::arg(kSqrt2 * t / rho));
    };
    auto radius2 = [](cplx t, cplx ts) { return (2.0 * kI * t * ts).real(); };

    const double th1 = phase(c.t[0], c.tstar[0]);
    const double th2 = phase(c.t[1], c.tstar[1]);
    const double th3 = phase(c.t[2], c.tstar[2]);
    const double zeta = phase(c.T, c.Tstar);

    DepritAA d;
    d.Lambda = {c.Lambda[0], c.Lambda[1]};
    d.Gamma = {c.Lambda[0] - 0.5 * radius2(c.t[0], c.tstar[0]), c.Lambda[1] - 0.5 * radius2(c.t[1], c.tstar[1])};
    const double C = d.Gamma[1] + d.Gamma[0] - 0.5 * radius2(c.t[2], c.tstar[2]);
    d.Psi = {C, C - 0.5 * radius2(c.T, c.Tstar)};
    d.psi = {wrap_angle(th3 - zeta), zeta};
    d.gamma = {wrap_angle(th1 - th3), wrap_angle(th2 - th3)};
    d.ell = {wrap_angle(c.lambda[0] - th1), wrap_angle(c.lambda[1] - th2)};

    DepritState dep;
    dep.Psi = d.Psi;
    dep.psi = d.psi;
    for (int i = 0; i < 2; ++i) {
        const PlanarPolar pp = actionangle_to_planar(d.Lambda[i], d.Gamma[i], d.ell[i], d.gamma[i], ms.mu(i), ms.M(i));
        dep.R.push_back(pp.R);
        dep.G.push_back(d.Gamma[i]);
        dep.r.push_back(pp.r);
        dep.phi.push_back(pp.phi);
    }
    return hamiltonian(detail::deprit_to_cartesian_impl(dep, true), ms);
}

}  // namespace planetary
