#pragma once

#include <array>
#include <complex>
#include <vector>

#include "planetary/geometry.hpp"
#include "planetary/nbody.hpp"

namespace planetary {

// Every chart record stores its momenta block first, then the conjugate angles
// in the same order; the symplectic pairing is momentum[k] <-> angle[k].

struct DelaunayAA {
    std::vector<double> Lambda, G, Z;
    std::vector<double> ell, g, zeta;
};

struct PoincareState {
    std::vector<double> Lambda, uh, up;
    std::vector<double> lambda, ux, uq;
};

struct DepritState {
    std::vector<double> R, G, Psi;
    std::vector<double> r, phi, psi;
};

struct DepritAA {
    std::vector<double> Lambda, Gamma, Psi;
    std::vector<double> ell, gamma, psi;
};

struct KState {
    std::vector<double> Theta, chi, R;
    std::vector<double> vartheta, kappa, r;
};

struct PState {
    std::vector<double> Theta, chi, Lambda;
    std::vector<double> vartheta, kappa, ell;
};

struct RpsState {
    std::vector<double> Lambda, eta, p;
    std::vector<double> lambda, xi, q;  // p, q carry n entries; the last pair involves only C and Z
};

// Retrograde regularization for n = 2, outer planet (index 0) retrograde.
struct RetroState {
    std::array<double, 2> Lambda{}, eta{};
    double p = 0.0, P = 0.0;
    std::array<double, 2> lambda{}, xi{};
    double q = 0.0, Q = 0.0;
};

struct RetroComplex {
    std::array<double, 2> Lambda{}, lambda{};
    std::array<std::complex<double>, 3> t{}, tstar{};
    std::complex<double> T, Tstar;
};

inline constexpr double kDegenerate = 1e-10;
inline constexpr double kNearEquatorial = 1e-8;
inline constexpr double kRadicandClamp = 1e-12;

DelaunayAA delaunay_from_cartesian(const CartesianState& s, const MassSystem& ms);
CartesianState delaunay_to_cartesian(const DelaunayAA& d, const MassSystem& ms);

PoincareState poincare_from_delaunay(const DelaunayAA& d);
DelaunayAA delaunay_from_poincare(const PoincareState& p);

struct JacobiReduction {
    double Z1, Z2;
    double node_gap;  // zeta_2 - zeta_1
};
JacobiReduction jacobi_reduction(double G1, double G2, double G);

DepritState deprit_from_cartesian(const CartesianState& s);
CartesianState deprit_to_cartesian(const DepritState& d);

DepritAA deprit_actionangle(const DepritState& d, const MassSystem& ms);
DepritState deprit_from_actionangle(const DepritAA& a, const MassSystem& ms);

KState k_from_cartesian(const CartesianState& s);
CartesianState k_to_cartesian(const KState& k);

PState p_from_cartesian(const CartesianState& s, const MassSystem& ms);
CartesianState p_to_cartesian(const PState& p, const MassSystem& ms);
// |C_j| for j >= 2 from the chain data: sqrt(a^2 + b^2 - 2T^2 + 2 sqrt((a^2-T^2)(b^2-T^2)) cos v)
double p_planet_momentum(double chi_outer, double chi_inner, double Theta, double vartheta);

RpsState rps_from_depritaa(const DepritAA& d);
DepritAA depritaa_from_rps(const RpsState& r);

RetroState retro_from_depritaa(const DepritAA& d);
DepritAA depritaa_from_retro(const RetroState& r);
RetroComplex retro_to_complex(const RetroState& r);
RetroState retro_from_complex(const RetroComplex& c);
// (Lambda_1, lambda_1) -> (-Lambda_1, -lambda_1), everything else untouched.
RetroComplex rps_retrograde_involution(const RetroComplex& c);
// Total angular momentum length read off the complex variables: Lambda_2 - Lambda_1 - i t.t*.
double retro_total_momentum(const RetroComplex& c);

// Energy of the retrograde chart state, through the Cartesian lift.
double hamiltonian_retro(const RetroState& r, const MassSystem& ms);
// Energy of the prograde regularized chart evaluated on the image of the involution,
// where the first action is negative and the first secular pairs are imaginary.
double hamiltonian_rps_involuted(const RetroComplex& c, const MassSystem& ms);

// Chart-side counterpart of reflect_r2minus.
KState reflect_k(const KState& k);
PState reflect_p(const PState& p);

}  // namespace planetary
