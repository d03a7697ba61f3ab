#pragma once

#include <array>
#include <complex>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "planetary/charts.hpp"
#include "planetary/geometry.hpp"
#include "planetary/nbody.hpp"

namespace planetary {

// Index convention for n = 2: planet 1 (index 0) is the outer one, planet 2 the inner one.

struct QuadratureSpec {
    int nodes_per_angle = 256;  // power of two, >= 16
    int dims = 2;               // number of averaged angles
    void validate() const;
};

struct AveragedPerturbation {
    double value = 0.0;      // Newtonian plus indirect part
    double newtonian = 0.0;  // -sum m_i m_j <1/|x_i - x_j|>
    double indirect = 0.0;   // sum <y_i>.<y_j>/m0, analytically zero
};

// Chart slots holding the fast (mean anomaly or mean longitude) angles.
// Unsupported for charts without them (cartesian, deprit, kmap).
std::vector<int> fast_angle_slots(const std::string& chart, int n);

// Trapezoidal average of the coupling sum over the fast angles of a flat chart point.
// The fast-angle entries of `point` are ignored. A chart failure at a node throws DomainError.
AveragedPerturbation average_perturbation_parts(const std::string& chart, const std::vector<double>& point,
                                                const QuadratureSpec& quad, const MassSystem& ms);
double average_perturbation(const std::string& chart, const std::vector<double>& point,
                            const QuadratureSpec& quad, const MassSystem& ms);

// Average of the quadrupole term alone: -m_i m_j <(3(x_i.x_j)^2 - |x_i|^2|x_j|^2) / (2|x_i|^5)>
// summed over pairs i < j (i outer).
double average_quadrupole(const std::string& chart, const std::vector<double>& point,
                          const QuadratureSpec& quad, const MassSystem& ms);

// (1/2pi) int cos(j t) / (1 - 2 alpha cos t + alpha^2)^s dt
double laplace_coefficient(double s, int j, double alpha);

// Semi-major axis carried by an action: Lambda = mu_i sqrt(M_i a).
double semi_major_axis(double Lambda, const MassSystem& ms, int i);
double action_for_axis(double a, const MassSystem& ms, int i);

struct SecularSpectrum {
    Matrix Qh, Qv;
    std::vector<double> sigma, varsigma;  // ascending eigenvalues of Qh, Qv
    // (smallest |eigenvalue of Qv|, |sum of all eigenvalues|)
    std::array<double, 2> herman_residuals{};
};

// Qh, Qv from central second differences of the average at z = 0 in Poincare variables,
// Richardson-combined over fd_step and 2 fd_step. fd_step = 0 picks the step from a doubling
// ladder starting at 5e-4, where successive extrapolations agree best.
SecularSpectrum quadratic_forms(const std::vector<double>& Lambda, const MassSystem& ms,
                                const QuadratureSpec& quad = {}, double fd_step = 0.0);

// Rotation whose inverse (its transpose) has last row (sum Lambda)^(-1/2) (sqrt Lambda_1, ...).
Matrix rho_v_rotation(const std::vector<double>& Lambda);

// Second-order term of the averaged perturbation in P variables, n = 2.
double f2_closed_form(const PState& p, const MassSystem& ms);

// Masses of the secular studies: m0 = 1, planets (0.25, 4) so that m1 m2 = 1, mu = 1e-3.
MassSystem secular_masses();

// Two-planet configuration for the alpha-scaling study of the second-order term.
struct ScalingGeometry {
    double a_outer = 10.0;
    double e_outer = 0.2, e_inner = 0.3;
    double inclination = 0.6;  // mutual, rad
    double perihelion_outer = 0.4, perihelion_inner = 1.1, node = 0.7;
};
CartesianState two_planet_state(double alpha, const ScalingGeometry& g, const MassSystem& ms);

struct ScalingRow {
    double alpha = 0.0;
    double value = 0.0;        // quadrature average plus m1 m2 / a_outer
    double closed_form = 0.0;
    double residual = 0.0;     // |value - closed_form|
};
std::vector<ScalingRow> f2_scaling_study(const std::vector<double>& alphas, const MassSystem& ms,
                                         const ScalingGeometry& g = {}, const QuadratureSpec& quad = {});
// Least-squares slope of log residual against log alpha.
double fitted_exponent(const std::vector<double>& alphas, const std::vector<double>& values);

struct RetroSpectrum {
    double s = 0.0, s_tilde = 0.0;
    std::array<std::array<std::complex<double>, 2>, 2> sigma_matrix{};
    double sigma1 = 0.0, sigma2 = 0.0;  // sigma1 is the larger root
    double varsigma = 0.0;
    double discriminant = 0.0;
    double alpha = 0.0, a_outer = 0.0, a_inner = 0.0;
    double herman() const { return sigma1 + sigma2 + varsigma; }
};

RetroSpectrum retro_spectrum(const std::vector<double>& Lambda, const MassSystem& ms);

struct Hyperbolicity {
    double a = 0.0, b = 0.0;
    bool hyperbolic = false;  // a and b of opposite signs
};
Hyperbolicity hyperbolicity_coeffs(double Lambda2, double C, double Theta1);

// Taylor coefficients in (t, t*): key is (exponents of t, exponents of t*).
using MultiIndex = std::pair<std::vector<int>, std::vector<int>>;
using TaylorSeries = std::map<MultiIndex, std::complex<double>>;

struct DalembertReport {
    TaylorSeries kept;                  // coefficients obeying sum a = sum a*
    std::vector<MultiIndex> violations;
    double scale = 0.0;                 // largest |coefficient|
    bool passes() const { return violations.empty(); }
};

// Flags coefficients with |c| > tol * scale whose exponents break sum a = sum a*.
DalembertReport dalembert_filter(const TaylorSeries& series, double tol = 1e-8);

// Degree-2 Taylor coefficients of the average around the circular coplanar retrograde state
// of the rpspi chart, in the complex variables (t1, t2, t3, T) and their starred partners.
TaylorSeries rpspi_quadratic_series(const std::vector<double>& Lambda, const MassSystem& ms,
                                    const QuadratureSpec& quad = {}, double fd_step = 1e-3);

}  // namespace planetary
