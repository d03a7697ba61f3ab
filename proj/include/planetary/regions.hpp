#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "planetary/nbody.hpp"

namespace planetary {

// ---- multi-scale Diophantine sets

struct DiophantineSpec {
    std::vector<int> block_dims;  // nu_1..nu_m
    std::vector<double> gammas;   // gamma_1 >= ... >= gamma_m > 0
    double tau = 2.0;
    int cutoff = 20;              // K, scan 0 < |k|_1 <= K
    void validate() const;
    int dimension() const;
};

struct DiophantineResult {
    bool passes = true;
    double min_slack = 0.0;   // min over k of |omega.k| - gamma_j / |k|_1^tau
    std::vector<int> witness; // the k attaining it, first nonzero entry positive
    int witness_block = 0;    // 0-based block selecting the bound
    std::uint64_t scanned = 0;
};

// Lattice points with 0 < |k|_1 <= K in dimension d, counting k and -k once.
std::uint64_t lattice_count(int d, int K);
inline constexpr std::uint64_t kLatticeBudget = 1'000'000;

// Full scan by increasing |k|_1 (lexicographic within a shell). The worst witness is the
// first k in that order attaining the minimal slack. Throws BudgetExceeded past kLatticeBudget.
DiophantineResult diophantine_check(const std::vector<double>& omega, const DiophantineSpec& spec);

// ---- parameter ladders

struct AxisBounds {
    double lower = 0.0, upper = 0.0;
};

// a_i^pm = a_n^pm / alpha^((2^(n+1) - 2^(i+1) + i - n) / 3), i = 1..n, planet 1 outermost.
std::vector<AxisBounds> spacing_ladder(int n, double alpha, AxisBounds innermost);
// The exponent of alpha above, times three (an integer).
int spacing_exponent3(int n, int i);

struct GammaLadder {
    std::vector<int> blocks;     // nu_1..nu_{2n-1}
    std::vector<double> gammas;  // gamma_1..gamma_{2n-1}
};
GammaLadder gamma_ladder(int n, double mu, const std::vector<AxisBounds>& a, double gamma_bar,
                         const std::vector<double>& theta);

struct HolomorphyConfig {
    std::vector<double> D, C_lower, C_upper;  // per planet, depending only on the masses
    double s = 0.5;
};
struct HolomorphyParams {
    std::vector<double> Lambda_minus, Lambda_plus, G_minus, G_plus;
    std::vector<double> Theta_plus, vartheta_plus;  // j = 2..n, stored from index 0
    std::vector<double> theta;
};
HolomorphyParams holomorphy_params(const HolomorphyConfig& cfg, const MassSystem& ms,
                                   const std::vector<AxisBounds>& a);

// ---- coexistence geometry (n = 2, planet 1 outer)

// Unique positive root of C2 -> 5 Lambda2^2 C - (C + C2)^2 (4C + C2). DomainError when
// 5 Lambda2^2 <= 4 C^2, where the cubic is negative on all of C2 > 0.
double cstar_root(double Lambda2, double C);

struct TangentGeometry {
    double k_lower = 0.0, k_upper = 2.0, a_tangent = 0.0, c_tangent = 0.0;
    double cubic_residual = 0.0;        // |a^3 - 9a - 8| at a_tangent
    double double_root_residual = 0.0;  // max of the intersection cubic and its derivative at a_tangent
    double factor_residual = 0.0;       // coefficient mismatch of (x-a)^2 (x-c)
};
TangentGeometry tangent_geometry();

// Real roots (ascending) of x^3 + b x^2 + c x + d, trigonometric or Cardano form.
std::vector<double> cubic_real_roots(double b, double c, double d);

struct CoexistenceParams {
    double C = 1.0;
    double eps = 0.01;
    double alpha_minus = 0.01, alpha_plus = 1.0 / 32.0;
    double k_minus = 1.5, k_plus = 2.5;
    double Lambda_minus = 0.5, Lambda_plus = 15.0;
    double c = 0.9;
    void validate() const;  // InvalidParams on violated field ranges
};

// k_pm = (mu_2/mu_1) sqrt(M_2 alpha_pm / M_1); both must exceed 1 for the configuration to exist.
std::array<double, 2> k_from_masses(const MassSystem& ms, double alpha_minus, double alpha_plus);

enum class RegionSet {
    L0,      // the action box
    Ls, Gs,  // stable side
    Lu, Gu,  // unstable side
    Lsu,
    L1, L2, L3,              // the hatted sets, every printed inequality
    L1sub, L2sub, L3sub,     // the subsets used in the existence argument
};
const char* region_name(RegionSet s);
RegionSet region_from_name(const std::string& name);  // InvalidInput for unknown names

struct RegionPoint {
    double Lambda1 = 0.0, Lambda2 = 0.0, Theta1 = 0.0;
};
bool region_membership(const RegionPoint& p, const CoexistenceParams& params, RegionSet which);

struct Margin {
    std::string name;
    double slack = 0.0;  // positive when the inequality holds, homogenized units
};
// Every line of the combined inequality list at (Lambda1, Lambda2), homogenized by C.
std::vector<Margin> allinequalities_margins(double Lambda1, double Lambda2, const CoexistenceParams& params);
// Same for the three proof subsets.
std::vector<Margin> subset_margins(double Lambda1, double Lambda2, const CoexistenceParams& params);

struct CoexistenceWitness {
    RegionPoint point;
    double min_margin = 0.0;
    std::vector<Margin> margins;
    int level = 0;  // refinement level where it was found
    std::uint64_t cells = 0;
};
// Grid search in x = Lambda1/C, y = Lambda2/C over [0, 20]^2, 200 x 200, then two x16
// refinements around candidate cells. Throws InvalidParams or NotFound.
CoexistenceWitness coexistence_witness(const CoexistenceParams& params);

struct RasterCell {
    double x = 0.0, y = 0.0;
    std::uint32_t mask = 0;  // bit i set when the point lies in raster_sets()[i]
};
const std::vector<RegionSet>& raster_sets();
std::vector<RasterCell> region_raster(const CoexistenceParams& params, int nx = 200, int ny = 200, double extent = 20.0);

}  // namespace planetary
