#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "planetary/geometry.hpp"
#include "planetary/nbody.hpp"

namespace planetary {

// Flat Cartesian layout: (y_1, ..., y_n, x_1, ..., x_n), three components each.
std::vector<double> flatten(const CartesianState& s);
CartesianState unflatten(const std::vector<double>& v);

// A chart seen as a pair of maps between flat vectors. Coordinates are laid out
// as (momenta..., conjugate angles...) so that pair k is (v[k], v[k + dim/2]).
struct ChartSpec {
    std::string name;
    int n = 0;
    bool retro = false;              // sample with the outer planet retrograde
    bool exact_one_form = false;     // y.dx equals sum P dQ pointwise, not just up to an exact form
    std::vector<std::string> momenta, angles;
    std::vector<bool> periodic;      // per coordinate, compared mod 2pi
    std::function<std::vector<double>(const CartesianState&)> from_cartesian;
    VectorMap to_cartesian;          // flat chart -> flat Cartesian
    // chart-side minus Cartesian-side values of conserved quantities
    std::function<std::map<std::string, double>(const std::vector<double>&, const CartesianState&)> conserved;

    std::string ordering() const;
};

const std::vector<std::string>& chart_names();
// Throws InvalidInput for unknown names and Unsupported for unavailable n.
ChartSpec chart_spec(const std::string& name, int n, const MassSystem& ms);

// Masses used by the verification harness: m0 = 1, planets (1, 2, 8), mu = 1e-3. Inner planets
// are heavier so that all actions are of comparable size.
// The retrograde harness uses (0.2, 1) so the outer planet carries the smaller angular momentum.
MassSystem sampling_masses(int n, bool retro = false);
// Harness masses suited to the named chart.
MassSystem sampling_masses(const std::string& chart, int n);

struct SamplingDomain {
    double e_min = 0.1, e_max = 0.6;
    double tilt_min = 0.1, tilt_max = 1.0;     // mutual inclinations, rad
    double ratio_min = 0.1, ratio_max = 0.5;   // a_{j+1} / a_j, planet 1 outermost
    double a_outer = 10.0;
};

// Random elliptic state in the sampling domain. Planet 1 is the outer one.
CartesianState sample_state(std::mt19937_64& rng, int n, const MassSystem& ms, bool retro = false,
                            const SamplingDomain& dom = {});

struct SymplecticReport {
    std::string chart;
    std::string ordering;
    int n = 0;
    int samples = 0;
    std::uint64_t seed = 0;
    double step = 0.0;
    double one_form_residual_max = 0.0;
    double two_form_residual_max = 0.0;
    double roundtrip_max = 0.0;
    std::map<std::string, double> conserved_residuals;
};

// Max over samples of ||J^T Omega J - Omega||_inf, J the Jacobian of the chart's Cartesian lift.
SymplecticReport check_two_form(const std::string& chart, int n, int samples, std::uint64_t seed,
                                double step = 1e-5);
// Pointwise y.dx against sum P dQ when the chart preserves the Liouville form,
// otherwise the two loop integrals around small closed loops.
SymplecticReport check_one_form(const std::string& chart, int n, int samples, std::uint64_t seed,
                                double step = 1e-5);
SymplecticReport check_conserved(const std::string& chart, int n, int samples, std::uint64_t seed);
// All of the above plus both round-trip compositions.
SymplecticReport check_chart(const std::string& chart, int n, int samples, std::uint64_t seed,
                             double step = 1e-5);

// Acceptance thresholds used by the command-line check.
struct CheckThresholds {
    double two_form, one_form, roundtrip, conserved;
};
CheckThresholds check_thresholds(int n);
bool report_passes(const SymplecticReport& r);

}  // namespace planetary
