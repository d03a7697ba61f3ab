#pragma once

#include <string>
#include <vector>

#include "planetary/nbody.hpp"
#include "planetary/regions.hpp"
#include "planetary/secular.hpp"
#include "planetary/symplectic.hpp"

namespace planetary {

// Cartesian state file: {"bodies": [{"mass", "x", "y"}], "m0", "mu_scaling"?, "units": "G=1"}.
struct StateFile {
    MassSystem masses;
    CartesianState state;
};

// Throws ParseError on malformed input.
StateFile parse_state_file(const std::string& text);
// Canonical form: sorted keys, shortest round-trip doubles, two-space indent, trailing newline.
std::string serialize_state_file(const StateFile& f);

// Chart state file: {"chart", "m0", "masses", "mu_scaling"?, "units", "coordinates": {label: value}}.
struct ChartFile {
    std::string chart;
    MassSystem masses;
    std::vector<double> values;  // flat chart layout
};
ChartFile parse_chart_file(const std::string& text);
std::string serialize_chart_file(const ChartFile& f);

std::string read_text_file(const std::string& path);   // ParseError when unreadable
void write_text_file(const std::string& path, const std::string& text);

std::string report_json(const SymplecticReport& r);
std::string spectrum_json(const SecularSpectrum& s, const std::vector<double>& Lambda, bool passes);
std::string retro_json(const RetroSpectrum& r);
std::string diophantine_json(const DiophantineResult& r);
std::string witness_json(const CoexistenceWitness& w, const CoexistenceParams& p);
std::string raster_csv(const std::vector<RasterCell>& cells);
std::string scaling_csv(const std::vector<ScalingRow>& rows);

}  // namespace planetary
