#include "planetary/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "planetary/errors.hpp"

namespace planetary {

using nlohmann::json;

namespace {

json vec3(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

Vec3 read_vec3(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 3) fail("ParseError", std::string(what) + " must be an array of 3 numbers");
    for (const auto& e : j)
        if (!e.is_number()) fail("ParseError", std::string(what) + " must hold numbers");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

double read_number(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number()) fail("ParseError", std::string("missing numeric field '") + key + "'");
    return j[key].get<double>();
}

json parse(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        fail("ParseError", e.what());
    }
}

void read_units(const json& j) {
    if (j.contains("units") && j["units"] != "G=1") fail("ParseError", "units must be \"G=1\"");
}

void read_mu(const json& j, MassSystem& ms) {
    if (j.contains("mu_scaling") && !j["mu_scaling"].is_null()) ms.mu_scaling = read_number(j, "mu_scaling");
}

void put_masses(json& j, const MassSystem& ms) {
    j["m0"] = ms.m0;
    if (ms.mu_scaling) j["mu_scaling"] = *ms.mu_scaling;
    j["units"] = "G=1";
}

void validate_masses(const MassSystem& ms) {
    try {
        ms.validate();
    } catch (const Error& e) {
        fail("ParseError", e.what());
    }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

StateFile parse_state_file(const std::string& text) {
    const json j = parse(text);
    if (!j.is_object()) fail("ParseError", "state file must be a JSON object");
    read_units(j);
    StateFile f;
    f.masses.m0 = read_number(j, "m0");
    read_mu(j, f.masses);
    if (!j.contains("bodies") || !j["bodies"].is_array() || j["bodies"].empty())
        fail("ParseError", "bodies must be a non-empty array");
    for (const auto& b : j["bodies"]) {
        if (!b.is_object()) fail("ParseError", "each body must be an object");
        f.masses.m.push_back(read_number(b, "mass"));
        if (!b.contains("x") || !b.contains("y")) fail("ParseError", "each body needs x and y");
        f.state.x.push_back(read_vec3(b["x"], "x"));
        f.state.y.push_back(read_vec3(b["y"], "y"));
    }
    validate_masses(f.masses);
    return f;
}

std::string serialize_state_file(const StateFile& f) {
    json j;
    put_masses(j, f.masses);
    json bodies = json::array();
    for (int i = 0; i < f.state.n(); ++i)
        bodies.push_back({{"mass", f.masses.m[i]}, {"x", vec3(f.state.x[i])}, {"y", vec3(f.state.y[i])}});
    j["bodies"] = bodies;
    return dump(j);
}

ChartFile parse_chart_file(const std::string& text) {
    const json j = parse(text);
    if (!j.is_object()) fail("ParseError", "chart file must be a JSON object");
    read_units(j);
    ChartFile f;
    if (!j.contains("chart") || !j["chart"].is_string()) fail("ParseError", "missing chart name");
    f.chart = j["chart"].get<std::string>();
    f.masses.m0 = read_number(j, "m0");
    read_mu(j, f.masses);
    if (!j.contains("masses") || !j["masses"].is_array()) fail("ParseError", "masses must be an array");
    for (const auto& m : j["masses"]) {
        if (!m.is_number()) fail("ParseError", "masses must hold numbers");
        f.masses.m.push_back(m.get<double>());
    }
    validate_masses(f.masses);
    if (!j.contains("coordinates") || !j["coordinates"].is_object()) fail("ParseError", "coordinates must be an object");
    ChartSpec spec;
    try {
        spec = chart_spec(f.chart, f.masses.n(), f.masses);
    } catch (const Error& e) {
        fail("ParseError", e.what());
    }
    std::vector<std::string> labels = spec.momenta;
    labels.insert(labels.end(), spec.angles.begin(), spec.angles.end());
    const json& c = j["coordinates"];
    if (c.size() != labels.size()) fail("ParseError", "chart " + f.chart + " expects " + spec.ordering());
    for (const auto& l : labels) f.values.push_back(read_number(c, l.c_str()));
    return f;
}

std::string serialize_chart_file(const ChartFile& f) {
    const ChartSpec spec = chart_spec(f.chart, f.masses.n(), f.masses);
    std::vector<std::string> labels = spec.momenta;
    labels.insert(labels.end(), spec.angles.begin(), spec.angles.end());
    if (labels.size() != f.values.size()) fail("InvalidInput", "value count does not match chart " + f.chart);
    json j;
    put_masses(j, f.masses);
    j["chart"] = f.chart;
    j["masses"] = f.masses.m;
    json c = json::object();
    for (std::size_t i = 0; i < labels.size(); ++i) c[labels[i]] = f.values[i];
    j["coordinates"] = c;
    return dump(j);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("ParseError", "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail("IOError", "cannot write " + path);
    out << text;
    if (!out) fail("IOError", "write failed for " + path);
}

std::string report_json(const SymplecticReport& r) {
    json j;
    j["chart"] = r.chart;
    j["ordering"] = r.ordering;
    j["n"] = r.n;
    j["samples"] = r.samples;
    j["seed"] = r.seed;
    j["step"] = r.step;
    j["one_form_residual_max"] = r.one_form_residual_max;
    j["two_form_residual_max"] = r.two_form_residual_max;
    j["roundtrip_max"] = r.roundtrip_max;
    j["conserved_residuals"] = r.conserved_residuals;
    j["passes"] = report_passes(r);
    return dump(j);
}

namespace {
json matrix(const Matrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows; ++i) {
        json row = json::array();
        for (int c = 0; c < m.cols; ++c) row.push_back(m(i, c));
        rows.push_back(row);
    }
    return rows;
}
}  // namespace

std::string spectrum_json(const SecularSpectrum& s, const std::vector<double>& Lambda, bool passes) {
    json j;
    j["convention"] = "planet 1 outer, planet 2 inner";
    j["Lambda"] = Lambda;
    j["Qh"] = matrix(s.Qh);
    j["Qv"] = matrix(s.Qv);
    j["sigma"] = s.sigma;
    j["varsigma"] = s.varsigma;
    j["herman_residuals"] = {{"varsigma_n", s.herman_residuals[0]}, {"trace", s.herman_residuals[1]}};
    j["Qh_norm"] = s.Qh.max_abs();
    j["Qv_norm"] = s.Qv.max_abs();
    j["passes"] = passes;
    return dump(j);
}

std::string retro_json(const RetroSpectrum& r) {
    json j;
    j["convention"] = "planet 1 outer (retrograde), planet 2 inner";
    j["alpha"] = r.alpha;
    j["a_outer"] = r.a_outer;
    j["a_inner"] = r.a_inner;
    j["s"] = r.s;
    j["s_tilde"] = r.s_tilde;
    j["sigma1"] = r.sigma1;
    j["sigma2"] = r.sigma2;
    j["varsigma"] = r.varsigma;
    j["discriminant"] = r.discriminant;
    j["herman_sum"] = r.herman();
    return dump(j);
}

std::string diophantine_json(const DiophantineResult& r) {
    json j;
    j["passes"] = r.passes;
    j["min_slack"] = r.min_slack;
    j["witness"] = r.witness;
    j["witness_block"] = r.witness_block + 1;
    j["scanned"] = r.scanned;
    return dump(j);
}

std::string witness_json(const CoexistenceWitness& w, const CoexistenceParams& p) {
    json j;
    j["C"] = p.C;
    j["eps"] = p.eps;
    j["alpha_plus"] = p.alpha_plus;
    j["Lambda1"] = w.point.Lambda1;
    j["Lambda2"] = w.point.Lambda2;
    j["Theta1"] = w.point.Theta1;
    j["min_margin"] = w.min_margin;
    j["refinement_level"] = w.level;
    j["cells"] = w.cells;
    json m = json::object();
    for (const auto& g : w.margins) m[g.name] = g.slack;
    j["margins"] = m;
    return dump(j);
}

namespace {
std::string num(double v) { return json(v).dump(); }
}  // namespace

std::string raster_csv(const std::vector<RasterCell>& cells) {
    std::string out = "x,y,mask\n";
    for (const auto& c : cells) out += num(c.x) + "," + num(c.y) + "," + std::to_string(c.mask) + "\n";
    return out;
}

std::string scaling_csv(const std::vector<ScalingRow>& rows) {
    std::string out = "alpha,value,closed_form,residual\n";
    for (const auto& r : rows)
        out += num(r.alpha) + "," + num(r.value) + "," + num(r.closed_form) + "," + num(r.residual) + "\n";
    return out;
}

}  // namespace planetary
