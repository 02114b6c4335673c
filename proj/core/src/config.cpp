#include "mpe/config.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "mpe/errors.hpp"

namespace mpe {

namespace {

std::string trim(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

double parse_double(const std::string& v, const std::string& key, int line) {
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0')
        throw ConfigError("bad numeric value '" + v + "' for '" + key + "' (line " +
                          std::to_string(line) + ")");
    return x;
}

long long parse_int(const std::string& v, const std::string& key, int line) {
    char* end = nullptr;
    const long long x = std::strtoll(v.c_str(), &end, 10);
    if (end == v.c_str() || *end != '\0')
        throw ConfigError("bad integer value '" + v + "' for '" + key + "' (line " +
                          std::to_string(line) + ")");
    return x;
}

bool parse_bool(const std::string& v, const std::string& key, int line) {
    if (v == "true" || v == "1" || v == "on" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "off" || v == "no") return false;
    throw ConfigError("bad boolean value '" + v + "' for '" + key + "' (line " +
                      std::to_string(line) + ")");
}

ForcingSpec::Preset parse_preset(const std::string& v, const std::string& key,
                                 int line) {
    if (v == "zero") return ForcingSpec::Preset::Zero;
    if (v == "fourier") return ForcingSpec::Preset::Fourier;
    if (v == "bump") return ForcingSpec::Preset::Bump;
    throw ConfigError("unknown forcing preset '" + v + "' for '" + key + "' (line " +
                      std::to_string(line) + "); expected zero, fourier or bump");
}

const char* preset_name(ForcingSpec::Preset p) {
    switch (p) {
    case ForcingSpec::Preset::Zero: return "zero";
    case ForcingSpec::Preset::Fourier: return "fourier";
    case ForcingSpec::Preset::Bump: return "bump";
    }
    return "zero";
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig c;
    std::istringstream in(text);
    std::string raw;
    std::string section; // empty = top level
    int line = 0;

    while (std::getline(in, raw)) {
        ++line;
        std::string s = trim(raw);
        if (s.empty() || s[0] == '#' || s[0] == ';') continue;

        if (s.front() == '[') {
            if (s.back() != ']')
                throw ConfigError("malformed section header (line " +
                                  std::to_string(line) + ")");
            section = trim(s.substr(1, s.size() - 2));
            if (section != "grid" && section != "params" && section != "forcing" &&
                section != "stepping" && section != "output" && section != "experiment")
                throw UnknownKey("[" + section + "]", line);
            continue;
        }

        const size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected key = value (line " + std::to_string(line) +
                              ")");
        const std::string key = trim(s.substr(0, eq));
        const std::string val = trim(s.substr(eq + 1));
        const std::string dotted = section.empty() ? key : section + "." + key;

        if (section.empty()) {
            if (key == "seed")
                c.seed = static_cast<std::uint64_t>(parse_int(val, dotted, line));
            else
                throw UnknownKey(dotted, line);
        } else if (section == "grid") {
            if (key == "Nx") c.nx = static_cast<int>(parse_int(val, dotted, line));
            else if (key == "Ny") c.ny = static_cast<int>(parse_int(val, dotted, line));
            else if (key == "Nz") c.nz = static_cast<int>(parse_int(val, dotted, line));
            else if (key == "Lx") c.lx = parse_double(val, dotted, line);
            else if (key == "Ly") c.ly = parse_double(val, dotted, line);
            else throw UnknownKey(dotted, line);
        } else if (section == "params") {
            PhysParams& p = c.params;
            if (key == "Re1") p.re1 = parse_double(val, dotted, line);
            else if (key == "Re2") p.re2 = parse_double(val, dotted, line);
            else if (key == "Rt1") p.rt1 = parse_double(val, dotted, line);
            else if (key == "Rt2") p.rt2 = parse_double(val, dotted, line);
            else if (key == "Rt3") p.rt3 = parse_double(val, dotted, line);
            else if (key == "Rt4") p.rt4 = parse_double(val, dotted, line);
            else if (key == "Ro") p.ro = parse_double(val, dotted, line);
            else if (key == "f") p.f = parse_double(val, dotted, line);
            else if (key == "a") p.a = parse_double(val, dotted, line);
            else if (key == "b") p.b = parse_double(val, dotted, line);
            else if (key == "P") p.p_surface = parse_double(val, dotted, line);
            else if (key == "p0") p.p_top = parse_double(val, dotted, line);
            else if (key == "alpha") p.alpha = parse_double(val, dotted, line);
            else if (key == "beta") p.beta = parse_double(val, dotted, line);
            else throw UnknownKey(dotted, line);
        } else if (section == "forcing") {
            ForcingSpec& q1 = c.params.q1;
            ForcingSpec& q2 = c.params.q2;
            if (key == "q1_preset") q1.preset = parse_preset(val, dotted, line);
            else if (key == "q1_amplitude") q1.amplitude = parse_double(val, dotted, line);
            else if (key == "q1_mode_x") q1.mode_x = static_cast<int>(parse_int(val, dotted, line));
            else if (key == "q1_mode_y") q1.mode_y = static_cast<int>(parse_int(val, dotted, line));
            else if (key == "q1_mode_z") q1.mode_z = static_cast<int>(parse_int(val, dotted, line));
            else if (key == "q2_preset") q2.preset = parse_preset(val, dotted, line);
            else if (key == "q2_amplitude") q2.amplitude = parse_double(val, dotted, line);
            else if (key == "q2_mode_x") q2.mode_x = static_cast<int>(parse_int(val, dotted, line));
            else if (key == "q2_mode_y") q2.mode_y = static_cast<int>(parse_int(val, dotted, line));
            else if (key == "q2_mode_z") q2.mode_z = static_cast<int>(parse_int(val, dotted, line));
            else throw UnknownKey(dotted, line);
        } else if (section == "stepping") {
            StepConfig& st = c.stepping;
            if (key == "dt") st.dt = parse_double(val, dotted, line);
            else if (key == "t_end") st.t_end = parse_double(val, dotted, line);
            else if (key == "theta_scheme") st.theta = parse_double(val, dotted, line);
            else if (key == "cfl_max") st.cfl_max = parse_double(val, dotted, line);
            else if (key == "snapshot_every")
                st.snapshot_every = static_cast<int>(parse_int(val, dotted, line));
            else throw UnknownKey(dotted, line);
        } else if (section == "output") {
            if (key == "directory") c.output.directory = val;
            else if (key == "energy") c.output.energy = parse_bool(val, dotted, line);
            else if (key == "snapshots")
                c.output.snapshots = parse_bool(val, dotted, line);
            else throw UnknownKey(dotted, line);
        } else { // experiment
            if (key == "name") c.experiment = val;
            else throw UnknownKey(dotted, line);
        }
    }

    // range validation with dotted key names
    if (c.nx < 4) throw OutOfRange("grid.Nx", "need at least 4 cells");
    if (c.ny < 4) throw OutOfRange("grid.Ny", "need at least 4 cells");
    if (c.nz < 4) throw OutOfRange("grid.Nz", "need at least 4 cells");
    if (!(c.lx > 0.0)) throw OutOfRange("grid.Lx", "must be positive");
    if (!(c.ly > 0.0)) throw OutOfRange("grid.Ly", "must be positive");
    c.params.validate();
    c.stepping.validate();
    return c;
}

std::string serialize_config(const RunConfig& c) {
    std::string out;
    out += "seed = " + std::to_string(c.seed) + "\n";
    out += "\n[grid]\n";
    out += "Nx = " + std::to_string(c.nx) + "\n";
    out += "Ny = " + std::to_string(c.ny) + "\n";
    out += "Nz = " + std::to_string(c.nz) + "\n";
    out += "Lx = " + fmt(c.lx) + "\n";
    out += "Ly = " + fmt(c.ly) + "\n";
    const PhysParams& p = c.params;
    out += "\n[params]\n";
    out += "Re1 = " + fmt(p.re1) + "\n";
    out += "Re2 = " + fmt(p.re2) + "\n";
    out += "Rt1 = " + fmt(p.rt1) + "\n";
    out += "Rt2 = " + fmt(p.rt2) + "\n";
    out += "Rt3 = " + fmt(p.rt3) + "\n";
    out += "Rt4 = " + fmt(p.rt4) + "\n";
    out += "Ro = " + fmt(p.ro) + "\n";
    out += "f = " + fmt(p.f) + "\n";
    out += "a = " + fmt(p.a) + "\n";
    out += "b = " + fmt(p.b) + "\n";
    out += "P = " + fmt(p.p_surface) + "\n";
    out += "p0 = " + fmt(p.p_top) + "\n";
    out += "alpha = " + fmt(p.alpha) + "\n";
    out += "beta = " + fmt(p.beta) + "\n";
    out += "\n[forcing]\n";
    out += std::string("q1_preset = ") + preset_name(p.q1.preset) + "\n";
    out += "q1_amplitude = " + fmt(p.q1.amplitude) + "\n";
    out += "q1_mode_x = " + std::to_string(p.q1.mode_x) + "\n";
    out += "q1_mode_y = " + std::to_string(p.q1.mode_y) + "\n";
    out += "q1_mode_z = " + std::to_string(p.q1.mode_z) + "\n";
    out += std::string("q2_preset = ") + preset_name(p.q2.preset) + "\n";
    out += "q2_amplitude = " + fmt(p.q2.amplitude) + "\n";
    out += "q2_mode_x = " + std::to_string(p.q2.mode_x) + "\n";
    out += "q2_mode_y = " + std::to_string(p.q2.mode_y) + "\n";
    out += "q2_mode_z = " + std::to_string(p.q2.mode_z) + "\n";
    out += "\n[stepping]\n";
    out += "dt = " + fmt(c.stepping.dt) + "\n";
    out += "t_end = " + fmt(c.stepping.t_end) + "\n";
    out += "theta_scheme = " + fmt(c.stepping.theta) + "\n";
    out += "cfl_max = " + fmt(c.stepping.cfl_max) + "\n";
    out += "snapshot_every = " + std::to_string(c.stepping.snapshot_every) + "\n";
    out += "\n[output]\n";
    out += "directory = " + c.output.directory + "\n";
    out += std::string("energy = ") + (c.output.energy ? "true" : "false") + "\n";
    out += std::string("snapshots = ") + (c.output.snapshots ? "true" : "false") + "\n";
    out += "\n[experiment]\n";
    out += "name = " + c.experiment + "\n";
    return out;
}

std::uint64_t fingerprint(const RunConfig& c) {
    const std::string s = serialize_config(c);
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string fingerprint_hex(const RunConfig& c) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fingerprint(c)));
    return buf;
}

} // namespace mpe
