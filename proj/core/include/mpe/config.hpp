#pragma once

#include <cstdint>
#include <string>

#include "mpe/grid.hpp"
#include "mpe/params.hpp"
#include "mpe/stepper.hpp"

namespace mpe {

struct OutputConfig {
    std::string directory = "out";
    bool energy = true;
    bool snapshots = false;

    bool operator==(const OutputConfig&) const = default;
};

/**
 * Full declarative run description, parsed from INI-style text. Every key
 * has a default, so the empty string is a valid config; unknown keys or
 * sections are hard errors carrying the line number.
 */
struct RunConfig {
    int nx = 8, ny = 8, nz = 8;
    double lx = 1.0, ly = 1.0;
    PhysParams params;
    StepConfig stepping;
    OutputConfig output;
    std::uint64_t seed = 0;
    std::string experiment; // optional experiment name

    Grid grid() const { return Grid::make(nx, ny, nz, lx, ly); }

    bool operator==(const RunConfig&) const = default;
};

/// Parse and validate. Throws UnknownKey (with line), MissingKey, OutOfRange
/// (with the dotted key name), or ConfigError for malformed lines.
RunConfig parse_config(const std::string& text);

/// Canonical serialization: fixed section order, fixed key order, doubles
/// printed with 17 significant digits. parse_config(serialize_config(c))
/// reproduces c exactly.
std::string serialize_config(const RunConfig& c);

/// FNV-1a 64-bit hash of the canonical serialization; platform-independent.
std::uint64_t fingerprint(const RunConfig& c);
std::string fingerprint_hex(const RunConfig& c);

} // namespace mpe
