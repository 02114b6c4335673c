#pragma once

#include <string>
#include <utility>

#include "mpe/grid.hpp"
#include "mpe/state.hpp"

namespace mpe {

/**
 * State serialization. Wire format: the magic line "MPE1", an ASCII header
 * (version, dims, extents, time with 17 significant digits, field names),
 * then the four prognostic fields as little-endian 64-bit floats over
 * physical nodes in x-fastest order. Round trips are bitwise exact.
 */
void save_snapshot(const State& s, const Grid& g, const std::string& path);

/// Throws VersionError on a wrong magic or version, IoError on anything
/// truncated or unreadable (message carries the path).
std::pair<State, Grid> load_snapshot(const std::string& path);

} // namespace mpe
