#pragma once

#include <stdexcept>
#include <string>

namespace mpe {

// Numerical aborts. Callers that run simulations convert these into exit
// code 4; config problems map to exit code 1.

struct NonConvergence : std::runtime_error {
    double residual;
    int iterations;
    NonConvergence(const std::string& what, double res, int iters)
        : std::runtime_error(what), residual(res), iterations(iters) {}
};

struct CflViolation : std::runtime_error {
    double cfl;
    double time;
    CflViolation(double cfl_, double t)
        : std::runtime_error("CFL violation: dt*max(|v1|/hx+|v2|/hy+|w|/hz) = " +
                             std::to_string(cfl_) + " at t = " + std::to_string(t) +
                             "; reduce dt"),
          cfl(cfl_), time(t) {}
};

struct NonFiniteState : std::runtime_error {
    double time;
    NonFiniteState(const std::string& field, double t)
        : std::runtime_error("non-finite value in field " + field + " at t = " +
                             std::to_string(t)),
          time(t) {}
};

// Config / IO errors carry enough context to point at the offending line.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnknownKey : ConfigError {
    UnknownKey(const std::string& key, int line)
        : ConfigError("unknown key '" + key + "' (line " + std::to_string(line) + ")") {}
};
struct MissingKey : ConfigError {
    explicit MissingKey(const std::string& key)
        : ConfigError("missing required key '" + key + "'") {}
};
struct OutOfRange : ConfigError {
    OutOfRange(const std::string& key, const std::string& why)
        : ConfigError("value out of range for '" + key + "': " + why) {}
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct VersionError : IoError {
    explicit VersionError(const std::string& what) : IoError(what) {}
};

// Covering diagnostics.
struct DegeneratePair : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct CoverageFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InsufficientScales : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace mpe
