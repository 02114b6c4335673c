#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mpe/config.hpp"
#include "mpe/state.hpp"

namespace mpe {

enum class Verdict { Pass, Fail, Inconclusive };

const char* verdict_name(Verdict v);
/// process exit code contract: 0 pass, 2 fail, 3 inconclusive
int verdict_exit_code(Verdict v);

/**
 * Outcome of one experiment: verdict, fitted constants (insertion-ordered,
 * so output is deterministic), and the time-series payload that backs them.
 * fingerprint identifies the generating config.
 */
struct ExperimentResult {
    std::string name;
    Verdict verdict = Verdict::Inconclusive;
    std::string detail;
    std::string fingerprint;
    std::vector<std::pair<std::string, double>> constants;
    std::string series_header;
    std::vector<std::vector<double>> series_rows;

    void add(const std::string& key, double value) { constants.emplace_back(key, value); }
};

/// Write <dir>/<name>.txt (key = value manifest) and <dir>/<name>.csv.
void write_result(const ExperimentResult& r, const std::string& dir);

/// Cap on concurrent ensemble members (1 = strictly serial). Aggregation is
/// always in member order, so results do not depend on this setting.
void set_ensemble_threads(int n);

/**
 * Moisture decay: with Q2 = 0 the squared L2 norm of q decays at least at
 * the closed-form rate 1/(2 Rt4 + 2/beta). Runs a q-only state from the
 * config seed, fits the log-norm slope over the trailing half, passes if the
 * fitted rate beats 90% of the closed-form one. Fit R^2 < 0.95 is
 * Inconclusive; an identically zero q passes trivially.
 */
ExperimentResult exp_q_decay(const RunConfig& c);

/**
 * Absorbing behavior: three initial states with V-norms in ratio 1:2:4 run
 * under the same fixed forcing. Each member's entry time tau2 is the first
 * time its V and H2-surrogate norms stay within 5% of their tail medians for
 * one time unit. Passes if every member enters before the tail window (the
 * last max(2, t_end/4) time units) and the tail suprema of both norms agree
 * within 20% across members; non-entry is Inconclusive.
 */
ExperimentResult exp_absorbing_ball(const RunConfig& c);

/**
 * Smoothing: after a shared warmup to the statistically steady regime, the
 * state is perturbed in the H norm by eps in {1e-3, 1e-4, 1e-5} along a
 * fixed random direction and the quotient |diff(1)|_V / |diff(0)|_H is
 * recorded. Passes if the quotients are finite and spread at most 25%.
 */
ExperimentResult exp_smoothing(const RunConfig& c);

/**
 * Time regularity: Lipschitz-in-time quotient |S(t')s - S(t)s|_V / |t' - t|
 * maximized over consecutive tail snapshots, measured at dt and dt/2 from
 * the same warmed-up state. Passes if the two quotients agree within 15%
 * (or both vanish against a 1e-9 scale floor, the steady case).
 */
ExperimentResult exp_time_regularity(const RunConfig& c);

/**
 * Manufactured-solution convergence ladder. Spatial: 8/16/32 cubed with
 * dt scaled as h^2 so the time error refines in lockstep; temporal: fixed
 * 16^3 grid, dt halvings against a dt/32 reference on the same grid (the
 * spatial error cancels in the comparison). Passes at spatial order >= 1.8
 * and temporal order >= 0.9 (minimum over ladder pairs).
 */
ExperimentResult exp_manufactured(const RunConfig& c);

/// Dispatch by name: decay | absorbing | smoothing | time_regularity | mms.
ExperimentResult run_experiment(const std::string& name, const RunConfig& c);

} // namespace mpe
