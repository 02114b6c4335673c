#pragma once

#include <string>
#include <vector>

#include "mpe/field.hpp"
#include "mpe/grid.hpp"
#include "mpe/params.hpp"
#include "mpe/state.hpp"

namespace mpe {

/**
 * Every monitored norm and balance residual at one snapshot time. One report
 * serializes to one CSV row; the column order is fixed by csv_header() and
 * the time-derivative entries print as "nan" when no previous snapshot was
 * supplied (has_rates false).
 *
 * Conventions: v2_* are squared V-norms (Dirichlet forms weighted by the
 * diffusion coefficients plus the Robin boundary terms); gradients are
 * horizontal; l2_vz/l6_vz and l6_vtilde take the Euclidean magnitude of the
 * velocity pair pointwise.
 */
struct EnergyReport {
    double time = 0.0;

    double l2_v = 0.0, l2_T = 0.0, l2_q = 0.0, l2_H = 0.0;
    double v2_v = 0.0, v2_T = 0.0, v2_q = 0.0, v2_total = 0.0;
    double l6_q = 0.0, l6_T = 0.0, l6_vtilde = 0.0;
    double l6_vz = 0.0, l6_Tz = 0.0, l6_qz = 0.0;
    double l2_vz = 0.0, l2_Tz = 0.0, l2_qz = 0.0;
    double bnd_l2_q = 0.0, bnd_l2_T = 0.0, bnd_l6_q = 0.0, bnd_l6_T = 0.0;
    double l2_grad_v = 0.0, l2_grad_T = 0.0, l2_grad_q = 0.0, l2_grad_vbar = 0.0;
    double h2_l1v = 0.0, h2_l2T = 0.0, h2_l3q = 0.0;
    double l2_vt = 0.0, l2_Tt = 0.0, l2_qt = 0.0;
    double r_q = 0.0, r_vT = 0.0;
    double slack_poincare_q = 0.0, slack_poincare_vT = 0.0;
    double ip_q1_T = 0.0, ip_q2_q = 0.0;

    bool has_rates = false;

    static std::string csv_header();
    std::string csv_row() const;
};

/// Squared V-norms; these equal the quadratic forms of the diffusion
/// operators exactly, which is what makes the balance residuals sharp.
double vnorm_sq_v(const Field3D& v1, const Field3D& v2, const PhysParams& p,
                  const Grid& g);
double vnorm_sq_T(const Field3D& T, const PhysParams& p, const Grid& g);
double vnorm_sq_q(const Field3D& q, const PhysParams& p, const Grid& g);

/// Discrete Poincare constants: l2^2 <= constant * vnorm_sq, exact for the
/// trapezoid/forward-difference pairing (no h^2 slack).
double poincare_const_q(const PhysParams& p, const Grid& g);
double poincare_const_vT(const PhysParams& p, const Grid& g);

/// Whole-state norms over (v1, v2, T, q): the weak (L2) and strong (V) ones.
double state_norm_h(const State& s, const Grid& g);
double state_norm_v(const State& s, const PhysParams& p, const Grid& g);

/**
 * Build the full report. s_prev (one snapshot earlier) enables the
 * finite-difference time-derivative norms and the balance residuals r_q and
 * r_vT; q1/q2 may pass pre-materialized forcing fields, otherwise they are
 * built from p. Ghosts of s are refreshed internally; physical values are
 * never modified.
 */
EnergyReport report(const State& s, const State* s_prev, const PhysParams& p,
                    const Grid& g, const Field3D* q1 = nullptr,
                    const Field3D* q2 = nullptr);

/// Centered-difference residual series of the moisture balance
/// d/dt (1/2 |q|^2) + |q|_V^2 = <Q2, q>. Needs uniformly spaced reports;
/// entries exist for interior snapshots only (fewer than 3 -> empty).
std::vector<double> check_q_balance(const std::vector<EnergyReport>& history,
                                    double dt_between);

/// Relative defect of the buoyancy-work cancellation: the vertical integral
/// by parts that trades <buoyancy_gradient, v> against the thermodynamic
/// coupling term tested with T. Exact up to round-off when the barotropic
/// constraint holds; grows linearly with its violation.
double check_buoyancy_identity(const State& s, const PhysParams& p, const Grid& g);

/// Tendency-based cross-check of the time-derivative norms (|dv/dt|_2,
/// |dT/dt|_2, |dq/dt|_2 from the assembled right-hand side instead of
/// snapshot differencing). The surface-potential gradient is not included.
void tendency_rate_norms(const State& s, const PhysParams& p, const Grid& g,
                         double& vt, double& Tt, double& qt);

} // namespace mpe
