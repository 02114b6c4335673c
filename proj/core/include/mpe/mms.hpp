#pragma once

#include <vector>

#include "mpe/dynamics.hpp"
#include "mpe/grid.hpp"
#include "mpe/params.hpp"
#include "mpe/state.hpp"

namespace mpe {

/**
 * Manufactured solution for convergence measurement. The fields are smooth
 * trigonometric modes satisfying every boundary condition analytically:
 *
 *   v1 = Av1 sin(pi x/Lx) cos(pi y/Ly) cos(2 pi z) tau(t)
 *   v2 = Av2 cos(pi x/Lx) sin(pi y/Ly) cos(2 pi z) tau(t)
 *   T  = AT  cos(pi x/Lx) cos(pi y/Ly) cos(rT z)   tau(t)
 *   q  = Aq  cos(pi x/Lx) cos(pi y/Ly) cos(rq z)   tau(t)
 *
 * with tau(t) = 1 + 0.5 sin(freq t) and rT, rq the Robin profile roots. The
 * vertical mean of cos(2 pi z) vanishes discretely (trapezoid), so the
 * barotropic constraint holds without a surface-potential source. Source
 * terms are exact continuum expressions; the nonelementary pressure-profile
 * integrals they need are precomputed per z-node by high-order quadrature.
 */
class ManufacturedCase {
public:
    ManufacturedCase(const PhysParams& p, const Grid& g);

    double amp_v1 = 0.1, amp_v2 = 0.08, amp_T = 0.1, amp_q = 0.05;
    double freq = 1.3;

    /// exact prognostic fields at time t
    State exact_state(double t) const;
    /// exact vertical velocity at time t
    Field3D exact_w(double t) const;

    /// Stepper source hook: adds the manufactured sources at time t.
    void add_sources(double t, Tendency& tend) const;

    /// L2 errors of s against the exact solution at s.time.
    struct Errors {
        double v1, v2, T, q;
        double combined; // sqrt of the summed squares
    };
    Errors errors(const State& s) const;

    double robin_root_T() const { return r_T_; }
    double robin_root_q() const { return r_q_; }

private:
    double tau(double t) const;
    double dtau(double t) const;

    PhysParams p_;
    Grid g_;
    double r_T_ = 0.0, r_q_ = 0.0;
    // profile integrals at z-nodes: int_0^z bp(z') cos(rT z') dz' and
    // int_0^z bp(z') cos(rT z') cos(rq z') dz'
    std::vector<double> int_T_, int_Tq_;
};

} // namespace mpe
