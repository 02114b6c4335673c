#pragma once

#include "mpe/field.hpp"
#include "mpe/grid.hpp"
#include "mpe/params.hpp"
#include "mpe/state.hpp"

namespace mpe {

/// Right-hand-side tendencies of the prognostic fields, excluding the
/// surface-potential gradient (applied by the projection).
struct Tendency {
    Field3D dv1, dv2, dT, dq;
    Tendency() = default;
    explicit Tendency(const Grid& g)
        : dv1(g.nx, g.ny, g.nz), dv2(g.nx, g.ny, g.nz), dT(g.nx, g.ny, g.nz),
          dq(g.nx, g.ny, g.nz) {}
};

/// out = -ch * (d2/dx2 + d2/dy2) f - cv * d2/dz2 f, centered stencils that
/// read the ghost layer. Caller must have filled ghosts for f's field kind.
void anisotropic_laplacian(const Field3D& f, double ch, double cv, const Grid& g,
                           Field3D& out);

/// Viscosity operator on the velocity pair: -(1/Re1) Dh - (1/Re2) dzz.
/// Ghosts must be filled. Sign as defined, so the tendency subtracts it.
void diffusion_L1(const Field3D& v1, const Field3D& v2, const PhysParams& p,
                  const Grid& g, Field3D& out1, Field3D& out2);
/// Heat diffusion -(1/Rt1) Dh - (1/Rt2) dzz.
Field3D diffusion_L2(const Field3D& T, const PhysParams& p, const Grid& g);
/// Moisture diffusion -(1/Rt3) Dh - (1/Rt4) dzz.
Field3D diffusion_L3(const Field3D& q, const PhysParams& p, const Grid& g);

/// v . grad c with the transport stencils (one-sided at walls, no ghosts).
Field3D advect_horizontal(const Field3D& c, const Field3D& v1, const Field3D& v2,
                          const Grid& g);
/// w dc/dz, centered interior, one-sided at z = 0 and z = 1.
Field3D advect_vertical(const Field3D& c, const Field3D& w, const Grid& g);

/// (f/Ro) (-v2, v1); pointwise orthogonal to (v1, v2), so it does no work.
void coriolis(const Field3D& v1, const Field3D& v2, const PhysParams& p, Field3D& out1,
              Field3D& out2);

/// Integral from 0 to z of (bP/p) grad_h[(1 + a q) T]; enters the v-tendency
/// with a plus sign. The gradient is taken level by level before the
/// cumulative integral, so it commutes with the quadrature and the discrete
/// buoyancy-work identity closes against thermo_source.
void buoyancy_gradient(const State& s, const PhysParams& p, const Grid& g, Field3D& out1,
                       Field3D& out2);

/// (bP/p)(1 + a q) * (integral of div v from 0 to z) = -(bP/p)(1 + a q) w.
/// This is the term as it stands on the left side of the heat equation; the
/// tendency subtracts it.
Field3D thermo_source(const State& s, const Field3D& w, const PhysParams& p,
                      const Grid& g);

/// Everything the semi-implicit scheme treats explicitly: transport,
/// Coriolis, buoyancy, thermodynamic coupling, forcing. No diffusion.
/// w is the diagnosed vertical velocity of s; q1/q2 the materialized forcing.
Tendency assemble_explicit(const State& s, const PhysParams& p, const Grid& g,
                           const Field3D& w, const Field3D& q1, const Field3D& q2);

/**
 * Full tendency: transport, Coriolis, buoyancy, thermodynamic coupling,
 * diffusion, forcing. Boundary conditions must be applied to s beforehand.
 * w_pre may pass a precomputed vertical velocity; q1_field/q2_field may pass
 * prebuilt forcing fields (otherwise they are built from p.q1/p.q2).
 */
Tendency assemble_tendency(const State& s, const PhysParams& p, const Grid& g,
                           const Field3D* w_pre = nullptr,
                           const Field3D* q1_field = nullptr,
                           const Field3D* q2_field = nullptr);

} // namespace mpe
