#pragma once

#include "mpe/field.hpp"
#include "mpe/grid.hpp"
#include "mpe/params.hpp"
#include "mpe/state.hpp"

namespace mpe {

/**
 * Boundary handling for the four prognostic fields.
 *
 * Conditions:
 *   v1:  v1 = 0 on the x-walls, free slip elsewhere (d/dy = 0 on y-walls,
 *        d/dz = 0 at z = 0 and z = 1)
 *   v2:  mirror image of v1 (Dirichlet on y-walls)
 *   T:   d/dn = 0 on all lateral walls and at z = 0;
 *        Robin (1/Rt2) dT/dz + alpha T = 0 at z = 1
 *   q:   same as T with Rt4, beta
 *
 * All conditions are realized through the one-node ghost layer so that the
 * centered second-order stencil evaluated at a boundary node has zero
 * residual exactly. Physical values are touched only where a Dirichlet
 * condition pins them (the normal velocity on its walls).
 */
enum class FieldKind { VelocityX, VelocityY, Temperature, Moisture };

/// Set the ghost layer of f for its boundary conditions. Ghost values are
/// pure functions of the physical values, so a second call is a no-op
/// bit for bit. Does not modify physical nodes.
void fill_ghosts(Field3D& f, FieldKind kind, const PhysParams& p, const Grid& g);

/// Pin the Dirichlet walls of the velocity components to zero. Ghosts
/// untouched.
void pin_dirichlet_walls(Field3D& f, FieldKind kind, const Grid& g);

/// Pin Dirichlet walls of v1/v2 and fill all four ghost layers. Idempotent
/// bitwise; fields already satisfying the conditions pass through unchanged.
void apply_boundary_conditions(State& s, const PhysParams& p, const Grid& g);

/// Largest absolute residual of the boundary conditions measured with the
/// centered stencils that read the ghost layer. Zero (up to round-off in the
/// Robin row) after apply_boundary_conditions.
double bc_residual(const Field3D& f, FieldKind kind, const PhysParams& p, const Grid& g);

/// Largest absolute residual measured with one-sided three-point stencils
/// that never read ghosts. O(h^2) for fields satisfying the conditions
/// analytically; a diagnostic, not an enforcement target.
double bc_residual_one_sided(const Field3D& f, FieldKind kind, const PhysParams& p,
                             const Grid& g);

} // namespace mpe
