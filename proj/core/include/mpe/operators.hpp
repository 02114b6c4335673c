#pragma once

#include "mpe/field.hpp"
#include "mpe/grid.hpp"

namespace mpe {

// Trapezoid quadrature over the node grid. Every norm, inner product and
// integral in the library uses these weights, so discrete integration by
// parts and the energy identities close without extra quadrature terms.

double inner(const Field3D& a, const Field3D& b, const Grid& g);
double inner(const Field2D& a, const Field2D& b, const Grid& g);
double l2_norm(const Field3D& f, const Grid& g);
double l2_norm(const Field2D& f, const Grid& g);
double l6_norm(const Field3D& f, const Grid& g);
/// weighted mean over M of a surface field
double mean(const Field2D& f, const Grid& g);

/// L2 and L6 norms of the z = nz plane of a 3D field (integrals over the
/// upper boundary)
double boundary_l2_top(const Field3D& f, const Grid& g);
double boundary_l6_top(const Field3D& f, const Grid& g);

/// Trapezoid integral of f in z from 0 to the grid level k_upper.
Field2D vertical_integral(const Field3D& f, int k_upper, const Grid& g);
/// Integral over the full column; the vertical extent is 1, so this is also
/// the vertical average.
Field2D vertical_average(const Field3D& f, const Grid& g);
/// All partial integrals at once: out(i,j,k) = integral of f from 0 to z_k.
Field3D cumtrapz_z(const Field3D& f, const Grid& g);

// Centered second-order derivative stencils with one-sided three-point rows
// at the walls. These are the transport-side stencils (advection, diagnosed
// divergence input, report gradients); they never read ghosts.
Field3D ddx(const Field3D& f, const Grid& g);
Field3D ddy(const Field3D& f, const Grid& g);
Field3D ddz(const Field3D& f, const Grid& g);

/**
 * Constraint-side divergence/gradient pair on surface fields.
 *
 * grad_c is the centered gradient with zero rows on the walls normal to each
 * component (the surface potential satisfies a homogeneous Neumann
 * condition). div_c is its negative adjoint in the trapezoid inner product:
 *   inner(div_c(u), phi) = -inner(u, grad_c(phi))   for all u, phi, exactly.
 * Interior rows of div_c are the centered difference; wall rows degenerate
 * to the one-sided (u1 - u0)/h form once the normal component vanishes on
 * the wall, which boundary conditions guarantee for the velocity average.
 * The pairing makes -div_c(grad_c(.)) symmetric positive semidefinite, so
 * the projection solve can reach tight tolerances, and it transfers the
 * post-projection divergence bound to every diagnostic built from div_c.
 */
VectorField2D grad_c(const Field2D& phi, const Grid& g);
Field2D div_c(const VectorField2D& u, const Grid& g);

/// Same divergence applied level by level to a velocity pair; feeds the
/// vertical-velocity diagnosis.
Field3D div_c3(const Field3D& u, const Field3D& v, const Grid& g);

/**
 * Dirichlet forms: the quadratic forms of the diffusion operators,
 *   dirichlet_x(f) = sum over forward x-differences of (df/hx)^2 * volume
 * weighted with trapezoid weights in the transverse directions. They satisfy
 *   inner(L2 T, T) = (1/Rt1)(dir_x + dir_y) + (1/Rt2) dir_z
 *                    + alpha * boundary_l2_top(T)^2
 * exactly (summation by parts), which is how the V-norms are evaluated.
 */
double dirichlet_form_x(const Field3D& f, const Grid& g);
double dirichlet_form_y(const Field3D& f, const Grid& g);
double dirichlet_form_z(const Field3D& f, const Grid& g);

} // namespace mpe
