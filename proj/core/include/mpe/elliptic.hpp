#pragma once

#include "mpe/field.hpp"
#include "mpe/grid.hpp"

namespace mpe {

/// Settings and telemetry for the surface-potential solve.
struct EllipticSolve {
    double tolerance = 1e-8; // relative residual target
    int max_iter = 0;        // 0: 10 * ceil(sqrt(Nx*Ny))
    double last_residual = 0.0;
    int last_iters = 0;
};

/// One application of the constraint-side Poisson operator
/// -div_c(grad_c(phi)), symmetric positive semidefinite in the trapezoid
/// inner product. Exposed for solver tests.
Field2D constraint_laplacian(const Field2D& phi, const Grid& g);

/**
 * Pressure-style projection enforcing the barotropic constraint. Solves
 * -div_c(grad_c(phi)) = -(1/dt) div_c(vbar) by conjugate gradients in the
 * trapezoid inner product, then corrects v <- v - dt*grad_c(phi) with the
 * same 2D correction at every level (bitwise identical across z).
 *
 * post: the vertical average of the corrected velocity satisfies
 * |div_c(vbar)|_W <= tolerance * |rhs|_W; phi has zero weighted mean; wall
 * values of v are untouched (the constraint gradient has zero wall rows).
 * A right-hand side at or below the round-off floor of div_c (in particular
 * an exactly zero one, or a re-projection) returns immediately with phi = 0
 * and v unchanged bitwise. Throws NonConvergence past the iteration cap.
 */
Field2D project(Field3D& v1, Field3D& v2, double dt, const Grid& g, EllipticSolve& es);

} // namespace mpe
