#pragma once

#include "mpe/field.hpp"
#include "mpe/grid.hpp"
#include "mpe/params.hpp"
#include "mpe/state.hpp"

namespace mpe {

/// Derived quantities reconstructed from a State: vertical velocity,
/// geopotential, and the column-average / fluctuation split of the
/// horizontal velocity.
struct Diagnostics {
    Field3D w;
    Field3D phi;
    VectorField2D v_bar;
    VectorField v_tilde;
};

/// w(x,y,z) = -integral of the horizontal divergence from 0 to z. Zero at
/// the bottom by construction; at the top it telescopes to the divergence of
/// the column average, so the projection tolerance bounds it directly.
Field3D diagnose_w(const State& s, const Grid& g);

/// phi(x,y,z) = phi_s(x,y) - integral of (bP/p)(1 + a q) T from 0 to z.
Field3D diagnose_phi(const State& s, const Field2D& phi_s, const PhysParams& p,
                     const Grid& g);

/// Column average and fluctuation of (v1, v2). The fluctuation is the
/// pointwise remainder, so adding the average back reproduces the input.
void split_barotropic(const State& s, const Grid& g, VectorField2D& v_bar,
                      VectorField& v_tilde);

Diagnostics diagnose(const State& s, const Field2D& phi_s, const PhysParams& p,
                     const Grid& g);

} // namespace mpe
