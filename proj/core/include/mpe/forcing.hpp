#pragma once

#include <cstdint>

#include "mpe/field.hpp"
#include "mpe/grid.hpp"
#include "mpe/params.hpp"
#include "mpe/state.hpp"

namespace mpe {

/// Materialize a forcing preset on the grid nodes.
///  Zero:    identically zero, amplitude ignored.
///  Fourier: A cos(mx pi x/Lx) cos(my pi y/Ly) cos(mz pi z); every factor has
///           vanishing normal derivative at the walls it meets.
///  Bump:    A exp(-r^2/(2 sigma^2)) 16 z^2 (1-z)^2 centered in the horizontal
///           plane, sigma = min(Lx, Ly)/8; decays to ~0 at every boundary.
Field3D make_forcing_field(const ForcingSpec& spec, const Grid& g);

/// Positive root of r tan r = kappa in (0, pi/2). cos(r z) then satisfies the
/// z = 1 Robin condition d/dz + kappa and the z = 0 Neumann condition.
double robin_profile_root(double kappa);

/**
 * Smooth random state from low trigonometric modes with coefficients drawn
 * from mt19937_64(seed). Every mode satisfies the boundary conditions and has
 * zero discrete vertical mean for the velocity (the trapezoid rule annihilates
 * cos(m pi z) for m >= 1), so the barotropic constraint holds to round-off
 * without projection. amp_* bound the per-field magnitudes.
 */
State random_state(std::uint64_t seed, double amp_v, double amp_T, double amp_q,
                   const PhysParams& p, const Grid& g);

} // namespace mpe
