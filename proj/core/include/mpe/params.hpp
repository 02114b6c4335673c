#pragma once

#include <string>

#include "mpe/errors.hpp"

namespace mpe {

/// Forcing field specifier (heat source Q1, moisture source Q2).
struct ForcingSpec {
    enum class Preset { Zero, Fourier, Bump };
    Preset preset = Preset::Zero;
    double amplitude = 0.0;
    int mode_x = 1, mode_y = 1, mode_z = 1; // Fourier mode numbers

    bool operator==(const ForcingSpec&) const = default;
};

/**
 * Nondimensional physical parameters.
 *
 * re1/re2: horizontal/vertical eddy viscosities of the momentum operator,
 * rt1..rt4 the analogous heat/moisture diffusivities. ro is the Rossby
 * number, f the Coriolis parameter (2 cos theta0 at reference latitude).
 * Pressure runs linearly from p_top at z=0 to p_surface at z=1; a is the
 * moisture-buoyancy coupling, b the gas-law factor in the buoyancy profile
 * b*P/p. alpha/beta are the Robin coefficients of the z=1 heat/moisture
 * fluxes.
 */
struct PhysParams {
    double re1 = 1.0, re2 = 1.0;
    double rt1 = 1.0, rt2 = 1.0, rt3 = 1.0, rt4 = 1.0;
    double ro = 1.0;
    double f = 1.0;
    double a = 0.618;
    double b = 1.0;
    double p_surface = 2.0; // P
    double p_top = 1.0;     // p0
    double alpha = 1.0;
    double beta = 1.0;
    ForcingSpec q1, q2;

    bool operator==(const PhysParams&) const = default;

    double pressure(double z) const { return (p_surface - p_top) * z + p_top; }
    /// buoyancy profile b*P/p(z)
    double bp_over_p(double z) const { return b * p_surface / pressure(z); }

    void validate() const {
        auto pos = [](double v, const char* k) {
            if (!(v > 0.0)) throw OutOfRange(k, "must be positive");
        };
        pos(re1, "params.Re1"); pos(re2, "params.Re2");
        pos(rt1, "params.Rt1"); pos(rt2, "params.Rt2");
        pos(rt3, "params.Rt3"); pos(rt4, "params.Rt4");
        pos(ro, "params.Ro");
        pos(alpha, "params.alpha"); pos(beta, "params.beta");
        pos(p_top, "params.p0");
        if (!(p_surface > p_top))
            throw OutOfRange("params.P", "surface pressure must exceed p0");
        if (a < 0.0) throw OutOfRange("params.a", "must be nonnegative");
        if (b < 0.0) throw OutOfRange("params.b", "must be nonnegative");
    }
};

} // namespace mpe
