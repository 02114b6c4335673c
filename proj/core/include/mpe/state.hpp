#pragma once

#include "mpe/errors.hpp"
#include "mpe/field.hpp"
#include "mpe/grid.hpp"

namespace mpe {

/// Prognostic state (v1, v2, T, q) at a time level.
struct State {
    Field3D v1, v2, T, q;
    double time = 0.0;

    State() = default;
    explicit State(const Grid& g)
        : v1(g.nx, g.ny, g.nz), v2(g.nx, g.ny, g.nz),
          T(g.nx, g.ny, g.nz), q(g.nx, g.ny, g.nz) {}

    /// throws NonFiniteState naming the first offending field
    void require_finite() const {
        if (!v1.finite()) throw NonFiniteState("v1", time);
        if (!v2.finite()) throw NonFiniteState("v2", time);
        if (!T.finite()) throw NonFiniteState("T", time);
        if (!q.finite()) throw NonFiniteState("q", time);
    }
};

/// s += c * t over physical nodes, field-wise (ghosts untouched).
void axpy(State& s, double c, const State& t);

/// linear combination out = a*x + b*y over physical nodes
State lincomb(double a, const State& x, double b, const State& y);

} // namespace mpe
