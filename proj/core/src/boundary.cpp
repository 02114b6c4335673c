#include "mpe/boundary.hpp"

#include <algorithm>
#include <cmath>

namespace mpe {

namespace {

// Robin coefficient of the top-ghost formula: ghost = f[nz-1] - c * f[nz].
// Derived from (1/k) df/dz + r f = 0 discretized with the centered
// difference across z = 1.
double robin_ghost_coeff(FieldKind kind, const PhysParams& p, const Grid& g) {
    switch (kind) {
    case FieldKind::Temperature: return 2.0 * g.hz * p.alpha * p.rt2;
    case FieldKind::Moisture: return 2.0 * g.hz * p.beta * p.rt4;
    default: return 0.0; // velocities are Neumann at z = 1
    }
}

} // namespace

void pin_dirichlet_walls(Field3D& f, FieldKind kind, const Grid& g) {
    if (kind == FieldKind::VelocityX) {
        for (int k = 0; k <= g.nz; ++k)
            for (int j = 0; j <= g.ny; ++j) {
                f(0, j, k) = 0.0;
                f(g.nx, j, k) = 0.0;
            }
    } else if (kind == FieldKind::VelocityY) {
        for (int k = 0; k <= g.nz; ++k)
            for (int i = 0; i <= g.nx; ++i) {
                f(i, 0, k) = 0.0;
                f(i, g.ny, k) = 0.0;
            }
    }
}

void fill_ghosts(Field3D& f, FieldKind kind, const PhysParams& p, const Grid& g) {
    const int nx = g.nx, ny = g.ny, nz = g.nz;

    // x ghosts: odd reflection about a Dirichlet wall (wall value is zero),
    // even reflection for the tangential/scalar fields (zero normal
    // derivative).
    const bool odd_x = (kind == FieldKind::VelocityX);
    for (int k = 0; k <= nz; ++k)
        for (int j = 0; j <= ny; ++j) {
            f(-1, j, k) = odd_x ? -f(1, j, k) : f(1, j, k);
            f(nx + 1, j, k) = odd_x ? -f(nx - 1, j, k) : f(nx - 1, j, k);
        }

    const bool odd_y = (kind == FieldKind::VelocityY);
    for (int k = 0; k <= nz; ++k)
        for (int i = 0; i <= nx; ++i) {
            f(i, -1, k) = odd_y ? -f(i, 1, k) : f(i, 1, k);
            f(i, ny + 1, k) = odd_y ? -f(i, ny - 1, k) : f(i, ny - 1, k);
        }

    // z ghosts: even at the bottom for every field; at the top either even
    // (velocities) or the Robin elimination (T, q).
    const double c = robin_ghost_coeff(kind, p, g);
    for (int j = 0; j <= ny; ++j)
        for (int i = 0; i <= nx; ++i) {
            f(i, j, -1) = f(i, j, 1);
            f(i, j, nz + 1) = f(i, j, nz - 1) - c * f(i, j, nz);
        }
}

void apply_boundary_conditions(State& s, const PhysParams& p, const Grid& g) {
    pin_dirichlet_walls(s.v1, FieldKind::VelocityX, g);
    pin_dirichlet_walls(s.v2, FieldKind::VelocityY, g);
    fill_ghosts(s.v1, FieldKind::VelocityX, p, g);
    fill_ghosts(s.v2, FieldKind::VelocityY, p, g);
    fill_ghosts(s.T, FieldKind::Temperature, p, g);
    fill_ghosts(s.q, FieldKind::Moisture, p, g);
}

double bc_residual(const Field3D& f, FieldKind kind, const PhysParams& p, const Grid& g) {
    const int nx = g.nx, ny = g.ny, nz = g.nz;
    double r = 0.0;
    auto up = [&](double v) { r = std::max(r, std::fabs(v)); };

    if (kind == FieldKind::VelocityX) {
        for (int k = 0; k <= nz; ++k)
            for (int j = 0; j <= ny; ++j) {
                up(f(0, j, k));
                up(f(nx, j, k));
            }
    } else {
        for (int k = 0; k <= nz; ++k)
            for (int j = 0; j <= ny; ++j) {
                up((f(1, j, k) - f(-1, j, k)) / (2.0 * g.hx));
                up((f(nx + 1, j, k) - f(nx - 1, j, k)) / (2.0 * g.hx));
            }
    }

    if (kind == FieldKind::VelocityY) {
        for (int k = 0; k <= nz; ++k)
            for (int i = 0; i <= nx; ++i) {
                up(f(i, 0, k));
                up(f(i, ny, k));
            }
    } else {
        for (int k = 0; k <= nz; ++k)
            for (int i = 0; i <= nx; ++i) {
                up((f(i, 1, k) - f(i, -1, k)) / (2.0 * g.hy));
                up((f(i, ny + 1, k) - f(i, ny - 1, k)) / (2.0 * g.hy));
            }
    }

    // bottom: d/dz = 0 for every field
    for (int j = 0; j <= ny; ++j)
        for (int i = 0; i <= nx; ++i)
            up((f(i, j, 1) - f(i, j, -1)) / (2.0 * g.hz));

    // top: Neumann for velocities, Robin for T and q
    const bool robin = (kind == FieldKind::Temperature || kind == FieldKind::Moisture);
    const double k_inv = (kind == FieldKind::Temperature) ? 1.0 / p.rt2
                       : (kind == FieldKind::Moisture)    ? 1.0 / p.rt4
                                                          : 1.0;
    const double coef = (kind == FieldKind::Temperature) ? p.alpha
                      : (kind == FieldKind::Moisture)    ? p.beta
                                                         : 0.0;
    for (int j = 0; j <= ny; ++j)
        for (int i = 0; i <= nx; ++i) {
            double dz = (f(i, j, nz + 1) - f(i, j, nz - 1)) / (2.0 * g.hz);
            up(robin ? k_inv * dz + coef * f(i, j, nz) : dz);
        }
    return r;
}

double bc_residual_one_sided(const Field3D& f, FieldKind kind, const PhysParams& p,
                             const Grid& g) {
    const int nx = g.nx, ny = g.ny, nz = g.nz;
    double r = 0.0;
    auto up = [&](double v) { r = std::max(r, std::fabs(v)); };

    auto dlo = [](double f0, double f1, double f2, double h) {
        return (-3.0 * f0 + 4.0 * f1 - f2) / (2.0 * h);
    };
    auto dhi = [](double fn, double fn1, double fn2, double h) {
        return (3.0 * fn - 4.0 * fn1 + fn2) / (2.0 * h);
    };

    if (kind == FieldKind::VelocityX) {
        for (int k = 0; k <= nz; ++k)
            for (int j = 0; j <= ny; ++j) {
                up(f(0, j, k));
                up(f(nx, j, k));
            }
    } else {
        for (int k = 0; k <= nz; ++k)
            for (int j = 0; j <= ny; ++j) {
                up(dlo(f(0, j, k), f(1, j, k), f(2, j, k), g.hx));
                up(dhi(f(nx, j, k), f(nx - 1, j, k), f(nx - 2, j, k), g.hx));
            }
    }

    if (kind == FieldKind::VelocityY) {
        for (int k = 0; k <= nz; ++k)
            for (int i = 0; i <= nx; ++i) {
                up(f(i, 0, k));
                up(f(i, ny, k));
            }
    } else {
        for (int k = 0; k <= nz; ++k)
            for (int i = 0; i <= nx; ++i) {
                up(dlo(f(i, 0, k), f(i, 1, k), f(i, 2, k), g.hy));
                up(dhi(f(i, ny, k), f(i, ny - 1, k), f(i, ny - 2, k), g.hy));
            }
    }

    for (int j = 0; j <= ny; ++j)
        for (int i = 0; i <= nx; ++i)
            up(dlo(f(i, j, 0), f(i, j, 1), f(i, j, 2), g.hz));

    const bool robin = (kind == FieldKind::Temperature || kind == FieldKind::Moisture);
    const double k_inv = (kind == FieldKind::Temperature) ? 1.0 / p.rt2
                       : (kind == FieldKind::Moisture)    ? 1.0 / p.rt4
                                                          : 1.0;
    const double coef = (kind == FieldKind::Temperature) ? p.alpha
                      : (kind == FieldKind::Moisture)    ? p.beta
                                                         : 0.0;
    for (int j = 0; j <= ny; ++j)
        for (int i = 0; i <= nx; ++i) {
            double dz = dhi(f(i, j, nz), f(i, j, nz - 1), f(i, j, nz - 2), g.hz);
            up(robin ? k_inv * dz + coef * f(i, j, nz) : dz);
        }
    return r;
}

} // namespace mpe
