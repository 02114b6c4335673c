#pragma once

#include <stdexcept>

namespace mpe {

/**
 * Uniform node-centered grid on the box (0,Lx) x (0,Ly) x (0,1).
 *
 * nx, ny, nz count cells; nodes run 0..nx (etc.), so a field holds
 * (nx+1)(ny+1)(nz+1) values. The vertical extent is fixed to 1 by the
 * nondimensionalization, hz = 1/nz.
 */
struct Grid {
    int nx = 0, ny = 0, nz = 0;
    double lx = 1.0, ly = 1.0;
    double hx = 0.0, hy = 0.0, hz = 0.0;

    static Grid make(int nx, int ny, int nz, double lx, double ly) {
        if (nx < 4 || ny < 4 || nz < 4)
            throw std::invalid_argument("grid: need at least 4 cells per direction");
        if (!(lx > 0.0) || !(ly > 0.0))
            throw std::invalid_argument("grid: extents must be positive");
        Grid g;
        g.nx = nx; g.ny = ny; g.nz = nz;
        g.lx = lx; g.ly = ly;
        g.hx = lx / nx; g.hy = ly / ny; g.hz = 1.0 / nz;
        return g;
    }

    double x(int i) const { return hx * i; }
    double y(int j) const { return hy * j; }
    double z(int k) const { return hz * k; }

    // node counts per direction
    int npx() const { return nx + 1; }
    int npy() const { return ny + 1; }
    int npz() const { return nz + 1; }
    long nodes() const { return 1L * npx() * npy() * npz(); }

    // trapezoid quadrature weight of a node index along a direction with n cells
    static double edge_weight(int i, int n) { return (i == 0 || i == n) ? 0.5 : 1.0; }
    double wx(int i) const { return hx * edge_weight(i, nx); }
    double wy(int j) const { return hy * edge_weight(j, ny); }
    double wz(int k) const { return hz * edge_weight(k, nz); }
    double volume() const { return lx * ly; } // |M x (0,1)|
};

} // namespace mpe
