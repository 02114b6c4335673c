#include "mpe/operators.hpp"

#include <cmath>

namespace mpe {

double inner(const Field3D& a, const Field3D& b, const Grid& g) {
    double s = 0.0;
    for (int k = 0; k <= g.nz; ++k) {
        const double wk = g.wz(k);
        for (int j = 0; j <= g.ny; ++j) {
            const double wjk = g.wy(j) * wk;
            for (int i = 0; i <= g.nx; ++i)
                s += g.wx(i) * wjk * a(i, j, k) * b(i, j, k);
        }
    }
    return s;
}

double inner(const Field2D& a, const Field2D& b, const Grid& g) {
    double s = 0.0;
    for (int j = 0; j <= g.ny; ++j) {
        const double wj = g.wy(j);
        for (int i = 0; i <= g.nx; ++i)
            s += g.wx(i) * wj * a(i, j) * b(i, j);
    }
    return s;
}

double l2_norm(const Field3D& f, const Grid& g) { return std::sqrt(inner(f, f, g)); }
double l2_norm(const Field2D& f, const Grid& g) { return std::sqrt(inner(f, f, g)); }

double l6_norm(const Field3D& f, const Grid& g) {
    double s = 0.0;
    for (int k = 0; k <= g.nz; ++k) {
        const double wk = g.wz(k);
        for (int j = 0; j <= g.ny; ++j) {
            const double wjk = g.wy(j) * wk;
            for (int i = 0; i <= g.nx; ++i) {
                const double v = f(i, j, k);
                const double v2 = v * v;
                s += g.wx(i) * wjk * v2 * v2 * v2;
            }
        }
    }
    return std::pow(s, 1.0 / 6.0);
}

double mean(const Field2D& f, const Grid& g) {
    double s = 0.0, w = 0.0;
    for (int j = 0; j <= g.ny; ++j)
        for (int i = 0; i <= g.nx; ++i) {
            const double wij = g.wx(i) * g.wy(j);
            s += wij * f(i, j);
            w += wij;
        }
    return s / w;
}

double boundary_l2_top(const Field3D& f, const Grid& g) {
    double s = 0.0;
    for (int j = 0; j <= g.ny; ++j)
        for (int i = 0; i <= g.nx; ++i) {
            const double v = f(i, j, g.nz);
            s += g.wx(i) * g.wy(j) * v * v;
        }
    return std::sqrt(s);
}

double boundary_l6_top(const Field3D& f, const Grid& g) {
    double s = 0.0;
    for (int j = 0; j <= g.ny; ++j)
        for (int i = 0; i <= g.nx; ++i) {
            const double v = f(i, j, g.nz);
            const double v2 = v * v;
            s += g.wx(i) * g.wy(j) * v2 * v2 * v2;
        }
    return std::pow(s, 1.0 / 6.0);
}

Field2D vertical_integral(const Field3D& f, int k_upper, const Grid& g) {
    Field2D out(g.nx, g.ny);
    const double h2 = 0.5 * g.hz;
    for (int j = 0; j <= g.ny; ++j)
        for (int i = 0; i <= g.nx; ++i) {
            double acc = 0.0;
            for (int k = 1; k <= k_upper; ++k)
                acc += h2 * (f(i, j, k - 1) + f(i, j, k));
            out(i, j) = acc;
        }
    return out;
}

Field2D vertical_average(const Field3D& f, const Grid& g) {
    return vertical_integral(f, g.nz, g);
}

Field3D cumtrapz_z(const Field3D& f, const Grid& g) {
    Field3D out(g.nx, g.ny, g.nz);
    const double h2 = 0.5 * g.hz;
    for (int j = 0; j <= g.ny; ++j)
        for (int i = 0; i <= g.nx; ++i) {
            double acc = 0.0;
            out(i, j, 0) = 0.0;
            for (int k = 1; k <= g.nz; ++k) {
                acc += h2 * (f(i, j, k - 1) + f(i, j, k));
                out(i, j, k) = acc;
            }
        }
    return out;
}

namespace {

// 1D second-order first derivative along a line of n+1 nodes
inline double d1(double fm, double fp, double h) { return (fp - fm) / (2.0 * h); }

// second-order one-sided edge stencils, written in pure difference form so
// constant data is annihilated bitwise
inline double d1_lo(double f0, double f1, double f2, double h) {
    return (3.0 * (f1 - f0) + (f1 - f2)) / (2.0 * h);
}
inline double d1_hi(double fn, double fn1, double fn2, double h) {
    return (3.0 * (fn - fn1) + (fn2 - fn1)) / (2.0 * h);
}

} // namespace

Field3D ddx(const Field3D& f, const Grid& g) {
    Field3D out(g.nx, g.ny, g.nz);
    const int nx = g.nx;
    const double h = g.hx;
    for (int k = 0; k <= g.nz; ++k)
        for (int j = 0; j <= g.ny; ++j) {
            out(0, j, k) = d1_lo(f(0, j, k), f(1, j, k), f(2, j, k), h);
            for (int i = 1; i < nx; ++i)
                out(i, j, k) = d1(f(i - 1, j, k), f(i + 1, j, k), h);
            out(nx, j, k) = d1_hi(f(nx, j, k), f(nx - 1, j, k), f(nx - 2, j, k), h);
        }
    return out;
}

Field3D ddy(const Field3D& f, const Grid& g) {
    Field3D out(g.nx, g.ny, g.nz);
    const int ny = g.ny;
    const double h = g.hy;
    for (int k = 0; k <= g.nz; ++k)
        for (int i = 0; i <= g.nx; ++i) {
            out(i, 0, k) = d1_lo(f(i, 0, k), f(i, 1, k), f(i, 2, k), h);
            for (int j = 1; j < ny; ++j)
                out(i, j, k) = d1(f(i, j - 1, k), f(i, j + 1, k), h);
            out(i, ny, k) = d1_hi(f(i, ny, k), f(i, ny - 1, k), f(i, ny - 2, k), h);
        }
    return out;
}

Field3D ddz(const Field3D& f, const Grid& g) {
    Field3D out(g.nx, g.ny, g.nz);
    const int nz = g.nz;
    const double h = g.hz;
    for (int j = 0; j <= g.ny; ++j)
        for (int i = 0; i <= g.nx; ++i) {
            out(i, j, 0) = d1_lo(f(i, j, 0), f(i, j, 1), f(i, j, 2), h);
            for (int k = 1; k < nz; ++k)
                out(i, j, k) = d1(f(i, j, k - 1), f(i, j, k + 1), h);
            out(i, j, nz) = d1_hi(f(i, j, nz), f(i, j, nz - 1), f(i, j, nz - 2), h);
        }
    return out;
}

VectorField2D grad_c(const Field2D& phi, const Grid& g) {
    VectorField2D out(g.nx, g.ny);
    for (int j = 0; j <= g.ny; ++j) {
        out.x(0, j) = 0.0;
        for (int i = 1; i < g.nx; ++i)
            out.x(i, j) = (phi(i + 1, j) - phi(i - 1, j)) / (2.0 * g.hx);
        out.x(g.nx, j) = 0.0;
    }
    for (int i = 0; i <= g.nx; ++i) {
        out.y(i, 0) = 0.0;
        for (int j = 1; j < g.ny; ++j)
            out.y(i, j) = (phi(i, j + 1) - phi(i, j - 1)) / (2.0 * g.hy);
        out.y(i, g.ny) = 0.0;
    }
    return out;
}

// Adjoint-divergence rows: centered in the interior; the four rows near each
// wall come from transposing the zero-wall gradient against the trapezoid
// weights. Rows 1 and n-1 omit the wall value, which the Dirichlet condition
// pins to zero anyway.
Field2D div_c(const VectorField2D& u, const Grid& g) {
    Field2D out(g.nx, g.ny);
    const int nx = g.nx, ny = g.ny;
    const double hx = g.hx, hy = g.hy;
    for (int j = 0; j <= ny; ++j) {
        out(0, j) = u.x(1, j) / hx;
        out(1, j) = u.x(2, j) / (2.0 * hx);
        for (int i = 2; i <= nx - 2; ++i)
            out(i, j) = (u.x(i + 1, j) - u.x(i - 1, j)) / (2.0 * hx);
        out(nx - 1, j) = -u.x(nx - 2, j) / (2.0 * hx);
        out(nx, j) = -u.x(nx - 1, j) / hx;
    }
    for (int i = 0; i <= nx; ++i) {
        out(i, 0) += u.y(i, 1) / hy;
        out(i, 1) += u.y(i, 2) / (2.0 * hy);
        for (int j = 2; j <= ny - 2; ++j)
            out(i, j) += (u.y(i, j + 1) - u.y(i, j - 1)) / (2.0 * hy);
        out(i, ny - 1) += -u.y(i, ny - 2) / (2.0 * hy);
        out(i, ny) += -u.y(i, ny - 1) / hy;
    }
    return out;
}

Field3D div_c3(const Field3D& u, const Field3D& v, const Grid& g) {
    Field3D out(g.nx, g.ny, g.nz);
    const int nx = g.nx, ny = g.ny;
    const double hx = g.hx, hy = g.hy;
    for (int k = 0; k <= g.nz; ++k) {
        for (int j = 0; j <= ny; ++j) {
            out(0, j, k) = u(1, j, k) / hx;
            out(1, j, k) = u(2, j, k) / (2.0 * hx);
            for (int i = 2; i <= nx - 2; ++i)
                out(i, j, k) = (u(i + 1, j, k) - u(i - 1, j, k)) / (2.0 * hx);
            out(nx - 1, j, k) = -u(nx - 2, j, k) / (2.0 * hx);
            out(nx, j, k) = -u(nx - 1, j, k) / hx;
        }
        for (int i = 0; i <= nx; ++i) {
            out(i, 0, k) += v(i, 1, k) / hy;
            out(i, 1, k) += v(i, 2, k) / (2.0 * hy);
            for (int j = 2; j <= ny - 2; ++j)
                out(i, j, k) += (v(i, j + 1, k) - v(i, j - 1, k)) / (2.0 * hy);
            out(i, ny - 1, k) += -v(i, ny - 2, k) / (2.0 * hy);
            out(i, ny, k) += -v(i, ny - 1, k) / hy;
        }
    }
    return out;
}

double dirichlet_form_x(const Field3D& f, const Grid& g) {
    double s = 0.0;
    for (int k = 0; k <= g.nz; ++k) {
        const double wk = g.wz(k);
        for (int j = 0; j <= g.ny; ++j) {
            const double wjk = g.wy(j) * wk;
            double line = 0.0;
            for (int i = 0; i < g.nx; ++i) {
                const double d = f(i + 1, j, k) - f(i, j, k);
                line += d * d;
            }
            s += wjk * line / g.hx;
        }
    }
    return s;
}

double dirichlet_form_y(const Field3D& f, const Grid& g) {
    double s = 0.0;
    for (int k = 0; k <= g.nz; ++k) {
        const double wk = g.wz(k);
        for (int i = 0; i <= g.nx; ++i) {
            const double wik = g.wx(i) * wk;
            double line = 0.0;
            for (int j = 0; j < g.ny; ++j) {
                const double d = f(i, j + 1, k) - f(i, j, k);
                line += d * d;
            }
            s += wik * line / g.hy;
        }
    }
    return s;
}

double dirichlet_form_z(const Field3D& f, const Grid& g) {
    double s = 0.0;
    for (int j = 0; j <= g.ny; ++j) {
        const double wj = g.wy(j);
        for (int i = 0; i <= g.nx; ++i) {
            const double wij = g.wx(i) * wj;
            double line = 0.0;
            for (int k = 0; k < g.nz; ++k) {
                const double d = f(i, j, k + 1) - f(i, j, k);
                line += d * d;
            }
            s += wij * line / g.hz;
        }
    }
    return s;
}

} // namespace mpe
