#include "mpe/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mpe/errors.hpp"
#include "mpe/hydrostatics.hpp"
#include "mpe/operators.hpp"

namespace mpe {

Field2D constraint_laplacian(const Field2D& phi, const Grid& g) {
    Field2D out = div_c(grad_c(phi, g), g);
    out.for_each([](int, int, double& x) { x = -x; });
    return out;
}

Field2D project(Field3D& v1, Field3D& v2, double dt, const Grid& g, EllipticSolve& es) {
    VectorField2D vbar;
    vbar.x = vertical_average(v1, g);
    vbar.y = vertical_average(v2, g);

    Field2D b = div_c(vbar, g);
    const double inv_dt = -1.0 / dt;
    b.for_each([&](int, int, double& x) { x *= inv_dt; });
    // The constant null mode: b is orthogonal to it by adjointness up to
    // round-off; subtract the drift so CG never accumulates it.
    const double bm = mean(b, g);
    b.for_each([&](int, int, double& x) { x -= bm; });

    Field2D phi(g.nx, g.ny);
    const double bnorm = l2_norm(b, g);
    es.last_residual = 0.0;
    es.last_iters = 0;
    // A right-hand side at the round-off floor of div_c carries no signal; a
    // relative tolerance is unreachable there and the correction would be
    // noise. Covers re-projection of an already constrained field.
    const double vscale = std::max(vbar.x.max_abs(), vbar.y.max_abs());
    const double floor = 32.0 * std::numeric_limits<double>::epsilon() * vscale *
                         std::sqrt(g.lx * g.ly) / (std::min(g.hx, g.hy) * dt);
    if (bnorm <= floor) return phi;

    const int cap = es.max_iter > 0
                        ? es.max_iter
                        : 10 * static_cast<int>(std::ceil(std::sqrt(
                                   static_cast<double>(g.nx) * g.ny)));

    Field2D r = b;
    Field2D p = r;
    double rr = inner(r, r, g);
    double rel = std::sqrt(rr) / bnorm;
    int it = 0;
    while (rel > es.tolerance) {
        if (it >= cap)
            throw NonConvergence("surface-potential CG hit the iteration cap", rel, it);
        const Field2D ap = constraint_laplacian(p, g);
        const double pap = inner(p, ap, g);
        if (!(pap > 0.0))
            throw NonConvergence("surface-potential CG broke down", rel, it);
        const double alpha = rr / pap;
        phi.for_each([&](int i, int j, double& x) { x += alpha * p(i, j); });
        r.for_each([&](int i, int j, double& x) { x -= alpha * ap(i, j); });
        const double rr_new = inner(r, r, g);
        const double beta = rr_new / rr;
        p.for_each([&](int i, int j, double& x) { x = r(i, j) + beta * x; });
        rr = rr_new;
        rel = std::sqrt(rr) / bnorm;
        ++it;
    }
    es.last_residual = rel;
    es.last_iters = it;

    const double pm = mean(phi, g);
    phi.for_each([&](int, int, double& x) { x -= pm; });

    const VectorField2D gp = grad_c(phi, g);
    for (int k = 0; k <= g.nz; ++k)
        for (int j = 0; j <= g.ny; ++j)
            for (int i = 0; i <= g.nx; ++i) {
                v1(i, j, k) -= dt * gp.x(i, j);
                v2(i, j, k) -= dt * gp.y(i, j);
            }
    return phi;
}

} // namespace mpe
