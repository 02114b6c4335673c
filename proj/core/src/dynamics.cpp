#include "mpe/dynamics.hpp"

#include "mpe/forcing.hpp"
#include "mpe/hydrostatics.hpp"
#include "mpe/operators.hpp"

namespace mpe {

void anisotropic_laplacian(const Field3D& f, double ch, double cv, const Grid& g,
                           Field3D& out) {
    const double ax = ch / (g.hx * g.hx);
    const double ay = ch / (g.hy * g.hy);
    const double az = cv / (g.hz * g.hz);
    for (int k = 0; k <= g.nz; ++k)
        for (int j = 0; j <= g.ny; ++j)
            for (int i = 0; i <= g.nx; ++i) {
                const double c = f(i, j, k);
                const double dxx = f(i - 1, j, k) - 2.0 * c + f(i + 1, j, k);
                const double dyy = f(i, j - 1, k) - 2.0 * c + f(i, j + 1, k);
                const double dzz = f(i, j, k - 1) - 2.0 * c + f(i, j, k + 1);
                out(i, j, k) = -(ax * dxx + ay * dyy + az * dzz);
            }
}

void diffusion_L1(const Field3D& v1, const Field3D& v2, const PhysParams& p,
                  const Grid& g, Field3D& out1, Field3D& out2) {
    anisotropic_laplacian(v1, 1.0 / p.re1, 1.0 / p.re2, g, out1);
    anisotropic_laplacian(v2, 1.0 / p.re1, 1.0 / p.re2, g, out2);
}

Field3D diffusion_L2(const Field3D& T, const PhysParams& p, const Grid& g) {
    Field3D out(g.nx, g.ny, g.nz);
    anisotropic_laplacian(T, 1.0 / p.rt1, 1.0 / p.rt2, g, out);
    return out;
}

Field3D diffusion_L3(const Field3D& q, const PhysParams& p, const Grid& g) {
    Field3D out(g.nx, g.ny, g.nz);
    anisotropic_laplacian(q, 1.0 / p.rt3, 1.0 / p.rt4, g, out);
    return out;
}

Field3D advect_horizontal(const Field3D& c, const Field3D& v1, const Field3D& v2,
                          const Grid& g) {
    Field3D cx = ddx(c, g);
    Field3D cy = ddy(c, g);
    Field3D out(g.nx, g.ny, g.nz);
    out.for_each([&](int i, int j, int k, double&) {
        out(i, j, k) = v1(i, j, k) * cx(i, j, k) + v2(i, j, k) * cy(i, j, k);
    });
    return out;
}

Field3D advect_vertical(const Field3D& c, const Field3D& w, const Grid& g) {
    Field3D cz = ddz(c, g);
    Field3D out(g.nx, g.ny, g.nz);
    out.for_each([&](int i, int j, int k, double&) {
        out(i, j, k) = w(i, j, k) * cz(i, j, k);
    });
    return out;
}

void coriolis(const Field3D& v1, const Field3D& v2, const PhysParams& p, Field3D& out1,
              Field3D& out2) {
    const double c = p.f / p.ro;
    out1.for_each([&](int i, int j, int k, double& x) { x = -c * v2(i, j, k); });
    out2.for_each([&](int i, int j, int k, double& x) { x = c * v1(i, j, k); });
}

namespace {

// g = (bP/p)(1 + a q) T, the hydrostatic density integrand.
Field3D buoyancy_integrand(const State& s, const PhysParams& p, const Grid& g) {
    Field3D out(g.nx, g.ny, g.nz);
    for (int k = 0; k <= g.nz; ++k) {
        const double prof = p.bp_over_p(g.z(k));
        for (int j = 0; j <= g.ny; ++j)
            for (int i = 0; i <= g.nx; ++i)
                out(i, j, k) = prof * (1.0 + p.a * s.q(i, j, k)) * s.T(i, j, k);
    }
    return out;
}

// Vertical integral for the buoyancy force. Interior levels carry the plain
// cumulative trapezoid; the two boundary levels carry half-cell quadrature
// shifts (an O(hz) change on those levels only) so that the trapezoid pairing
// <buoyancy, v> telescopes exactly against <(bP/p)(1+aq)(-w), T> whenever the
// column mean of the velocity is divergence-free. The leftover is
// proportional to the column integral of the divergence, which the
// projection drives to the solver tolerance.
Field3D cumtrapz_z_paired(const Field3D& f, const Grid& g) {
    Field3D out = cumtrapz_z(f, g);
    const double h2 = 0.5 * g.hz;
    for (int j = 0; j <= g.ny; ++j)
        for (int i = 0; i <= g.nx; ++i) {
            out(i, j, 0) = h2 * f(i, j, 0);
            out(i, j, g.nz) -= h2 * f(i, j, g.nz);
        }
    return out;
}

} // namespace

void buoyancy_gradient(const State& s, const PhysParams& p, const Grid& g, Field3D& out1,
                       Field3D& out2) {
    const Field3D gi = buoyancy_integrand(s, p, g);
    out1 = cumtrapz_z_paired(ddx(gi, g), g);
    out2 = cumtrapz_z_paired(ddy(gi, g), g);
}

Field3D thermo_source(const State& s, const Field3D& w, const PhysParams& p,
                      const Grid& g) {
    Field3D out(g.nx, g.ny, g.nz);
    for (int k = 0; k <= g.nz; ++k) {
        const double prof = p.bp_over_p(g.z(k));
        for (int j = 0; j <= g.ny; ++j)
            for (int i = 0; i <= g.nx; ++i)
                out(i, j, k) = prof * (1.0 + p.a * s.q(i, j, k)) * (-w(i, j, k));
    }
    return out;
}

Tendency assemble_explicit(const State& s, const PhysParams& p, const Grid& g,
                           const Field3D& w, const Field3D& q1, const Field3D& q2) {
    Tendency t(g);

    const Field3D ah1 = advect_horizontal(s.v1, s.v1, s.v2, g);
    const Field3D ah2 = advect_horizontal(s.v2, s.v1, s.v2, g);
    const Field3D ahT = advect_horizontal(s.T, s.v1, s.v2, g);
    const Field3D ahq = advect_horizontal(s.q, s.v1, s.v2, g);

    const Field3D av1 = advect_vertical(s.v1, w, g);
    const Field3D av2 = advect_vertical(s.v2, w, g);
    const Field3D avT = advect_vertical(s.T, w, g);
    const Field3D avq = advect_vertical(s.q, w, g);

    Field3D cor1(g.nx, g.ny, g.nz), cor2(g.nx, g.ny, g.nz);
    coriolis(s.v1, s.v2, p, cor1, cor2);

    Field3D b1(g.nx, g.ny, g.nz), b2(g.nx, g.ny, g.nz);
    buoyancy_gradient(s, p, g, b1, b2);

    const Field3D th = thermo_source(s, w, p, g);

    t.dv1.for_each([&](int i, int j, int k, double& x) {
        x = -ah1(i, j, k) - av1(i, j, k) - cor1(i, j, k) + b1(i, j, k);
    });
    t.dv2.for_each([&](int i, int j, int k, double& x) {
        x = -ah2(i, j, k) - av2(i, j, k) - cor2(i, j, k) + b2(i, j, k);
    });
    t.dT.for_each([&](int i, int j, int k, double& x) {
        x = q1(i, j, k) - ahT(i, j, k) - avT(i, j, k) - th(i, j, k);
    });
    t.dq.for_each([&](int i, int j, int k, double& x) {
        x = q2(i, j, k) - ahq(i, j, k) - avq(i, j, k);
    });
    return t;
}

Tendency assemble_tendency(const State& s, const PhysParams& p, const Grid& g,
                           const Field3D* w_pre, const Field3D* q1_field,
                           const Field3D* q2_field) {
    Field3D w_local;
    const Field3D* w = w_pre;
    if (!w) {
        w_local = diagnose_w(s, g);
        w = &w_local;
    }
    Field3D q1_local, q2_local;
    const Field3D* q1 = q1_field;
    const Field3D* q2 = q2_field;
    if (!q1) {
        q1_local = make_forcing_field(p.q1, g);
        q1 = &q1_local;
    }
    if (!q2) {
        q2_local = make_forcing_field(p.q2, g);
        q2 = &q2_local;
    }

    Tendency t = assemble_explicit(s, p, g, *w, *q1, *q2);

    Field3D l1x(g.nx, g.ny, g.nz), l1y(g.nx, g.ny, g.nz);
    diffusion_L1(s.v1, s.v2, p, g, l1x, l1y);
    const Field3D l2t = diffusion_L2(s.T, p, g);
    const Field3D l3q = diffusion_L3(s.q, p, g);

    t.dv1.for_each([&](int i, int j, int k, double& x) { x -= l1x(i, j, k); });
    t.dv2.for_each([&](int i, int j, int k, double& x) { x -= l1y(i, j, k); });
    t.dT.for_each([&](int i, int j, int k, double& x) { x -= l2t(i, j, k); });
    t.dq.for_each([&](int i, int j, int k, double& x) { x -= l3q(i, j, k); });
    return t;
}

} // namespace mpe
