#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "mpe/boundary.hpp"
#include "mpe/dynamics.hpp"
#include "mpe/forcing.hpp"
#include "mpe/grid.hpp"
#include "mpe/hydrostatics.hpp"
#include "mpe/operators.hpp"
#include "mpe/params.hpp"
#include "mpe/state.hpp"

using namespace mpe;

TEST_CASE("coriolis rotates the velocity a quarter turn and does no work") {
    PhysParams p;
    const Grid g = Grid::make(6, 6, 4, 1.0, 1.0);
    Field3D v1(g.nx, g.ny, g.nz), v2(g.nx, g.ny, g.nz);
    v1.fill(1.0);
    Field3D o1(g.nx, g.ny, g.nz), o2(g.nx, g.ny, g.nz);

    coriolis(v1, v2, p, o1, o2);
    o1.for_each([](int, int, int, double v) { CHECK(v == 0.0); });
    o2.for_each([](int, int, int, double v) { CHECK(v == 1.0); });

    p.f = 2.0;
    p.ro = 0.5;
    const State s = random_state(7, 0.5, 0.0, 0.0, p, g);
    coriolis(s.v1, s.v2, p, o1, o2);
    double work = 0.0, mag = 0.0;
    s.v1.for_each([&](int i, int j, int k, double v) {
        work = std::max(work, std::fabs(v * o1(i, j, k) + s.v2(i, j, k) * o2(i, j, k)));
        mag = std::max(mag, std::fabs(v * o1(i, j, k)));
    });
    CHECK(work <= 1e-15 * (mag + 1.0));
    // scaling: out2 = (f/Ro) v1 = 4 v1
    CHECK(o2(2, 3, 1) == doctest::Approx(4.0 * s.v1(2, 3, 1)).epsilon(1e-14));
}

TEST_CASE("transport annihilates constants and is exact on linear fields") {
    const Grid g = Grid::make(8, 6, 5, 2.0, 1.5);
    Field3D c(g.nx, g.ny, g.nz), v1(g.nx, g.ny, g.nz), v2(g.nx, g.ny, g.nz),
        w(g.nx, g.ny, g.nz);
    c.fill(3.25);
    v1.fill(1.7);
    v2.fill(-0.4);
    w.fill(0.9);
    CHECK(advect_horizontal(c, v1, v2, g).max_abs() == 0.0);
    CHECK(advect_vertical(c, w, g).max_abs() == 0.0);

    c.for_each([&](int i, int j, int k, double& v) {
        v = 2.0 * g.x(i) - 3.0 * g.y(j) + 0.5 * g.z(k);
    });
    const Field3D ah = advect_horizontal(c, v1, v2, g);
    const double expect_h = 1.7 * 2.0 + (-0.4) * (-3.0);
    ah.for_each([&](int, int, int, double v) {
        CHECK(v == doctest::Approx(expect_h).epsilon(1e-13));
    });
    const Field3D av = advect_vertical(c, w, g);
    av.for_each([&](int, int, int, double v) {
        CHECK(v == doctest::Approx(0.9 * 0.5).epsilon(1e-13));
    });
}

TEST_CASE("laplacian reproduces the discrete sine eigenvalue") {
    const PhysParams p;
    const double lx = 1.3;
    const Grid g = Grid::make(16, 8, 6, lx, 1.0);
    Field3D f(g.nx, g.ny, g.nz);
    const double kx = M_PI / lx;
    f.for_each([&](int i, int, int, double& v) { v = std::sin(kx * g.x(i)); });
    // sine mode is compatible with the v1 conditions; ghosts complete the stencil
    pin_dirichlet_walls(f, FieldKind::VelocityX, g);
    fill_ghosts(f, FieldKind::VelocityX, p, g);

    Field3D out(g.nx, g.ny, g.nz);
    anisotropic_laplacian(f, 1.0, 0.5, g, out);

    const double h = g.hx;
    const double lam = 4.0 / (h * h) * std::pow(std::sin(kx * h / 2.0), 2);
    double rel = 0.0;
    out.for_each([&](int i, int j, int k, double v) {
        rel = std::max(rel, std::fabs(v - lam * f(i, j, k)));
    });
    CHECK(rel <= 1e-12 * lam);
}

TEST_CASE("thermodynamic coupling term has the advertised sign and scale") {
    PhysParams p;
    p.b = 2.0;
    p.a = 0.25;
    const Grid g = Grid::make(6, 6, 8, 1.0, 1.0);
    State s(g); // T = q = 0
    Field3D w(g.nx, g.ny, g.nz);
    // w = p(z)/(bP) makes -(bP/p)(1+aq) w = -1 everywhere
    w.for_each([&](int, int, int k, double& v) {
        v = p.pressure(g.z(k)) / (p.b * p.p_surface);
    });
    const Field3D ts = thermo_source(s, w, p, g);
    ts.for_each([](int, int, int, double v) {
        CHECK(v == doctest::Approx(-1.0).epsilon(1e-14));
    });
}

TEST_CASE("buoyancy gradient vanishes for horizontally uniform T and q") {
    const PhysParams p;
    const Grid g = Grid::make(6, 6, 8, 1.0, 1.0);
    State s(g);
    s.T.for_each([&](int, int, int k, double& v) { v = 1.0 + 0.3 * g.z(k); });
    s.q.for_each([&](int, int, int k, double& v) { v = 0.2 * g.z(k) * g.z(k); });
    Field3D b1(g.nx, g.ny, g.nz), b2(g.nx, g.ny, g.nz);
    buoyancy_gradient(s, p, g, b1, b2);
    CHECK(b1.max_abs() == 0.0);
    CHECK(b2.max_abs() == 0.0);
}

TEST_CASE("full tendency is the explicit part minus diffusion, bit for bit") {
    const PhysParams p;
    const Grid g = Grid::make(6, 6, 6, 1.0, 1.0);
    State s = random_state(31, 0.4, 0.4, 0.4, p, g);
    apply_boundary_conditions(s, p, g);

    const Field3D w = diagnose_w(s, g);
    const Field3D q1 = make_forcing_field(p.q1, g);
    const Field3D q2 = make_forcing_field(p.q2, g);

    const Tendency full = assemble_tendency(s, p, g);
    Tendency ref = assemble_explicit(s, p, g, w, q1, q2);
    Field3D l1x(g.nx, g.ny, g.nz), l1y(g.nx, g.ny, g.nz);
    diffusion_L1(s.v1, s.v2, p, g, l1x, l1y);
    const Field3D l2t = diffusion_L2(s.T, p, g);
    const Field3D l3q = diffusion_L3(s.q, p, g);
    ref.dv1.for_each([&](int i, int j, int k, double& x) { x -= l1x(i, j, k); });
    ref.dv2.for_each([&](int i, int j, int k, double& x) { x -= l1y(i, j, k); });
    ref.dT.for_each([&](int i, int j, int k, double& x) { x -= l2t(i, j, k); });
    ref.dq.for_each([&](int i, int j, int k, double& x) { x -= l3q(i, j, k); });

    bool same = true;
    full.dv1.for_each([&](int i, int j, int k, double v) { same &= v == ref.dv1(i, j, k); });
    full.dv2.for_each([&](int i, int j, int k, double v) { same &= v == ref.dv2(i, j, k); });
    full.dT.for_each([&](int i, int j, int k, double v) { same &= v == ref.dT(i, j, k); });
    full.dq.for_each([&](int i, int j, int k, double v) { same &= v == ref.dq(i, j, k); });
    CHECK(same);
}

namespace {

// Dense matrix of u -> pin(L(fill(pin(u)))) over all physical nodes, the
// operator the implicit half-step inverts (shifted by the identity).
Eigen::MatrixXd dense_diffusion(FieldKind kind, const PhysParams& p, const Grid& g) {
    const int n = (g.nx + 1) * (g.ny + 1) * (g.nz + 1);
    auto flat = [&](int i, int j, int k) {
        return (k * (g.ny + 1) + j) * (g.nx + 1) + i;
    };
    Eigen::MatrixXd m(n, n);
    Field3D u(g.nx, g.ny, g.nz);
    for (int c = 0; c < n; ++c) {
        u.fill(0.0);
        const int i = c % (g.nx + 1), j = (c / (g.nx + 1)) % (g.ny + 1),
                  k = c / ((g.nx + 1) * (g.ny + 1));
        u(i, j, k) = 1.0;
        pin_dirichlet_walls(u, kind, g);
        fill_ghosts(u, kind, p, g);
        Field3D lu;
        if (kind == FieldKind::Temperature) {
            lu = diffusion_L2(u, p, g);
        } else if (kind == FieldKind::Moisture) {
            lu = diffusion_L3(u, p, g);
        } else {
            Field3D zero(g.nx, g.ny, g.nz), o1(g.nx, g.ny, g.nz), o2(g.nx, g.ny, g.nz);
            fill_ghosts(zero, FieldKind::VelocityY, p, g);
            diffusion_L1(u, zero, p, g, o1, o2);
            lu = o1;
        }
        pin_dirichlet_walls(lu, kind, g);
        lu.for_each([&](int ii, int jj, int kk, double v) { m(flat(ii, jj, kk), c) = v; });
    }
    return m;
}

Eigen::VectorXd weight_vector(const Grid& g) {
    const int n = (g.nx + 1) * (g.ny + 1) * (g.nz + 1);
    Eigen::VectorXd w(n);
    int c = 0;
    for (int k = 0; k <= g.nz; ++k)
        for (int j = 0; j <= g.ny; ++j)
            for (int i = 0; i <= g.nx; ++i) w(c++) = g.wx(i) * g.wy(j) * g.wz(k);
    return w;
}

} // namespace

TEST_CASE("diffusion operators are self-adjoint and nonnegative in the cell measure") {
    PhysParams p;
    p.rt2 = 0.7;
    p.alpha = 1.4; // exercise the Robin row with nontrivial coefficients
    const Grid g = Grid::make(5, 4, 4, 1.0, 1.2);
    const Eigen::VectorXd w = weight_vector(g);

    for (FieldKind kind :
         {FieldKind::Temperature, FieldKind::Moisture, FieldKind::VelocityX}) {
        const Eigen::MatrixXd m = dense_diffusion(kind, p, g);
        const Eigen::MatrixXd wm = w.asDiagonal() * m;
        const double scale = wm.cwiseAbs().maxCoeff();
        CHECK((wm - wm.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * scale);

        // symmetrize in the weighted metric, then eigenvalues >= -tol
        const Eigen::VectorXd sq = w.cwiseSqrt();
        const Eigen::MatrixXd sym =
            sq.asDiagonal() * m * sq.cwiseInverse().asDiagonal();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
            0.5 * (sym + sym.transpose()));
        CHECK(es.eigenvalues().minCoeff() >= -1e-10 * scale);
    }
}
