#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "mpe/elliptic.hpp"
#include "mpe/errors.hpp"
#include "mpe/forcing.hpp"
#include "mpe/grid.hpp"
#include "mpe/operators.hpp"
#include "mpe/params.hpp"
#include "mpe/state.hpp"

using namespace mpe;

namespace {

Eigen::VectorXd weights2(const Grid& g) {
    Eigen::VectorXd w((g.nx + 1) * (g.ny + 1));
    int c = 0;
    for (int j = 0; j <= g.ny; ++j)
        for (int i = 0; i <= g.nx; ++i) w(c++) = g.wx(i) * g.wy(j);
    return w;
}

} // namespace

TEST_CASE("constraint operator: dense symmetry and nonnegative spectrum") {
    const Grid g = Grid::make(8, 7, 4, 1.0, 1.3);
    const int n = (g.nx + 1) * (g.ny + 1);
    Eigen::MatrixXd m(n, n);
    Field2D e(g.nx, g.ny);
    for (int c = 0; c < n; ++c) {
        e.fill(0.0);
        e(c % (g.nx + 1), c / (g.nx + 1)) = 1.0;
        const Field2D ae = constraint_laplacian(e, g);
        int r = 0;
        for (int j = 0; j <= g.ny; ++j)
            for (int i = 0; i <= g.nx; ++i) m(r++, c) = ae(i, j);
    }
    const Eigen::VectorXd w = weights2(g);
    const Eigen::MatrixXd wm = w.asDiagonal() * m;
    const double scale = wm.cwiseAbs().maxCoeff();
    CHECK((wm - wm.transpose()).cwiseAbs().maxCoeff() <= 1e-13 * scale);

    const Eigen::VectorXd sq = w.cwiseSqrt();
    const Eigen::MatrixXd sym = sq.asDiagonal() * m * sq.cwiseInverse().asDiagonal();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (sym + sym.transpose()));
    CHECK(es.eigenvalues().minCoeff() >= -1e-11 * scale);

    Field2D cst(g.nx, g.ny);
    cst.fill(2.5);
    CHECK(constraint_laplacian(cst, g).max_abs() == 0.0);
}

TEST_CASE("projection drives the column divergence to the solver tolerance") {
    const PhysParams p;
    const Grid g = Grid::make(12, 10, 6, 1.0, 1.0);
    State s = random_state(5, 1.0, 0.0, 0.0, p, g);
    // the synthesized field is barotropically clean, so give the column mean
    // a real divergence (z-independent, vanishing wall-normal components)
    const double pi = std::acos(-1.0);
    s.v1.for_each([&](int i, int j, int, double& v) {
        v += 0.8 * std::sin(2.0 * pi * g.x(i) / g.lx) * std::cos(pi * g.y(j) / g.ly);
    });
    s.v2.for_each([&](int i, int j, int, double& v) {
        v += 0.6 * std::cos(pi * g.x(i) / g.lx) * std::sin(2.0 * pi * g.y(j) / g.ly);
    });

    EllipticSolve es;
    const double dt = 0.02;
    const Field2D rhs_before = div_c(
        [&] {
            VectorField2D vb(g.nx, g.ny);
            vb.x = vertical_average(s.v1, g);
            vb.y = vertical_average(s.v2, g);
            return vb;
        }(),
        g);
    const double r0 = l2_norm(rhs_before, g);
    REQUIRE(r0 > 0.0);

    const Field2D phi = project(s.v1, s.v2, dt, g, es);
    CHECK(es.last_iters > 0);
    CHECK(es.last_residual <= es.tolerance);

    VectorField2D vb(g.nx, g.ny);
    vb.x = vertical_average(s.v1, g);
    vb.y = vertical_average(s.v2, g);
    CHECK(l2_norm(div_c(vb, g), g) <= 1.1 * es.tolerance * r0);

    // weighted mean of the potential is pinned to zero
    double mean = 0.0;
    phi.for_each([&](int i, int j, double v) { mean += g.wx(i) * g.wy(j) * v; });
    CHECK(std::fabs(mean) <= 1e-13 * (g.lx * g.ly) * (phi.max_abs() + 1.0));

    // correction is z-independent: re-projecting changes almost nothing
    State s2 = s;
    EllipticSolve es2;
    project(s2.v1, s2.v2, dt, g, es2);
    double drift = 0.0;
    s.v1.for_each([&](int i, int j, int k, double v) {
        drift = std::max(drift, std::fabs(v - s2.v1(i, j, k)));
    });
    s.v2.for_each([&](int i, int j, int k, double v) {
        drift = std::max(drift, std::fabs(v - s2.v2(i, j, k)));
    });
    CHECK(drift <= 10.0 * es.tolerance * (s.v1.max_abs() + s.v2.max_abs() + 1.0));
}

TEST_CASE("projection leaves wall values and already-solenoidal fields alone") {
    const PhysParams p;
    const Grid g = Grid::make(8, 8, 5, 1.0, 1.0);

    // zero rhs: bitwise no-op. Equal-weight interior levels with opposite
    // values average to exactly 0.0, so the early return must trigger.
    State s(g);
    s.v1.for_each([&](int i, int j, int k, double& v) {
        const double a = 0.3 + 0.01 * i - 0.02 * j;
        v = (k == 1) ? a : (k == 3) ? -a : 0.0;
    });
    const Field3D before = s.v1;
    EllipticSolve es;
    const Field2D phi = project(s.v1, s.v2, 0.05, g, es);
    CHECK(phi.max_abs() == 0.0);
    CHECK(es.last_iters == 0);
    bool same = true;
    s.v1.for_each([&](int i, int j, int k, double v) { same &= v == before(i, j, k); });
    CHECK(same);

    // wall-normal entries survive the correction bit for bit
    State r = random_state(11, 0.8, 0.0, 0.0, p, g);
    std::vector<double> walls;
    for (int k = 0; k <= g.nz; ++k)
        for (int j = 0; j <= g.ny; ++j) {
            walls.push_back(r.v1(0, j, k));
            walls.push_back(r.v1(g.nx, j, k));
        }
    EllipticSolve es2;
    project(r.v1, r.v2, 0.05, g, es2);
    size_t c = 0;
    bool wall_same = true;
    for (int k = 0; k <= g.nz; ++k)
        for (int j = 0; j <= g.ny; ++j) {
            wall_same &= r.v1(0, j, k) == walls[c++];
            wall_same &= r.v1(g.nx, j, k) == walls[c++];
        }
    CHECK(wall_same);
}

TEST_CASE("starved iteration budget raises the convergence error") {
    const PhysParams p;
    const Grid g = Grid::make(16, 16, 4, 1.0, 1.0);
    State s = random_state(3, 1.0, 0.0, 0.0, p, g);
    EllipticSolve es;
    es.max_iter = 1;
    es.tolerance = 1e-14;
    CHECK_THROWS_AS(project(s.v1, s.v2, 0.05, g, es), NonConvergence);
}
