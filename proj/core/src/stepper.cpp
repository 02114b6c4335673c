#include "mpe/stepper.hpp"

#include <chrono>
#include <cmath>

#include "mpe/boundary.hpp"
#include "mpe/forcing.hpp"
#include "mpe/hydrostatics.hpp"
#include "mpe/operators.hpp"

namespace mpe {

void StepConfig::validate() const {
    if (!(dt > 0.0)) throw OutOfRange("stepping.dt", "must be positive");
    if (!(t_end >= 0.0)) throw OutOfRange("stepping.t_end", "must be nonnegative");
    if (!(cfl_max > 0.0) || cfl_max > 1.0)
        throw OutOfRange("stepping.cfl_max", "must lie in (0, 1]");
    if (theta != 1.0 && theta != 0.5)
        throw OutOfRange("stepping.theta_scheme",
                         "must be 1 (backward Euler) or 0.5 (Crank-Nicolson)");
    if (snapshot_every < 1)
        throw OutOfRange("stepping.snapshot_every", "must be at least 1");
}

TimeStepper::TimeStepper(const PhysParams& p, const Grid& g, const StepConfig& cfg)
    : p_(p), g_(g), cfg_(cfg),
      q1_(make_forcing_field(p.q1, g)), q2_(make_forcing_field(p.q2, g)),
      scratch_(g.nx, g.ny, g.nz), ax_(g.nx, g.ny, g.nz), r_(g.nx, g.ny, g.nz),
      pbuf_(g.nx, g.ny, g.nz) {
    p_.validate();
    cfg_.validate();
}

double TimeStepper::cfl_number(const State& s, const Field3D& w) const {
    double m = 0.0;
    s.v1.for_each([&](int i, int j, int k, double v) {
        const double c = std::fabs(v) / g_.hx + std::fabs(s.v2(i, j, k)) / g_.hy +
                         std::fabs(w(i, j, k)) / g_.hz;
        if (c > m) m = c;
    });
    return cfg_.dt * m;
}

void TimeStepper::implicit_solve(Field3D& u, FieldKind kind, double ch, double cv) {
    const double kappa = cfg_.dt * cfg_.theta;
    const bool vel = kind == FieldKind::VelocityX || kind == FieldKind::VelocityY;

    // y = (I + kappa L) x on physical nodes; velocity components are solved
    // on the zero-wall subspace, which the pin keeps exact.
    auto apply = [&](Field3D& x, Field3D& y) {
        if (vel) pin_dirichlet_walls(x, kind, g_);
        fill_ghosts(x, kind, p_, g_);
        anisotropic_laplacian(x, ch, cv, g_, y);
        y.for_each([&](int i, int j, int k, double& v) { v = x(i, j, k) + kappa * v; });
        if (vel) pin_dirichlet_walls(y, kind, g_);
    };

    if (vel) pin_dirichlet_walls(u, kind, g_);
    const double bnorm = l2_norm(u, g_);
    if (bnorm == 0.0) return;
    const double tol = 1e-10;
    const int cap = 800;

    // warm start from the right-hand side (close to the solution for small dt)
    scratch_ = u;
    apply(scratch_, ax_);
    r_.for_each([&](int i, int j, int k, double& v) { v = u(i, j, k) - ax_(i, j, k); });
    pbuf_ = r_;
    Field3D& x = scratch_;

    double rr = inner(r_, r_, g_);
    int it = 0;
    while (std::sqrt(rr) > tol * bnorm) {
        if (it >= cap)
            throw NonConvergence("diffusion Helmholtz CG hit the iteration cap",
                                 std::sqrt(rr) / bnorm, it);
        apply(pbuf_, ax_);
        const double pap = inner(pbuf_, ax_, g_);
        if (!(pap > 0.0))
            throw NonConvergence("diffusion Helmholtz CG broke down",
                                 std::sqrt(rr) / bnorm, it);
        const double alpha = rr / pap;
        x.for_each([&](int i, int j, int k, double& v) { v += alpha * pbuf_(i, j, k); });
        r_.for_each([&](int i, int j, int k, double& v) { v -= alpha * ax_(i, j, k); });
        const double rr_new = inner(r_, r_, g_);
        const double beta = rr_new / rr;
        pbuf_.for_each(
            [&](int i, int j, int k, double& v) { v = r_(i, j, k) + beta * v; });
        rr = rr_new;
        ++it;
    }
    helmholtz_iters_ += it;
    u = x;
}

void TimeStepper::step(State& s) {
    apply_boundary_conditions(s, p_, g_);
    const Field3D w = diagnose_w(s, g_);

    const double cfl = cfl_number(s, w);
    if (cfl > cfg_.cfl_max) throw CflViolation(cfl, s.time);

    Tendency tend = assemble_explicit(s, p_, g_, w, q1_, q2_);
    if (source_) {
        const double t_eval =
            cfg_.theta == 0.5 ? s.time + 0.5 * cfg_.dt : s.time;
        source_(t_eval, tend);
    }
    if (cfg_.theta < 1.0) {
        // Crank-Nicolson carries (1-theta) of the diffusion explicitly.
        const double c = 1.0 - cfg_.theta;
        Field3D l1x(g_.nx, g_.ny, g_.nz), l1y(g_.nx, g_.ny, g_.nz);
        diffusion_L1(s.v1, s.v2, p_, g_, l1x, l1y);
        const Field3D l2t = diffusion_L2(s.T, p_, g_);
        const Field3D l3q = diffusion_L3(s.q, p_, g_);
        tend.dv1.for_each([&](int i, int j, int k, double& x) { x -= c * l1x(i, j, k); });
        tend.dv2.for_each([&](int i, int j, int k, double& x) { x -= c * l1y(i, j, k); });
        tend.dT.for_each([&](int i, int j, int k, double& x) { x -= c * l2t(i, j, k); });
        tend.dq.for_each([&](int i, int j, int k, double& x) { x -= c * l3q(i, j, k); });
    }

    State star = s;
    star.v1.for_each(
        [&](int i, int j, int k, double& x) { x += cfg_.dt * tend.dv1(i, j, k); });
    star.v2.for_each(
        [&](int i, int j, int k, double& x) { x += cfg_.dt * tend.dv2(i, j, k); });
    star.T.for_each(
        [&](int i, int j, int k, double& x) { x += cfg_.dt * tend.dT(i, j, k); });
    star.q.for_each(
        [&](int i, int j, int k, double& x) { x += cfg_.dt * tend.dq(i, j, k); });

    implicit_solve(star.v1, FieldKind::VelocityX, 1.0 / p_.re1, 1.0 / p_.re2);
    implicit_solve(star.v2, FieldKind::VelocityY, 1.0 / p_.re1, 1.0 / p_.re2);
    implicit_solve(star.T, FieldKind::Temperature, 1.0 / p_.rt1, 1.0 / p_.rt2);
    implicit_solve(star.q, FieldKind::Moisture, 1.0 / p_.rt3, 1.0 / p_.rt4);

    project(star.v1, star.v2, cfg_.dt, g_, es_);
    projection_iters_ += es_.last_iters;

    apply_boundary_conditions(star, p_, g_);
    star.time = s.time + cfg_.dt;
    star.require_finite();
    s = std::move(star);
}

RunResult TimeStepper::run(const State& s0, const SnapshotSink& sink) {
    const auto t_start = std::chrono::steady_clock::now();
    const long h0 = helmholtz_iters_, p0 = projection_iters_;

    State s = s0;
    const double t0 = s.time;
    const long nsteps = std::llround((cfg_.t_end - t0) / cfg_.dt);

    if (sink) sink(s, 0);
    for (long n = 1; n <= nsteps; ++n) {
        step(s);
        s.time = t0 + static_cast<double>(n) * cfg_.dt;
        if (sink && (n % cfg_.snapshot_every == 0 || n == nsteps)) sink(s, n);
    }

    RunResult res;
    res.final = std::move(s);
    res.steps = nsteps > 0 ? nsteps : 0;
    res.rejected = 0;
    res.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
            .count();
    res.helmholtz_iters = helmholtz_iters_ - h0;
    res.projection_iters = projection_iters_ - p0;
    return res;
}

} // namespace mpe
