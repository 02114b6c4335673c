#include "mpe/energy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "mpe/boundary.hpp"
#include "mpe/dynamics.hpp"
#include "mpe/forcing.hpp"
#include "mpe/hydrostatics.hpp"
#include "mpe/operators.hpp"

namespace mpe {

namespace {

constexpr double kPi = 3.14159265358979323846;

void append_num(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out += buf;
}

// transport-stencil derivatives of surface fields (for the vbar gradient)
Field2D ddx2(const Field2D& f, const Grid& g) {
    Field2D out(g.nx, g.ny);
    const double h2 = 2.0 * g.hx;
    for (int j = 0; j <= g.ny; ++j) {
        out(0, j) = (3.0 * (f(1, j) - f(0, j)) + (f(1, j) - f(2, j))) / h2;
        for (int i = 1; i < g.nx; ++i) out(i, j) = (f(i + 1, j) - f(i - 1, j)) / h2;
        out(g.nx, j) =
            (3.0 * (f(g.nx, j) - f(g.nx - 1, j)) + (f(g.nx - 2, j) - f(g.nx - 1, j))) / h2;
    }
    return out;
}

Field2D ddy2(const Field2D& f, const Grid& g) {
    Field2D out(g.nx, g.ny);
    const double h2 = 2.0 * g.hy;
    for (int i = 0; i <= g.nx; ++i) {
        out(i, 0) = (3.0 * (f(i, 1) - f(i, 0)) + (f(i, 1) - f(i, 2))) / h2;
        for (int j = 1; j < g.ny; ++j) out(i, j) = (f(i, j + 1) - f(i, j - 1)) / h2;
        out(i, g.ny) =
            (3.0 * (f(i, g.ny) - f(i, g.ny - 1)) + (f(i, g.ny - 2) - f(i, g.ny - 1))) / h2;
    }
    return out;
}

Field3D magnitude(const Field3D& a, const Field3D& b, const Grid& g) {
    Field3D out(g.nx, g.ny, g.nz);
    out.for_each([&](int i, int j, int k, double& x) {
        x = std::sqrt(a(i, j, k) * a(i, j, k) + b(i, j, k) * b(i, j, k));
    });
    return out;
}

double sq(double x) { return x * x; }

} // namespace

std::string EnergyReport::csv_header() {
    return "time,l2_v,l2_T,l2_q,l2_H,v2_v,v2_T,v2_q,v2_total,"
           "l6_q,l6_T,l6_vtilde,l6_vz,l6_Tz,l6_qz,l2_vz,l2_Tz,l2_qz,"
           "bnd_l2_q,bnd_l2_T,bnd_l6_q,bnd_l6_T,"
           "l2_grad_v,l2_grad_T,l2_grad_q,l2_grad_vbar,"
           "h2_l1v,h2_l2T,h2_l3q,l2_vt,l2_Tt,l2_qt,"
           "r_q,r_vT,slack_poincare_q,slack_poincare_vT,ip_q1_T,ip_q2_q";
}

std::string EnergyReport::csv_row() const {
    std::string out;
    out.reserve(38 * 26);
    const double vals[] = {time,      l2_v,     l2_T,      l2_q,       l2_H,
                           v2_v,      v2_T,     v2_q,      v2_total,   l6_q,
                           l6_T,      l6_vtilde, l6_vz,    l6_Tz,      l6_qz,
                           l2_vz,     l2_Tz,    l2_qz,     bnd_l2_q,   bnd_l2_T,
                           bnd_l6_q,  bnd_l6_T, l2_grad_v, l2_grad_T,  l2_grad_q,
                           l2_grad_vbar, h2_l1v, h2_l2T,   h2_l3q,     l2_vt,
                           l2_Tt,     l2_qt,    r_q,       r_vT,
                           slack_poincare_q, slack_poincare_vT, ip_q1_T, ip_q2_q};
    // columns 29..33 (0-based) are the rate-dependent entries
    for (int c = 0; c < 38; ++c) {
        if (c) out += ',';
        if (!has_rates && c >= 29 && c <= 33)
            out += "nan";
        else
            append_num(out, vals[c]);
    }
    return out;
}

double vnorm_sq_v(const Field3D& v1, const Field3D& v2, const PhysParams& p,
                  const Grid& g) {
    return (dirichlet_form_x(v1, g) + dirichlet_form_y(v1, g) +
            dirichlet_form_x(v2, g) + dirichlet_form_y(v2, g)) /
               p.re1 +
           (dirichlet_form_z(v1, g) + dirichlet_form_z(v2, g)) / p.re2;
}

double vnorm_sq_T(const Field3D& T, const PhysParams& p, const Grid& g) {
    return (dirichlet_form_x(T, g) + dirichlet_form_y(T, g)) / p.rt1 +
           dirichlet_form_z(T, g) / p.rt2 + p.alpha * sq(boundary_l2_top(T, g));
}

double vnorm_sq_q(const Field3D& q, const PhysParams& p, const Grid& g) {
    return (dirichlet_form_x(q, g) + dirichlet_form_y(q, g)) / p.rt3 +
           dirichlet_form_z(q, g) / p.rt4 + p.beta * sq(boundary_l2_top(q, g));
}

double poincare_const_q(const PhysParams& p, const Grid&) {
    return 2.0 * p.rt4 + 2.0 / p.beta;
}

double poincare_const_vT(const PhysParams& p, const Grid& g) {
    // 1/lambda_min of the discrete Dirichlet chains (exact Rayleigh bound)
    const double cx = sq(g.hx) / (4.0 * sq(std::sin(kPi * g.hx / (2.0 * g.lx))));
    const double cy = sq(g.hy) / (4.0 * sq(std::sin(kPi * g.hy / (2.0 * g.ly))));
    const double cv = p.re1 * std::max(cx, cy);
    const double ct = 2.0 * p.rt2 + 2.0 / p.alpha;
    return std::max(cv, ct);
}

double state_norm_h(const State& s, const Grid& g) {
    const double a = l2_norm(s.v1, g), b = l2_norm(s.v2, g);
    const double c = l2_norm(s.T, g), d = l2_norm(s.q, g);
    return std::sqrt(a * a + b * b + c * c + d * d);
}

double state_norm_v(const State& s, const PhysParams& p, const Grid& g) {
    return std::sqrt(vnorm_sq_v(s.v1, s.v2, p, g) + vnorm_sq_T(s.T, p, g) +
                     vnorm_sq_q(s.q, p, g));
}

EnergyReport report(const State& s, const State* s_prev, const PhysParams& p,
                    const Grid& g, const Field3D* q1, const Field3D* q2) {
    EnergyReport r;
    r.time = s.time;

    Field3D q1_local, q2_local;
    if (!q1) {
        q1_local = make_forcing_field(p.q1, g);
        q1 = &q1_local;
    }
    if (!q2) {
        q2_local = make_forcing_field(p.q2, g);
        q2 = &q2_local;
    }

    r.l2_v = std::sqrt(sq(l2_norm(s.v1, g)) + sq(l2_norm(s.v2, g)));
    r.l2_T = l2_norm(s.T, g);
    r.l2_q = l2_norm(s.q, g);
    r.l2_H = std::sqrt(sq(r.l2_v) + sq(r.l2_T) + sq(r.l2_q));

    r.v2_v = vnorm_sq_v(s.v1, s.v2, p, g);
    r.v2_T = vnorm_sq_T(s.T, p, g);
    r.v2_q = vnorm_sq_q(s.q, p, g);
    r.v2_total = r.v2_v + r.v2_T + r.v2_q;

    r.l6_q = l6_norm(s.q, g);
    r.l6_T = l6_norm(s.T, g);

    VectorField2D vbar;
    VectorField vtilde;
    split_barotropic(s, g, vbar, vtilde);
    r.l6_vtilde = l6_norm(magnitude(vtilde.x, vtilde.y, g), g);

    const Field3D v1z = ddz(s.v1, g);
    const Field3D v2z = ddz(s.v2, g);
    const Field3D Tz = ddz(s.T, g);
    const Field3D qz = ddz(s.q, g);
    const Field3D vzmag = magnitude(v1z, v2z, g);
    r.l6_vz = l6_norm(vzmag, g);
    r.l6_Tz = l6_norm(Tz, g);
    r.l6_qz = l6_norm(qz, g);
    r.l2_vz = l2_norm(vzmag, g);
    r.l2_Tz = l2_norm(Tz, g);
    r.l2_qz = l2_norm(qz, g);

    r.bnd_l2_q = boundary_l2_top(s.q, g);
    r.bnd_l2_T = boundary_l2_top(s.T, g);
    r.bnd_l6_q = boundary_l6_top(s.q, g);
    r.bnd_l6_T = boundary_l6_top(s.T, g);

    r.l2_grad_v = std::sqrt(sq(l2_norm(ddx(s.v1, g), g)) + sq(l2_norm(ddy(s.v1, g), g)) +
                            sq(l2_norm(ddx(s.v2, g), g)) + sq(l2_norm(ddy(s.v2, g), g)));
    r.l2_grad_T = std::sqrt(sq(l2_norm(ddx(s.T, g), g)) + sq(l2_norm(ddy(s.T, g), g)));
    r.l2_grad_q = std::sqrt(sq(l2_norm(ddx(s.q, g), g)) + sq(l2_norm(ddy(s.q, g), g)));
    r.l2_grad_vbar =
        std::sqrt(sq(l2_norm(ddx2(vbar.x, g), g)) + sq(l2_norm(ddy2(vbar.x, g), g)) +
                  sq(l2_norm(ddx2(vbar.y, g), g)) + sq(l2_norm(ddy2(vbar.y, g), g)));

    // H2 surrogates: operator norms on ghost-refreshed copies
    {
        Field3D c1 = s.v1, c2 = s.v2, cT = s.T, cq = s.q;
        fill_ghosts(c1, FieldKind::VelocityX, p, g);
        fill_ghosts(c2, FieldKind::VelocityY, p, g);
        fill_ghosts(cT, FieldKind::Temperature, p, g);
        fill_ghosts(cq, FieldKind::Moisture, p, g);
        Field3D la(g.nx, g.ny, g.nz), lb(g.nx, g.ny, g.nz);
        diffusion_L1(c1, c2, p, g, la, lb);
        r.h2_l1v = std::sqrt(sq(l2_norm(la, g)) + sq(l2_norm(lb, g)));
        anisotropic_laplacian(cT, 1.0 / p.rt1, 1.0 / p.rt2, g, la);
        r.h2_l2T = l2_norm(la, g);
        anisotropic_laplacian(cq, 1.0 / p.rt3, 1.0 / p.rt4, g, la);
        r.h2_l3q = l2_norm(la, g);
    }

    r.ip_q1_T = inner(*q1, s.T, g);
    r.ip_q2_q = inner(*q2, s.q, g);

    r.slack_poincare_q = poincare_const_q(p, g) * r.v2_q - sq(r.l2_q);
    r.slack_poincare_vT =
        poincare_const_vT(p, g) * (r.v2_v + r.v2_T) - (sq(r.l2_v) + sq(r.l2_T));

    if (s_prev && s.time > s_prev->time) {
        const double dt = s.time - s_prev->time;
        auto diff_norm = [&](const Field3D& a, const Field3D& b) {
            Field3D d(g.nx, g.ny, g.nz);
            d.for_each(
                [&](int i, int j, int k, double& x) { x = a(i, j, k) - b(i, j, k); });
            return l2_norm(d, g) / dt;
        };
        const double v1t = diff_norm(s.v1, s_prev->v1);
        const double v2t = diff_norm(s.v2, s_prev->v2);
        r.l2_vt = std::sqrt(sq(v1t) + sq(v2t));
        r.l2_Tt = diff_norm(s.T, s_prev->T);
        r.l2_qt = diff_norm(s.q, s_prev->q);

        const double prev_l2q = l2_norm(s_prev->q, g);
        const double prev_l2v =
            std::sqrt(sq(l2_norm(s_prev->v1, g)) + sq(l2_norm(s_prev->v2, g)));
        const double prev_l2T = l2_norm(s_prev->T, g);
        r.r_q = std::fabs(0.5 * (sq(r.l2_q) - sq(prev_l2q)) / dt + r.v2_q - r.ip_q2_q);
        r.r_vT = std::fabs(0.5 * ((sq(r.l2_v) + sq(r.l2_T)) -
                                  (sq(prev_l2v) + sq(prev_l2T))) /
                               dt +
                           r.v2_v + r.v2_T - r.ip_q1_T);
        r.has_rates = true;
    }
    return r;
}

std::vector<double> check_q_balance(const std::vector<EnergyReport>& history,
                                    double dt_between) {
    std::vector<double> out;
    if (history.size() < 3) return out;
    out.reserve(history.size() - 2);
    for (size_t i = 1; i + 1 < history.size(); ++i) {
        const double ddt = 0.5 * (sq(history[i + 1].l2_q) - sq(history[i - 1].l2_q)) /
                           (2.0 * dt_between);
        out.push_back(std::fabs(ddt + history[i].v2_q - history[i].ip_q2_q));
    }
    return out;
}

double check_buoyancy_identity(const State& s, const PhysParams& p, const Grid& g) {
    const Field3D w = diagnose_w(s, g);
    Field3D b1(g.nx, g.ny, g.nz), b2(g.nx, g.ny, g.nz);
    buoyancy_gradient(s, p, g, b1, b2);
    const double s1 = inner(b1, s.v1, g) + inner(b2, s.v2, g);
    const double s2 = inner(thermo_source(s, w, p, g), s.T, g);
    return std::fabs(s1 - s2) / (1.0 + std::fabs(s1) + std::fabs(s2));
}

void tendency_rate_norms(const State& s, const PhysParams& p, const Grid& g,
                         double& vt, double& Tt, double& qt) {
    const Tendency t = assemble_tendency(s, p, g);
    vt = std::sqrt(sq(l2_norm(t.dv1, g)) + sq(l2_norm(t.dv2, g)));
    Tt = l2_norm(t.dT, g);
    qt = l2_norm(t.dq, g);
}

} // namespace mpe
