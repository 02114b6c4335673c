#include "mpe/mms.hpp"

#include <cmath>

#include "mpe/forcing.hpp"
#include "mpe/operators.hpp"

namespace mpe {

namespace {

constexpr double kPi = 3.14159265358979323846;

// 5-point Gauss-Legendre on [a, b]
template <class F>
double gauss5(F&& f, double a, double b) {
    static const double xs[] = {0.0, 0.5384693101056831, -0.5384693101056831,
                                0.9061798459386640, -0.9061798459386640};
    static const double ws[] = {0.5688888888888889, 0.4786286704993665,
                                0.4786286704993665, 0.2369268850561891,
                                0.2369268850561891};
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0.0;
    for (int i = 0; i < 5; ++i) acc += ws[i] * f(mid + half * xs[i]);
    return acc * half;
}

// composite quadrature accurate far beyond the discretization error
template <class F>
double integrate(F&& f, double a, double b) {
    const int slices = 8;
    double acc = 0.0;
    for (int s = 0; s < slices; ++s) {
        const double x0 = a + (b - a) * s / slices;
        const double x1 = a + (b - a) * (s + 1) / slices;
        acc += gauss5(f, x0, x1);
    }
    return acc;
}

} // namespace

ManufacturedCase::ManufacturedCase(const PhysParams& p, const Grid& g)
    : p_(p), g_(g) {
    r_T_ = robin_profile_root(p.alpha * p.rt2);
    r_q_ = robin_profile_root(p.beta * p.rt4);

    int_T_.assign(g.npz(), 0.0);
    int_Tq_.assign(g.npz(), 0.0);
    for (int k = 1; k <= g.nz; ++k) {
        const double a = g.z(k - 1), b = g.z(k);
        int_T_[k] = int_T_[k - 1] +
                    integrate([&](double z) { return p_.bp_over_p(z) * std::cos(r_T_ * z); },
                              a, b);
        int_Tq_[k] =
            int_Tq_[k - 1] +
            integrate([&](double z) {
                return p_.bp_over_p(z) * std::cos(r_T_ * z) * std::cos(r_q_ * z);
            }, a, b);
    }
}

double ManufacturedCase::tau(double t) const { return 1.0 + 0.5 * std::sin(freq * t); }
double ManufacturedCase::dtau(double t) const {
    return 0.5 * freq * std::cos(freq * t);
}

State ManufacturedCase::exact_state(double t) const {
    State s(g_);
    const double kx = kPi / g_.lx, ky = kPi / g_.ly, kz = 2.0 * kPi;
    const double ta = tau(t);
    s.v1.for_each([&](int i, int j, int k, double& x) {
        const double xx = g_.x(i), yy = g_.y(j), zz = g_.z(k);
        const double cz = std::cos(kz * zz);
        x = amp_v1 * std::sin(kx * xx) * std::cos(ky * yy) * cz * ta;
        s.v2(i, j, k) = amp_v2 * std::cos(kx * xx) * std::sin(ky * yy) * cz * ta;
        const double cxy = std::cos(kx * xx) * std::cos(ky * yy);
        s.T(i, j, k) = amp_T * cxy * std::cos(r_T_ * zz) * ta;
        s.q(i, j, k) = amp_q * cxy * std::cos(r_q_ * zz) * ta;
    });
    s.time = t;
    return s;
}

Field3D ManufacturedCase::exact_w(double t) const {
    Field3D w(g_.nx, g_.ny, g_.nz);
    const double kx = kPi / g_.lx, ky = kPi / g_.ly, kz = 2.0 * kPi;
    const double coef = -(amp_v1 * kx + amp_v2 * ky) / kz * tau(t);
    w.for_each([&](int i, int j, int k, double& x) {
        x = coef * std::cos(kx * g_.x(i)) * std::cos(ky * g_.y(j)) *
            std::sin(kz * g_.z(k));
    });
    return w;
}

void ManufacturedCase::add_sources(double t, Tendency& tend) const {
    const double kx = kPi / g_.lx, ky = kPi / g_.ly, kz = 2.0 * kPi;
    const double ta = tau(t), dta = dtau(t);
    const double cor = p_.f / p_.ro;
    const double lam1 = (kx * kx + ky * ky) / p_.re1 + kz * kz / p_.re2;
    const double lamT = (kx * kx + ky * ky) / p_.rt1 + r_T_ * r_T_ / p_.rt2;
    const double lamq = (kx * kx + ky * ky) / p_.rt3 + r_q_ * r_q_ / p_.rt4;
    const double wcoef = -(amp_v1 * kx + amp_v2 * ky) / kz;

    for (int k = 0; k <= g_.nz; ++k) {
        const double zz = g_.z(k);
        const double sz = std::sin(kz * zz), cz = std::cos(kz * zz);
        const double zT = std::cos(r_T_ * zz), zq = std::cos(r_q_ * zz);
        const double zTp = -r_T_ * std::sin(r_T_ * zz);
        const double zqp = -r_q_ * std::sin(r_q_ * zz);
        const double prof = p_.bp_over_p(zz);
        const double iT = int_T_[k], iTq = int_Tq_[k];
        for (int j = 0; j <= g_.ny; ++j) {
            const double sy = std::sin(ky * g_.y(j)), cy = std::cos(ky * g_.y(j));
            for (int i = 0; i <= g_.nx; ++i) {
                const double sx = std::sin(kx * g_.x(i)), cx = std::cos(kx * g_.x(i));

                const double v1 = amp_v1 * sx * cy * cz * ta;
                const double v2 = amp_v2 * cx * sy * cz * ta;
                const double T = amp_T * cx * cy * zT * ta;
                const double q = amp_q * cx * cy * zq * ta;
                const double w = wcoef * cx * cy * sz * ta;

                const double v1x = amp_v1 * kx * cx * cy * cz * ta;
                const double v1y = -amp_v1 * ky * sx * sy * cz * ta;
                const double v1z = -amp_v1 * kz * sx * cy * sz * ta;
                const double v2x = -amp_v2 * kx * sx * sy * cz * ta;
                const double v2y = amp_v2 * ky * cx * cy * cz * ta;
                const double v2z = -amp_v2 * kz * cx * sy * sz * ta;
                const double Tx = -amp_T * kx * sx * cy * zT * ta;
                const double Ty = -amp_T * ky * cx * sy * zT * ta;
                const double Tz = amp_T * cx * cy * zTp * ta;
                const double qx = -amp_q * kx * sx * cy * zq * ta;
                const double qy = -amp_q * ky * cx * sy * zq * ta;
                const double qz2 = amp_q * cx * cy * zqp * ta;

                const double b1 = -amp_T * kx * sx * cy * ta * iT -
                                  2.0 * p_.a * amp_T * amp_q * kx * sx * cx * cy * cy *
                                      ta * ta * iTq;
                const double b2 = -amp_T * ky * cx * sy * ta * iT -
                                  2.0 * p_.a * amp_T * amp_q * ky * cx * cx * sy * cy *
                                      ta * ta * iTq;

                const double th = prof * (1.0 + p_.a * q) * (-w);

                tend.dv1(i, j, k) += amp_v1 * sx * cy * cz * dta + v1 * v1x + v2 * v1y +
                                     w * v1z - cor * v2 - b1 + lam1 * v1;
                tend.dv2(i, j, k) += amp_v2 * cx * sy * cz * dta + v1 * v2x + v2 * v2y +
                                     w * v2z + cor * v1 - b2 + lam1 * v2;
                tend.dT(i, j, k) += amp_T * cx * cy * zT * dta + v1 * Tx + v2 * Ty +
                                    w * Tz + th + lamT * T;
                tend.dq(i, j, k) += amp_q * cx * cy * zq * dta + v1 * qx + v2 * qy +
                                    w * qz2 + lamq * q;
            }
        }
    }
}

ManufacturedCase::Errors ManufacturedCase::errors(const State& s) const {
    const State ex = exact_state(s.time);
    auto err = [&](const Field3D& a, const Field3D& b) {
        Field3D d(g_.nx, g_.ny, g_.nz);
        d.for_each([&](int i, int j, int k, double& x) { x = a(i, j, k) - b(i, j, k); });
        return l2_norm(d, g_);
    };
    Errors e{};
    e.v1 = err(s.v1, ex.v1);
    e.v2 = err(s.v2, ex.v2);
    e.T = err(s.T, ex.T);
    e.q = err(s.q, ex.q);
    e.combined = std::sqrt(e.v1 * e.v1 + e.v2 * e.v2 + e.T * e.T + e.q * e.q);
    return e;
}

} // namespace mpe
