#include "mpe/hydrostatics.hpp"

#include "mpe/operators.hpp"

namespace mpe {

Field3D diagnose_w(const State& s, const Grid& g) {
    Field3D div = div_c3(s.v1, s.v2, g);
    Field3D w = cumtrapz_z(div, g);
    w.for_each([](int, int, int, double& v) { v = -v; });
    return w;
}

Field3D diagnose_phi(const State& s, const Field2D& phi_s, const PhysParams& p,
                     const Grid& g) {
    Field3D integrand(g.nx, g.ny, g.nz);
    for (int k = 0; k <= g.nz; ++k) {
        const double prof = p.bp_over_p(g.z(k));
        for (int j = 0; j <= g.ny; ++j)
            for (int i = 0; i <= g.nx; ++i)
                integrand(i, j, k) = prof * (1.0 + p.a * s.q(i, j, k)) * s.T(i, j, k);
    }
    Field3D phi = cumtrapz_z(integrand, g);
    for (int k = 0; k <= g.nz; ++k)
        for (int j = 0; j <= g.ny; ++j)
            for (int i = 0; i <= g.nx; ++i)
                phi(i, j, k) = phi_s(i, j) - phi(i, j, k);
    return phi;
}

void split_barotropic(const State& s, const Grid& g, VectorField2D& v_bar,
                      VectorField& v_tilde) {
    v_bar.x = vertical_average(s.v1, g);
    v_bar.y = vertical_average(s.v2, g);
    v_tilde = VectorField(g.nx, g.ny, g.nz);
    for (int k = 0; k <= g.nz; ++k)
        for (int j = 0; j <= g.ny; ++j)
            for (int i = 0; i <= g.nx; ++i) {
                v_tilde.x(i, j, k) = s.v1(i, j, k) - v_bar.x(i, j);
                v_tilde.y(i, j, k) = s.v2(i, j, k) - v_bar.y(i, j);
            }
}

Diagnostics diagnose(const State& s, const Field2D& phi_s, const PhysParams& p,
                     const Grid& g) {
    Diagnostics d;
    d.w = diagnose_w(s, g);
    d.phi = diagnose_phi(s, phi_s, p, g);
    split_barotropic(s, g, d.v_bar, d.v_tilde);
    return d;
}

} // namespace mpe
