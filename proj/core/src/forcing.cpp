#include "mpe/forcing.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace mpe {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

Field3D make_forcing_field(const ForcingSpec& spec, const Grid& g) {
    Field3D out(g.nx, g.ny, g.nz);
    switch (spec.preset) {
    case ForcingSpec::Preset::Zero:
        break;
    case ForcingSpec::Preset::Fourier: {
        const double kx = spec.mode_x * kPi / g.lx;
        const double ky = spec.mode_y * kPi / g.ly;
        const double kz = spec.mode_z * kPi;
        out.for_each([&](int i, int j, int k, double& x) {
            x = spec.amplitude * std::cos(kx * g.x(i)) * std::cos(ky * g.y(j)) *
                std::cos(kz * g.z(k));
        });
        break;
    }
    case ForcingSpec::Preset::Bump: {
        const double cx = 0.5 * g.lx, cy = 0.5 * g.ly;
        const double sigma = std::min(g.lx, g.ly) / 8.0;
        const double inv2s2 = 1.0 / (2.0 * sigma * sigma);
        out.for_each([&](int i, int j, int k, double& x) {
            const double dx = g.x(i) - cx, dy = g.y(j) - cy;
            const double z = g.z(k);
            const double zprof = 16.0 * z * z * (1.0 - z) * (1.0 - z);
            x = spec.amplitude * std::exp(-(dx * dx + dy * dy) * inv2s2) * zprof;
        });
        break;
    }
    }
    return out;
}

double robin_profile_root(double kappa) {
    // r tan r is continuous and strictly increasing from 0 to +inf on
    // [0, pi/2), so bisection converges unconditionally.
    double lo = 0.0, hi = kPi / 2.0 - 1e-12;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid * std::tan(mid) < kappa)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

State random_state(std::uint64_t seed, double amp_v, double amp_T, double amp_q,
                   const PhysParams& p, const Grid& g) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);

    State s(g);
    const double rT = robin_profile_root(p.alpha * p.rt2);
    const double rq = robin_profile_root(p.beta * p.rt4);

    // Velocity: x-Dirichlet (sin) for v1, y-Dirichlet for v2, vertical modes
    // cos(c pi z) with c >= 1 so the discrete vertical average vanishes.
    struct VMode {
        int a, b, c;
        double c1, c2;
    };
    std::vector<VMode> vmodes;
    for (int a = 1; a <= 2; ++a)
        for (int b = 1; b <= 2; ++b)
            for (int c = 1; c <= 2; ++c)
                vmodes.push_back({a, b, c, unit(rng), unit(rng)});
    const double vscale = amp_v / static_cast<double>(vmodes.size());

    // Scalars: Neumann horizontal modes times the Robin-compatible profile.
    struct SMode {
        int a, b;
        double cT, cq;
    };
    std::vector<SMode> smodes;
    for (int a = 0; a <= 2; ++a)
        for (int b = 0; b <= 2; ++b)
            smodes.push_back({a, b, unit(rng), unit(rng)});
    const double tscale = amp_T / static_cast<double>(smodes.size());
    const double qscale = amp_q / static_cast<double>(smodes.size());

    s.v1.for_each([&](int i, int j, int k, double& x) {
        const double xx = g.x(i), yy = g.y(j), zz = g.z(k);
        double acc1 = 0.0, acc2 = 0.0;
        for (const VMode& m : vmodes) {
            const double zf = std::cos(m.c * kPi * zz);
            acc1 += m.c1 * std::sin(m.a * kPi * xx / g.lx) *
                    std::cos(m.b * kPi * yy / g.ly) * zf;
            acc2 += m.c2 * std::cos(m.a * kPi * xx / g.lx) *
                    std::sin(m.b * kPi * yy / g.ly) * zf;
        }
        x = vscale * acc1;
        s.v2(i, j, k) = vscale * acc2;
        double at = 0.0, aq = 0.0;
        for (const SMode& m : smodes) {
            const double hf = std::cos(m.a * kPi * xx / g.lx) *
                              std::cos(m.b * kPi * yy / g.ly);
            at += m.cT * hf;
            aq += m.cq * hf;
        }
        s.T(i, j, k) = tscale * at * std::cos(rT * zz);
        s.q(i, j, k) = qscale * aq * std::cos(rq * zz);
    });
    s.time = 0.0;
    return s;
}

} // namespace mpe
