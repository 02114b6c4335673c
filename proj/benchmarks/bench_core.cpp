#include <benchmark/benchmark.h>

#include "mpe/boundary.hpp"
#include "mpe/dynamics.hpp"
#include "mpe/elliptic.hpp"
#include "mpe/energy.hpp"
#include "mpe/forcing.hpp"
#include "mpe/grid.hpp"
#include "mpe/hydrostatics.hpp"
#include "mpe/state.hpp"
#include "mpe/stepper.hpp"

using namespace mpe;

namespace {

State prepared_state(const Grid& g, const PhysParams& p, std::uint64_t seed) {
    State s = random_state(seed, 0.5, 0.5, 0.5, p, g);
    apply_boundary_conditions(s, p, g);
    return s;
}

void bm_fill_ghosts(benchmark::State& bs) {
    const int n = static_cast<int>(bs.range(0));
    const Grid g = Grid::make(n, n, n, 1.0, 1.0);
    const PhysParams p;
    State s = prepared_state(g, p, 1);
    for (auto _ : bs) {
        apply_boundary_conditions(s, p, g);
        benchmark::DoNotOptimize(s.T(1, 1, 1));
        benchmark::ClobberMemory();
    }
    bs.SetItemsProcessed(bs.iterations() * 4 * (n + 1) * (n + 1) * (n + 1));
}

void bm_laplacian(benchmark::State& bs) {
    const int n = static_cast<int>(bs.range(0));
    const Grid g = Grid::make(n, n, n, 1.0, 1.0);
    const PhysParams p;
    State s = prepared_state(g, p, 2);
    Field3D out(g.nx, g.ny, g.nz);
    for (auto _ : bs) {
        anisotropic_laplacian(s.T, 1.0, 0.5, g, out);
        benchmark::DoNotOptimize(out(1, 1, 1));
        benchmark::ClobberMemory();
    }
    bs.SetItemsProcessed(bs.iterations() * (n + 1) * (n + 1) * (n + 1));
}

void bm_tendency(benchmark::State& bs) {
    const int n = static_cast<int>(bs.range(0));
    const Grid g = Grid::make(n, n, n, 1.0, 1.0);
    const PhysParams p;
    State s = prepared_state(g, p, 3);
    const Field3D w = diagnose_w(s, g);
    for (auto _ : bs) {
        Tendency t = assemble_tendency(s, p, g, &w);
        benchmark::DoNotOptimize(t.dT(1, 1, 1));
        benchmark::ClobberMemory();
    }
}

void bm_projection(benchmark::State& bs) {
    const int n = static_cast<int>(bs.range(0));
    const Grid g = Grid::make(n, n, n, 1.0, 1.0);
    const PhysParams p;
    const State base = prepared_state(g, p, 4);
    EllipticSolve es;
    es.tolerance = 1e-10;
    for (auto _ : bs) {
        bs.PauseTiming();
        State s = base;
        bs.ResumeTiming();
        Field2D phi = project(s.v1, s.v2, 0.02, g, es);
        benchmark::DoNotOptimize(phi(0, 0));
        benchmark::ClobberMemory();
    }
    bs.SetLabel("CG iters/solve ~" + std::to_string(es.last_iters));
}

void bm_step(benchmark::State& bs) {
    const int n = static_cast<int>(bs.range(0));
    const Grid g = Grid::make(n, n, n, 1.0, 1.0);
    PhysParams p;
    p.q1.preset = ForcingSpec::Preset::Fourier;
    p.q1.amplitude = 0.5;
    StepConfig cfg;
    cfg.dt = 0.02;
    cfg.t_end = 0.02;
    TimeStepper ts(p, g, cfg);
    const State s0 = prepared_state(g, p, 5);
    for (auto _ : bs) {
        RunResult r = ts.run(s0);
        benchmark::DoNotOptimize(r.final.time);
        benchmark::ClobberMemory();
    }
}

void bm_energy_report(benchmark::State& bs) {
    const int n = static_cast<int>(bs.range(0));
    const Grid g = Grid::make(n, n, n, 1.0, 1.0);
    const PhysParams p;
    const State s = prepared_state(g, p, 6);
    for (auto _ : bs) {
        EnergyReport er = report(s, nullptr, p, g);
        benchmark::DoNotOptimize(er.v2_total);
        benchmark::ClobberMemory();
    }
}

BENCHMARK(bm_fill_ghosts)->Arg(16)->Arg(32);
BENCHMARK(bm_laplacian)->Arg(16)->Arg(32);
BENCHMARK(bm_tendency)->Arg(16)->Arg(32);
BENCHMARK(bm_projection)->Arg(16)->Arg(32);
BENCHMARK(bm_step)->Arg(16);
BENCHMARK(bm_energy_report)->Arg(16)->Arg(32);

} // namespace

BENCHMARK_MAIN();
