#include <doctest.h>

#include <cmath>
#include <vector>

#include "mpe/config.hpp"
#include "mpe/covering.hpp"
#include "mpe/errors.hpp"
#include "mpe/forcing.hpp"
#include "mpe/grid.hpp"
#include "mpe/params.hpp"
#include "mpe/state.hpp"
#include "mpe/stepper.hpp"

using namespace mpe;

namespace {

double euclid(const Point& a, const Point& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

MetricCloud segment_cloud(int n) {
    MetricCloud c;
    for (int i = 0; i <= n; ++i)
        c.points.push_back({static_cast<double>(i) / n});
    c.n_H = euclid;
    c.n_V = euclid;
    return c;
}

MetricCloud square_cloud(int m) {
    MetricCloud c;
    for (int j = 0; j <= m; ++j)
        for (int i = 0; i <= m; ++i)
            c.points.push_back(
                {static_cast<double>(i) / m, static_cast<double>(j) / m});
    c.n_H = euclid;
    c.n_V = euclid;
    return c;
}

const MapFn kIdentity = [](const Point& x) { return x; };

} // namespace

TEST_CASE("dimension bound is exact on the power-of-two oracle cases") {
    CoveringTree t;
    t.theta = 0.5;

    t.n_theta = 2;
    CHECK(fractal_dim_bound(t).value == 1.0);
    CHECK_FALSE(fractal_dim_bound(t).degenerate);

    t.n_theta = 4;
    CHECK(fractal_dim_bound(t).value == 2.0);

    t.theta = 1.0 / 3.0;
    t.n_theta = 9;
    CHECK(fractal_dim_bound(t).value == doctest::Approx(2.0).epsilon(1e-12));

    t.n_theta = 1;
    const DimBound d = fractal_dim_bound(t);
    CHECK(d.value == 0.0);
    CHECK(d.degenerate);
}

TEST_CASE("greedy covering of a segment: two half-radius balls, dim 1") {
    const MetricCloud c = segment_cloud(32);
    const CoveringTree t = build_covering(kIdentity, c, 0.5, 2);

    CHECK(t.radius0 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(t.n_theta == 2);
    CHECK_FALSE(t.degenerate);
    CHECK(t.counts_within_bound);
    REQUIRE(t.levels.size() == 2);
    CHECK(t.levels[0].radius == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(t.levels[1].radius == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(t.levels[1].centers.size() <= 4);
    for (const auto& lvl : t.levels)
        CHECK(lvl.max_miss <= lvl.radius * (1.0 + 1e-11));

    const DimBound d = fractal_dim_bound(t);
    CHECK(d.value == 1.0);
    CHECK(d.value >= 0.9);
    CHECK(d.value <= 1.3);
}

TEST_CASE("greedy covering of a square: four balls, dim 2") {
    const MetricCloud c = square_cloud(8);
    const CoveringTree t = build_covering(kIdentity, c, 0.5, 1);
    CHECK(t.n_theta == 4);
    const DimBound d = fractal_dim_bound(t);
    CHECK(d.value == 2.0);
    CHECK(d.value >= 1.8);
    CHECK(d.value <= 2.4);
}

TEST_CASE("covering numbers grow as the radius shrinks") {
    const MetricCloud c = segment_cloud(64);
    const CoveringTree half = build_covering(kIdentity, c, 0.5, 1);
    const CoveringTree quarter = build_covering(kIdentity, c, 0.25, 1);
    CHECK(quarter.n_theta >= half.n_theta);
}

TEST_CASE("covering a constant map collapses to one degenerate center") {
    const MetricCloud c = segment_cloud(16);
    const MapFn constant = [](const Point&) { return Point{0.25}; };
    const CoveringTree t = build_covering(constant, c, 0.5, 2);
    CHECK(t.n_theta == 1);
    CHECK(t.degenerate);
    const DimBound d = fractal_dim_bound(t);
    CHECK(d.value == 0.0);
    CHECK(d.degenerate);
}

TEST_CASE("smoothing quotient: identity, exact contraction, duplicates") {
    MetricCloud c = segment_cloud(16);
    const SmoothingEstimate id = smoothing_map(kIdentity, c);
    CHECK(id.K == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(id.pairs_used == 17 * 16 / 2);
    CHECK(id.duplicates_removed == 0);

    // halving map against a doubled strong metric: quotient exactly one
    MetricCloud c2 = segment_cloud(16);
    c2.n_V = [](const Point& a, const Point& b) { return 2.0 * euclid(a, b); };
    const MapFn halve = [](const Point& x) { return Point{x[0] / 2.0}; };
    const SmoothingEstimate h = smoothing_map(halve, c2);
    CHECK(h.K == doctest::Approx(1.0).epsilon(1e-14));

    MetricCloud dup = segment_cloud(8);
    dup.points.push_back(dup.points[3]);
    const SmoothingEstimate d = smoothing_map(kIdentity, dup);
    CHECK(d.duplicates_removed == 1);
    CHECK(d.K == doctest::Approx(1.0).epsilon(1e-14));

    MetricCloud same;
    same.points = {{0.5}, {0.5}, {0.5}};
    same.n_H = euclid;
    same.n_V = euclid;
    CHECK_THROWS_AS(smoothing_map(kIdentity, same), DegeneratePair);
}

TEST_CASE("box-counting dimension matches segment and square references") {
    std::vector<Point> seg;
    for (int i = 0; i <= 128; ++i) seg.push_back({i / 128.0});
    const double d1 = box_counting_dim(seg);
    CHECK(d1 == doctest::Approx(1.0).epsilon(0.10));

    std::vector<Point> sq;
    for (int j = 0; j <= 16; ++j)
        for (int i = 0; i <= 16; ++i) sq.push_back({i / 16.0, j / 16.0});
    const double d2 = box_counting_dim(sq);
    CHECK(d2 == doctest::Approx(2.0).epsilon(0.08));

    CHECK_THROWS_AS(box_counting_dim({{0.0}, {1.0}}), InsufficientScales);
    std::vector<Point> flat(10, Point{0.7, 0.7});
    CHECK(box_counting_dim(flat) == 0.0);
}

TEST_CASE("holder maps do not raise the dimension estimate") {
    std::vector<Point> seg;
    for (int i = 0; i <= 128; ++i) seg.push_back({i / 128.0});
    CHECK(holder_dim_property(kIdentity, seg, 1.0));
    const MapFn square_pt = [](const Point& x) { return Point{x[0] * x[0]}; };
    CHECK(holder_dim_property(square_pt, seg, 1.0));

    std::vector<Point> sq;
    for (int j = 0; j <= 16; ++j)
        for (int i = 0; i <= 16; ++i) sq.push_back({i / 16.0, j / 16.0});
    const MapFn linear = [](const Point& x) {
        return Point{0.5 * x[0] + 0.1 * x[1], 0.3 * x[1]};
    };
    CHECK(holder_dim_property(linear, sq, 1.0));
}

TEST_CASE("manifest carries the headline numbers") {
    const MetricCloud c = segment_cloud(32);
    const CoveringTree t = build_covering(kIdentity, c, 0.5, 2);
    const SmoothingEstimate se = smoothing_map(kIdentity, c);
    const DimBound d = fractal_dim_bound(t);
    const std::string m = covering_manifest(t, se, d);
    CHECK(m.find("theta") != std::string::npos);
    CHECK(m.find("n_theta = 2") != std::string::npos);
    CHECK(m.find("dim_bound") != std::string::npos);
    CHECK(m.find("smoothing_K") != std::string::npos);
    CHECK(m.find("level,centers,radius,max_miss") != std::string::npos);
}

TEST_CASE("state flattening round trips bitwise and checks sizes") {
    const PhysParams p;
    const Grid g = Grid::make(6, 5, 4, 1.0, 1.0);
    const State s = random_state(99, 0.4, 0.3, 0.2, p, g);
    const Point x = flatten_state(s, g);
    CHECK(x.size() == 4u * 7 * 6 * 5);
    const State back = unflatten_state(x, g);
    bool same = true;
    s.v1.for_each([&](int i, int j, int k, double v) { same &= v == back.v1(i, j, k); });
    s.v2.for_each([&](int i, int j, int k, double v) { same &= v == back.v2(i, j, k); });
    s.T.for_each([&](int i, int j, int k, double v) { same &= v == back.T(i, j, k); });
    s.q.for_each([&](int i, int j, int k, double v) { same &= v == back.q(i, j, k); });
    CHECK(same);

    Point bad(7, 0.0);
    CHECK_THROWS_AS(unflatten_state(bad, g), std::invalid_argument);
}

TEST_CASE("the semigroup map is an honest integration of the dynamics") {
    PhysParams p;
    p.q1.preset = ForcingSpec::Preset::Fourier;
    p.q1.amplitude = 0.4;
    const Grid g = Grid::make(6, 6, 4, 1.0, 1.0);
    StepConfig cfg;
    cfg.dt = 0.05;
    cfg.t_end = 123.0; // horizon comes from t_map, not from here

    const MapFn S = make_semigroup_map(p, g, cfg, 0.25);
    const State s0 = random_state(17, 0.2, 0.2, 0.2, p, g);
    const Point image = S(flatten_state(s0, g));

    StepConfig direct = cfg;
    direct.t_end = 0.25;
    direct.snapshot_every = 1 << 30;
    TimeStepper ts(p, g, direct);
    State start = s0;
    start.time = 0.0;
    const State ref = ts.run(start).final;
    const Point want = flatten_state(ref, g);

    REQUIRE(image.size() == want.size());
    bool same = true;
    for (size_t i = 0; i < want.size(); ++i) same &= image[i] == want[i];
    CHECK(same);

    // and it actually moved the state
    const MetricCloud mc = make_state_cloud({s0}, p, g);
    CHECK(mc.n_H(image, flatten_state(s0, g)) > 0.0);
}

TEST_CASE("reduced-map analysis on a coarse grid produces a full report") {
    RunConfig c;
    c.nx = c.ny = c.nz = 6;
    c.stepping.dt = 0.05;
    c.stepping.t_end = 0.5; // warmup horizon
    c.seed = 21;
    c.params.q1.preset = ForcingSpec::Preset::Fourier;
    c.params.q1.amplitude = 0.4;

    const CoveringAnalysis a = analyze_reduced_map(c, 8, 2, 0.5, 2, 0.25);
    CHECK(a.sample_size == 8);
    CHECK(a.t_map == 0.25);
    CHECK(a.smoothing.K > 0.0);
    CHECK(std::isfinite(a.smoothing.K));
    CHECK(a.tree.levels.size() == 2);
    CHECK(a.tree.n_theta >= 1);
    CHECK(std::isfinite(a.dim.value));
    CHECK(a.dim.value >= 0.0);
}
