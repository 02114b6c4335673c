#include "mpe/covering.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <unordered_set>

#include "mpe/energy.hpp"
#include "mpe/errors.hpp"
#include "mpe/fit.hpp"
#include "mpe/forcing.hpp"

namespace mpe {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Point centroid(const std::vector<Point>& pts, const std::vector<int>& idx) {
    Point m(pts[0].size(), 0.0);
    for (int i : idx)
        for (size_t c = 0; c < m.size(); ++c) m[c] += pts[i][c];
    for (double& x : m) x /= static_cast<double>(idx.size());
    return m;
}

// farthest point from a reference under d; strict > keeps the lowest index on ties
int farthest_from(const std::vector<Point>& pts, const std::vector<int>& idx,
                  const Point& ref, const MetricFn& d) {
    int best = idx[0];
    double bd = -1.0;
    for (int i : idx) {
        const double di = d(pts[i], ref);
        if (di > bd) {
            bd = di;
            best = i;
        }
    }
    return best;
}

struct GreedyCover {
    std::vector<int> centers;  // global indices
    std::vector<int> assign;   // per member of idx: position into centers
    double max_miss = 0.0;
};

// Cover {pts[i] : i in idx} by balls of the given radius centered at members.
// The first center is the member farthest from the subset mean; subsequent
// centers are the uncovered member farthest from all existing centers. Each
// member is assigned to the first center that covers it.
GreedyCover greedy_cover(const std::vector<Point>& pts, const std::vector<int>& idx,
                         const MetricFn& d, double radius) {
    const double tol = radius * (1.0 + 1e-12);
    const size_t n = idx.size();
    GreedyCover out;
    out.assign.assign(n, -1);
    std::vector<double> nearest(n, kInf);

    int next = farthest_from(pts, idx, centroid(pts, idx), d);
    for (;;) {
        const int ci = static_cast<int>(out.centers.size());
        out.centers.push_back(next);
        for (size_t m = 0; m < n; ++m) {
            const double dm = d(pts[idx[m]], pts[next]);
            nearest[m] = std::min(nearest[m], dm);
            if (out.assign[m] < 0 && dm <= tol) out.assign[m] = ci;
        }
        // pick the uncovered member farthest from every center so far
        next = -1;
        double bd = -1.0;
        for (size_t m = 0; m < n; ++m)
            if (out.assign[m] < 0 && nearest[m] > bd) {
                bd = nearest[m];
                next = idx[m];
            }
        if (next < 0) break;
    }

    for (size_t m = 0; m < n; ++m) {
        const double miss = d(pts[idx[m]], pts[out.centers[out.assign[m]]]);
        if (miss > tol)
            throw CoverageFailure("point misses its assigned center by " +
                                  std::to_string(miss) + " > radius " +
                                  std::to_string(radius));
        out.max_miss = std::max(out.max_miss, miss);
    }
    return out;
}

} // namespace

SmoothingEstimate smoothing_map(const MapFn& S, const MetricCloud& cloud) {
    const auto& pts = cloud.points;
    const long n = static_cast<long>(pts.size());
    if (n < 2) throw DegeneratePair("smoothing estimate needs at least two points");

    // duplicate removal under a relative weak-metric floor
    std::vector<double> dists;
    dists.reserve(static_cast<size_t>(n) * (n - 1) / 2);
    for (long i = 0; i < n; ++i)
        for (long j = i + 1; j < n; ++j) dists.push_back(cloud.n_H(pts[i], pts[j]));
    std::vector<double> sorted = dists;
    std::sort(sorted.begin(), sorted.end());
    const double med = sorted[sorted.size() / 2];
    if (med <= 0.0)
        throw DegeneratePair("all point pairs coincide in the weak metric");
    const double floor = 1e-12 * med;

    std::vector<long> kept;
    SmoothingEstimate est;
    for (long i = 0; i < n; ++i) {
        bool dup = false;
        for (long k : kept)
            if (cloud.n_H(pts[i], pts[k]) <= floor) {
                dup = true;
                break;
            }
        if (dup)
            ++est.duplicates_removed;
        else
            kept.push_back(i);
    }
    if (kept.size() < 2)
        throw DegeneratePair("fewer than two distinct points after duplicate removal");

    std::vector<Point> images;
    images.reserve(kept.size());
    for (long k : kept) images.push_back(S(pts[k]));

    for (size_t a = 0; a < kept.size(); ++a)
        for (size_t b = a + 1; b < kept.size(); ++b) {
            const double dh = cloud.n_H(pts[kept[a]], pts[kept[b]]);
            const double dv = cloud.n_V(images[a], images[b]);
            est.K = std::max(est.K, dv / dh);
            ++est.pairs_used;
        }
    return est;
}

CoveringTree build_covering(const MapFn& S, const MetricCloud& cloud, double theta,
                            int k_max) {
    if (!(theta > 0.0 && theta < 1.0))
        throw std::invalid_argument("covering: theta must lie in (0,1)");
    if (k_max < 1) throw std::invalid_argument("covering: k_max must be >= 1");
    if (cloud.points.empty()) throw std::invalid_argument("covering: empty cloud");

    const auto& d = cloud.n_H;
    const auto& pts = cloud.points;
    const int n = static_cast<int>(pts.size());
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i;

    CoveringTree tree;
    tree.theta = theta;
    const int x0 = farthest_from(pts, all, centroid(pts, all), d);
    for (int i = 0; i < n; ++i) tree.radius0 = std::max(tree.radius0, d(pts[i], pts[x0]));

    std::vector<Point> y = pts;                 // k-fold images of the sample
    std::vector<std::vector<int>> clusters{all}; // current ball membership

    for (int k = 1; k <= k_max; ++k) {
        for (auto& p : y) p = S(p);
        CoveringLevel lev;
        lev.radius = std::pow(theta, k) * tree.radius0;

        std::vector<std::vector<int>> next_clusters;
        for (const auto& cl : clusters) {
            if (cl.empty()) continue;
            const GreedyCover gc = greedy_cover(y, cl, d, lev.radius);
            const int base = static_cast<int>(lev.centers.size());
            for (int ci : gc.centers) lev.centers.push_back(y[ci]);
            next_clusters.resize(base + gc.centers.size());
            for (size_t m = 0; m < cl.size(); ++m)
                next_clusters[base + gc.assign[m]].push_back(cl[m]);
            lev.max_miss = std::max(lev.max_miss, gc.max_miss);
        }

        const long vk = static_cast<long>(lev.centers.size());
        if (k == 1) {
            tree.n_theta = std::max(vk, 1L);
            tree.degenerate = vk <= 1;
        }
        if (static_cast<double>(vk) >
            std::pow(static_cast<double>(tree.n_theta), k) + 0.5)
            tree.counts_within_bound = false;

        tree.levels.push_back(std::move(lev));
        clusters = std::move(next_clusters);
    }
    return tree;
}

DimBound fractal_dim_bound(const CoveringTree& tree) {
    if (!(tree.theta > 0.0 && tree.theta < 1.0))
        throw std::invalid_argument("dimension bound needs theta in (0, 1)");
    if (tree.n_theta <= 1) return {0.0, true};
    // log2 keeps the power-of-two oracle cases exact
    return {std::log2(static_cast<double>(tree.n_theta)) / (-std::log2(tree.theta)),
            false};
}

double box_counting_dim(const std::vector<Point>& pts) {
    if (pts.size() < 8)
        throw InsufficientScales("box counting needs at least 8 points");
    const size_t dim = pts[0].size();
    Point lo = pts[0], hi = pts[0];
    for (const auto& p : pts)
        for (size_t c = 0; c < dim; ++c) {
            lo[c] = std::min(lo[c], p[c]);
            hi[c] = std::max(hi[c], p[c]);
        }
    double span = 0.0;
    for (size_t c = 0; c < dim; ++c) span = std::max(span, hi[c] - lo[c]);
    if (span <= 0.0) return 0.0;

    std::vector<double> xs, ys;
    const size_t npts = pts.size();
    for (int m = 0; m <= 16; ++m) {
        const long side = 1L << m;
        const double eps = span / static_cast<double>(side);
        std::unordered_set<std::uint64_t> boxes;
        for (const auto& p : pts) {
            std::uint64_t h = 1469598103934665603ULL;
            for (size_t c = 0; c < dim; ++c) {
                long ix = static_cast<long>((p[c] - lo[c]) / eps);
                ix = std::max(0L, std::min(ix, side - 1));
                const std::uint64_t u = static_cast<std::uint64_t>(ix);
                for (int byte = 0; byte < 8; ++byte) {
                    h ^= (u >> (8 * byte)) & 0xffULL;
                    h *= 1099511628211ULL;
                }
            }
            boxes.insert(h);
        }
        const size_t cnt = boxes.size();
        if (cnt >= 2 && cnt <= npts / 2) {
            xs.push_back(m * std::log(2.0));
            ys.push_back(std::log(static_cast<double>(cnt)));
        }
        if (cnt >= npts) break;
    }
    if (xs.size() < 3)
        throw InsufficientScales("fewer than 3 usable dyadic scales");
    return fit_line(xs, ys).slope;
}

bool holder_dim_property(const MapFn& f, const std::vector<Point>& sample,
                         double alpha) {
    if (alpha <= 0.0) throw std::invalid_argument("alpha must be positive");
    const double dim_a = box_counting_dim(sample);
    std::vector<Point> images;
    images.reserve(sample.size());
    for (const auto& p : sample) images.push_back(f(p));
    const double dim_fa = box_counting_dim(images);
    return dim_fa <= dim_a / alpha + 0.15;
}

std::string covering_manifest(const CoveringTree& tree, const SmoothingEstimate& se,
                              const DimBound& dim) {
    char buf[160];
    std::string out;
    auto line = [&](const char* fmt, auto... args) {
        std::snprintf(buf, sizeof(buf), fmt, args...);
        out += buf;
        out += '\n';
    };
    line("theta = %.17g", tree.theta);
    line("radius0 = %.17g", tree.radius0);
    line("n_theta = %ld", tree.n_theta);
    line("degenerate = %s", tree.degenerate ? "true" : "false");
    line("counts_within_bound = %s", tree.counts_within_bound ? "true" : "false");
    line("smoothing_K = %.17g", se.K);
    line("smoothing_pairs = %ld", se.pairs_used);
    line("smoothing_duplicates_removed = %ld", se.duplicates_removed);
    line("dim_bound = %.17g", dim.value);
    line("dim_degenerate = %s", dim.degenerate ? "true" : "false");
    out += "level,centers,radius,max_miss\n";
    for (size_t k = 0; k < tree.levels.size(); ++k)
        line("%zu,%zu,%.17g,%.17g", k + 1, tree.levels[k].centers.size(),
             tree.levels[k].radius, tree.levels[k].max_miss);
    return out;
}

Point flatten_state(const State& s, const Grid& g) {
    Point x;
    x.reserve(4u * g.npx() * g.npy() * g.npz());
    for (const Field3D* f : {&s.v1, &s.v2, &s.T, &s.q})
        f->for_each([&](int, int, int, double v) { x.push_back(v); });
    return x;
}

State unflatten_state(const Point& x, const Grid& g) {
    State s(g);
    const size_t want = 4u * g.npx() * g.npy() * g.npz();
    if (x.size() != want)
        throw std::invalid_argument("unflatten_state: vector length mismatch");
    size_t at = 0;
    for (Field3D* f : {&s.v1, &s.v2, &s.T, &s.q})
        f->for_each([&](int, int, int, double& v) { v = x[at++]; });
    return s;
}

MetricCloud make_state_cloud(std::vector<State> snaps, const PhysParams& p,
                             const Grid& g) {
    MetricCloud cloud;
    cloud.points.reserve(snaps.size());
    for (const auto& s : snaps) cloud.points.push_back(flatten_state(s, g));
    const Grid gc = g;
    const PhysParams pc = p;
    auto diff = [gc](const Point& a, const Point& b) {
        Point d(a.size());
        for (size_t i = 0; i < d.size(); ++i) d[i] = a[i] - b[i];
        return unflatten_state(d, gc);
    };
    cloud.n_H = [diff, gc](const Point& a, const Point& b) {
        return state_norm_h(diff(a, b), gc);
    };
    cloud.n_V = [diff, gc, pc](const Point& a, const Point& b) {
        return state_norm_v(diff(a, b), pc, gc);
    };
    return cloud;
}

MapFn make_semigroup_map(const PhysParams& p, const Grid& g, const StepConfig& base,
                         double t_map) {
    if (t_map <= 0.0) throw std::invalid_argument("semigroup map: t_map must be > 0");
    StepConfig cfg = base;
    cfg.t_end = t_map;
    cfg.snapshot_every = 1 << 30;
    const PhysParams pc = p;
    const Grid gc = g;
    return [pc, gc, cfg](const Point& x) {
        State s = unflatten_state(x, gc);
        TimeStepper ts(pc, gc, cfg);
        return flatten_state(ts.run(s).final, gc);
    };
}

std::vector<State> sample_trajectory(const PhysParams& p, const Grid& g,
                                     const StepConfig& cfg, std::uint64_t seed,
                                     long warmup_steps, long stride, int n_points) {
    if (warmup_steps < 0 || stride < 1 || n_points < 1)
        throw std::invalid_argument("sample_trajectory: bad sampling parameters");
    StepConfig c2 = cfg;
    c2.snapshot_every = 1 << 30;
    TimeStepper ts(p, g, c2);
    State s = random_state(seed, 0.3, 0.3, 0.3, p, g);
    for (long i = 0; i < warmup_steps; ++i) ts.step(s);

    std::vector<State> out;
    out.reserve(n_points);
    out.push_back(s);
    for (int k = 1; k < n_points; ++k) {
        for (long i = 0; i < stride; ++i) ts.step(s);
        out.push_back(s);
    }
    return out;
}

CoveringAnalysis analyze_reduced_map(const RunConfig& c, int n_points, long stride,
                                     double theta, int k_max, double t_map) {
    const Grid g = c.grid();
    const PhysParams& p = c.params;
    const long warm = std::llround(c.stepping.t_end / c.stepping.dt);

    const std::vector<State> snaps =
        sample_trajectory(p, g, c.stepping, c.seed, warm, stride, n_points);
    const MetricCloud cloud = make_state_cloud(snaps, p, g);
    const MapFn S = make_semigroup_map(p, g, c.stepping, t_map);

    CoveringAnalysis a;
    a.sample_size = n_points;
    a.t_map = t_map;
    a.smoothing = smoothing_map(S, cloud);
    a.tree = build_covering(S, cloud, theta, k_max);
    a.dim = fractal_dim_bound(a.tree);
    return a;
}

} // namespace mpe
