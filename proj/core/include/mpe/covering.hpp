#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mpe/config.hpp"
#include "mpe/grid.hpp"
#include "mpe/params.hpp"
#include "mpe/state.hpp"
#include "mpe/stepper.hpp"

namespace mpe {

// Finite-sample attractor analysis in a reduced space: a point cloud with a
// weak and a strong metric, a discrete semigroup map acting on the points,
// iterated radius-shrinking coverings, and the dimension bound they imply.

using Point = std::vector<double>;
using MapFn = std::function<Point(const Point&)>;
using MetricFn = std::function<double(const Point&, const Point&)>;

struct MetricCloud {
    std::vector<Point> points;
    MetricFn n_H; // weak metric
    MetricFn n_V; // strong metric

    int dim() const { return points.empty() ? 0 : static_cast<int>(points[0].size()); }
};

struct CoveringLevel {
    std::vector<Point> centers; // V_k
    double radius = 0.0;        // theta^k * R
    double max_miss = 0.0;      // largest observed point-to-assigned-center distance
};

struct CoveringTree {
    double theta = 0.5;
    double radius0 = 0.0; // R: weak-metric radius of the cloud around its seed point
    long n_theta = 0;     // centers at the first level
    bool degenerate = false;          // first level collapsed to a single center
    bool counts_within_bound = true;  // |V_k| <= n_theta^k held at every level
    std::vector<CoveringLevel> levels;
};

struct SmoothingEstimate {
    double K = 0.0;
    long pairs_used = 0;
    long duplicates_removed = 0;
};

struct DimBound {
    double value = 0.0;
    bool degenerate = false; // single-center covering carries no dimension content
};

/**
 * Empirical smoothing constant: max over distinct point pairs of
 * n_V(Sx, Sy) / n_H(x, y). Points closer than a relative floor in n_H are
 * treated as duplicates, removed, and counted. Throws DegeneratePair when
 * fewer than two distinct points remain.
 */
SmoothingEstimate smoothing_map(const MapFn& S, const MetricCloud& cloud);

/**
 * Iterated greedy covering. Level k covers the k-fold image of the cloud by
 * weak-metric balls of radius theta^k * R, where R is the cloud radius around
 * the point farthest from the coordinate mean (ties resolved to the lowest
 * index, which keeps the construction deterministic). Each level covers every
 * previous ball's image separately; a post-pass rechecks every assignment and
 * throws CoverageFailure on a miss beyond the claimed radius.
 */
CoveringTree build_covering(const MapFn& S, const MetricCloud& cloud, double theta,
                            int k_max);

/// -ln n_theta / ln theta, pure arithmetic on the tree's (n_theta, theta);
/// {0, degenerate} when the covering collapsed to at most one center.
DimBound fractal_dim_bound(const CoveringTree& tree);

/**
 * Box-counting dimension estimate over a dyadic scale ladder. Scales where
 * the box count is saturated (almost one box, or almost one point per box)
 * are discarded; fewer than 3 usable scales throws InsufficientScales.
 */
double box_counting_dim(const std::vector<Point>& pts);

/// Dimension does not grow under an alpha-Holder map, up to 0.15 slack:
/// dim(f(A)) <= dim(A)/alpha + 0.15 on box-counting estimates.
bool holder_dim_property(const MapFn& f, const std::vector<Point>& sample,
                         double alpha);

/// Plain-text manifest: parameters, dimension bound, one line per level.
std::string covering_manifest(const CoveringTree& tree, const SmoothingEstimate& se,
                              const DimBound& dim);

// Reduced space = the full coarse-grid state flattened field by field
// (v1, v2, T, q; x fastest). Metrics are the discrete H and V norms of the
// unflattened difference.

Point flatten_state(const State& s, const Grid& g);
State unflatten_state(const Point& x, const Grid& g);
MetricCloud make_state_cloud(std::vector<State> snaps, const PhysParams& p,
                             const Grid& g);

/// The discrete semigroup over a horizon of t_map, as a map on flattened
/// states. Each evaluation is an honest time integration.
MapFn make_semigroup_map(const PhysParams& p, const Grid& g, const StepConfig& base,
                         double t_map);

/// Random start, warmup_steps of spin-up, then n_points snapshots taken every
/// stride steps. Doubling the sample density means halving the stride and
/// doubling n_points over the same window.
std::vector<State> sample_trajectory(const PhysParams& p, const Grid& g,
                                     const StepConfig& cfg, std::uint64_t seed,
                                     long warmup_steps, long stride, int n_points);

struct CoveringAnalysis {
    SmoothingEstimate smoothing;
    CoveringTree tree;
    DimBound dim;
    int sample_size = 0;
    double t_map = 0.0;
};

/**
 * End-to-end analysis of the reduced map defined by a run configuration:
 * c.stepping.t_end is the warmup horizon, after which n_points snapshots are
 * taken every stride steps; the semigroup map advances by t_map.
 */
CoveringAnalysis analyze_reduced_map(const RunConfig& c, int n_points, long stride,
                                     double theta, int k_max, double t_map);

} // namespace mpe
