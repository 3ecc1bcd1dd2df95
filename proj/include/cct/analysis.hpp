#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "cct/core.hpp"
#include "cct/metric.hpp"
#include "cct/tree.hpp"

namespace cct {

/// Expansion constant of a finite set with its witnessing center and radius:
/// the smallest c >= 2 with |B(p, 2t)| <= c * |B(p, t)| for all points p and
/// radii t > 0 (closed balls).
struct ExpansionResult {
    double c = 2.0;
    PointId center = 0;
    double radius = 0.0;
    std::size_t ball_inner = 1;  ///< |B(center, radius)|
    std::size_t ball_outer = 1;  ///< |B(center, 2 * radius)|
};

namespace detail {

/// Largest |B(2t)|/|B(t)| over all critical radii of one sorted distance row
/// (the row contains the center's distance 0).  The ratio is a step function
/// of t that only changes where t or 2t crosses a distance, so scanning
/// half-distances and distances is exact.
inline void scan_expansion_row(const std::vector<double>& row, PointId center, ExpansionResult& best) {
    auto count_within = [&](double r) {
        return static_cast<std::size_t>(std::upper_bound(row.begin(), row.end(), r) - row.begin());
    };
    auto consider = [&](double t) {
        if (!(t > 0.0)) return;
        const std::size_t inner = count_within(t);
        const std::size_t outer = count_within(2.0 * t);
        const double ratio = static_cast<double>(outer) / static_cast<double>(inner);
        if (ratio > best.c) {
            best = ExpansionResult{ratio, center, t, inner, outer};
        }
    };
    for (double d : row) {
        consider(d / 2.0);
        consider(d);
    }
}

}  // namespace detail

/// Exact expansion constant by scanning every center and critical radius.
inline ExpansionResult expansion_constant(const Metric& m) {
    ExpansionResult best;
    best.center = 0;
    std::vector<double> row(m.n);
    for (PointId p = 0; p < static_cast<PointId>(m.n); ++p) {
        for (PointId x = 0; x < static_cast<PointId>(m.n); ++x) row[static_cast<std::size_t>(x)] = m(p, x);
        std::sort(row.begin(), row.end());
        detail::scan_expansion_row(row, p, best);
    }
    return best;
}

/// Query expansion constant: the largest expansion constant of the reference
/// set extended by a single query point, maximized over all query points.
/// Exact, so quadratic per query; intended for moderate set sizes.
inline ExpansionResult query_expansion_constant(const Metric& ref, const MetricPair& pair) {
    if (pair.nr != ref.n) throw invalid_input("reference metric and pair disagree on point count");
    // Sorted within-reference rows, reused for every query point.
    std::vector<std::vector<double>> base(ref.n);
    for (PointId r = 0; r < static_cast<PointId>(ref.n); ++r) {
        auto& row = base[static_cast<std::size_t>(r)];
        row.resize(ref.n);
        for (PointId x = 0; x < static_cast<PointId>(ref.n); ++x) row[static_cast<std::size_t>(x)] = ref(r, x);
        std::sort(row.begin(), row.end());
    }
    ExpansionResult best;
    std::vector<double> row;
    for (PointId q = 0; q < static_cast<PointId>(pair.nq); ++q) {
        // Center at the query point itself.
        row.assign(1, 0.0);
        for (PointId r = 0; r < static_cast<PointId>(pair.nr); ++r) row.push_back(pair(q, r));
        std::sort(row.begin(), row.end());
        detail::scan_expansion_row(row, static_cast<PointId>(pair.nr), best);
        // Centers at reference points, with the query point appended.
        for (PointId r = 0; r < static_cast<PointId>(pair.nr); ++r) {
            row = base[static_cast<std::size_t>(r)];
            const double dq = pair(q, r);
            row.insert(std::upper_bound(row.begin(), row.end(), dq), dq);
            detail::scan_expansion_row(row, r, best);
        }
    }
    return best;
}

struct AspectRatio {
    double diameter = 0.0;
    double min_distance = 0.0;
    double ratio = 1.0;  ///< diameter / min_distance; 1 for singleton sets
};

/// Diameter over minimal pairwise distance, computed exactly in one pass.
inline AspectRatio aspect_ratio(const Metric& m) {
    AspectRatio a;
    if (m.n < 2) return a;
    a.min_distance = std::numeric_limits<double>::infinity();
    for (PointId p = 0; p < static_cast<PointId>(m.n); ++p) {
        for (PointId q = static_cast<PointId>(p + 1); q < static_cast<PointId>(m.n); ++q) {
            const double d = m(p, q);
            a.diameter = std::max(a.diameter, d);
            a.min_distance = std::min(a.min_distance, d);
        }
    }
    a.ratio = a.diameter / a.min_distance;
    return a;
}

/// Number of nodes an uncompressed (one copy per level) cover tree would
/// place strictly on the path above p: at each parent step, the children of
/// the parent whose levels fall between the current node's level and one
/// below the parent's level.  Zero for the root.
inline int explicit_depth(const CompressedCoverTree& t, PointId p) {
    int depth = 0;
    PointId w = p;
    while (w != t.root()) {
        const PointId par = t.parent(w);
        const int lo = t.level(w);
        const int hi = t.level(par) - 1;
        for (const auto& g : t.child_groups(par)) {
            if (g.first > hi) continue;
            if (g.first < lo) break;  // groups descend
            depth += static_cast<int>(g.second.size());
        }
        w = par;
    }
    return depth;
}

/// Size of a greedy delta-separated subset of the closed ball B(center, t).
/// Points are taken in ascending id order; the result is a maximal packing,
/// so it lower-bounds the true maximum.
inline std::size_t greedy_packing(const Metric& m, PointId center, double t, double delta) {
    std::vector<PointId> picked;
    for (PointId x = 0; x < static_cast<PointId>(m.n); ++x) {
        if (m(center, x) > t) continue;
        bool separated = true;
        for (PointId y : picked) {
            if (m(x, y) <= delta) {
                separated = false;
                break;
            }
        }
        if (separated) picked.push_back(x);
    }
    return picked.size();
}

/// Packing bound c^mu with mu = ceil(log2(4t/delta + 1)): the most
/// delta-separated points a ball of radius t can hold in a space of
/// expansion constant c.
inline double packing_bound(double c, double t, double delta) {
    if (!(t > 0.0) || !(delta > 0.0)) throw invalid_input("packing bound needs positive radii");
    const double mu = std::ceil(std::log2(4.0 * t / delta + 1.0));
    return std::pow(c, mu);
}

}  // namespace cct
