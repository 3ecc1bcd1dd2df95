#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <utility>
#include <vector>

#include "cct/core.hpp"
#include "cct/generators.hpp"
#include "cct/metric.hpp"
#include "cct/traversal.hpp"
#include "cct/tree.hpp"

namespace cct {

struct LegacyResult {
    std::vector<PointId> nn;  ///< nearest reference id per query, ties to smaller ids
    std::uint64_t ref_expansions = 0;
    std::uint64_t query_expansions = 0;
    std::uint64_t distance_calls = 0;
    std::size_t max_width = 1;
};

/// Called after every reference refinement with the query node, the new
/// candidate level, and the surviving candidate set.
using LegacyObserver = std::function<void(PointId q, int level, const std::vector<PointId>& rset)>;

/// All-nearest-neighbor search in the style of the original simultaneous
/// descent: both trees are walked level by level as if every node kept a
/// copy on each level below itself.  The reference side refines whenever its
/// level exceeds the query level, pulling in children at exactly one level
/// down and pruning by the closest candidate plus both covering radii; the
/// query side branches otherwise.  Because levels step one at a time, a tall
/// reference tree forces a refinement per level per query node, which is the
/// quadratic blow-up the paired traversal avoids.
inline LegacyResult legacy_findallnn(const CompressedCoverTree& tq, const CompressedCoverTree& tr,
                                     const MetricPair& pair, const LegacyObserver& observer = {}) {
    if (tq.size() != pair.nq || tr.size() != pair.nr) {
        throw invalid_input("trees and metric pair disagree on point counts");
    }
    LegacyResult res;
    res.nn.assign(pair.nq, kNoParent);
    const int lmin_r = tr.l_min();
    const int lmin_q = tq.l_min();
    struct Frame {
        int i;
        int j;
        PointId q;
        std::shared_ptr<const std::vector<PointId>> r;
    };
    std::vector<Frame> stack;
    stack.push_back(Frame{tr.l_max(), tq.l_max(), tq.root(),
                          std::make_shared<const std::vector<PointId>>(std::vector<PointId>{tr.root()})});
    while (!stack.empty()) {
        Frame f = std::move(stack.back());
        stack.pop_back();
        if (f.i < lmin_r && f.j < lmin_q) {
            // Both sides fully descended: the candidate set decides q's neighbor.
            PointId best = kNoParent;
            double best_d = 0.0;
            for (PointId r : *f.r) {
                ++res.distance_calls;
                const double d = pair(f.q, r);
                if (best == kNoParent || d < best_d || (d == best_d && r < best)) {
                    best = r;
                    best_d = d;
                }
            }
            res.nn[static_cast<std::size_t>(f.q)] = best;
            continue;
        }
        if (f.j < f.i) {
            // Reference refinement, one level at a time.
            ++res.ref_expansions;
            std::vector<PointId> cands;
            for (PointId p : *f.r) {
                cands.push_back(p);
                if (const std::vector<PointId>* kids = tr.children_at(p, f.i - 1)) {
                    cands.insert(cands.end(), kids->begin(), kids->end());
                }
            }
            std::sort(cands.begin(), cands.end());
            cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
            std::vector<std::pair<double, PointId>> d;
            d.reserve(cands.size());
            double dmin = std::numeric_limits<double>::infinity();
            for (PointId c : cands) {
                ++res.distance_calls;
                d.emplace_back(pair(f.q, c), c);
                dmin = std::min(dmin, d.back().first);
            }
            const double threshold = dmin + pow2(f.i) + pow2(f.j + 2);
            std::vector<PointId> keep;
            keep.reserve(d.size());
            for (const auto& e : d) {
                if (e.first <= threshold) keep.push_back(e.second);
            }
            res.max_width = std::max(res.max_width, keep.size());
            if (observer) observer(f.q, f.i - 1, keep);
            stack.push_back(Frame{f.i - 1, f.j, f.q,
                                  std::make_shared<const std::vector<PointId>>(std::move(keep))});
        } else {
            // Query branching, one level at a time; q continues alongside its
            // children (the implicit self-copy).
            ++res.query_expansions;
            stack.push_back(Frame{f.i, f.j - 1, f.q, f.r});
            if (const std::vector<PointId>* kids = tq.children_at(f.q, f.j - 1)) {
                for (auto it = kids->rbegin(); it != kids->rend(); ++it) {
                    stack.push_back(Frame{f.i, f.j - 1, *it, f.r});
                }
            }
        }
    }
    return res;
}

struct GrowthRow {
    int m = 0;
    std::size_t n = 0;
    std::uint64_t ref_expansions = 0;
    std::int64_t imbalance_value = 0;
    std::size_t height = 0;
    std::uint64_t distance_calls = 0;
};

struct GrowthStudy {
    std::vector<GrowthRow> rows;
    double loglog_slope = 0.0;  ///< least-squares slope of ln(ref_expansions) against ln(m)
};

/// Runs the legacy search on adversarial instances of growing m and records
/// how the reference refinement count scales.  On the tall instances the
/// count grows like m^4 (about half of height * chain length), so the log-log
/// slope against m approaches 4.
inline GrowthStudy legacy_growth_study(TrainLineVariant variant, const std::vector<int>& ms) {
    GrowthStudy study;
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (int m : ms) {
        DistanceCounter counter;
        GrowthRow row;
        row.m = m;
        LegacyResult res;
        if (variant == TrainLineVariant::tall_imbalanced) {
            TallInstance inst = gen_tall_imbalanced(m);
            Metric metric = metric_of(inst.set, &counter);
            res = legacy_findallnn(inst.tree, inst.tree, self_pair(metric));
            row.n = inst.set.size();
            row.imbalance_value = imbalance(inst.tree, inst.tree);
            row.height = inst.tree.height();
        } else {
            BichromaticInstance inst = gen_bichromatic(m);
            MetricPair pair = cross_pair(inst.query_set, inst.reference_set, &counter);
            res = legacy_findallnn(inst.query_tree, inst.reference_tree, pair);
            row.n = inst.reference_set.size();
            row.imbalance_value = imbalance(inst.query_tree, inst.reference_tree);
            row.height = inst.reference_tree.height();
        }
        row.ref_expansions = res.ref_expansions;
        row.distance_calls = res.distance_calls;
        study.rows.push_back(row);
        const double x = std::log(static_cast<double>(m));
        const double y = std::log(static_cast<double>(res.ref_expansions));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(study.rows.size());
    if (study.rows.size() >= 2) study.loglog_slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return study;
}

}  // namespace cct
