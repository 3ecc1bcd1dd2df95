#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "cct/core.hpp"
#include "cct/tree.hpp"

namespace cct {

struct TraversalStats {
    std::uint64_t ref_expansions = 0;    ///< reference-side candidate refinements
    std::uint64_t query_expansions = 0;  ///< query-side branchings
    std::uint64_t final_calls = 0;       ///< candidate hand-offs at the bottom level
    std::uint64_t distance_calls = 0;    ///< filled in by callers that meter a counter
    std::size_t max_width = 1;           ///< largest candidate set after pruning
};

/// Hooks that keep every candidate; useful to measure the bare traversal.
struct NoPruneHooks {
    std::vector<PointId> on_update(int /*i*/, int /*j*/, PointId /*q*/, const std::vector<PointId>& cands) {
        return cands;
    }
    void on_final(int /*i*/, int /*j*/, PointId /*q*/, const std::vector<PointId>& /*rset*/) {}
};

/// Simultaneous descent of a query tree and a reference tree.
///
/// Each stack frame holds a reference level i, a query level j, a query node
/// q, and a candidate set R_i of reference points.  While i exceeds both j
/// and the reference bottom level, the reference side expands: R_i is grown
/// by all children at level >= i-1, handed to hooks.on_update for pruning,
/// and the next reference level is one above the highest remaining child
/// level (so empty level ranges are skipped).  Otherwise the query side
/// splits into the children of q at level j-1 plus a continuation of q at
/// one above its next child level; a continuation that cannot descend any
/// further is dropped, which bounds the query-side work by the essential
/// levels of each node.  Whenever a frame reaches the reference bottom
/// level, hooks.on_final receives the fully refined candidate set for q.
///
/// Hooks interface:
///   std::vector<PointId> on_update(int i, int j, PointId q, const std::vector<PointId>& cands);
///     -> subset of cands to keep (must stay non-empty to continue the branch)
///   void on_final(int i, int j, PointId q, const std::vector<PointId>& rset);
template <class Hooks>
TraversalStats paired_traversal(const CompressedCoverTree& tq, const CompressedCoverTree& tr, Hooks&& hooks) {
    TraversalStats st;
    const int lmin_r = tr.l_min();
    const int lmin_q = tq.l_min();
    // Query chains must not die before the reference side is fully refined,
    // so they bottom out at the lower of the two minimal levels.
    const int bottom = std::min(lmin_q, lmin_r);
    // Maps the next-child-level sentinel to the common bottom level.
    auto next_j = [&](PointId p, int below) {
        const int nl = tq.next_level(p, below);
        return nl < lmin_q ? bottom : nl + 1;
    };
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
        if (f.i == lmin_r) {
            hooks.on_final(f.i, f.j, f.q, *f.r);
            ++st.final_calls;
        }
        if (std::max(lmin_r, f.j) < f.i) {
            // Reference expansion: pull in children visible one level down.
            ++st.ref_expansions;
            std::vector<PointId> cands;
            for (PointId p : *f.r) {
                cands.push_back(p);
                for (const auto& g : tr.child_groups(p)) {
                    if (g.first < f.i - 1) break;  // groups descend
                    cands.insert(cands.end(), g.second.begin(), g.second.end());
                }
            }
            std::sort(cands.begin(), cands.end());
            cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
            std::vector<PointId> pruned = hooks.on_update(f.i, f.j, f.q, cands);
            if (pruned.empty()) continue;
            st.max_width = std::max(st.max_width, pruned.size());
            int t = lmin_r - 1;
            for (PointId a : pruned) t = std::max(t, tr.next_level(a, f.i - 1));
            stack.push_back(Frame{t + 1, f.j, f.q,
                                  std::make_shared<const std::vector<PointId>>(std::move(pruned))});
        } else {
            // Query expansion: branch into children at level j-1, keep q alive
            // at one above its next child level.
            ++st.query_expansions;
            const int jc = f.j - 1;
            const int self_j = next_j(f.q, jc);
            if (self_j < f.j) stack.push_back(Frame{f.i, self_j, f.q, f.r});
            if (const std::vector<PointId>* kids = tq.children_at(f.q, jc)) {
                for (auto it = kids->rbegin(); it != kids->rend(); ++it) {
                    stack.push_back(Frame{f.i, next_j(*it, jc), *it, f.r});
                }
            }
        }
    }
    return st;
}

/// Tree imbalance: for every query point, the number of levels of the
/// reference height set lying in [l_min(reference), l(query point)], summed
/// over all query points.  Reference expansions of the paired traversal are
/// bounded by this value plus one extra pass per height-set level.
inline std::int64_t imbalance(const CompressedCoverTree& tq, const CompressedCoverTree& tr) {
    const std::vector<int> h = tr.height_set();
    std::int64_t total = 0;
    for (std::size_t v = 0; v < tq.size(); ++v) {
        const int lq = tq.level(static_cast<PointId>(v));
        total += std::upper_bound(h.begin(), h.end(), lq) - h.begin();
    }
    return total;
}

/// Closed form of the self-imbalance of the balanced t-ary tree with m+1
/// full levels: (1 + 1/(t-1)) * n - (m+1)/(t-1), where n = (t^{m+1}-1)/(t-1).
inline double balanced_imbalance_closed_form(int t, int m) {
    if (t < 2 || m < 0) throw invalid_input("balanced tree needs branching >= 2 and depth >= 0");
    double n = 0.0;
    double power = 1.0;
    for (int d = 0; d <= m; ++d) {
        n += power;
        power *= t;
    }
    return (1.0 + 1.0 / (t - 1)) * n - static_cast<double>(m + 1) / (t - 1);
}

}  // namespace cct
