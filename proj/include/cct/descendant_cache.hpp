#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "cct/core.hpp"
#include "cct/tree.hpp"

namespace cct {

/// Constant-time lookup of |S_i(p)|, the size of the distinctive descendant
/// set of p at level i, for every node and level.
///
/// |S_i(p)| is a step function of i: it is 1 below every child level and grows
/// by the subtree size of each child batch at one above that batch's level.
/// The cache stores the breakpoints of that step function, so its total size
/// is bounded by twice the number of points (one base entry per node plus one
/// entry per distinct child level, and distinct child levels sum to < n).
class DescendantCountCache {
  public:
    explicit DescendantCountCache(const CompressedCoverTree& t) : lmin_(t.l_min()) {
        const std::size_t n = t.size();
        desc_.assign(n, 1);
        // Children sit strictly below their parents, so ascending level order
        // finishes all children before their parent.
        std::vector<PointId> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](PointId a, PointId b) { return t.level(a) < t.level(b); });
        bp_.resize(n);
        for (PointId p : order) {
            const auto& groups = t.child_groups(p);
            std::int64_t cum = 1;
            auto& bp = bp_[static_cast<std::size_t>(p)];
            bp.reserve(groups.size() + 1);
            bp.emplace_back(lmin_, 1);
            for (auto it = groups.rbegin(); it != groups.rend(); ++it) {  // ascending child level
                std::int64_t batch = 0;
                for (PointId c : it->second) batch += desc_[static_cast<std::size_t>(c)];
                cum += batch;
                bp.emplace_back(it->first + 1, cum);
            }
            desc_[static_cast<std::size_t>(p)] = cum;
        }
    }

    /// Size of the whole subtree of p, including p.
    std::int64_t descendant_count(PointId p) const { return desc_[static_cast<std::size_t>(p)]; }

    /// |S_i(p)| for any level i.
    std::int64_t count_at(PointId p, int i) const {
        const auto& bp = bp_[static_cast<std::size_t>(p)];
        if (i <= bp.front().first) return 1;  // below l_min nothing distinctive remains but p
        // Largest stored level <= i.
        auto it = std::upper_bound(bp.begin(), bp.end(), i,
                                   [](int lvl, const auto& e) { return lvl < e.first; });
        return (it - 1)->second;
    }

    /// Total number of stored breakpoints, for the <= 2n budget check.
    std::size_t total_breakpoints() const {
        std::size_t s = 0;
        for (const auto& bp : bp_) s += bp.size();
        return s;
    }

  private:
    int lmin_;
    std::vector<std::int64_t> desc_;
    std::vector<std::vector<std::pair<int, std::int64_t>>> bp_;
};

}  // namespace cct
