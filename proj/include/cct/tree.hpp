#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "cct/core.hpp"
#include "cct/metric.hpp"

namespace cct {

/// Compressed cover tree: every point of the set is exactly one node.
///
/// Each node p carries an integer level l(p).  A well-formed tree satisfies
///   * root condition:  l(root) >= 1 + max level of every other node,
///   * covering:        l(q) < l(parent(q)) and d(q, parent(q)) <= 2^{l(q)+1},
///   * separation:      any two points of C_i = {p : l(p) >= i} are more than
///                      2^i apart, for every i.
/// Construction by from_levels only enforces structural shape (single root,
/// valid parent links, no cycles) so that validate_tree can report metric
/// violations of prescribed trees with witnesses.
class CompressedCoverTree {
  public:
    /// Child ids of one node, grouped by level.  Levels strictly descend,
    /// ids ascend inside a group.  The node itself is never stored; algorithms
    /// that treat p as its own child add it explicitly.
    using ChildGroups = std::vector<std::pair<int, std::vector<PointId>>>;

    /// Builds from explicit levels and parent links (kNoParent marks the root).
    static CompressedCoverTree from_levels(const std::vector<int>& levels, const std::vector<PointId>& parents) {
        const std::size_t n = levels.size();
        if (n == 0) throw invalid_input("tree must contain at least one point");
        if (parents.size() != n) throw invalid_input("levels and parents disagree on point count");
        CompressedCoverTree t;
        t.nodes_.resize(n);
        for (std::size_t v = 0; v < n; ++v) {
            const PointId par = parents[v];
            if (par == kNoParent) {
                if (t.root_ != kNoParent) throw invalid_input("more than one root");
                t.root_ = static_cast<PointId>(v);
            } else if (par < 0 || static_cast<std::size_t>(par) >= n || static_cast<std::size_t>(par) == v) {
                throw invalid_input("invalid parent id for point " + std::to_string(v));
            }
            t.nodes_[v].level = levels[v];
            t.nodes_[v].parent = par;
        }
        if (t.root_ == kNoParent) throw invalid_input("tree has no root");
        t.check_acyclic();
        t.build_groups();
        t.lmin_ = std::numeric_limits<int>::max();
        for (const Node& nd : t.nodes_) t.lmin_ = std::min(t.lmin_, nd.level);
        return t;
    }

    /// Builds by repeated insertion in the given order (default 0..n-1).
    ///
    /// Each new point x gets the maximal level that keeps all separation
    /// conditions, computed from one distance scan over the inserted points,
    /// and is attached to the lowest (then smallest-id) admissible parent.
    /// When x is farther from every inserted point than their levels require,
    /// the root level is raised so the root can cover x.  Duplicates are
    /// rejected.  The result is deterministic in (metric, order).
    static CompressedCoverTree build(const Metric& metric, std::vector<PointId> order = {}) {
        const std::size_t n = metric.n;
        if (n == 0) throw invalid_input("cannot build a tree on an empty set");
        if (order.empty()) {
            order.resize(n);
            std::iota(order.begin(), order.end(), 0);
        }
        if (order.size() != n) throw invalid_input("insertion order must list every point exactly once");
        {
            std::vector<char> seen(n, 0);
            for (PointId p : order) {
                if (p < 0 || static_cast<std::size_t>(p) >= n || seen[p]) {
                    throw invalid_input("insertion order must list every point exactly once");
                }
                seen[p] = 1;
            }
        }
        std::vector<int> levels(n, 0);
        std::vector<PointId> parents(n, kNoParent);
        std::vector<PointId> inserted;
        inserted.reserve(n);
        const PointId root = order[0];
        levels[root] = 0;
        inserted.push_back(root);
        std::vector<double> dist(n, 0.0);
        for (std::size_t step = 1; step < n; ++step) {
            const PointId x = order[step];
            int cap = std::numeric_limits<int>::max();
            for (PointId p : inserted) {
                const double d = metric(x, p);
                if (d <= 0.0) throw invalid_input("duplicate point encountered while building tree");
                dist[p] = d;
                // p constrains the level of x only if x lands inside p's own
                // separation radius 2^{l(p)}.
                if (d <= pow2(levels[p])) cap = std::min(cap, level_below(d));
            }
            int lx;
            if (cap == std::numeric_limits<int>::max()) {
                // x clears every separation radius; cap by the root distance so
                // the (raised) root still covers x.
                lx = level_below(dist[root]);
                levels[root] = lx + 1;
            } else {
                lx = cap;
            }
            // Lowest, then smallest-id, node that can cover x from above.
            PointId best = kNoParent;
            for (PointId p : inserted) {
                if (levels[p] > lx && dist[p] <= pow2(lx + 1)) {
                    if (best == kNoParent || levels[p] < levels[best] || (levels[p] == levels[best] && p < best)) {
                        best = p;
                    }
                }
            }
            if (best == kNoParent) throw error("internal error: no admissible parent");  // unreachable
            levels[x] = lx;
            parents[x] = best;
            inserted.push_back(x);
        }
        int lo = levels[root], hi = levels[root];
        for (std::size_t v = 0; v < n; ++v) {
            lo = std::min(lo, levels[v]);
            hi = std::max(hi, levels[v]);
        }
        if (hi - lo > 64) throw invalid_input("tree level range exceeds 64; aspect ratio too large");
        return from_levels(levels, parents);
    }

    std::size_t size() const noexcept { return nodes_.size(); }
    PointId root() const noexcept { return root_; }
    int level(PointId p) const { return nodes_[static_cast<std::size_t>(p)].level; }
    PointId parent(PointId p) const { return nodes_[static_cast<std::size_t>(p)].parent; }

    /// Top level of the tree; by the root condition no other node reaches it.
    int l_max() const { return nodes_[static_cast<std::size_t>(root_)].level; }
    /// Minimal level over all nodes.
    int l_min() const noexcept { return lmin_; }

    const ChildGroups& child_groups(PointId p) const { return nodes_[static_cast<std::size_t>(p)].groups; }

    /// Children of p at exactly the given level, or nullptr when none exist.
    const std::vector<PointId>* children_at(PointId p, int lvl) const {
        for (const auto& g : child_groups(p)) {
            if (g.first == lvl) return &g.second;
            if (g.first < lvl) break;  // groups descend
        }
        return nullptr;
    }

    /// Largest level of a child of p that is strictly below i; the sentinel
    /// l_min()-1 when no child lies below i.
    int next_level(PointId p, int i) const {
        for (const auto& g : child_groups(p)) {
            if (g.first < i) return g.first;
        }
        return lmin_ - 1;
    }

    /// Levels at which a paired traversal visits p on the query side:
    /// one above p's own level plus one above each distinct child level.
    /// Ascending; size is 1 + number of distinct child levels.
    std::vector<int> essential_levels(PointId p) const {
        const auto& groups = child_groups(p);
        std::vector<int> e;
        e.reserve(groups.size() + 1);
        for (auto it = groups.rbegin(); it != groups.rend(); ++it) e.push_back(it->first + 1);
        e.push_back(level(p) + 1);
        return e;
    }

    /// Levels where the node population changes, plus both extremes, clamped
    /// to [l_min, l_max].  Ascending.  A singleton tree yields {l(root)}.
    std::vector<int> height_set() const {
        std::vector<int> h{lmin_, l_max()};
        for (const Node& nd : nodes_) {
            if (nd.level + 1 <= l_max()) h.push_back(nd.level + 1);
        }
        std::sort(h.begin(), h.end());
        h.erase(std::unique(h.begin(), h.end()), h.end());
        return h;
    }

    /// |height_set()|; covering and separation keep all levels inside a
    /// window of width log2(aspect ratio) + 2, so the height is strictly
    /// below 3 + log2(aspect ratio) on well-formed trees.
    std::size_t height() const { return height_set().size(); }

    /// All points of the subtree rooted at p, including p.  Ascending ids.
    std::vector<PointId> descendants(PointId p) const {
        std::vector<PointId> out;
        std::vector<PointId> stack{p};
        while (!stack.empty()) {
            const PointId v = stack.back();
            stack.pop_back();
            out.push_back(v);
            for (const auto& g : child_groups(v))
                for (PointId c : g.second) stack.push_back(c);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    /// Distinctive descendant set S_i(p): p itself plus the full subtrees of
    /// p's children that live strictly below level i.  Ascending ids.
    std::vector<PointId> distinctive_set(PointId p, int i) const {
        std::vector<PointId> out{p};
        for (const auto& g : child_groups(p)) {
            if (g.first >= i) continue;
            for (PointId c : g.second) {
                std::vector<PointId> sub = descendants(c);
                out.insert(out.end(), sub.begin(), sub.end());
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    /// C_i: every point whose level is at least i.  Ascending ids.
    std::vector<PointId> points_at_or_above(int i) const {
        std::vector<PointId> out;
        for (std::size_t v = 0; v < nodes_.size(); ++v) {
            if (nodes_[v].level >= i) out.push_back(static_cast<PointId>(v));
        }
        return out;
    }

  private:
    struct Node {
        int level = 0;
        PointId parent = kNoParent;
        ChildGroups groups;
    };

    void check_acyclic() const {
        std::vector<char> state(nodes_.size(), 0);  // 0 new, 1 on path, 2 done
        std::vector<PointId> path;
        for (std::size_t v = 0; v < nodes_.size(); ++v) {
            if (state[v] != 0) continue;
            path.clear();
            PointId u = static_cast<PointId>(v);
            while (true) {
                if (state[u] == 1) throw invalid_input("parent links contain a cycle");
                if (state[u] == 2) break;
                state[u] = 1;
                path.push_back(u);
                if (u == root_) break;
                u = nodes_[static_cast<std::size_t>(u)].parent;
            }
            for (PointId w : path) state[w] = 2;
        }
    }

    void build_groups() {
        for (std::size_t v = 0; v < nodes_.size(); ++v) {
            if (static_cast<PointId>(v) == root_) continue;
            Node& par = nodes_[static_cast<std::size_t>(nodes_[v].parent)];
            const int lvl = nodes_[v].level;
            auto it = std::find_if(par.groups.begin(), par.groups.end(),
                                   [lvl](const auto& g) { return g.first == lvl; });
            if (it == par.groups.end()) {
                par.groups.emplace_back(lvl, std::vector<PointId>{static_cast<PointId>(v)});
            } else {
                it->second.push_back(static_cast<PointId>(v));
            }
        }
        for (Node& nd : nodes_) {
            std::sort(nd.groups.begin(), nd.groups.end(),
                      [](const auto& a, const auto& b) { return a.first > b.first; });
            for (auto& g : nd.groups) std::sort(g.second.begin(), g.second.end());
        }
    }

    std::vector<Node> nodes_;
    PointId root_ = kNoParent;
    int lmin_ = 0;
};

/// One failed tree condition with its witnesses.
struct TreeViolation {
    std::string condition;  // "root", "covering-level", "covering-distance", "separation", "node-set"
    PointId a = kNoParent;
    PointId b = kNoParent;
    int level = 0;
    double lhs = 0.0;
    double rhs = 0.0;
};

struct ValidationReport {
    bool ok = true;
    std::vector<TreeViolation> violations;
    /// Minimal pairwise distance of C_i per distinct node level i that holds
    /// two or more points; ascending by level.
    std::vector<std::pair<int, double>> level_min_separation;
};

/// Checks the three compressed-cover-tree conditions against the metric and
/// reports every violated condition with a witness.  Comparisons are exact.
inline ValidationReport validate_tree(const CompressedCoverTree& t, const Metric& m,
                                      std::size_t max_violations = 32) {
    ValidationReport rep;
    auto flag = [&](TreeViolation v) {
        rep.ok = false;
        if (rep.violations.size() < max_violations) rep.violations.push_back(std::move(v));
    };
    const std::size_t n = t.size();
    if (m.n != n) {
        flag({"node-set", kNoParent, kNoParent, 0, static_cast<double>(n), static_cast<double>(m.n)});
        return rep;
    }
    // Root condition.
    for (std::size_t v = 0; v < n; ++v) {
        const PointId p = static_cast<PointId>(v);
        if (p == t.root()) continue;
        if (t.level(t.root()) < t.level(p) + 1) {
            flag({"root", t.root(), p, t.level(p), static_cast<double>(t.level(t.root())),
                  static_cast<double>(t.level(p) + 1)});
        }
    }
    // Covering condition.
    for (std::size_t v = 0; v < n; ++v) {
        const PointId q = static_cast<PointId>(v);
        if (q == t.root()) continue;
        const PointId p = t.parent(q);
        if (!(t.level(q) < t.level(p))) {
            flag({"covering-level", q, p, t.level(q), static_cast<double>(t.level(q)),
                  static_cast<double>(t.level(p))});
        }
        const double d = m(q, p);
        const double bound = pow2(t.level(q) + 1);
        if (d > bound) flag({"covering-distance", q, p, t.level(q), d, bound});
    }
    // Separation: descend through distinct levels, keeping a running minimal
    // pairwise distance of the active set C_i.  One metric call per pair.
    std::vector<PointId> by_level(n);
    std::iota(by_level.begin(), by_level.end(), 0);
    std::sort(by_level.begin(), by_level.end(), [&](PointId a, PointId b) {
        if (t.level(a) != t.level(b)) return t.level(a) > t.level(b);
        return a < b;
    });
    std::vector<PointId> active;
    double dmin = std::numeric_limits<double>::infinity();
    PointId wa = kNoParent, wb = kNoParent;
    std::size_t idx = 0;
    while (idx < n) {
        const int lvl = t.level(by_level[idx]);
        while (idx < n && t.level(by_level[idx]) == lvl) {
            const PointId p = by_level[idx++];
            for (PointId q : active) {
                const double d = m(p, q);
                if (d < dmin) {
                    dmin = d;
                    wa = std::min(p, q);
                    wb = std::max(p, q);
                }
            }
            active.push_back(p);
        }
        if (active.size() >= 2) {
            rep.level_min_separation.emplace_back(lvl, dmin);
            if (!(dmin > pow2(lvl))) flag({"separation", wa, wb, lvl, dmin, pow2(lvl)});
        }
    }
    std::sort(rep.level_min_separation.begin(), rep.level_min_separation.end());
    return rep;
}

}  // namespace cct
