#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <queue>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "cct/core.hpp"
#include "cct/descendant_cache.hpp"
#include "cct/metric.hpp"
#include "cct/traversal.hpp"
#include "cct/tree.hpp"

namespace cct {

struct Neighbor {
    PointId id = kNoParent;
    double dist = 0.0;

    friend bool operator==(const Neighbor& a, const Neighbor& b) { return a.id == b.id && a.dist == b.dist; }
    friend bool operator<(const Neighbor& a, const Neighbor& b) {
        if (a.dist != b.dist) return a.dist < b.dist;
        return a.id < b.id;
    }
};

/// Bounded candidate buffer: keeps the k smallest (distance, id) pairs seen so
/// far, deduplicated by id.  Repeated inserts of the same id are no-ops, which
/// makes merging overlapping candidate sets idempotent.
class NeighborBuffer {
  public:
    explicit NeighborBuffer(std::size_t k) : k_(k) {}

    void insert(PointId id, double dist) {
        if (members_.count(id) != 0) return;
        const Neighbor cand{id, dist};
        if (heap_.size() < k_) {
            members_.insert(id);
            heap_.push(cand);
            return;
        }
        if (cand < heap_.top()) {
            members_.erase(heap_.top().id);
            heap_.pop();
            members_.insert(id);
            heap_.push(cand);
        }
    }

    std::size_t size() const noexcept { return heap_.size(); }

    /// Ascending by (distance, id).
    std::vector<Neighbor> sorted() const {
        std::vector<Neighbor> out;
        out.reserve(heap_.size());
        std::priority_queue<Neighbor> copy = heap_;
        while (!copy.empty()) {
            out.push_back(copy.top());
            copy.pop();
        }
        std::reverse(out.begin(), out.end());
        return out;
    }

  private:
    std::size_t k_;
    std::priority_queue<Neighbor> heap_;  // max-heap: top is the current worst
    std::unordered_set<PointId> members_;
};

/// All reference points of exact neighbor rank i for q: the tie group that
/// contains the i-th smallest distance.  Ranks are 1-based; with exclude_self
/// the query point itself (same id) is removed before ranking.
inline std::vector<PointId> nn_set(const MetricPair& pair, PointId q, std::size_t rank, bool exclude_self) {
    if (exclude_self && !pair.same_set) throw invalid_input("exclude_self requires query set == reference set");
    std::vector<std::pair<double, PointId>> d;
    d.reserve(pair.nr);
    for (PointId r = 0; r < static_cast<PointId>(pair.nr); ++r) {
        if (exclude_self && r == q) continue;
        d.emplace_back(pair(q, r), r);
    }
    if (rank == 0 || rank > d.size()) throw invalid_input("neighbor rank out of range");
    std::sort(d.begin(), d.end());
    const double v = d[rank - 1].first;
    std::vector<PointId> out;
    for (const auto& e : d) {
        if (e.first == v) out.push_back(e.second);
    }
    return out;
}

/// All-k-nearest-neighbors result: one ascending (distance, id) row per query.
struct KnnResult {
    std::vector<std::vector<Neighbor>> rows;

    friend bool operator==(const KnnResult& a, const KnnResult& b) { return a.rows == b.rows; }
};

namespace detail {

inline void check_k(const MetricPair& pair, std::size_t k, bool exclude_self, std::size_t k_eff) {
    if (exclude_self && !pair.same_set) throw invalid_input("exclude_self requires query set == reference set");
    if (k == 0) throw invalid_input("k must be positive");
    if (k_eff > pair.nr) {
        throw invalid_input("k = " + std::to_string(k) + " exceeds the " +
                            std::to_string(pair.nr - (k_eff - k)) + " available neighbors");
    }
}

inline std::vector<Neighbor> strip_self(std::vector<Neighbor> row, PointId q, std::size_t k, bool exclude_self) {
    if (exclude_self) {
        row.erase(std::remove_if(row.begin(), row.end(), [q](const Neighbor& n) { return n.id == q; }), row.end());
    }
    if (row.size() > k) row.resize(k);
    if (row.size() != k) throw error("internal error: neighbor row underfull");
    return row;
}

}  // namespace detail

/// Brute-force oracle, full-sort route.  Ties resolve to smaller ids, the same
/// policy the tree solver uses, so results compare exactly.
inline KnnResult knn_bruteforce(const MetricPair& pair, std::size_t k, bool exclude_self = false) {
    const std::size_t k_eff = k + (exclude_self ? 1 : 0);
    detail::check_k(pair, k, exclude_self, k_eff);
    KnnResult res;
    res.rows.resize(pair.nq);
    for (PointId q = 0; q < static_cast<PointId>(pair.nq); ++q) {
        std::vector<Neighbor> d;
        d.reserve(pair.nr);
        for (PointId r = 0; r < static_cast<PointId>(pair.nr); ++r) {
            if (exclude_self && r == q) continue;  // self never competes, skip the call
            d.push_back(Neighbor{r, pair(q, r)});
        }
        std::sort(d.begin(), d.end());
        d.resize(k);
        res.rows[static_cast<std::size_t>(q)] = std::move(d);
    }
    return res;
}

/// Brute-force oracle, partial-selection route.  Independent code path used to
/// cross-check the full-sort oracle.
inline KnnResult knn_bruteforce_select(const MetricPair& pair, std::size_t k, bool exclude_self = false) {
    const std::size_t k_eff = k + (exclude_self ? 1 : 0);
    detail::check_k(pair, k, exclude_self, k_eff);
    KnnResult res;
    res.rows.resize(pair.nq);
    for (PointId q = 0; q < static_cast<PointId>(pair.nq); ++q) {
        std::vector<Neighbor> d;
        d.reserve(pair.nr);
        for (PointId r = 0; r < static_cast<PointId>(pair.nr); ++r) {
            if (exclude_self && r == q) continue;
            d.push_back(Neighbor{r, pair(q, r)});
        }
        std::nth_element(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(k - 1), d.end());
        d.resize(k);
        std::sort(d.begin(), d.end());
        res.rows[static_cast<std::size_t>(q)] = std::move(d);
    }
    return res;
}

namespace detail {

/// Core of the lambda-point selection: given (distance, candidate) pairs and
/// per-candidate distinctive descendant counts at the working level, returns
/// the first candidate (in ascending (distance, id) order) at which the
/// cumulative count reaches k.
inline Neighbor lambda_point_impl(std::vector<std::pair<double, PointId>> d, const DescendantCountCache& cache,
                                  int count_level, std::size_t k) {
    std::sort(d.begin(), d.end());
    std::int64_t cum = 0;
    for (const auto& e : d) {
        cum += cache.count_at(e.second, count_level);
        if (cum >= static_cast<std::int64_t>(k)) return Neighbor{e.second, e.first};
    }
    throw error("internal error: candidate set covers fewer than k points");
}

}  // namespace detail

/// Lambda point of a candidate set: the closest candidate whose distinctive
/// descendant sets at the given level jointly account for at least k points.
/// Distances beyond it can be pruned up to the covering radii.
inline Neighbor lambda_point(const MetricPair& pair, const DescendantCountCache& cache, PointId q,
                             const std::vector<PointId>& cands, int count_level, std::size_t k) {
    std::vector<std::pair<double, PointId>> d;
    d.reserve(cands.size());
    for (PointId a : cands) d.emplace_back(pair(q, a), a);
    return detail::lambda_point_impl(std::move(d), cache, count_level, k);
}

struct KnnOptions {
    bool exclude_self = false;  ///< drop the query point itself (query set == reference set)
    bool verify = false;        ///< run oracle invariant checks at every pruning step
};

struct KnnOutput {
    KnnResult result;
    TraversalStats stats;
    std::size_t k_effective = 0;
};

namespace detail {

/// Pruning and collection hooks of the k-nearest-neighbor paired traversal.
struct KnnHooks {
    const CompressedCoverTree& tq;
    const CompressedCoverTree& tr;
    const MetricPair& pair;
    const DescendantCountCache& cache;
    std::size_t k_eff;
    std::vector<NeighborBuffer>& buffers;
    // Verification state: per query, all reference distances sorted ascending.
    const std::vector<std::vector<double>>* oracle = nullptr;

    std::vector<PointId> on_update(int i, int j, PointId q, const std::vector<PointId>& cands) {
        std::vector<std::pair<double, PointId>> d;
        d.reserve(cands.size());
        for (PointId a : cands) d.emplace_back(pair(q, a), a);
        const Neighbor lambda = lambda_point_impl(d, cache, i - 1, k_eff);
        // Candidates at level i-1 hide descendants within 2^i of themselves;
        // the query node hides its own subtree within 2^{j+1}.  Both slacks
        // doubled keep every potential true neighbor's ancestor alive.
        const double threshold = lambda.dist + pow2(i + 1) + pow2(j + 2);
        std::vector<PointId> keep;
        keep.reserve(d.size());
        for (const auto& e : d) {
            if (e.first <= threshold) keep.push_back(e.second);
        }
        if (oracle != nullptr) verify_step(i, j, q, lambda, keep);
        return keep;
    }

    void on_final(int /*i*/, int /*j*/, PointId q, const std::vector<PointId>& rset) {
        NeighborBuffer& buf = buffers[static_cast<std::size_t>(q)];
        for (PointId r : rset) buf.insert(r, pair(q, r));
    }

    void verify_step(int i, int j, PointId q, const Neighbor& lambda, const std::vector<PointId>& keep) const {
        const std::vector<double>& oq = (*oracle)[static_cast<std::size_t>(q)];
        // A true k-nearest neighbor bounds the lambda distance up to one
        // covering radius at the current level.
        if (lambda.dist > oq[k_eff - 1] + pow2(i)) {
            throw verification_error("lambda-point bound violated at level " + std::to_string(i) + " for query " +
                                     std::to_string(q));
        }
        // The kept candidates' distinctive descendants must still contain a
        // complete set of k nearest neighbors of every query point this chain
        // is responsible for: q itself plus the subtree that enters below the
        // current query level (children already branched off carry their own
        // candidate copies).
        std::unordered_set<PointId> un;
        for (PointId a : keep) {
            for (PointId s : tr.distinctive_set(a, i - 1)) un.insert(s);
        }
        for (PointId qd : tq.distinctive_set(q, j)) {
            std::vector<double> have;
            have.reserve(un.size());
            for (PointId s : un) have.push_back(pair.dist(qd, s));  // uncounted: oracle work
            if (have.size() < k_eff) {
                throw verification_error("candidate invariant lost at level " + std::to_string(i) + " for query " +
                                         std::to_string(qd));
            }
            std::sort(have.begin(), have.end());
            const std::vector<double>& od = (*oracle)[static_cast<std::size_t>(qd)];
            for (std::size_t t = 0; t < k_eff; ++t) {
                if (have[t] != od[t]) {
                    throw verification_error("candidate invariant lost at level " + std::to_string(i) +
                                             " for query " + std::to_string(qd));
                }
            }
        }
    }
};

}  // namespace detail

/// Exact all-k-nearest-neighbors via paired tree descent.
///
/// Every query point receives its k nearest reference points (ascending by
/// distance, ties to smaller ids), computed exactly: pruning only discards
/// candidates whose entire distinctive subtrees provably cannot enter the
/// answer.  With exclude_self the two trees must describe the same set; the
/// solver then runs with k+1 internally and drops each query's own id.
///
/// options.verify re-checks the pruning invariants against a brute-force
/// oracle at every step (quadratic; intended for small inputs) and throws
/// verification_error on the first violation.
inline KnnOutput knn_paired(const CompressedCoverTree& tq, const CompressedCoverTree& tr, const MetricPair& pair,
                            std::size_t k, const KnnOptions& options = {}) {
    if (tq.size() != pair.nq || tr.size() != pair.nr) {
        throw invalid_input("trees and metric pair disagree on point counts");
    }
    const std::size_t k_eff = k + (options.exclude_self ? 1 : 0);
    detail::check_k(pair, k, options.exclude_self, k_eff);
    const DescendantCountCache cache(tr);
    std::vector<NeighborBuffer> buffers(pair.nq, NeighborBuffer(k_eff));
    detail::KnnHooks hooks{tq, tr, pair, cache, k_eff, buffers};

    std::vector<std::vector<double>> oracle;
    if (options.verify) {
        if (pair.nq > 128 || pair.nr > 128) {
            throw invalid_input("verification mode is limited to 128 points per side");
        }
        oracle.resize(pair.nq);
        for (PointId q = 0; q < static_cast<PointId>(pair.nq); ++q) {
            auto& oq = oracle[static_cast<std::size_t>(q)];
            oq.reserve(pair.nr);
            for (PointId r = 0; r < static_cast<PointId>(pair.nr); ++r) oq.push_back(pair.dist(q, r));
            std::sort(oq.begin(), oq.end());
        }
        hooks.oracle = &oracle;
    }

    const std::uint64_t calls_before = pair.counter != nullptr ? pair.counter->count() : 0;
    TraversalStats stats = paired_traversal(tq, tr, hooks);
    if (pair.counter != nullptr) stats.distance_calls = pair.counter->count() - calls_before;

    KnnOutput out;
    out.k_effective = k_eff;
    out.stats = stats;
    out.result.rows.resize(pair.nq);
    for (PointId q = 0; q < static_cast<PointId>(pair.nq); ++q) {
        if (buffers[static_cast<std::size_t>(q)].size() != k_eff) {
            throw error("internal error: query " + std::to_string(q) + " finished with an underfull buffer");
        }
        out.result.rows[static_cast<std::size_t>(q)] =
            detail::strip_self(buffers[static_cast<std::size_t>(q)].sorted(), q, k, options.exclude_self);
    }
    return out;
}

}  // namespace cct
