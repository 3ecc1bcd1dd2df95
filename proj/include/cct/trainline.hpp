#pragma once

#include <cstddef>
#include <string>

#include "cct/core.hpp"

namespace cct {

enum class TrainLineVariant {
    tall_imbalanced,         ///< single chain set used for worst-case self queries
    bichromatic_query,       ///< query side of the two-chain instance
    bichromatic_reference,   ///< reference side of the two-chain instance
};

/// Adversarial point set drawn from a weighted "train line" graph.
///
/// The graph has a hub vertex (never part of the set), a junction point r at
/// distance 1 from the hub, and m blocks of m chain points p_1..p_{m*m} whose
/// distance from the hub doubles at every step.  Shortest-path distances
/// collapse to closed forms:
///
///   d(r, p_i)    = 2^{i+1}          when i is a multiple of m (block ends
///                                    carry a direct edge to r),
///                  2^{i+1} + 1      otherwise (via the hub),
///   d(p_i, p_j)  = 2^{i+1} - 2^{j+1}  for i > j in the same block,
///                  2^{i+1} + 2^{j+1}  across blocks (via the hub).
///
/// Point ids: 0 is the junction r, i in 1..m*m is the chain point p_i.  The
/// bichromatic variants describe two such chain families sharing the junction
/// and hub; distances across the two sets come from trainline_cross_distance.
///
/// All values are exact in double precision except the "+1" terms beyond
/// 2^53, which round down by 1 and never change any comparison the library
/// performs (both sides of every splitting comparison are powers of two or
/// short sums of them).
class TrainLineGraphSet {
  public:
    TrainLineGraphSet(TrainLineVariant variant, int m) : variant_(variant), m_(m) {
        if (m < 4 || m > 22) throw invalid_input("train line parameter m must lie in [4, 22]");
        n_ = static_cast<std::size_t>(m) * static_cast<std::size_t>(m) + 1;
    }

    std::size_t size() const noexcept { return n_; }
    int m() const noexcept { return m_; }
    TrainLineVariant variant() const noexcept { return variant_; }

    double distance(PointId a, PointId b) const {
        check(a);
        check(b);
        if (a == b) return 0.0;
        if (a == 0) return junction_distance(b);
        if (b == 0) return junction_distance(a);
        const PointId hi = a > b ? a : b;
        const PointId lo = a > b ? b : a;
        if ((hi - 1) / m_ == (lo - 1) / m_) return pow2(hi + 1) - pow2(lo + 1);  // same block
        return pow2(hi + 1) + pow2(lo + 1);                                     // via the hub
    }

    /// Distance from the hub vertex, which is not itself a dataset point.
    double hub_distance(PointId a) const {
        check(a);
        return a == 0 ? 1.0 : pow2(a + 1);
    }

    /// Human-readable point label for exports ("r", "p7", "q7", ...).
    std::string label(PointId a) const {
        check(a);
        if (a == 0) return "r";
        switch (variant_) {
            case TrainLineVariant::bichromatic_query: return "q" + std::to_string(a);
            case TrainLineVariant::bichromatic_reference: return "r" + std::to_string(a);
            default: return "p" + std::to_string(a);
        }
    }

  private:
    void check(PointId a) const {
        if (a < 0 || static_cast<std::size_t>(a) >= n_) throw invalid_input("point id out of range");
    }

    double junction_distance(PointId i) const {
        const double base = pow2(i + 1);
        return i % m_ == 0 ? base : base + 1.0;
    }

    TrainLineVariant variant_;
    int m_;
    std::size_t n_;
};

/// Distance between the query and reference sides of a bichromatic instance.
/// Both sets share the junction point (id 0) and the hub; chain points of
/// different sides only connect through the hub.
inline double trainline_cross_distance(const TrainLineGraphSet& qs, const TrainLineGraphSet& rs, PointId q,
                                       PointId r) {
    if (qs.m() != rs.m()) throw invalid_input("bichromatic sides must share the same m");
    if (q == 0 && r == 0) return 0.0;    // the shared junction
    if (q == 0) return rs.distance(0, r);
    if (r == 0) return qs.distance(0, q);
    return qs.hub_distance(q) + rs.hub_distance(r);
}

}  // namespace cct
