#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "cct/core.hpp"
#include "cct/euclidean.hpp"
#include "cct/trainline.hpp"
#include "cct/tree.hpp"

namespace cct {

/// Tall adversarial instance: the train-line chain set together with its
/// prescribed compressed cover tree.  The junction r (id 0) is the root at
/// level m*m + 1; chain point p_i sits at level i, attached to r at block
/// ends (i divisible by m) and to p_{i+1} inside a block.  The tree is valid
/// with equality in the covering condition and has height-set size m*m + 1,
/// which forces quadratic imbalance for self queries.
struct TallInstance {
    TrainLineGraphSet set;
    CompressedCoverTree tree;
};

inline CompressedCoverTree tall_tree(int m) {
    const std::size_t n = static_cast<std::size_t>(m) * static_cast<std::size_t>(m) + 1;
    std::vector<int> levels(n, 0);
    std::vector<PointId> parents(n, kNoParent);
    levels[0] = m * m + 1;
    for (std::size_t i = 1; i < n; ++i) {
        levels[i] = static_cast<int>(i);
        parents[i] = (i % static_cast<std::size_t>(m) == 0) ? 0 : static_cast<PointId>(i + 1);
    }
    return CompressedCoverTree::from_levels(levels, parents);
}

inline TallInstance gen_tall_imbalanced(int m) {
    return TallInstance{TrainLineGraphSet(TrainLineVariant::tall_imbalanced, m), tall_tree(m)};
}

/// Bichromatic adversarial instance: two chain families that share the
/// junction point (id 0 on both sides) and only meet through the hub.
struct BichromaticInstance {
    TrainLineGraphSet query_set;
    TrainLineGraphSet reference_set;
    CompressedCoverTree query_tree;
    CompressedCoverTree reference_tree;
};

inline BichromaticInstance gen_bichromatic(int m) {
    return BichromaticInstance{TrainLineGraphSet(TrainLineVariant::bichromatic_query, m),
                               TrainLineGraphSet(TrainLineVariant::bichromatic_reference, m), tall_tree(m),
                               tall_tree(m)};
}

/// Uniform points in [0,1)^dim, deterministic in (n, dim, seed).
inline EuclideanSet random_euclidean(std::size_t n, std::size_t dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> coords(n * dim);
    for (double& v : coords) v = u(rng);
    return EuclideanSet(dim, std::move(coords));
}

/// Structure-only balanced tree: branching factor t, levels m down to 0, with
/// t^d nodes at depth d.  Ids follow heap order (children of v are t*v+1 ..
/// t*v+t), so no metric is involved; the shape alone drives traversal and
/// imbalance measurements.
inline CompressedCoverTree make_balanced_tree(int t, int m) {
    if (t < 2 || m < 0) throw invalid_input("balanced tree needs branching >= 2 and depth >= 0");
    std::size_t n = 0;
    std::size_t width = 1;
    for (int d = 0; d <= m; ++d) {
        n += width;
        width *= static_cast<std::size_t>(t);
    }
    std::vector<int> levels(n, 0);
    std::vector<PointId> parents(n, kNoParent);
    std::size_t first = 0;  // first id at the current depth
    width = 1;
    for (int d = 0; d <= m; ++d) {
        for (std::size_t v = first; v < first + width; ++v) {
            levels[v] = m - d;
            parents[v] = d == 0 ? kNoParent : static_cast<PointId>((v - 1) / static_cast<std::size_t>(t));
        }
        first += width;
        width *= static_cast<std::size_t>(t);
    }
    return CompressedCoverTree::from_levels(levels, parents);
}

}  // namespace cct
