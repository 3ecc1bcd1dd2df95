#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <utility>
#include <vector>

#include "cct/core.hpp"

namespace cct {

/// Finite set of points in R^d under the Euclidean metric.
///
/// Coordinates are stored row-major (point id * dim).  Construction rejects
/// non-finite coordinates and duplicate points: every id must name a distinct
/// location, since downstream structures key on ids and assume d(a,b) > 0 for
/// a != b.
class EuclideanSet {
  public:
    EuclideanSet(std::size_t dim, std::vector<double> coords)
        : dim_(dim), coords_(std::move(coords)) {
        if (dim_ == 0) throw invalid_input("point dimension must be positive");
        if (coords_.size() % dim_ != 0)
            throw invalid_input("coordinate count is not a multiple of the dimension");
        for (double v : coords_) {
            if (!std::isfinite(v)) throw invalid_input("non-finite coordinate in point set");
        }
        // Normalize -0.0 so the duplicate scan compares representations.
        for (double& v : coords_) {
            if (v == 0.0) v = 0.0;
        }
        check_duplicates();
    }

    std::size_t size() const noexcept { return coords_.size() / dim_; }
    std::size_t dim() const noexcept { return dim_; }

    const double* point(PointId id) const { return coords_.data() + static_cast<std::size_t>(id) * dim_; }

    double distance(PointId a, PointId b) const {
        const double* pa = point(a);
        const double* pb = point(b);
        double s = 0.0;
        for (std::size_t c = 0; c < dim_; ++c) {
            const double d = pa[c] - pb[c];
            s += d * d;
        }
        return std::sqrt(s);
    }

  private:
    void check_duplicates() const {
        const std::size_t n = size();
        std::vector<PointId> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](PointId a, PointId b) {
            return std::lexicographical_compare(point(a), point(a) + dim_, point(b), point(b) + dim_);
        });
        for (std::size_t i = 1; i < n; ++i) {
            if (std::equal(point(order[i - 1]), point(order[i - 1]) + dim_, point(order[i]))) {
                throw invalid_input("duplicate point: ids " + std::to_string(order[i - 1]) + " and " +
                                    std::to_string(order[i]));
            }
        }
    }

    std::size_t dim_;
    std::vector<double> coords_;
};

/// Euclidean distance between points of two sets with equal dimension.
inline double euclidean_cross_distance(const EuclideanSet& qs, const EuclideanSet& rs, PointId q, PointId r) {
    const double* pa = qs.point(q);
    const double* pb = rs.point(r);
    double s = 0.0;
    for (std::size_t c = 0; c < qs.dim(); ++c) {
        const double d = pa[c] - pb[c];
        s += d * d;
    }
    return std::sqrt(s);
}

}  // namespace cct
