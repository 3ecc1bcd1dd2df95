#pragma once

#include <cstddef>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "cct/core.hpp"
#include "cct/euclidean.hpp"
#include "cct/trainline.hpp"

namespace cct {

/// Type-erased metric over one point set.  Holds a non-owning view of the
/// underlying set; the set must outlive the Metric.  Every evaluation bumps
/// the attached counter, if any.
struct Metric {
    std::size_t n = 0;
    std::function<double(PointId, PointId)> dist;
    DistanceCounter* counter = nullptr;

    double operator()(PointId a, PointId b) const {
        if (counter != nullptr) counter->add();
        return dist(a, b);
    }
};

inline Metric metric_of(const EuclideanSet& s, DistanceCounter* counter = nullptr) {
    return Metric{s.size(), [&s](PointId a, PointId b) { return s.distance(a, b); }, counter};
}

inline Metric metric_of(const TrainLineGraphSet& s, DistanceCounter* counter = nullptr) {
    return Metric{s.size(), [&s](PointId a, PointId b) { return s.distance(a, b); }, counter};
}

/// Query/reference pair.  When same_set is true, equal ids denote the same
/// point (so d(i, i) == 0); otherwise ids index two unrelated sets.
struct MetricPair {
    std::size_t nq = 0;
    std::size_t nr = 0;
    bool same_set = false;
    std::function<double(PointId, PointId)> dist;  // d(query id, reference id)
    DistanceCounter* counter = nullptr;

    double operator()(PointId q, PointId r) const {
        if (counter != nullptr) counter->add();
        return dist(q, r);
    }
};

/// Both sides are the same set: queries and references share ids.
inline MetricPair self_pair(const Metric& m) {
    return MetricPair{m.n, m.n, true, m.dist, m.counter};
}

inline MetricPair cross_pair(const EuclideanSet& qs, const EuclideanSet& rs, DistanceCounter* counter = nullptr) {
    if (qs.dim() != rs.dim()) throw invalid_input("query and reference sets differ in dimension");
    return MetricPair{qs.size(), rs.size(), false,
                      [&qs, &rs](PointId q, PointId r) { return euclidean_cross_distance(qs, rs, q, r); }, counter};
}

inline MetricPair cross_pair(const TrainLineGraphSet& qs, const TrainLineGraphSet& rs,
                             DistanceCounter* counter = nullptr) {
    return MetricPair{qs.size(), rs.size(), false,
                      [&qs, &rs](PointId q, PointId r) { return trainline_cross_distance(qs, rs, q, r); }, counter};
}

/// One failed metric axiom, with the witnessing points and values.
struct AxiomViolation {
    std::string axiom;  // "non-negativity", "identity", "symmetry", "triangle"
    PointId a = 0;
    PointId b = 0;
    PointId c = 0;
    double lhs = 0.0;
    double rhs = 0.0;
};

struct AxiomReport {
    bool ok = true;
    std::uint64_t pairs_checked = 0;
    std::uint64_t triangles_checked = 0;
    std::vector<AxiomViolation> violations;  // capped, first offenders only
};

/// Checks the metric axioms on a point set, exhaustively when sample_triangles
/// is zero and by seeded sampling otherwise.  Comparisons are exact; there is
/// no tolerance.
inline AxiomReport verify_metric_axioms(const Metric& m, std::uint64_t sample_triangles = 0,
                                        std::uint64_t seed = 0, std::size_t max_violations = 8) {
    AxiomReport rep;
    const PointId n = static_cast<PointId>(m.n);
    auto flag = [&](AxiomViolation v) {
        rep.ok = false;
        if (rep.violations.size() < max_violations) rep.violations.push_back(std::move(v));
    };
    for (PointId a = 0; a < n; ++a) {
        const double self = m(a, a);
        ++rep.pairs_checked;
        if (self != 0.0) flag({"identity", a, a, a, self, 0.0});
    }
    if (sample_triangles == 0) {
        // Exhaustive mode: evaluate each unordered pair once, then check every
        // triangle orientation against the cached values.
        std::vector<double> d(m.n * m.n, 0.0);
        auto at = [&](PointId a, PointId b) -> double& { return d[static_cast<std::size_t>(a) * m.n + b]; };
        for (PointId a = 0; a < n; ++a) {
            for (PointId b = static_cast<PointId>(a + 1); b < n; ++b) {
                const double dab = m(a, b);
                const double dba = m(b, a);
                ++rep.pairs_checked;
                if (!(dab > 0.0)) flag({"non-negativity", a, b, b, dab, 0.0});
                if (dab != dba) flag({"symmetry", a, b, b, dab, dba});
                at(a, b) = at(b, a) = dab;
            }
        }
        for (PointId a = 0; a < n; ++a)
            for (PointId c = static_cast<PointId>(a + 1); c < n; ++c)
                for (PointId b = 0; b < n; ++b) {
                    if (b == a || b == c) continue;
                    ++rep.triangles_checked;
                    if (at(a, c) > at(a, b) + at(b, c)) flag({"triangle", a, b, c, at(a, c), at(a, b) + at(b, c)});
                }
    } else {
        for (PointId a = 0; a < n; ++a) {
            for (PointId b = static_cast<PointId>(a + 1); b < n; ++b) {
                const double dab = m(a, b);
                const double dba = m(b, a);
                ++rep.pairs_checked;
                if (!(dab > 0.0)) flag({"non-negativity", a, b, b, dab, 0.0});
                if (dab != dba) flag({"symmetry", a, b, b, dab, dba});
            }
        }
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<PointId> pick(0, static_cast<PointId>(n - 1));
        for (std::uint64_t t = 0; t < sample_triangles; ++t) {
            const PointId a = pick(rng), b = pick(rng), c = pick(rng);
            if (a == b || b == c || a == c) continue;
            const double lhs = m(a, c);
            const double rhs = m(a, b) + m(b, c);
            ++rep.triangles_checked;
            if (lhs > rhs) flag({"triangle", a, b, c, lhs, rhs});
        }
    }
    return rep;
}

}  // namespace cct
