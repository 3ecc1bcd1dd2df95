#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include <gtest/gtest.h>

#include "cct/core.hpp"
#include "cct/euclidean.hpp"
#include "cct/metric.hpp"
#include "cct/trainline.hpp"

namespace {

using cct::PointId;

TEST(Core, Pow2IsExact) {
    EXPECT_EQ(cct::pow2(0), 1.0);
    EXPECT_EQ(cct::pow2(10), 1024.0);
    EXPECT_EQ(cct::pow2(-3), 0.125);
    EXPECT_EQ(cct::pow2(486), std::ldexp(1.0, 486));
}

TEST(Core, LevelBelowFindsLargestStrictPower) {
    EXPECT_EQ(cct::level_below(1.0), -1);   // 2^-1 = 0.5 < 1, 2^0 = 1 is not strictly below
    EXPECT_EQ(cct::level_below(1.5), 0);
    EXPECT_EQ(cct::level_below(2.0), 0);
    EXPECT_EQ(cct::level_below(0.3), -2);   // 0.25 < 0.3 <= 0.5
    EXPECT_EQ(cct::level_below(1024.0), 9);
    EXPECT_EQ(cct::level_below(1025.0), 10);
    for (int e = -40; e <= 40; ++e) {
        EXPECT_EQ(cct::level_below(cct::pow2(e)), e - 1);
        EXPECT_EQ(cct::level_below(cct::pow2(e) * 1.25), e);
    }
}

TEST(EuclideanSet, DistancesAndAccessors) {
    cct::EuclideanSet s(2, {0.0, 0.0, 3.0, 4.0, 0.0, 1.0});
    EXPECT_EQ(s.size(), 3u);
    EXPECT_EQ(s.dim(), 2u);
    EXPECT_EQ(s.distance(0, 1), 5.0);
    EXPECT_EQ(s.distance(1, 0), 5.0);
    EXPECT_EQ(s.distance(0, 2), 1.0);
    EXPECT_EQ(s.distance(2, 2), 0.0);
}

TEST(EuclideanSet, RejectsDuplicatesAndNonFinite) {
    EXPECT_THROW(cct::EuclideanSet(1, {1.0, 2.0, 1.0}), cct::invalid_input);
    EXPECT_THROW(cct::EuclideanSet(2, {0.0, 1.0, 0.0, 1.0}), cct::invalid_input);
    // -0.0 and 0.0 name the same location.
    EXPECT_THROW(cct::EuclideanSet(1, {-0.0, 0.0}), cct::invalid_input);
    EXPECT_THROW(cct::EuclideanSet(1, {0.0, std::nan("")}), cct::invalid_input);
    EXPECT_THROW(cct::EuclideanSet(1, {0.0, std::numeric_limits<double>::infinity()}), cct::invalid_input);
    EXPECT_THROW(cct::EuclideanSet(0, {}), cct::invalid_input);
    EXPECT_THROW(cct::EuclideanSet(2, {1.0, 2.0, 3.0}), cct::invalid_input);
}

TEST(Metric, CounterMetersEveryCall) {
    cct::EuclideanSet s(1, {0.0, 1.0, 3.0});
    cct::DistanceCounter counter;
    cct::Metric m = cct::metric_of(s, &counter);
    EXPECT_EQ(m.n, 3u);
    (void)m(0, 1);
    (void)m(1, 2);
    (void)m(2, 2);
    EXPECT_EQ(counter.count(), 3u);
    counter.reset();
    EXPECT_EQ(counter.count(), 0u);
}

TEST(Axioms, ExhaustivePassesOnEuclidean) {
    cct::EuclideanSet s(2, {0.0, 0.0, 1.0, 0.25, 0.5, 2.0, -1.0, 0.125, 3.5, -2.0});
    const cct::AxiomReport rep = cct::verify_metric_axioms(cct::metric_of(s));
    EXPECT_TRUE(rep.ok);
    EXPECT_TRUE(rep.violations.empty());
    EXPECT_GT(rep.triangles_checked, 0u);
}

TEST(Axioms, ReportsTriangleViolationWithWitness) {
    // Hand-made "metric" where one leg is too long: d(0,2) > d(0,1) + d(1,2).
    cct::Metric bad;
    bad.n = 3;
    bad.dist = [](PointId a, PointId b) {
        if (a == b) return 0.0;
        const PointId lo = std::min(a, b), hi = std::max(a, b);
        if (lo == 0 && hi == 2) return 10.0;
        return 1.0;
    };
    const cct::AxiomReport rep = cct::verify_metric_axioms(bad);
    EXPECT_FALSE(rep.ok);
    ASSERT_FALSE(rep.violations.empty());
    bool found = false;
    for (const auto& v : rep.violations) {
        if (v.axiom == "triangle" && v.lhs == 10.0 && v.rhs == 2.0) found = true;
    }
    EXPECT_TRUE(found);
}

TEST(Axioms, ReportsSymmetryAndIdentityViolations) {
    cct::Metric bad;
    bad.n = 2;
    bad.dist = [](PointId a, PointId b) {
        if (a == b) return a == 1 ? 0.5 : 0.0;  // point 1 has nonzero self distance
        return a < b ? 1.0 : 2.0;               // asymmetric
    };
    const cct::AxiomReport rep = cct::verify_metric_axioms(bad);
    EXPECT_FALSE(rep.ok);
    bool identity = false, symmetry = false;
    for (const auto& v : rep.violations) {
        if (v.axiom == "identity") identity = true;
        if (v.axiom == "symmetry") symmetry = true;
    }
    EXPECT_TRUE(identity);
    EXPECT_TRUE(symmetry);
}

TEST(TrainLine, ClosedFormsMatchTheConstruction) {
    const int m = 5;
    cct::TrainLineGraphSet s(cct::TrainLineVariant::tall_imbalanced, m);
    EXPECT_EQ(s.size(), 26u);
    // Junction distances: block ends connect directly, others go via the hub.
    EXPECT_EQ(s.distance(0, m), cct::pow2(m + 1));
    EXPECT_EQ(s.distance(0, 2 * m), cct::pow2(2 * m + 1));
    EXPECT_EQ(s.distance(0, 1), 4.0 + 1.0);
    EXPECT_EQ(s.distance(0, m + 2), cct::pow2(m + 3) + 1.0);
    // Same-block distances telescope along the chain.
    for (PointId i = 1; i <= m * m; ++i) {
        for (PointId j = 1; j < i; ++j) {
            if ((i - 1) / m != (j - 1) / m) continue;
            double total = 0.0;
            for (PointId t = j + 1; t <= i; ++t) total += cct::pow2(t);
            EXPECT_EQ(s.distance(i, j), total) << "i=" << i << " j=" << j;
            EXPECT_EQ(s.distance(i, j), cct::pow2(i + 1) - cct::pow2(j + 1));
        }
    }
    // Cross-block pairs only meet through the hub.
    EXPECT_EQ(s.distance(1, m + 1), cct::pow2(2) + cct::pow2(m + 2));
    EXPECT_EQ(s.distance(m, m + 1), cct::pow2(m + 1) + cct::pow2(m + 2));
    // Hub distances (the hub itself is not a dataset point).
    EXPECT_EQ(s.hub_distance(0), 1.0);
    EXPECT_EQ(s.hub_distance(3), 16.0);
    EXPECT_EQ(s.hub_distance(m * m), cct::pow2(m * m + 1));
    EXPECT_EQ(s.label(0), "r");
    EXPECT_EQ(s.label(7), "p7");
}

TEST(TrainLine, RejectsOutOfRangeParameters) {
    EXPECT_THROW(cct::TrainLineGraphSet(cct::TrainLineVariant::tall_imbalanced, 3), cct::invalid_input);
    EXPECT_THROW(cct::TrainLineGraphSet(cct::TrainLineVariant::tall_imbalanced, 23), cct::invalid_input);
    cct::TrainLineGraphSet s(cct::TrainLineVariant::tall_imbalanced, 4);
    EXPECT_THROW(s.distance(0, 17), cct::invalid_input);
}

TEST(TrainLine, ExhaustiveAxiomsHoldOnTheTallSet) {
    cct::TrainLineGraphSet s(cct::TrainLineVariant::tall_imbalanced, 4);
    const cct::AxiomReport rep = cct::verify_metric_axioms(cct::metric_of(s));
    EXPECT_TRUE(rep.ok) << (rep.violations.empty() ? "" : rep.violations.front().axiom);
}

TEST(TrainLine, BichromaticCrossDistances) {
    const int m = 5;
    cct::TrainLineGraphSet qs(cct::TrainLineVariant::bichromatic_query, m);
    cct::TrainLineGraphSet rs(cct::TrainLineVariant::bichromatic_reference, m);
    EXPECT_EQ(cct::trainline_cross_distance(qs, rs, 2, 5), 8.0 + 64.0);
    EXPECT_EQ(cct::trainline_cross_distance(qs, rs, 0, 0), 0.0);  // the shared junction
    EXPECT_EQ(cct::trainline_cross_distance(qs, rs, 0, 5), rs.distance(0, 5));
    EXPECT_EQ(cct::trainline_cross_distance(qs, rs, 3, 0), qs.distance(0, 3));
    EXPECT_EQ(qs.label(2), "q2");
    EXPECT_EQ(rs.label(5), "r5");
    cct::TrainLineGraphSet other(cct::TrainLineVariant::bichromatic_reference, m + 1);
    EXPECT_THROW(cct::trainline_cross_distance(qs, other, 1, 1), cct::invalid_input);
}

TEST(TrainLine, ExhaustiveAxiomsHoldOnTheBichromaticUnion) {
    // Merge both sides into one metric space: ids 0..m*m are the query side
    // (0 is the shared junction), m*m+1 .. 2m*m are reference chain points.
    const int m = 4;
    cct::TrainLineGraphSet qs(cct::TrainLineVariant::bichromatic_query, m);
    cct::TrainLineGraphSet rs(cct::TrainLineVariant::bichromatic_reference, m);
    const PointId side = static_cast<PointId>(m * m);
    cct::Metric un;
    un.n = 2 * static_cast<std::size_t>(m) * m + 1;
    un.dist = [&qs, &rs, side](PointId a, PointId b) {
        const bool aq = a <= side;
        const bool bq = b <= side;
        const PointId al = aq ? a : static_cast<PointId>(a - side);
        const PointId bl = bq ? b : static_cast<PointId>(b - side);
        if (aq && bq) return qs.distance(al, bl);
        if (!aq && !bq) return rs.distance(al, bl);
        return aq ? cct::trainline_cross_distance(qs, rs, al, bl) : cct::trainline_cross_distance(qs, rs, bl, al);
    };
    const cct::AxiomReport rep = cct::verify_metric_axioms(un);
    EXPECT_TRUE(rep.ok);
}

TEST(MetricPair, SelfAndCrossFactories) {
    cct::EuclideanSet a(1, {0.0, 1.0});
    cct::EuclideanSet b(1, {0.5, 2.0, 3.0});
    cct::DistanceCounter counter;
    cct::MetricPair self = cct::self_pair(cct::metric_of(a, &counter));
    EXPECT_TRUE(self.same_set);
    EXPECT_EQ(self.nq, 2u);
    EXPECT_EQ(self(0, 1), 1.0);
    cct::MetricPair cross = cct::cross_pair(a, b, &counter);
    EXPECT_FALSE(cross.same_set);
    EXPECT_EQ(cross.nq, 2u);
    EXPECT_EQ(cross.nr, 3u);
    EXPECT_EQ(cross(1, 0), 0.5);
    EXPECT_EQ(counter.count(), 2u);
    cct::EuclideanSet c(2, {0.0, 0.0, 1.0, 1.0});
    EXPECT_THROW(cct::cross_pair(a, c), cct::invalid_input);
}

}  // namespace
