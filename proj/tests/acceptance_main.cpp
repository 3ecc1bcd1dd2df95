// Acceptance suite: ten end-to-end checks of the compressed cover tree
// k-nearest-neighbor engine, one [PASS]/[FAIL] line each.  Exits non-zero if
// any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "cct/cct.hpp"

namespace {

using cct::CompressedCoverTree;
using cct::PointId;

// ---------------------------------------------------------------------------
// Tiny check harness: counts failures per criterion, keeps the first message.

int g_fail_count = 0;
std::string g_first_failure;

void check_failed(const char* expr, int line, const std::string& msg) {
    ++g_fail_count;
    if (g_first_failure.empty()) {
        g_first_failure = std::string(expr) + " (line " + std::to_string(line) + ")";
        if (!msg.empty()) g_first_failure += ": " + msg;
    }
}

#define CHECK(cond) \
    do { \
        if (!(cond)) check_failed(#cond, __LINE__, ""); \
    } while (0)

#define CHECK_MSG(cond, msg) \
    do { \
        if (!(cond)) check_failed(#cond, __LINE__, (msg)); \
    } while (0)

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------------------
// Counter-bound ledger (criterion 5): every k-NN run and every tree built by
// the suite is recorded here and checked against the structural budgets.

struct BudgetLedger {
    std::uint64_t runs = 0;
    std::uint64_t trees = 0;
    std::uint64_t violations = 0;
    std::string first;

    void note(const std::string& msg) {
        ++violations;
        if (first.empty()) first = msg;
    }
} g_ledger;

std::uint64_t essential_total(const CompressedCoverTree& t) {
    std::uint64_t total = 0;
    for (PointId p = 0; p < static_cast<PointId>(t.size()); ++p) total += t.essential_levels(p).size();
    return total;
}

void ledger_register_tree(const CompressedCoverTree& t) {
    ++g_ledger.trees;
    const std::uint64_t total = essential_total(t);
    if (total > 2 * t.size()) {
        g_ledger.note("essential-level total " + std::to_string(total) + " exceeds 2n = " +
                      std::to_string(2 * t.size()));
    }
}

// Runs the paired solver and feeds the ledger with the structural budgets:
// reference expansions vs imbalance + height, query expansions vs 2|Q|.
cct::KnnOutput run_knn_checked(const CompressedCoverTree& tq, const CompressedCoverTree& tr,
                               const cct::MetricPair& pair, std::size_t k, const cct::KnnOptions& opt = {}) {
    const cct::KnnOutput out = cct::knn_paired(tq, tr, pair, k, opt);
    ++g_ledger.runs;
    const std::uint64_t ref_budget =
        static_cast<std::uint64_t>(cct::imbalance(tq, tr)) + tr.height_set().size();
    if (out.stats.ref_expansions > ref_budget) {
        g_ledger.note("ref_expansions " + std::to_string(out.stats.ref_expansions) + " > imbalance+|H| = " +
                      std::to_string(ref_budget));
    }
    if (out.stats.query_expansions > 2 * tq.size()) {
        g_ledger.note("query_expansions " + std::to_string(out.stats.query_expansions) + " > 2|Q| = " +
                      std::to_string(2 * tq.size()));
    }
    ledger_register_tree(tq);
    ledger_register_tree(tr);
    return out;
}

std::vector<double> row_distances(const std::vector<cct::Neighbor>& row) {
    std::vector<double> d;
    d.reserve(row.size());
    for (const cct::Neighbor& n : row) d.push_back(n.dist);
    return d;
}

// ---------------------------------------------------------------------------
// Criterion 1: the paired solver returns exactly the oracle distances on 200
// randomized instances, monochromatic and bichromatic.

void criterion_oracle_equivalence() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(20240817u);
    const std::size_t dims[] = {1, 2, 4, 8};
    const std::size_t ks[] = {1, 3, 10};

    for (int inst = 0; inst < 200; ++inst) {
        const std::size_t dim = dims[rng() % 4];
        const std::size_t k = ks[rng() % 3];
        const int mode = inst % 4;  // 0 self, 1 self+exclude, 2..3 cross
        const std::size_t nr = 12 + rng() % 501;  // <= 512

        const cct::EuclideanSet ref = cct::random_euclidean(nr, dim, rng());
        const CompressedCoverTree tr = CompressedCoverTree::build(cct::metric_of(ref));

        cct::KnnOptions opt;
        cct::KnnOutput out;
        cct::KnnResult oracle;
        if (mode <= 1) {
            opt.exclude_self = (mode == 1);
            const cct::MetricPair pair = cct::self_pair(cct::metric_of(ref));
            out = run_knn_checked(tr, tr, pair, k, opt);
            oracle = cct::knn_bruteforce(pair, k, opt.exclude_self);
        } else {
            const std::size_t nq = 1 + rng() % 512;
            const cct::EuclideanSet qs = cct::random_euclidean(nq, dim, rng());
            const CompressedCoverTree tq = CompressedCoverTree::build(cct::metric_of(qs));
            const cct::MetricPair pair = cct::cross_pair(qs, ref);
            out = run_knn_checked(tq, tr, pair, k);
            oracle = cct::knn_bruteforce(pair, k);
        }
        for (std::size_t q = 0; q < oracle.rows.size(); ++q) {
            if (row_distances(out.result.rows[q]) != row_distances(oracle.rows[q])) {
                CHECK_MSG(false, "distance row mismatch, instance " + std::to_string(inst) + " query " +
                                     std::to_string(q));
                break;
            }
        }
        if (g_fail_count > 0) break;
    }
    CHECK_MSG(seconds_since(t0) < 60.0, "exceeded the 60 s budget");
}

// ---------------------------------------------------------------------------
// Criterion 2: the four-point worked example, both as ranked tie groups and as
// full k-NN rows.

void criterion_worked_example() {
    const cct::EuclideanSet pts(1, {0.0, 1.0, 2.0, 3.0});
    const cct::MetricPair pair = cct::self_pair(cct::metric_of(pts));
    const CompressedCoverTree t = CompressedCoverTree::build(cct::metric_of(pts));

    CHECK(cct::nn_set(pair, 0, 1, true) == std::vector<PointId>{1});
    CHECK(cct::nn_set(pair, 0, 2, true) == std::vector<PointId>{2});
    CHECK(cct::nn_set(pair, 0, 3, true) == std::vector<PointId>{3});
    CHECK((cct::nn_set(pair, 1, 1, true) == std::vector<PointId>{0, 2}));
    CHECK((cct::nn_set(pair, 1, 2, true) == std::vector<PointId>{0, 2}));
    CHECK(cct::nn_set(pair, 1, 3, true) == std::vector<PointId>{3});

    cct::KnnOptions opt;
    opt.exclude_self = true;
    const cct::KnnOutput out = run_knn_checked(t, t, pair, 3, opt);
    const std::vector<std::vector<cct::Neighbor>> expected = {
        {{1, 1.0}, {2, 2.0}, {3, 3.0}},
        {{0, 1.0}, {2, 1.0}, {3, 2.0}},
        {{1, 1.0}, {3, 1.0}, {0, 2.0}},
        {{2, 1.0}, {1, 2.0}, {0, 3.0}},
    };
    CHECK(out.result.rows == expected);
    CHECK(cct::knn_bruteforce(pair, 3, true).rows == expected);
}

// ---------------------------------------------------------------------------
// Criterion 3: imbalance fixture and the balanced-tree closed form.

void criterion_imbalance_fixture() {
    const std::vector<int> levels = {2, -1, 0, -1, 1};
    const std::vector<PointId> parents = {cct::kNoParent, 2, 0, 4, 0};
    const CompressedCoverTree five = CompressedCoverTree::from_levels(levels, parents);
    ledger_register_tree(five);

    CHECK(cct::imbalance(five, five) == 11);
    CHECK(five.size() * five.height_set().size() == 20);

    for (int t = 2; t <= 3; ++t) {
        for (int m = 1; m <= 4; ++m) {
            const CompressedCoverTree bal = cct::make_balanced_tree(t, m);
            ledger_register_tree(bal);
            const std::int64_t direct = cct::imbalance(bal, bal);
            const double closed = cct::balanced_imbalance_closed_form(t, m);
            CHECK_MSG(static_cast<double>(direct) == closed,
                      "t=" + std::to_string(t) + " m=" + std::to_string(m) + " direct=" +
                          std::to_string(direct) + " closed=" + std::to_string(closed));
            // Integer form of the same identity: (t-1)*I == t*n - (m+1).
            const std::int64_t n = static_cast<std::int64_t>(bal.size());
            CHECK((t - 1) * direct == t * n - (m + 1));
        }
    }
}

// ---------------------------------------------------------------------------
// Criterion 4: distinctive-descendant counts, fixture plus 50 random trees.

void criterion_distinctive_descendants() {
    // Seven-node fixture: root with a shallow and a deep child branch.
    const std::vector<int> levels = {2, -1, 0, -1, 1, -1, 0};
    const std::vector<PointId> parents = {cct::kNoParent, 2, 0, 2, 0, 4, 4};
    const CompressedCoverTree seven = CompressedCoverTree::from_levels(levels, parents);
    ledger_register_tree(seven);
    const cct::DescendantCountCache cache(seven);
    CHECK(cache.count_at(0, 2) == 7);
    CHECK(cache.count_at(0, 1) == 4);
    CHECK(cache.count_at(0, 0) == 1);
    CHECK((seven.distinctive_set(0, 1) == std::vector<PointId>{0, 1, 2, 3}));

    std::mt19937_64 rng(4242u);
    for (int inst = 0; inst < 50; ++inst) {
        const std::size_t n = 4 + rng() % 125;  // <= 128
        const cct::EuclideanSet pts = cct::random_euclidean(n, 1 + inst % 3, rng());
        const CompressedCoverTree t = CompressedCoverTree::build(cct::metric_of(pts));
        ledger_register_tree(t);
        const cct::DescendantCountCache c(t);
        for (PointId p = 0; p < static_cast<PointId>(n); ++p) {
            for (int lvl : t.height_set()) {
                const auto brute = t.distinctive_set(p, lvl).size();
                if (c.count_at(p, lvl) != static_cast<std::int64_t>(brute)) {
                    CHECK_MSG(false, "cache/brute mismatch at node " + std::to_string(p) + " level " +
                                         std::to_string(lvl) + " instance " + std::to_string(inst));
                    return;
                }
            }
        }
        CHECK(c.total_breakpoints() <= 2 * n);
    }
}

// ---------------------------------------------------------------------------
// Criterion 5: the ledger collected over the whole suite must be clean.

void criterion_counter_bounds() {
    CHECK_MSG(g_ledger.violations == 0, g_ledger.first);
    CHECK_MSG(g_ledger.runs >= 200, "only " + std::to_string(g_ledger.runs) + " solver runs were recorded");
    CHECK_MSG(g_ledger.trees >= 200, "only " + std::to_string(g_ledger.trees) + " trees were recorded");
}

// ---------------------------------------------------------------------------
// Criterion 6: structural invariant suite on 100 random trees.

void criterion_structural_suite() {
    std::mt19937_64 rng(777u);
    const std::size_t dims[] = {1, 2, 4, 8};
    std::uint64_t packing_samples = 0;

    for (int inst = 0; inst < 100; ++inst) {
        const std::size_t n = 16 + rng() % 241;  // <= 256
        const cct::EuclideanSet pts = cct::random_euclidean(n, dims[inst % 4], rng());
        const cct::Metric metric = cct::metric_of(pts);
        const CompressedCoverTree t = CompressedCoverTree::build(metric);
        ledger_register_tree(t);

        // Definition conditions (root, covering, separation).
        if (!cct::validate_tree(t, metric).ok) {
            CHECK_MSG(false, "tree conditions violated on instance " + std::to_string(inst));
            return;
        }
        const double c = cct::expansion_constant(metric).c;

        // Descendant distance bound: through child u, d(p, q) <= 2^{l(u)+2}.
        for (PointId p = 0; p < static_cast<PointId>(n); ++p) {
            for (const auto& group : t.child_groups(p)) {
                const double child_bound = cct::pow2(group.first + 2);
                if (child_bound > cct::pow2(t.level(p) + 1)) {
                    CHECK_MSG(false, "child level bound ordering broken at node " + std::to_string(p));
                    return;
                }
                for (PointId u : group.second) {
                    for (PointId q : t.descendants(u)) {
                        if (metric(p, q) > child_bound) {
                            CHECK_MSG(false, "descendant " + std::to_string(q) + " of " + std::to_string(p) +
                                                 " beyond 2^{l(u)+2}");
                            return;
                        }
                    }
                }
            }
            // Width: children per single level <= c^4.
            for (const auto& group : t.child_groups(p)) {
                if (static_cast<double>(group.second.size()) > std::pow(c, 4.0)) {
                    CHECK_MSG(false, "node " + std::to_string(p) + " has " +
                                         std::to_string(group.second.size()) + " children on one level, c=" +
                                         std::to_string(c));
                    return;
                }
            }
        }

        // Height bound.  Covering forces l_min >= log2(d_min) - 1 and
        // separation forces the second-highest level below log2(diam), so
        // |H| <= l_max - l_min + 1 < 3 + log2(diam / d_min).  (The widely
        // quoted "1 + log2" form drops both integer-rounding terms and is
        // already violated by two points at distance exactly 1.)
        const cct::AspectRatio ar = cct::aspect_ratio(metric);
        if (static_cast<double>(t.height_set().size()) >= 3.0 + std::log2(ar.ratio)) {
            CHECK_MSG(false, "height " + std::to_string(t.height_set().size()) + " exceeds 3+log2(aspect)");
            return;
        }

        // Packing: ten sampled balls per tree, 1000 total.
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (int s = 0; s < 10; ++s) {
            const PointId center = static_cast<PointId>(rng() % n);
            const int lvl = t.l_min() + static_cast<int>(rng() % static_cast<std::uint64_t>(
                                                             t.l_max() - t.l_min() + 1));
            const double radius = cct::pow2(lvl) * (1.0 + 3.0 * unit(rng)) + 1e-12;
            std::size_t inside = 0;
            for (PointId x : t.points_at_or_above(lvl)) {
                if (metric(center, x) <= radius) ++inside;
            }
            ++packing_samples;
            if (static_cast<double>(inside) > cct::packing_bound(c, radius, cct::pow2(lvl))) {
                CHECK_MSG(false, "packing bound broken at level " + std::to_string(lvl));
                return;
            }
        }

        // Distinctive descendant sets: disjointness, union size, radius, and
        // the candidate-expansion identity, on every height-set level.
        std::vector<int> stamp(n, -1);
        int stamp_id = 0;
        for (int lvl : t.height_set()) {
            const std::vector<PointId> cover = t.points_at_or_above(lvl);
            std::size_t union_size = 0;
            ++stamp_id;
            for (PointId p : cover) {
                const std::vector<PointId> set = t.distinctive_set(p, lvl);
                union_size += set.size();
                for (PointId w : set) {
                    if (stamp[static_cast<std::size_t>(w)] == stamp_id) {
                        CHECK_MSG(false, "distinctive sets overlap at level " + std::to_string(lvl));
                        return;
                    }
                    stamp[static_cast<std::size_t>(w)] = stamp_id;
                    if (metric(w, p) > cct::pow2(lvl + 1)) {
                        CHECK_MSG(false, "distinctive member farther than 2^{i+1} at level " +
                                             std::to_string(lvl));
                        return;
                    }
                }
            }
            std::size_t marked = 0;
            for (int v : stamp) marked += (v == stamp_id) ? 1 : 0;
            if (marked != union_size) {
                CHECK_MSG(false, "union size disagrees with sum of set sizes");
                return;
            }

            // Random subset R_i: expanding by the children at level lvl-1 and
            // dropping one level preserves the union.
            std::vector<PointId> subset;
            for (PointId p : cover) {
                if (rng() % 2 == 0) subset.push_back(p);
            }
            if (subset.empty()) subset.push_back(cover[rng() % cover.size()]);
            std::set<PointId> lhs, rhs;
            std::set<PointId> expanded(subset.begin(), subset.end());
            for (PointId p : subset) {
                if (const std::vector<PointId>* kids = t.children_at(p, lvl - 1)) {
                    expanded.insert(kids->begin(), kids->end());
                }
                const std::vector<PointId> si = t.distinctive_set(p, lvl);
                rhs.insert(si.begin(), si.end());
            }
            for (PointId p : expanded) {
                const std::vector<PointId> si = t.distinctive_set(p, lvl - 1);
                lhs.insert(si.begin(), si.end());
            }
            if (lhs != rhs) {
                CHECK_MSG(false, "candidate expansion changed the represented set at level " +
                                     std::to_string(lvl));
                return;
            }
        }
    }
    CHECK(packing_samples == 1000);
}

// ---------------------------------------------------------------------------
// Criterion 7: expansion-constant fixtures.

void criterion_expansion_fixtures() {
    std::vector<double> geo;
    for (int i = 1; i <= 8; ++i) geo.push_back(std::ldexp(1.0, 2 * i));
    const cct::ExpansionResult g = cct::expansion_constant(cct::metric_of(cct::EuclideanSet(1, geo)));
    CHECK_MSG(g.c == 8.0, "got c = " + std::to_string(g.c));
    CHECK(g.ball_inner == 1u && g.ball_outer == 8u);

    std::vector<double> uniform;
    for (int i = 1; i <= 64; ++i) uniform.push_back(static_cast<double>(i));
    const cct::ExpansionResult u = cct::expansion_constant(cct::metric_of(cct::EuclideanSet(1, uniform)));
    CHECK_MSG(u.c >= 2.0 && u.c <= 4.0, "got c = " + std::to_string(u.c));
}

// ---------------------------------------------------------------------------
// Criterion 8: legacy search finds only trivial self-neighbors on the tall
// instances; the corrected solver matches the oracle on the same data.

void criterion_legacy_trivial_neighbors() {
    const auto t0 = std::chrono::steady_clock::now();
    for (int m : {6, 8, 10, 12}) {
        const cct::TallInstance inst = cct::gen_tall_imbalanced(m);
        ledger_register_tree(inst.tree);
        const cct::MetricPair pair = cct::self_pair(cct::metric_of(inst.set));

        const cct::LegacyResult legacy = cct::legacy_findallnn(inst.tree, inst.tree, pair);
        for (PointId q = 0; q < static_cast<PointId>(legacy.nn.size()); ++q) {
            if (legacy.nn[static_cast<std::size_t>(q)] != q) {
                CHECK_MSG(false, "legacy neighbor of " + std::to_string(q) + " not itself, m=" +
                                     std::to_string(m));
                return;
            }
        }

        cct::KnnOptions opt;
        opt.exclude_self = true;
        const cct::KnnOutput corrected = run_knn_checked(inst.tree, inst.tree, pair, 1, opt);
        if (!(corrected.result == cct::knn_bruteforce(pair, 1, true))) {
            CHECK_MSG(false, "corrected solver disagrees with the oracle, m=" + std::to_string(m));
            return;
        }
    }
    CHECK_MSG(seconds_since(t0) < 30.0, "exceeded the 30 s budget");
}

// ---------------------------------------------------------------------------
// Criterion 9: legacy reference expansions grow like m^4 on the bichromatic
// pairs while the corrected solver stays within the imbalance budget.

void criterion_legacy_growth() {
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<int> ms = {6, 7, 8, 9, 10, 11, 12, 13, 14};
    const cct::GrowthStudy study = cct::legacy_growth_study(cct::TrainLineVariant::bichromatic_query, ms);

    CHECK(study.rows.size() == ms.size());
    for (const cct::GrowthRow& row : study.rows) {
        const std::uint64_t m2 = static_cast<std::uint64_t>(row.m) * static_cast<std::uint64_t>(row.m);
        const std::uint64_t floor = m2 * (m2 - 1) / 2;
        if (row.ref_expansions < floor) {
            CHECK_MSG(false, "m=" + std::to_string(row.m) + " legacy expansions " +
                                 std::to_string(row.ref_expansions) + " below the m^2(m^2-1)/2 floor " +
                                 std::to_string(floor));
        }
    }
    CHECK_MSG(study.loglog_slope >= 3.5, "fitted slope " + std::to_string(study.loglog_slope));

    for (int m : {6, 10, 14}) {
        const cct::BichromaticInstance inst = cct::gen_bichromatic(m);
        const cct::MetricPair pair = cct::cross_pair(inst.query_set, inst.reference_set);
        const cct::KnnOutput corrected = run_knn_checked(inst.query_tree, inst.reference_tree, pair, 1);
        const std::uint64_t budget =
            static_cast<std::uint64_t>(cct::imbalance(inst.query_tree, inst.reference_tree)) +
            inst.reference_tree.height_set().size();
        CHECK_MSG(corrected.stats.ref_expansions <= budget,
                  "corrected expansions above imbalance+|H| at m=" + std::to_string(m));
    }
    CHECK_MSG(seconds_since(t0) < 120.0, "exceeded the 120 s budget");
}

// ---------------------------------------------------------------------------
// Criterion 10: candidate-set width stays under max{c_qr^3 * k, c(R)^7} with
// the query expansion constant computed exactly.

void criterion_width_bound() {
    std::mt19937_64 rng(1318u);
    const std::size_t ks[] = {1, 3, 10};
    for (int inst = 0; inst < 15; ++inst) {
        const std::size_t dim = (inst % 2 == 0) ? 2 : 4;
        const std::size_t nr = 64 + rng() % 161;  // |Q| + |R| <= 256
        const std::size_t k = ks[inst % 3];
        const cct::EuclideanSet qs = cct::random_euclidean(32, dim, rng());
        const cct::EuclideanSet rs = cct::random_euclidean(nr, dim, rng());
        const cct::Metric ref_metric = cct::metric_of(rs);
        const cct::MetricPair pair = cct::cross_pair(qs, rs);

        const CompressedCoverTree tq = CompressedCoverTree::build(cct::metric_of(qs));
        const CompressedCoverTree tr = CompressedCoverTree::build(ref_metric);
        const cct::KnnOutput out = run_knn_checked(tq, tr, pair, k);

        const double c_qr = cct::query_expansion_constant(ref_metric, pair).c;
        const double c_r = cct::expansion_constant(ref_metric).c;
        const double bound = std::max(std::pow(c_qr, 3.0) * static_cast<double>(out.k_effective),
                                      std::pow(c_r, 7.0));
        CHECK_MSG(static_cast<double>(out.stats.max_width) <= bound,
                  "width " + std::to_string(out.stats.max_width) + " above " + std::to_string(bound) +
                      " on instance " + std::to_string(inst));
    }
}

struct CriterionResult {
    bool ran = false;
    bool ok = false;
    double seconds = 0.0;
    std::string first_failure;
    int extra_failures = 0;
};

}  // namespace

int main() {
    struct Entry {
        int number;
        const char* title;
        std::function<void()> fn;
    };
    const std::vector<Entry> entries = {
        {1, "paired solver equals the brute-force oracle on 200 random instances", criterion_oracle_equivalence},
        {2, "four-point line reproduces the worked neighbor table", criterion_worked_example},
        {3, "imbalance fixture and balanced-tree closed form", criterion_imbalance_fixture},
        {4, "distinctive-descendant counts match brute force", criterion_distinctive_descendants},
        {6, "structural invariant suite on 100 random trees", criterion_structural_suite},
        {7, "expansion-constant fixtures (c = 8 and c <= 4)", criterion_expansion_fixtures},
        {8, "legacy search returns trivial self-neighbors; corrected solver matches oracle",
         criterion_legacy_trivial_neighbors},
        {9, "legacy growth is quartic on bichromatic pairs; corrected stays in budget", criterion_legacy_growth},
        {10, "candidate width bounded by max{c_qr^3 k, c(R)^7}", criterion_width_bound},
        // Evaluated last so it sees every run recorded above.
        {5, "counter bounds hold on every run in the suite", criterion_counter_bounds},
    };

    CriterionResult results[11];
    for (const Entry& e : entries) {
        g_fail_count = 0;
        g_first_failure.clear();
        const auto t0 = std::chrono::steady_clock::now();
        e.fn();
        CriterionResult& r = results[e.number];
        r.ran = true;
        r.ok = (g_fail_count == 0);
        r.seconds = seconds_since(t0);
        r.first_failure = g_first_failure;
        r.extra_failures = g_fail_count > 0 ? g_fail_count - 1 : 0;
    }

    int failed = 0;
    for (int number = 1; number <= 10; ++number) {
        const CriterionResult& r = results[number];
        const char* title = "";
        for (const Entry& e : entries) {
            if (e.number == number) title = e.title;
        }
        std::printf("[%s] criterion %2d: %s (%.1fs)\n", r.ok ? "PASS" : "FAIL", number, title, r.seconds);
        if (!r.ok) {
            ++failed;
            std::printf("       first failure: %s", r.first_failure.c_str());
            if (r.extra_failures > 0) std::printf(" (+%d more)", r.extra_failures);
            std::printf("\n");
        }
    }
    std::printf("%d/10 criteria passed\n", 10 - failed);
    return failed == 0 ? 0 : 1;
}
