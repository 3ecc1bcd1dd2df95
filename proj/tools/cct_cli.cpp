// Command-line frontend for the compressed cover tree k-nearest-neighbor
// library: build and validate trees, run exact k-NN, generate adversarial
// instances, and reproduce the legacy-search blow-up measurements.
//
// Exit codes: 0 success, 2 usage or input errors, 3 failed validation or
// verification.

#include <cstdio>
#include <iostream>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cct/cct.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitInvalid = 3;

cct::TrainLineVariant parse_variant(const std::string& name) {
    if (name == "tall-imbalanced") return cct::TrainLineVariant::tall_imbalanced;
    if (name == "bichromatic") return cct::TrainLineVariant::bichromatic_query;
    throw cct::invalid_input("unknown variant '" + name + "' (expected tall-imbalanced or bichromatic)");
}

std::vector<cct::PointId> shuffled_order(std::size_t n, std::uint64_t seed) {
    std::vector<cct::PointId> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);
    return order;
}

void print_validation(const cct::ValidationReport& rep, std::ostream& out) {
    if (rep.ok) {
        out << "tree: valid\n";
    } else {
        out << "tree: INVALID (" << rep.violations.size() << " recorded violations)\n";
        for (const auto& v : rep.violations) {
            out << "violation condition=" << v.condition << " level=" << v.level << " points=(" << v.a << ','
                << v.b << ") value=" << cct::fmt17(v.lhs) << " bound=" << cct::fmt17(v.rhs) << "\n";
        }
    }
    for (const auto& [lvl, dmin] : rep.level_min_separation) {
        out << "min_separation level=" << lvl << " d_min=" << cct::fmt17(dmin)
            << " required_above=" << cct::fmt17(cct::pow2(lvl)) << "\n";
    }
}

void write_labels_csv(const cct::TrainLineGraphSet& s, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw cct::invalid_input("cannot open '" + path + "' for writing");
    out << "id,label\n";
    for (cct::PointId p = 0; p < static_cast<cct::PointId>(s.size()); ++p) {
        out << p << ',' << s.label(p) << "\n";
    }
}

struct TreeSummary {
    void print(const cct::CompressedCoverTree& t, std::ostream& out) const {
        out << "nodes=" << t.size() << " root=" << t.root() << " l_max=" << t.l_max() << " l_min=" << t.l_min()
            << " height=" << t.height() << "\n";
    }
};

int run_build(const std::string& input, const std::optional<std::string>& given_levels,
              std::optional<std::uint64_t> seed, const std::string& out_path) {
    const cct::EuclideanSet points = cct::load_points_csv_file(input);
    const cct::Metric metric = cct::metric_of(points);
    cct::CompressedCoverTree tree = [&] {
        if (given_levels) return cct::load_tree_file(*given_levels);
        if (seed) return cct::CompressedCoverTree::build(metric, shuffled_order(points.size(), *seed));
        return cct::CompressedCoverTree::build(metric);
    }();
    const cct::ValidationReport rep = cct::validate_tree(tree, metric);
    print_validation(rep, std::cout);
    if (!rep.ok) return kExitInvalid;
    cct::save_tree_file(tree, out_path);
    TreeSummary{}.print(tree, std::cout);
    std::cout << "wrote " << out_path << "\n";
    return kExitOk;
}

int run_knn(const std::string& input, const std::optional<std::string>& query_path,
            const std::optional<std::string>& tree_path, const std::optional<std::string>& query_tree_path,
            std::size_t k, bool exclude_self_flag, bool include_self_flag, bool verify,
            const std::string& out_path, const std::optional<std::string>& stats_path) {
    const cct::EuclideanSet ref = cct::load_points_csv_file(input);
    cct::DistanceCounter counter;
    const cct::Metric ref_metric = cct::metric_of(ref, &counter);

    const cct::CompressedCoverTree rtree =
        tree_path ? cct::load_tree_file(*tree_path) : cct::CompressedCoverTree::build(ref_metric);
    {
        const cct::ValidationReport rep = cct::validate_tree(rtree, cct::metric_of(ref));
        if (!rep.ok) {
            print_validation(rep, std::cerr);
            return kExitInvalid;
        }
    }

    cct::KnnOptions options;
    options.verify = verify;
    cct::KnnOutput out;
    std::optional<cct::EuclideanSet> query;
    std::optional<cct::CompressedCoverTree> qtree_store;
    const cct::CompressedCoverTree* qtree = &rtree;
    cct::MetricPair pair = cct::self_pair(ref_metric);
    if (query_path) {
        if (exclude_self_flag) {
            throw cct::invalid_input("--exclude-self requires the query set to be the reference set");
        }
        query.emplace(cct::load_points_csv_file(*query_path));
        pair = cct::cross_pair(*query, ref, &counter);
        const cct::Metric qmetric = cct::metric_of(*query);
        qtree_store.emplace(query_tree_path ? cct::load_tree_file(*query_tree_path)
                                            : cct::CompressedCoverTree::build(qmetric));
        const cct::ValidationReport rep = cct::validate_tree(*qtree_store, qmetric);
        if (!rep.ok) {
            print_validation(rep, std::cerr);
            return kExitInvalid;
        }
        qtree = &*qtree_store;
    } else {
        // Self queries drop the trivial self neighbor unless told otherwise.
        options.exclude_self = !include_self_flag;
        if (exclude_self_flag && include_self_flag) {
            throw cct::invalid_input("--exclude-self and --include-self contradict each other");
        }
    }
    out = cct::knn_paired(*qtree, rtree, pair, k, options);
    cct::save_neighbors_csv_file(out.result, out_path);
    std::cout << "queries=" << pair.nq << " references=" << pair.nr << " k=" << k
              << " exclude_self=" << (options.exclude_self ? "true" : "false") << "\n";
    std::cout << "ref_expansions=" << out.stats.ref_expansions << " query_expansions=" << out.stats.query_expansions
              << " distance_calls=" << out.stats.distance_calls << " max_width=" << out.stats.max_width << "\n";
    std::cout << "wrote " << out_path << "\n";
    if (stats_path) {
        std::ofstream sout(*stats_path);
        if (!sout) throw cct::invalid_input("cannot open '" + *stats_path + "' for writing");
        cct::save_stats_csv(out.stats, sout,
                            {{"k", std::to_string(k)},
                             {"k_effective", std::to_string(out.k_effective)},
                             {"n_query", std::to_string(pair.nq)},
                             {"n_reference", std::to_string(pair.nr)},
                             {"exclude_self", options.exclude_self ? "true" : "false"},
                             {"imbalance", std::to_string(cct::imbalance(*qtree, rtree))},
                             {"reference_height", std::to_string(rtree.height())}});
        std::cout << "wrote " << *stats_path << "\n";
    }
    return kExitOk;
}

int run_gen(const std::string& variant_name, int m, const std::string& prefix) {
    const cct::TrainLineVariant variant = parse_variant(variant_name);
    std::vector<std::string> written;
    auto save_side = [&](const cct::TrainLineGraphSet& set, const cct::CompressedCoverTree& tree,
                         const std::string& side) {
        const std::string base = prefix + (side.empty() ? "" : "_" + side);
        write_labels_csv(set, base + "_labels.csv");
        written.push_back(base + "_labels.csv");
        cct::save_tree_file(tree, base + "_tree.txt");
        written.push_back(base + "_tree.txt");
        std::ofstream mout(base + "_matrix.csv");
        if (!mout) throw cct::invalid_input("cannot open matrix file for writing");
        cct::save_matrix_csv(cct::metric_of(set), mout);
        written.push_back(base + "_matrix.csv");
    };
    if (variant == cct::TrainLineVariant::tall_imbalanced) {
        const cct::TallInstance inst = cct::gen_tall_imbalanced(m);
        save_side(inst.set, inst.tree, "");
    } else {
        const cct::BichromaticInstance inst = cct::gen_bichromatic(m);
        save_side(inst.query_set, inst.query_tree, "query");
        save_side(inst.reference_set, inst.reference_tree, "reference");
        std::ofstream xout(prefix + "_cross_matrix.csv");
        if (!xout) throw cct::invalid_input("cannot open cross matrix file for writing");
        cct::save_cross_matrix_csv(cct::cross_pair(inst.query_set, inst.reference_set), xout);
        written.push_back(prefix + "_cross_matrix.csv");
    }
    for (const std::string& f : written) std::cout << "wrote " << f << "\n";
    return kExitOk;
}

int run_legacy(const std::string& variant_name, int m, bool self_pair_flag,
               const std::optional<std::string>& study_out, std::vector<int> study_ms) {
    const cct::TrainLineVariant variant = parse_variant(variant_name);
    if (study_out) {
        if (study_ms.empty()) study_ms = {6, 8, 10, 12, 14};
        const cct::GrowthStudy study = cct::legacy_growth_study(variant, study_ms);
        std::ofstream out(*study_out);
        if (!out) throw cct::invalid_input("cannot open '" + *study_out + "' for writing");
        cct::save_study_csv(study, out);
        std::cout << "loglog_slope=" << cct::fmt17(study.loglog_slope) << "\n";
        std::cout << "wrote " << *study_out << "\n";
        return kExitOk;
    }
    cct::DistanceCounter counter;
    cct::LegacyResult res;
    std::size_t n = 0;
    bool trivial_expected = false;
    if (variant == cct::TrainLineVariant::tall_imbalanced || self_pair_flag) {
        const cct::TallInstance inst = cct::gen_tall_imbalanced(m);
        const cct::Metric metric = cct::metric_of(inst.set, &counter);
        res = cct::legacy_findallnn(inst.tree, inst.tree, cct::self_pair(metric));
        n = inst.set.size();
        trivial_expected = true;
    } else {
        const cct::BichromaticInstance inst = cct::gen_bichromatic(m);
        const cct::MetricPair pair = cct::cross_pair(inst.query_set, inst.reference_set, &counter);
        res = cct::legacy_findallnn(inst.query_tree, inst.reference_tree, pair);
        n = inst.reference_set.size();
    }
    bool trivial = true;
    for (std::size_t q = 0; q < res.nn.size(); ++q) {
        if (res.nn[q] != static_cast<cct::PointId>(q)) trivial = false;
    }
    std::cout << "n=" << n << " m=" << m << "\n";
    if (trivial_expected) std::cout << "all neighbors trivial: " << (trivial ? "true" : "false") << "\n";
    const long long quad = static_cast<long long>(m) * m * (static_cast<long long>(m) * m - 1) / 2;
    std::cout << "ref_expansions=" << res.ref_expansions << " quadratic_floor=" << quad
              << " query_expansions=" << res.query_expansions << " distance_calls=" << res.distance_calls
              << " max_width=" << res.max_width << "\n";
    return kExitOk;
}

int run_analyze(const std::string& input, const std::optional<std::string>& tree_path) {
    const cct::EuclideanSet points = cct::load_points_csv_file(input);
    const cct::Metric metric = cct::metric_of(points);
    std::cout << "n=" << points.size() << "\n";
    std::cout << "dim=" << points.dim() << "\n";
    const cct::ExpansionResult c = cct::expansion_constant(metric);
    std::cout << "expansion_constant=" << cct::fmt17(c.c) << "\n";
    std::cout << "expansion_witness_center=" << c.center << "\n";
    std::cout << "expansion_witness_radius=" << cct::fmt17(c.radius) << "\n";
    std::cout << "expansion_witness_balls=" << c.ball_outer << "/" << c.ball_inner << "\n";
    const cct::AspectRatio a = cct::aspect_ratio(metric);
    std::cout << "diameter=" << cct::fmt17(a.diameter) << "\n";
    std::cout << "min_distance=" << cct::fmt17(a.min_distance) << "\n";
    std::cout << "aspect_ratio=" << cct::fmt17(a.ratio) << "\n";
    if (tree_path) {
        const cct::CompressedCoverTree tree = cct::load_tree_file(*tree_path);
        if (tree.size() != points.size()) throw cct::invalid_input("tree and points disagree on point count");
        std::cout << "l_max=" << tree.l_max() << "\n";
        std::cout << "l_min=" << tree.l_min() << "\n";
        std::cout << "height=" << tree.height() << "\n";
        std::cout << "self_imbalance=" << cct::imbalance(tree, tree) << "\n";
        std::size_t essential = 0;
        for (cct::PointId p = 0; p < static_cast<cct::PointId>(tree.size()); ++p) {
            essential += tree.essential_levels(p).size();
        }
        std::cout << "total_essential_levels=" << essential << "\n";
    }
    return kExitOk;
}

int run_validate(const std::string& input, const std::string& tree_path) {
    const cct::EuclideanSet points = cct::load_points_csv_file(input);
    const cct::CompressedCoverTree tree = cct::load_tree_file(tree_path);
    const cct::ValidationReport rep = cct::validate_tree(tree, cct::metric_of(points));
    print_validation(rep, std::cout);
    return rep.ok ? kExitOk : kExitInvalid;
}

int run_bench(const std::string& input, std::size_t k, std::optional<std::uint64_t> seed,
              const std::string& out_path) {
    const cct::EuclideanSet points = cct::load_points_csv_file(input);
    cct::DistanceCounter counter;
    const cct::Metric metric = cct::metric_of(points, &counter);
    const cct::CompressedCoverTree tree =
        seed ? cct::CompressedCoverTree::build(metric, shuffled_order(points.size(), *seed))
             : cct::CompressedCoverTree::build(metric);
    const std::uint64_t build_calls = counter.count();
    cct::KnnOptions options;
    options.exclude_self = true;
    const cct::KnnOutput out = cct::knn_paired(tree, tree, cct::self_pair(metric), k, options);
    std::ofstream sout(out_path);
    if (!sout) throw cct::invalid_input("cannot open '" + out_path + "' for writing");
    cct::save_stats_csv(out.stats, sout,
                        {{"k", std::to_string(k)},
                         {"k_effective", std::to_string(out.k_effective)},
                         {"n", std::to_string(points.size())},
                         {"build_distance_calls", std::to_string(build_calls)},
                         {"bruteforce_distance_calls", std::to_string(points.size() * (points.size() - 1))},
                         {"imbalance", std::to_string(cct::imbalance(tree, tree))},
                         {"height", std::to_string(tree.height())}});
    std::cout << "wrote " << out_path << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"compressed cover tree toolkit: exact all-k-nearest-neighbors in metric spaces"};
    app.require_subcommand(1);

    std::string input, out_path, tree_path_req, variant = "tall-imbalanced", metric_name = "l2";
    std::optional<std::string> given_levels, query_path, tree_path, query_tree_path, stats_path, study_out;
    std::optional<std::uint64_t> seed;
    std::size_t k = 1;
    int m = 6;
    bool exclude_self = false, include_self = false, verify = false, self_pair_flag = false;
    std::vector<int> study_ms;

    CLI::App* build = app.add_subcommand("build", "build a compressed cover tree from points");
    build->add_option("--input", input, "points CSV (id,x1,..,xd)")->required();
    build->add_option("--given-levels", given_levels, "adopt levels/parents from an existing tree file");
    build->add_option("--seed", seed, "shuffle the insertion order with this seed");
    build->add_option("--out", out_path, "output tree file")->required();

    CLI::App* knn = app.add_subcommand("knn", "exact k-nearest neighbors for every query point");
    knn->add_option("--input", input, "reference points CSV")->required();
    knn->add_option("--query", query_path, "query points CSV (default: the reference set)");
    knn->add_option("--tree", tree_path, "reference tree file (default: build by insertion)");
    knn->add_option("--query-tree", query_tree_path, "query tree file (default: build by insertion)");
    knn->add_option("--k", k, "neighbors per query")->required();
    knn->add_option("--metric", metric_name, "point metric (only l2)")
        ->check(CLI::IsMember({"l2"}));
    knn->add_flag("--exclude-self", exclude_self, "self queries: drop each point itself (default when no --query)");
    knn->add_flag("--include-self", include_self, "self queries: let each point match itself");
    knn->add_flag("--verify", verify, "re-check pruning invariants against a brute-force oracle");
    knn->add_option("--out", out_path, "output neighbors CSV")->required();
    knn->add_option("--stats", stats_path, "also write run statistics CSV");

    CLI::App* gen = app.add_subcommand("gen", "generate an adversarial train-line instance");
    gen->add_option("--variant", variant, "tall-imbalanced or bichromatic")->required();
    gen->add_option("--m", m, "chain parameter (n = m*m+1 per side)")->required();
    gen->add_option("--out", out_path, "output path prefix")->required();

    CLI::App* legacy = app.add_subcommand("legacy", "run the level-by-level legacy all-NN search");
    legacy->add_option("--variant", variant, "tall-imbalanced or bichromatic")->required();
    legacy->add_option("--m", m, "chain parameter");
    legacy->add_flag("--self-pair", self_pair_flag, "query the instance against itself");
    legacy->add_option("--study-out", study_out, "write a growth study CSV over --ms");
    legacy->add_option("--ms", study_ms, "m values for the growth study")->delimiter(',');

    CLI::App* analyze = app.add_subcommand("analyze", "metric and tree statistics");
    analyze->add_option("--input", input, "points CSV")->required();
    analyze->add_option("--tree", tree_path, "tree file for structural statistics");

    CLI::App* validate = app.add_subcommand("validate", "check a tree against its point set");
    validate->add_option("--input", input, "points CSV")->required();
    validate->add_option("--tree", tree_path_req, "tree file")->required();

    CLI::App* bench = app.add_subcommand("bench", "build, self-query, and write run statistics");
    bench->add_option("--input", input, "points CSV")->required();
    bench->add_option("--k", k, "neighbors per query")->required();
    bench->add_option("--seed", seed, "insertion order seed");
    bench->add_option("--out", out_path, "output stats CSV")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (build->parsed()) return run_build(input, given_levels, seed, out_path);
        if (knn->parsed())
            return run_knn(input, query_path, tree_path, query_tree_path, k, exclude_self, include_self, verify,
                           out_path, stats_path);
        if (gen->parsed()) return run_gen(variant, m, out_path);
        if (legacy->parsed()) return run_legacy(variant, m, self_pair_flag, study_out, study_ms);
        if (analyze->parsed()) return run_analyze(input, tree_path);
        if (validate->parsed()) return run_validate(input, tree_path_req);
        if (bench->parsed()) return run_bench(input, k, seed, out_path);
    } catch (const cct::verification_error& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const cct::invalid_input& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const cct::error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInvalid;
    }
    return kExitUsage;
}
