#pragma once

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cct/core.hpp"
#include "cct/euclidean.hpp"
#include "cct/knn.hpp"
#include "cct/legacy.hpp"
#include "cct/metric.hpp"
#include "cct/traversal.hpp"
#include "cct/tree.hpp"

namespace cct {

/// Shortest round-trip-exact decimal rendering used by every writer.
inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace detail {

inline std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

inline double parse_double(const std::string& s, const char* what) {
    const char* begin = s.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0') throw invalid_input(std::string("malformed ") + what + ": '" + s + "'");
    return v;
}

inline long parse_long(const std::string& s, const char* what) {
    const char* begin = s.c_str();
    char* end = nullptr;
    const long v = std::strtol(begin, &end, 10);
    if (end == begin || *end != '\0') throw invalid_input(std::string("malformed ") + what + ": '" + s + "'");
    return v;
}

inline bool looks_like_integer(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') return false;
    }
    return true;
}

inline std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw invalid_input("cannot open '" + path + "' for reading");
    return in;
}

inline std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw invalid_input("cannot open '" + path + "' for writing");
    return out;
}

}  // namespace detail

/// Points file: header "id,x1,..,xd", then one row per point with dense ids
/// 0..n-1 in order.  The header is optional on input.
inline EuclideanSet load_points_csv(std::istream& in) {
    std::string line;
    std::vector<double> coords;
    std::size_t dim = 0;
    long expect = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> f = detail::split_csv(line);
        if (expect == 0 && !detail::looks_like_integer(f[0])) continue;  // header row
        if (f.size() < 2) throw invalid_input("points row needs an id and at least one coordinate");
        if (detail::parse_long(f[0], "point id") != expect) {
            throw invalid_input("point ids must be dense and ascending from 0");
        }
        if (dim == 0) {
            dim = f.size() - 1;
        } else if (f.size() - 1 != dim) {
            throw invalid_input("inconsistent dimension in points file");
        }
        for (std::size_t c = 1; c < f.size(); ++c) coords.push_back(detail::parse_double(f[c], "coordinate"));
        ++expect;
    }
    if (expect == 0) throw invalid_input("points file contains no points");
    return EuclideanSet(dim, std::move(coords));
}

inline void save_points_csv(const EuclideanSet& s, std::ostream& out) {
    out << "id";
    for (std::size_t c = 1; c <= s.dim(); ++c) out << ",x" << c;
    out << "\n";
    for (PointId p = 0; p < static_cast<PointId>(s.size()); ++p) {
        out << p;
        const double* row = s.point(p);
        for (std::size_t c = 0; c < s.dim(); ++c) out << ',' << fmt17(row[c]);
        out << "\n";
    }
}

/// Tree file: "#cct v1 n=<n> root=<id>" then one "<id> <level> <parent>" row
/// per point, ascending ids, "-" marking the root's parent.  Writing then
/// reading reproduces the bytes exactly.
inline void save_tree(const CompressedCoverTree& t, std::ostream& out) {
    out << "#cct v1 n=" << t.size() << " root=" << t.root() << "\n";
    for (PointId p = 0; p < static_cast<PointId>(t.size()); ++p) {
        out << p << ' ' << t.level(p) << ' ';
        if (t.parent(p) == kNoParent) {
            out << '-';
        } else {
            out << t.parent(p);
        }
        out << "\n";
    }
}

inline CompressedCoverTree load_tree(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw invalid_input("empty tree file");
    std::istringstream head(line);
    std::string magic, version, nfield, rootfield;
    head >> magic >> version >> nfield >> rootfield;
    if (magic != "#cct" || version != "v1" || nfield.rfind("n=", 0) != 0 || rootfield.rfind("root=", 0) != 0) {
        throw invalid_input("tree file must start with '#cct v1 n=<n> root=<id>'");
    }
    const long n = detail::parse_long(nfield.substr(2), "node count");
    const long root = detail::parse_long(rootfield.substr(5), "root id");
    if (n <= 0) throw invalid_input("tree file declares no nodes");
    std::vector<int> levels(static_cast<std::size_t>(n), 0);
    std::vector<PointId> parents(static_cast<std::size_t>(n), kNoParent);
    long seen = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string ids, lvls, pars;
        if (!(row >> ids >> lvls >> pars)) throw invalid_input("malformed tree row: '" + line + "'");
        const long id = detail::parse_long(ids, "node id");
        if (id != seen) throw invalid_input("tree rows must list ids 0..n-1 in order");
        if (id < 0 || id >= n) throw invalid_input("node id out of range in tree file");
        levels[static_cast<std::size_t>(id)] = static_cast<int>(detail::parse_long(lvls, "node level"));
        parents[static_cast<std::size_t>(id)] =
            pars == "-" ? kNoParent : static_cast<PointId>(detail::parse_long(pars, "parent id"));
        ++seen;
    }
    if (seen != n) throw invalid_input("tree file row count disagrees with its header");
    CompressedCoverTree t = CompressedCoverTree::from_levels(levels, parents);
    if (t.root() != static_cast<PointId>(root)) throw invalid_input("tree file root disagrees with its rows");
    return t;
}

/// Neighbors file: "query_id,rank,neighbor_id,distance", ranks 1..k per query,
/// queries ascending.
inline void save_neighbors_csv(const KnnResult& res, std::ostream& out) {
    out << "query_id,rank,neighbor_id,distance\n";
    for (std::size_t q = 0; q < res.rows.size(); ++q) {
        for (std::size_t r = 0; r < res.rows[q].size(); ++r) {
            out << q << ',' << r + 1 << ',' << res.rows[q][r].id << ',' << fmt17(res.rows[q][r].dist) << "\n";
        }
    }
}

inline KnnResult load_neighbors_csv(std::istream& in) {
    KnnResult res;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> f = detail::split_csv(line);
        if (!detail::looks_like_integer(f[0])) continue;  // header
        if (f.size() != 4) throw invalid_input("neighbors row needs 4 fields");
        const long q = detail::parse_long(f[0], "query id");
        const long rank = detail::parse_long(f[1], "rank");
        if (q < 0) throw invalid_input("negative query id");
        if (static_cast<std::size_t>(q) >= res.rows.size()) res.rows.resize(static_cast<std::size_t>(q) + 1);
        auto& row = res.rows[static_cast<std::size_t>(q)];
        if (rank != static_cast<long>(row.size()) + 1) throw invalid_input("ranks must count 1..k per query");
        row.push_back(Neighbor{static_cast<PointId>(detail::parse_long(f[2], "neighbor id")),
                               detail::parse_double(f[3], "distance")});
    }
    return res;
}

/// Run statistics: one CSV row plus free-form key=value lines.
inline void save_stats_csv(const TraversalStats& st, std::ostream& out,
                           const std::vector<std::pair<std::string, std::string>>& extra = {}) {
    out << "ref_expansions,query_expansions,distance_calls,max_width\n";
    out << st.ref_expansions << ',' << st.query_expansions << ',' << st.distance_calls << ',' << st.max_width
        << "\n";
    for (const auto& kv : extra) out << kv.first << '=' << kv.second << "\n";
}

/// Growth study: one row per instance size, a trailing comment with the
/// fitted log-log slope.
inline void save_study_csv(const GrowthStudy& study, std::ostream& out) {
    out << "m,n,ref_expansions,imbalance,height,distance_calls\n";
    for (const GrowthRow& r : study.rows) {
        out << r.m << ',' << r.n << ',' << r.ref_expansions << ',' << r.imbalance_value << ',' << r.height << ','
            << r.distance_calls << "\n";
    }
    out << "# loglog_slope=" << fmt17(study.loglog_slope) << "\n";
}

/// Distance matrix: every unordered pair once, smaller id first.  Guarded to
/// moderate sizes since the output is quadratic.
inline void save_matrix_csv(const Metric& m, std::ostream& out) {
    if (m.n > 2000) throw invalid_input("distance matrix export is limited to 2000 points");
    out << "id_a,id_b,distance\n";
    for (PointId a = 0; a < static_cast<PointId>(m.n); ++a) {
        for (PointId b = static_cast<PointId>(a + 1); b < static_cast<PointId>(m.n); ++b) {
            out << a << ',' << b << ',' << fmt17(m(a, b)) << "\n";
        }
    }
}

/// Cross-set distance matrix for bichromatic instances: all (query,
/// reference) pairs.
inline void save_cross_matrix_csv(const MetricPair& pair, std::ostream& out) {
    if (pair.nq * pair.nr > 4000000) throw invalid_input("cross matrix export is limited to 4e6 pairs");
    out << "query_id,reference_id,distance\n";
    for (PointId q = 0; q < static_cast<PointId>(pair.nq); ++q) {
        for (PointId r = 0; r < static_cast<PointId>(pair.nr); ++r) {
            out << q << ',' << r << ',' << fmt17(pair(q, r)) << "\n";
        }
    }
}

// Path-based conveniences.

inline EuclideanSet load_points_csv_file(const std::string& path) {
    std::ifstream in = detail::open_in(path);
    return load_points_csv(in);
}

inline void save_points_csv_file(const EuclideanSet& s, const std::string& path) {
    std::ofstream out = detail::open_out(path);
    save_points_csv(s, out);
}

inline CompressedCoverTree load_tree_file(const std::string& path) {
    std::ifstream in = detail::open_in(path);
    return load_tree(in);
}

inline void save_tree_file(const CompressedCoverTree& t, const std::string& path) {
    std::ofstream out = detail::open_out(path);
    save_tree(t, out);
}

inline void save_neighbors_csv_file(const KnnResult& res, const std::string& path) {
    std::ofstream out = detail::open_out(path);
    save_neighbors_csv(res, out);
}

inline KnnResult load_neighbors_csv_file(const std::string& path) {
    std::ifstream in = detail::open_in(path);
    return load_neighbors_csv(in);
}

}  // namespace cct
