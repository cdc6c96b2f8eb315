#include "coarse/corona.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace coarse {

Dist ray_gap(const Combing& c, PointId x, PointId y, int n) {
    Dist best = 0;
    for (int m = 0; m <= n; ++m) best = std::max(best, c.d(c.H(x, m), c.H(y, m)));
    return best;
}

namespace {

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

}  // namespace

ClusterPartition boundary_clusters(const Combing& c, const std::vector<PointId>& annulus_points,
                                   int stage, Dist threshold, Dist r_lo, Dist r_hi) {
    std::vector<PointId> pts = annulus_points;
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    // single linkage at the given stage/threshold, merging in lexicographic pair order
    UnionFind uf(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            if (ray_gap(c, pts[i], pts[j], stage) <= threshold) uf.unite(i, j);
    std::map<std::size_t, std::vector<PointId>> groups;
    for (std::size_t i = 0; i < pts.size(); ++i) groups[uf.find(i)].push_back(pts[i]);
    ClusterPartition p;
    p.stage = stage;
    p.threshold = threshold;
    p.r_lo = r_lo;
    p.r_hi = r_hi;
    for (auto& [root, members] : groups) {
        p.representatives.push_back(members.front());
        p.clusters.push_back(std::move(members));
    }
    return p;
}

NerveGraph cluster_nerve(const Combing& c, const ClusterPartition& p, Dist edge_threshold) {
    NerveGraph g;
    g.nodes = p.clusters.size();
    g.edge_threshold = edge_threshold;
    g.stage = p.stage;
    for (PointId rep : p.representatives) g.node_labels.push_back(c.space->labels[rep]);
    for (std::size_t a = 0; a < g.nodes; ++a)
        for (std::size_t b = a + 1; b < g.nodes; ++b) {
            if (ray_gap(c, p.representatives[a], p.representatives[b], p.stage) > edge_threshold)
                continue;
            // weight: tightest approach over all cross pairs (edges only, it's quadratic)
            Dist w = DIST_INF;
            for (PointId x : p.clusters[a])
                for (PointId y : p.clusters[b]) w = std::min(w, ray_gap(c, x, y, p.stage));
            g.edges.emplace_back(a, b);
            g.weights.push_back(w);
        }
    return g;
}

CohomologyResult nerve_cohomology(const NerveGraph& g, const Ring& ring) {
    // clique complex of the nerve graph, capped at dimension 2
    SimplicialComplex cx;
    cx.dim_cap = 2;
    cx.simplices.resize(3);
    for (PointId v = 0; v < g.nodes; ++v) cx.simplices[0].push_back({v});
    std::vector<std::vector<char>> adj(g.nodes, std::vector<char>(g.nodes, 0));
    for (auto [a, b] : g.edges) adj[a][b] = adj[b][a] = 1;
    for (std::size_t a = 0; a < g.nodes; ++a)
        for (std::size_t b = a + 1; b < g.nodes; ++b)
            if (adj[a][b]) cx.simplices[1].push_back({static_cast<PointId>(a), static_cast<PointId>(b)});
    for (std::size_t a = 0; a < g.nodes; ++a)
        for (std::size_t b = a + 1; b < g.nodes; ++b)
            for (std::size_t cc = b + 1; cc < g.nodes; ++cc)
                if (adj[a][b] && adj[a][cc] && adj[b][cc])
                    cx.simplices[2].push_back({static_cast<PointId>(a), static_cast<PointId>(b),
                                               static_cast<PointId>(cc)});
    return cohomology(cx, ring, {0, 1});
}

CoronaCompareReport corona_compare(const ClusterPartition& p, const FiniteMetricSpace& reference,
                                   const std::vector<PointId>& rep_to_ref) {
    CoronaCompareReport rep;
    rep.cluster_count = p.clusters.size();
    rep.reference_count = reference.size();
    rep.count_diff = static_cast<long>(rep.cluster_count) - static_cast<long>(rep.reference_count);
    rep.mapped = rep_to_ref.size() == p.representatives.size();
    if (rep.mapped)
        for (PointId r : rep_to_ref) rep.mapped = rep.mapped && r < reference.size();
    if (!rep.mapped) return rep;
    // two-sided Hausdorff mismatch in the reference metric
    Dist h = 0;
    for (PointId m : rep_to_ref) {
        Dist best = DIST_INF;
        for (PointId y = 0; y < reference.size(); ++y) best = std::min(best, reference.d(m, y));
        h = std::max(h, best);
    }
    for (PointId y = 0; y < reference.size(); ++y) {
        Dist best = DIST_INF;
        for (PointId m : rep_to_ref) best = std::min(best, reference.d(m, y));
        h = std::max(h, best);
    }
    rep.hausdorff_mismatch = h;
    return rep;
}

std::string nerve_to_dot(const NerveGraph& g) {
    std::ostringstream out;
    out << "graph nerve {\n";
    out << "  // stage " << g.stage << ", edge threshold " << g.edge_threshold << "\n";
    for (std::size_t v = 0; v < g.nodes; ++v)
        out << "  n" << v << " [label=\"" << g.node_labels[v] << "\"];\n";
    for (std::size_t e = 0; e < g.edges.size(); ++e)
        out << "  n" << g.edges[e].first << " -- n" << g.edges[e].second << " [label=\""
            << g.weights[e] << "\"];\n";
    out << "}\n";
    return out.str();
}

}  // namespace coarse
