#include "coarse/groups.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace coarse {

void GroupSpec::validate() const {
    switch (kind) {
        case Kind::FreeGroup:
        case Kind::FreeAbelian:
            if (rank < 1) throw std::runtime_error("group rank must be >= 1");
            break;
        case Kind::FiniteGroup: {
            const std::size_t n = mult.size();
            if (n == 0) throw std::runtime_error("empty multiplication table");
            for (const auto& row : mult) {
                if (row.size() != n) throw std::runtime_error("multiplication table not square");
                for (int v : row)
                    if (v < 0 || static_cast<std::size_t>(v) >= n)
                        throw std::runtime_error("multiplication table entry out of range");
            }
            for (std::size_t g = 0; g < n; ++g)
                if (mult[0][g] != static_cast<int>(g) || mult[g][0] != static_cast<int>(g))
                    throw std::runtime_error("element 0 is not an identity");
            std::vector<char> has_inv(n, 0);
            for (std::size_t g = 0; g < n; ++g)
                for (std::size_t h = 0; h < n; ++h)
                    if (mult[g][h] == 0) has_inv[g] = 1;
            for (std::size_t g = 0; g < n; ++g)
                if (!has_inv[g]) throw std::runtime_error("element without inverse");
            // associativity spot-check
            for (std::size_t a = 0; a < n; a += std::max<std::size_t>(1, n / 8))
                for (std::size_t b = 0; b < n; b += std::max<std::size_t>(1, n / 8))
                    for (std::size_t c = 0; c < n; c += std::max<std::size_t>(1, n / 8))
                        if (mult[mult[a][b]][c] != mult[a][mult[b][c]])
                            throw std::runtime_error("multiplication table not associative");
            if (generators.empty()) throw std::runtime_error("empty generating set");
            for (int g : generators) {
                if (g == 0) throw std::runtime_error("generating set contains the identity");
                bool inv_in = false;
                for (int h : generators)
                    if (mult[g][h] == 0) inv_in = true;
                if (!inv_in) throw std::runtime_error("generating set not symmetric");
            }
            break;
        }
        case Kind::DirectProduct:
            if (factors.empty()) throw std::runtime_error("empty product");
            for (const auto& f : factors) f.validate();
            break;
        case Kind::ExplicitGraph:
            if (adjacency.empty()) throw std::runtime_error("empty graph");
            if (graph_base >= adjacency.size()) throw std::runtime_error("graph base out of range");
            break;
    }
}

namespace {

struct Enumerated {
    std::vector<std::vector<PointId>> adj;
    std::vector<std::string> labels;
    std::vector<std::vector<std::int64_t>> lattice;  // empty if not a lattice group
    std::vector<int> norm;                           // word norm (BFS layer)
};

std::string letter(int g) {
    // generator i -> 'a'+i, inverse -> uppercase
    int i = std::abs(g) - 1;
    char c = static_cast<char>((g > 0 ? 'a' : 'A') + i);
    return std::string(1, c);
}

Enumerated enum_free_group(int rank, int radius) {
    // words as vectors of signed generator indices
    std::vector<std::vector<int>> words{{}};
    std::map<std::vector<int>, PointId> index{{{}, 0}};
    Enumerated e;
    e.adj.push_back({});
    e.labels.push_back("e");
    e.norm.push_back(0);
    std::size_t head = 0;
    while (head < words.size()) {
        auto w = words[head];
        PointId u = index[w];
        if (e.norm[u] < radius) {
            for (int i = 1; i <= rank; ++i)
                for (int g : {i, -i}) {
                    if (!w.empty() && w.back() == -g) continue;  // reduced words only
                    auto nw = w;
                    nw.push_back(g);
                    auto [it, fresh] = index.try_emplace(nw, static_cast<PointId>(words.size()));
                    if (fresh) {
                        words.push_back(nw);
                        e.adj.push_back({});
                        std::string lab = e.labels[u] == "e" ? "" : e.labels[u];
                        e.labels.push_back(lab + letter(g));
                        e.norm.push_back(e.norm[u] + 1);
                    }
                    e.adj[u].push_back(it->second);
                    e.adj[it->second].push_back(u);
                }
        }
        ++head;
    }
    // cancellation edges (w, wg) with |wg| = |w|-1 were added from the longer side too;
    // dedupe adjacency
    for (auto& nb : e.adj) {
        std::sort(nb.begin(), nb.end());
        nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    }
    return e;
}

std::string coords_label(const std::vector<std::int64_t>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(v[i]);
    }
    return s + ")";
}

Enumerated enum_free_abelian(int rank, int radius) {
    std::vector<std::vector<std::int64_t>> pts{std::vector<std::int64_t>(rank, 0)};
    std::map<std::vector<std::int64_t>, PointId> index{{pts[0], 0}};
    Enumerated e;
    e.adj.push_back({});
    e.labels.push_back(coords_label(pts[0]));
    e.norm.push_back(0);
    std::size_t head = 0;
    while (head < pts.size()) {
        auto x = pts[head];
        PointId u = index[x];
        if (e.norm[u] < radius) {
            for (int i = 0; i < rank; ++i)
                for (int dir : {1, -1}) {
                    auto y = x;
                    y[i] += dir;
                    std::int64_t n1 = 0;
                    for (auto c : y) n1 += std::llabs(c);
                    if (n1 > radius) continue;
                    auto [it, fresh] = index.try_emplace(y, static_cast<PointId>(pts.size()));
                    if (fresh) {
                        pts.push_back(y);
                        e.adj.push_back({});
                        e.labels.push_back(coords_label(y));
                        e.norm.push_back(static_cast<int>(n1));
                    }
                    e.adj[u].push_back(it->second);
                    e.adj[it->second].push_back(u);
                }
        }
        ++head;
    }
    e.lattice = std::move(pts);
    for (auto& nb : e.adj) {
        std::sort(nb.begin(), nb.end());
        nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    }
    return e;
}

Enumerated enum_finite_group(const GroupSpec& spec, int radius) {
    const std::size_t n = spec.mult.size();
    Enumerated e;
    std::vector<int> dist(n, -1);
    std::vector<int> order;  // BFS order of group elements
    dist[0] = 0;
    order.push_back(0);
    for (std::size_t head = 0; head < order.size(); ++head) {
        int u = order[head];
        if (dist[u] >= radius) continue;
        for (int g : spec.generators) {
            int v = spec.mult[u][g];
            if (dist[v] < 0) {
                dist[v] = dist[u] + 1;
                order.push_back(v);
            }
        }
    }
    std::vector<PointId> remap(n, 0);
    for (std::size_t i = 0; i < order.size(); ++i) remap[order[i]] = static_cast<PointId>(i);
    e.adj.assign(order.size(), {});
    for (std::size_t i = 0; i < order.size(); ++i) {
        int u = order[i];
        e.labels.push_back("g" + std::to_string(u));
        e.norm.push_back(dist[u]);
        for (int g : spec.generators) {
            int v = spec.mult[u][g];
            if (dist[v] >= 0) e.adj[i].push_back(remap[v]);
        }
    }
    for (auto& nb : e.adj) {
        std::sort(nb.begin(), nb.end());
        nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    }
    return e;
}

Enumerated enum_ball(const GroupSpec& spec, int radius);

Enumerated enum_product(const GroupSpec& spec, int radius) {
    std::vector<Enumerated> fac;
    for (const auto& f : spec.factors) fac.push_back(enum_ball(f, radius));
    bool all_lattice = true;
    for (const auto& f : fac) all_lattice = all_lattice && !f.lattice.empty();
    // enumerate tuples with total norm <= radius, BFS order from the identity tuple
    std::vector<std::vector<PointId>> tuples{std::vector<PointId>(fac.size(), 0)};
    std::map<std::vector<PointId>, PointId> index{{tuples[0], 0}};
    Enumerated e;
    e.adj.push_back({});
    e.norm.push_back(0);
    std::size_t head = 0;
    while (head < tuples.size()) {
        auto t = tuples[head];
        PointId u = index[t];
        for (std::size_t i = 0; i < fac.size(); ++i)
            for (PointId w : fac[i].adj[t[i]]) {
                int n1 = e.norm[u] - fac[i].norm[t[i]] + fac[i].norm[w];
                if (n1 > radius) continue;
                auto nt = t;
                nt[i] = w;
                auto [it, fresh] = index.try_emplace(nt, static_cast<PointId>(tuples.size()));
                if (fresh) {
                    tuples.push_back(nt);
                    e.adj.push_back({});
                    e.norm.push_back(n1);
                }
                e.adj[u].push_back(it->second);
            }
        ++head;
    }
    for (std::size_t k = 0; k < tuples.size(); ++k) {
        const auto& t = tuples[k];
        std::string lab = "(";
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (i) lab += "|";
            lab += fac[i].labels[t[i]];
        }
        e.labels.push_back(lab + ")");
        if (all_lattice) {
            std::vector<std::int64_t> coords;
            for (std::size_t i = 0; i < t.size(); ++i)
                coords.insert(coords.end(), fac[i].lattice[t[i]].begin(),
                              fac[i].lattice[t[i]].end());
            e.lattice.push_back(std::move(coords));
        }
    }
    for (auto& nb : e.adj) {
        std::sort(nb.begin(), nb.end());
        nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    }
    return e;
}

Enumerated enum_explicit(const GroupSpec& spec, int radius) {
    const auto& adj = spec.adjacency;
    std::vector<int> dist(adj.size(), -1);
    std::vector<PointId> order;
    dist[spec.graph_base] = 0;
    order.push_back(spec.graph_base);
    for (std::size_t head = 0; head < order.size(); ++head) {
        PointId u = order[head];
        if (dist[u] >= radius) continue;
        for (PointId v : adj[u])
            if (dist[v] < 0) {
                dist[v] = dist[u] + 1;
                order.push_back(v);
            }
    }
    std::vector<long> remap(adj.size(), -1);
    for (std::size_t i = 0; i < order.size(); ++i) remap[order[i]] = static_cast<long>(i);
    Enumerated e;
    e.adj.assign(order.size(), {});
    for (std::size_t i = 0; i < order.size(); ++i) {
        PointId u = order[i];
        e.labels.push_back("v" + std::to_string(u));
        e.norm.push_back(dist[u]);
        for (PointId v : adj[u])
            if (remap[v] >= 0) e.adj[i].push_back(static_cast<PointId>(remap[v]));
    }
    for (auto& nb : e.adj) {
        std::sort(nb.begin(), nb.end());
        nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    }
    return e;
}

Enumerated enum_ball(const GroupSpec& spec, int radius) {
    switch (spec.kind) {
        case GroupSpec::Kind::FreeGroup: return enum_free_group(spec.rank, radius);
        case GroupSpec::Kind::FreeAbelian: return enum_free_abelian(spec.rank, radius);
        case GroupSpec::Kind::FiniteGroup: return enum_finite_group(spec, radius);
        case GroupSpec::Kind::DirectProduct: return enum_product(spec, radius);
        case GroupSpec::Kind::ExplicitGraph: return enum_explicit(spec, radius);
    }
    throw std::logic_error("unreachable");
}

}  // namespace

FiniteMetricSpace build_cayley_graph(const GroupSpec& spec, int radius) {
    if (radius < 0) throw std::runtime_error("radius must be >= 0");
    spec.validate();
    Enumerated e = enum_ball(spec, radius);
    FiniteMetricSpace s = FiniteMetricSpace::from_graph(e.adj, 1, 0, radius);
    s.labels = std::move(e.labels);
    s.lattice = std::move(e.lattice);
    return s;
}

FiniteMetricSpace segment_space(int T) {
    if (T < 1) throw std::runtime_error("segment needs T >= 1");
    std::vector<std::vector<PointId>> adj(T + 1);
    for (int i = 0; i < T; ++i) {
        adj[i].push_back(i + 1);
        adj[i + 1].push_back(i);
    }
    FiniteMetricSpace s = FiniteMetricSpace::from_graph(adj, 1, 0, T);
    for (int i = 0; i <= T; ++i) {
        s.labels[i] = std::to_string(i);
        s.lattice.push_back({i});
    }
    return s;
}

FiniteMetricSpace cycle_space(int k) {
    if (k < 3) throw std::runtime_error("cycle needs k >= 3");
    std::vector<std::vector<PointId>> adj(k);
    for (int i = 0; i < k; ++i) {
        adj[i].push_back((i + 1) % k);
        adj[i].push_back((i + k - 1) % k);
    }
    FiniteMetricSpace s = FiniteMetricSpace::from_graph(adj, 1, 0, k / 2);
    for (int i = 0; i < k; ++i) s.labels[i] = "c" + std::to_string(i);
    return s;
}

}  // namespace coarse
