#include "coarse/combing.hpp"

#include "coarse/groups.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace coarse {

void Combing::validate() const {
    const std::size_t n = space->size();
    if (table.size() != n || settle.size() != n) throw std::runtime_error("combing table size mismatch");
    for (PointId x = 0; x < n; ++x) {
        if (H(x, 0) != base) throw std::runtime_error("H(x,0) != p");
        if (settle[x] > horizon) throw std::runtime_error("point not settled within horizon");
        for (int m = settle[x]; m <= horizon; ++m)
            if (H(x, m) != x) throw std::runtime_error("H(x,n) != x beyond settle");
        if (settle[x] > 0 && H(x, settle[x] - 1) == x && x != base) {
            // settle must be least
            int m = settle[x] - 1;
            bool all = true;
            for (int k = m; k <= horizon; ++k) all = all && H(x, k) == x;
            if (all) throw std::runtime_error("settle not minimal");
        }
    }
    for (int m = 0; m <= horizon; ++m)
        if (H(base, m) != base) throw std::runtime_error("H(p,n) != p");
}

Combing geodesic_combing(std::shared_ptr<const FiniteMetricSpace> s) {
    if (!s->base_point) throw std::runtime_error("geodesic_combing: base point not set");
    const auto& adj = s->unit_graph();
    const std::size_t n = s->size();
    const PointId p = *s->base_point;
    std::vector<std::int64_t> dist(n, -1);
    std::vector<PointId> order;
    dist[p] = 0;
    order.push_back(p);
    for (std::size_t head = 0; head < order.size(); ++head) {
        PointId u = order[head];
        for (PointId v : adj[u])
            if (dist[v] < 0) {
                dist[v] = dist[u] + 1;
                order.push_back(v);
            }
    }
    for (std::size_t i = 0; i < n; ++i)
        if (dist[i] < 0) throw std::runtime_error("geodesic_combing: space disconnected at scale 1");
    // lexicographically-least-parent BFS tree
    std::vector<PointId> parent(n, p);
    for (PointId v = 0; v < n; ++v) {
        if (v == p) continue;
        PointId best = v;
        bool found = false;
        for (PointId u : adj[v])
            if (dist[u] == dist[v] - 1 && (!found || u < best)) {
                best = u;
                found = true;
            }
        if (!found) throw std::runtime_error("geodesic_combing: no BFS parent");
        parent[v] = best;
    }
    Combing c;
    c.space = s;
    c.base = p;
    int horizon = 0;
    for (PointId v = 0; v < n; ++v) horizon = std::max<int>(horizon, static_cast<int>(dist[v]));
    c.horizon = horizon;
    c.table.resize(n);
    c.settle.resize(n);
    for (PointId v = 0; v < n; ++v) {
        std::vector<PointId> path;
        for (PointId u = v;; u = parent[u]) {
            path.push_back(u);
            if (u == p) break;
        }
        std::reverse(path.begin(), path.end());
        c.settle[v] = static_cast<int>(path.size()) - 1;
        c.table[v] = std::move(path);
    }
    return c;
}

namespace {

std::vector<std::vector<std::int64_t>> bres_path(const std::vector<std::int64_t>& x) {
    std::int64_t L = 0;
    for (auto c : x) L += std::llabs(c);
    std::vector<std::vector<std::int64_t>> path;
    std::vector<std::int64_t> cur(x.size(), 0);
    path.push_back(cur);
    for (std::int64_t t = 1; t <= L; ++t) {
        // step the axis with the largest deficit |x_i|*t - |c_i|*L; ties -> lower index
        std::size_t best = 0;
        std::int64_t best_def = std::numeric_limits<std::int64_t>::min();
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (cur[i] == x[i]) continue;  // axis complete
            std::int64_t def = std::llabs(x[i]) * t - std::llabs(cur[i]) * L;
            if (def > best_def) {
                best_def = def;
                best = i;
            }
        }
        cur[best] += x[best] > 0 ? 1 : -1;
        path.push_back(cur);
    }
    return path;
}

}  // namespace

Combing bresenham_combing(std::shared_ptr<const FiniteMetricSpace> s) {
    if (s->lattice.empty()) throw std::runtime_error("bresenham_combing: labels are not lattice points");
    if (!s->base_point) throw std::runtime_error("bresenham_combing: base point not set");
    std::map<std::vector<std::int64_t>, PointId> index;
    for (PointId i = 0; i < s->size(); ++i) index[s->lattice[i]] = i;
    for (auto c : s->lattice[*s->base_point])
        if (c != 0) throw std::runtime_error("bresenham_combing: base point must be the origin");
    Combing c;
    c.space = s;
    c.base = *s->base_point;
    c.table.resize(s->size());
    c.settle.resize(s->size());
    int horizon = 0;
    for (PointId v = 0; v < s->size(); ++v) {
        auto path = bres_path(s->lattice[v]);
        std::vector<PointId> row;
        row.reserve(path.size());
        for (const auto& q : path) {
            auto it = index.find(q);
            if (it == index.end())
                throw std::runtime_error("bresenham path leaves the truncation at " + s->labels[v]);
            row.push_back(it->second);
        }
        c.settle[v] = static_cast<int>(row.size()) - 1;
        horizon = std::max(horizon, c.settle[v]);
        c.table[v] = std::move(row);
    }
    c.horizon = horizon;
    return c;
}

Combing product_combing(const Combing& a, const Combing& b, Dist radius_cap) {
    const auto& A = *a.space;
    const auto& B = *b.space;
    if (A.scale != B.scale) throw std::runtime_error("product_combing: factor scales differ");
    const PointId pa = a.base, pb = b.base;
    // enumerate pairs with |x|+|y| <= cap, ordered by (ia, ib)
    std::vector<std::pair<PointId, PointId>> pts;
    std::map<std::pair<PointId, PointId>, PointId> index;
    for (PointId ia = 0; ia < A.size(); ++ia) {
        Dist na = A.d(ia, pa);
        if (na > radius_cap) continue;
        for (PointId ib = 0; ib < B.size(); ++ib) {
            if (na + B.d(ib, pb) > radius_cap) continue;
            index[{ia, ib}] = static_cast<PointId>(pts.size());
            pts.emplace_back(ia, ib);
        }
    }
    const std::size_t n = pts.size();
    if (n > global_budget().points)
        throw budget_error("product space exceeds point budget (" + std::to_string(n) + ")");
    std::vector<std::uint16_t> tri(n * (n - 1) / 2);
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) {
            Dist v = A.d(pts[i].first, pts[j].first) + B.d(pts[i].second, pts[j].second);
            if (v > 65535) throw std::runtime_error("product distance exceeds storage");
            tri[i * (i - 1) / 2 + j] = static_cast<std::uint16_t>(v);
        }
    auto space = std::make_shared<FiniteMetricSpace>(FiniteMetricSpace::from_triangular(
        std::move(tri), n, A.scale, index.at({pa, pb}), radius_cap));
    bool lattice = !A.lattice.empty() && !B.lattice.empty();
    for (std::size_t i = 0; i < n; ++i) {
        auto [ia, ib] = pts[i];
        space->labels[i] = "(" + A.labels[ia] + "|" + B.labels[ib] + ")";
        if (lattice) {
            std::vector<std::int64_t> coords = A.lattice[ia];
            coords.insert(coords.end(), B.lattice[ib].begin(), B.lattice[ib].end());
            space->lattice.push_back(std::move(coords));
        }
    }

    Combing c;
    c.space = space;
    c.base = index.at({pa, pb});
    c.table.resize(n);
    c.settle.resize(n);
    int horizon = 0;
    for (std::size_t i = 0; i < n; ++i) {
        auto [ia, ib] = pts[i];
        int sa = a.settle[ia], sb = b.settle[ib];
        std::vector<PointId> row;
        row.reserve(sa + sb + 1);
        // walk factor A first, holding the B-coordinate at its base
        for (int m = 0; m <= sa; ++m) row.push_back(index.at({a.H(ia, m), pb}));
        for (int m = 1; m <= sb; ++m) row.push_back(index.at({ia, b.H(ib, m)}));
        c.settle[i] = sa + sb;
        horizon = std::max(horizon, sa + sb);
        c.table[i] = std::move(row);
    }
    c.horizon = horizon;
    return c;
}

Combing nonproper_example(int T) {
    if (T < 1) throw std::runtime_error("nonproper_example: T >= 1");
    auto space = std::make_shared<FiniteMetricSpace>(segment_space(T));
    Combing c;
    c.space = space;
    c.base = 0;
    c.horizon = 2 * T;
    c.table.resize(T + 1);
    c.settle.resize(T + 1);
    for (int x = 0; x <= T; ++x) {
        std::vector<PointId> row(2 * T + 1);
        for (int n = 0; n <= 2 * T; ++n) {
            int h;
            if (n <= x)
                h = 0;
            else if (n <= 2 * x)
                h = n - x;
            else
                h = x;
            row[n] = static_cast<PointId>(h);
        }
        c.table[x] = std::move(row);
        c.settle[x] = 2 * x;
    }
    return c;
}

Combing noncoherent_example(int T) {
    if (T < 1) throw std::runtime_error("noncoherent_example: T >= 1");
    auto space = std::make_shared<FiniteMetricSpace>(segment_space(T));
    Combing c;
    c.space = space;
    c.base = 0;
    c.horizon = T;
    c.table.resize(T + 1);
    c.settle.resize(T + 1);
    for (int x = 0; x <= T; ++x) {
        std::vector<PointId> row(T + 1);
        for (int n = 0; n <= T; ++n) {
            int h;
            if (3 * n <= x)
                h = n;
            else if (2 * n <= x)
                h = 4 * n - x;
            else
                h = x;
            row[n] = static_cast<PointId>(h);
        }
        c.table[x] = std::move(row);
        c.settle[x] = (x + 1) / 2;
    }
    return c;
}

Combing normal_form_combing(std::shared_ptr<const FiniteMetricSpace> s, NormalForm nf) {
    if (!s->base_point) throw std::runtime_error("normal_form_combing: base point not set");
    Combing c;
    c.space = s;
    c.base = *s->base_point;
    c.table.resize(s->size());
    c.settle.resize(s->size());
    int horizon = 0;
    if (nf == NormalForm::ShortlexLattice) {
        if (s->lattice.empty()) throw std::runtime_error("shortlex normal form needs lattice labels");
        std::map<std::vector<std::int64_t>, PointId> index;
        for (PointId i = 0; i < s->size(); ++i) index[s->lattice[i]] = i;
        for (PointId v = 0; v < s->size(); ++v) {
            std::vector<std::int64_t> cur(s->lattice[v].size(), 0);
            std::vector<PointId> row{c.base};
            for (std::size_t axis = 0; axis < cur.size(); ++axis) {
                std::int64_t target = s->lattice[v][axis];
                std::int64_t step = target > 0 ? 1 : -1;
                while (cur[axis] != target) {
                    cur[axis] += step;
                    auto it = index.find(cur);
                    if (it == index.end())
                        throw std::runtime_error("normal form prefix leaves the truncation");
                    row.push_back(it->second);
                }
            }
            c.settle[v] = static_cast<int>(row.size()) - 1;
            horizon = std::max(horizon, c.settle[v]);
            c.table[v] = std::move(row);
        }
    } else {  // ReducedWord: free-group word labels ("e" for the identity)
        std::map<std::string, PointId> index;
        for (PointId i = 0; i < s->size(); ++i) index[s->labels[i]] = i;
        for (PointId v = 0; v < s->size(); ++v) {
            const std::string& w = s->labels[v];
            std::vector<PointId> row{c.base};
            if (w != "e")
                for (std::size_t k = 1; k <= w.size(); ++k) {
                    auto it = index.find(w.substr(0, k));
                    if (it == index.end())
                        throw std::runtime_error("normal form prefix leaves the truncation");
                    row.push_back(it->second);
                }
            c.settle[v] = static_cast<int>(row.size()) - 1;
            horizon = std::max(horizon, c.settle[v]);
            c.table[v] = std::move(row);
        }
    }
    c.horizon = horizon;
    return c;
}

}  // namespace coarse
