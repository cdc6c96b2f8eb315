#include "coarse/rips.hpp"

#include <algorithm>
#include <map>

namespace coarse {

long SimplicialComplex::find(const std::vector<PointId>& simplex) const {
    int q = static_cast<int>(simplex.size()) - 1;
    if (q < 0 || q >= static_cast<int>(simplices.size())) return -1;
    const auto& list = simplices[q];
    auto it = std::lower_bound(list.begin(), list.end(), simplex);
    if (it == list.end() || *it != simplex) return -1;
    return static_cast<long>(it - list.begin());
}

void SimplicialComplex::check_face_closed() const {
    for (int q = 1; q < static_cast<int>(simplices.size()); ++q)
        for (const auto& s : simplices[q]) {
            if (!std::is_sorted(s.begin(), s.end()) ||
                std::adjacent_find(s.begin(), s.end()) != s.end())
                throw std::runtime_error("simplex vertices not strictly increasing");
            for (std::size_t i = 0; i < s.size(); ++i) {
                std::vector<PointId> face;
                face.reserve(s.size() - 1);
                for (std::size_t j = 0; j < s.size(); ++j)
                    if (j != i) face.push_back(s[j]);
                if (find(face) < 0) throw std::runtime_error("missing face");
            }
        }
    for (const auto& list : simplices)
        if (std::adjacent_find(list.begin(), list.end()) != list.end())
            throw std::runtime_error("duplicate simplex");
}

SimplicialComplex rips_complex(const FiniteMetricSpace& s, Dist R, int dim_cap) {
    if (R < 0 || dim_cap < 0) throw std::runtime_error("rips_complex: bad parameters");
    SimplicialComplex cx;
    cx.dim_cap = dim_cap;
    cx.scale = R;
    const std::size_t n = s.size();
    const std::size_t budget = global_budget().simplices;
    cx.simplices.resize(dim_cap + 1);
    auto& verts = cx.simplices[0];
    verts.reserve(n);
    for (PointId v = 0; v < n; ++v) verts.push_back({v});
    // forward neighbour lists (clique expansion in vertex order)
    std::vector<std::vector<PointId>> fwd(n);
    for (PointId a = 0; a < n; ++a)
        for (PointId b = a + 1; b < n; ++b)
            if (s.d(a, b) <= R) fwd[a].push_back(b);
    std::size_t total = n;
    for (int q = 1; q <= dim_cap; ++q) {
        const auto& prev = cx.simplices[q - 1];
        auto& cur = cx.simplices[q];
        for (const auto& sim : prev) {
            for (PointId w : fwd[sim.back()]) {
                bool ok = true;
                for (std::size_t i = 0; i + 1 < sim.size() && ok; ++i) ok = s.d(sim[i], w) <= R;
                if (!ok) continue;
                auto ext = sim;
                ext.push_back(w);
                cur.push_back(std::move(ext));
                if (++total > budget)
                    throw budget_error("simplex budget exceeded at dimension " + std::to_string(q) +
                                       " (budget 'simplices' = " + std::to_string(budget) + ")");
            }
        }
        if (cur.empty()) break;
    }
    return cx;
}

SimplicialComplex full_simplex(std::size_t n_vertices, int dim_cap) {
    SimplicialComplex cx;
    cx.dim_cap = dim_cap;
    cx.simplices.resize(dim_cap + 1);
    std::vector<std::vector<PointId>> cur;
    for (PointId v = 0; v < n_vertices; ++v) cx.simplices[0].push_back({v});
    for (int q = 1; q <= dim_cap; ++q) {
        for (const auto& sim : cx.simplices[q - 1])
            for (PointId w = sim.back() + 1; w < n_vertices; ++w) {
                auto ext = sim;
                ext.push_back(w);
                cx.simplices[q].push_back(std::move(ext));
            }
    }
    return cx;
}

std::size_t SubcomplexHandle::count(int q) const {
    if (q < 0 || q >= static_cast<int>(flags.size())) return 0;
    std::size_t c = 0;
    for (char f : flags[q]) c += f != 0;
    return c;
}

SubcomplexHandle SubcomplexHandle::complement() const {
    SubcomplexHandle h;
    h.parent = parent;
    h.closed = !closed;
    h.flags.resize(flags.size());
    for (std::size_t q = 0; q < flags.size(); ++q) {
        h.flags[q].resize(flags[q].size());
        for (std::size_t i = 0; i < flags[q].size(); ++i) h.flags[q][i] = !flags[q][i];
    }
    return h;
}

SubcomplexHandle simplicial_neighborhood(const SimplicialComplex& cx, const FiniteMetricSpace& s,
                                         const std::vector<PointId>& A, Dist r) {
    std::vector<char> near(s.size(), 0);
    for (PointId x = 0; x < s.size(); ++x)
        for (PointId a : A)
            if (s.d(x, a) <= r) {
                near[x] = 1;
                break;
            }
    SubcomplexHandle h;
    h.parent = &cx;
    h.closed = false;  // U(A, r) is an open subcomplex
    h.flags.resize(cx.simplices.size());
    for (std::size_t q = 0; q < cx.simplices.size(); ++q) {
        h.flags[q].resize(cx.simplices[q].size(), 0);
        for (std::size_t i = 0; i < cx.simplices[q].size(); ++i)
            for (PointId v : cx.simplices[q][i])
                if (near[v]) {
                    h.flags[q][i] = 1;
                    break;
                }
    }
    return h;
}

SubcomplexHandle closed_span(const SimplicialComplex& cx, const std::vector<char>& vertex_in) {
    SubcomplexHandle h;
    h.parent = &cx;
    h.closed = true;
    h.flags.resize(cx.simplices.size());
    for (std::size_t q = 0; q < cx.simplices.size(); ++q) {
        h.flags[q].resize(cx.simplices[q].size(), 0);
        for (std::size_t i = 0; i < cx.simplices[q].size(); ++i) {
            bool all = true;
            for (PointId v : cx.simplices[q][i]) all = all && vertex_in[v];
            h.flags[q][i] = all;
        }
    }
    return h;
}

std::vector<std::vector<long>> inclusion(const SimplicialComplex& cx_R,
                                         const SimplicialComplex& cx_S) {
    std::vector<std::vector<long>> maps(cx_R.simplices.size());
    for (std::size_t q = 0; q < cx_R.simplices.size(); ++q) {
        maps[q].reserve(cx_R.simplices[q].size());
        for (const auto& sim : cx_R.simplices[q]) {
            long idx = cx_S.find(sim);
            if (idx < 0) throw std::runtime_error("inclusion: simplex missing in the larger complex");
            maps[q].push_back(idx);
        }
    }
    return maps;
}

}  // namespace coarse
