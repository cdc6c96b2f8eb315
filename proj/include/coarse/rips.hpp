#pragma once
#include <map>
#include <optional>
#include <vector>

#include "coarse/metric_space.hpp"

namespace coarse {

struct SimplicialComplex {
    int dim_cap = 0;
    std::optional<Dist> scale;  // Rips parameter R, if built from a space
    // simplices[q] = sorted list of strictly increasing vertex tuples
    std::vector<std::vector<std::vector<PointId>>> simplices;

    std::size_t count(int q) const {
        return q >= 0 && q < static_cast<int>(simplices.size()) ? simplices[q].size() : 0;
    }
    std::size_t total() const {
        std::size_t t = 0;
        for (const auto& s : simplices) t += s.size();
        return t;
    }
    // index of a simplex within its dimension, -1 if absent
    long find(const std::vector<PointId>& simplex) const;

    void check_face_closed() const;
};

SimplicialComplex rips_complex(const FiniteMetricSpace& s, Dist R, int dim_cap);

// full simplex on n abstract vertices (test helper)
SimplicialComplex full_simplex(std::size_t n_vertices, int dim_cap);

struct SubcomplexHandle {
    const SimplicialComplex* parent = nullptr;
    bool closed = false;  // true: flagged set is a closed subcomplex
    std::vector<std::vector<char>> flags;  // per dim, per simplex

    SubcomplexHandle complement() const;  // open <-> closed
    std::size_t count(int q) const;
};

// Open subcomplex U(A, r): simplices with >= 1 vertex within distance r of A.
SubcomplexHandle simplicial_neighborhood(const SimplicialComplex& cx, const FiniteMetricSpace& s,
                                         const std::vector<PointId>& A, Dist r);

// Closed subcomplex spanned by a vertex set (all simplices with every vertex in the set).
SubcomplexHandle closed_span(const SimplicialComplex& cx, const std::vector<char>& vertex_in);

// per-dimension index maps cx_R -> cx_S (R <= S)
std::vector<std::vector<long>> inclusion(const SimplicialComplex& cx_R, const SimplicialComplex& cx_S);

}  // namespace coarse
