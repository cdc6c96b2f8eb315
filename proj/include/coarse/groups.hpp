#pragma once
#include <memory>
#include <string>
#include <vector>

#include "coarse/metric_space.hpp"

namespace coarse {

struct GroupSpec {
    enum class Kind { FreeGroup, FreeAbelian, FiniteGroup, DirectProduct, ExplicitGraph };
    Kind kind = Kind::FreeGroup;
    int rank = 0;  // FreeGroup / FreeAbelian

    // FiniteGroup: full multiplication table (mult[g][h] = g*h), identity = 0,
    // plus a symmetric generating set (no identity).
    std::vector<std::vector<int>> mult;
    std::vector<int> generators;

    std::vector<GroupSpec> factors;  // DirectProduct

    // ExplicitGraph: adjacency list; base vertex for the ball.
    std::vector<std::vector<PointId>> adjacency;
    PointId graph_base = 0;

    void validate() const;
};

// Closed ball of word-metric radius `radius` around the identity, distances by
// all-pairs BFS on the induced subgraph of the Cayley ball.
FiniteMetricSpace build_cayley_graph(const GroupSpec& spec, int radius);

// {0,...,T} with |i-j|: the interval model used by the counterexample combings.
FiniteMetricSpace segment_space(int T);

// simple cycle graph on k vertices (graph metric)
FiniteMetricSpace cycle_space(int k);

}  // namespace coarse
