#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "coarse/groups.hpp"
#include "coarse/metric_space.hpp"

using namespace coarse;

namespace {

FiniteMetricSpace free_group_ball(int rank, int radius) {
    GroupSpec spec;
    spec.kind = GroupSpec::Kind::FreeGroup;
    spec.rank = rank;
    return build_cayley_graph(spec, radius);
}

FiniteMetricSpace free_abelian_ball(int rank, int radius) {
    GroupSpec spec;
    spec.kind = GroupSpec::Kind::FreeAbelian;
    spec.rank = rank;
    return build_cayley_graph(spec, radius);
}

PointId by_label(const FiniteMetricSpace& s, const std::string& label) {
    for (PointId v = 0; v < s.size(); ++v)
        if (s.labels[v] == label) return v;
    throw std::runtime_error("label not found: " + label);
}

PointId by_coords(const FiniteMetricSpace& s, const std::vector<std::int64_t>& c) {
    for (PointId v = 0; v < s.size(); ++v)
        if (s.lattice[v] == c) return v;
    throw std::runtime_error("lattice point not found");
}

}  // namespace

TEST_CASE("free group ball sizes") {
    // 1 + 4 + 4*3 = 17 elements of length <= 2
    FiniteMetricSpace s = free_group_ball(2, 2);
    CHECK(s.size() == 17);
    CHECK(s.base_point.has_value());
    CHECK(*s.base_point == 0);
    CHECK(s.labels[0] == "e");
    s.check_metric_axioms();

    // sphere counts 4 * 3^(k-1)
    FiniteMetricSpace s5 = free_group_ball(2, 5);
    CHECK(annulus(s5, 0, 5, 5).size() == 4 * 81);
    CHECK(ball(s5, 0, 3).size() == 1 + 4 + 12 + 36);
}

TEST_CASE("free abelian balls and annuli") {
    FiniteMetricSpace s = free_abelian_ball(2, 8);
    // l1 ball radius 8: 1 + sum_{k=1}^{8} 4k = 145
    CHECK(s.size() == 145);
    CHECK(annulus(s, 0, 8, 8).size() == 32);
    // off-center ball: radius-2 diamond around (2,0) stays inside the box
    PointId c = by_coords(s, {2, 0});
    CHECK(ball(s, c, 2).size() == 13);
    s.check_metric_axioms();
}

TEST_CASE("gromov products in the tree") {
    FiniteMetricSpace s = free_group_ball(2, 3);
    PointId x = by_label(s, "aab"), y = by_label(s, "aba");
    // common prefix "a": (x|y) = (3 + 3 - 4)/2 = 1
    HalfInt g = gromov_product(s, x, y);
    CHECK(g.twice == 2);
    CHECK(g.is_integer());
    PointId z = by_label(s, "aaB");
    CHECK(gromov_product(s, x, z).twice == 4);
}

TEST_CASE("trees are 0-hyperbolic, grids are not") {
    FiniteMetricSpace tree = free_group_ball(2, 5);
    CHECK(estimate_hyperbolicity(tree, 4000).twice == 0);
    FiniteMetricSpace grid = free_abelian_ball(2, 6);
    CHECK(estimate_hyperbolicity(grid, 4000).twice > 0);
}

TEST_CASE("chain metric relaxes a loose bound") {
    auto bound = [](std::size_t i, std::size_t j) -> Dist {
        if ((i == 0 && j == 1) || (i == 1 && j == 0)) return 1;
        if ((i == 1 && j == 2) || (i == 2 && j == 1)) return 1;
        return 5;  // direct 0-2 bound is dominated by the two-hop path
    };
    auto m = chain_metric(3, bound);
    CHECK(m[0][2] == 2);
    CHECK(m[2][0] == 2);
    CHECK(m[0][1] == 1);
}

TEST_CASE("chain metric rejects disconnected bounds") {
    auto bound = [](std::size_t i, std::size_t j) -> Dist {
        return (i < 2) == (j < 2) ? 1 : DIST_INF;
    };
    CHECK_THROWS(chain_metric(4, bound));
}

TEST_CASE("asdim upper bounds") {
    FiniteMetricSpace line = free_abelian_ball(1, 50);
    AsdimEstimate e = estimate_asdim_upper(line, {5, 10});
    CHECK(e.upper_bound <= 1);
    FiniteMetricSpace grid = free_abelian_ball(2, 20);
    AsdimEstimate e2 = estimate_asdim_upper(grid, {5, 10});
    CHECK(e2.upper_bound <= 3);
    CHECK(e2.nerve_dims.size() == 2);
    CHECK_THROWS(estimate_asdim_upper(line, {10, 5}));  // scales must increase
}

TEST_CASE("segment and cycle helpers") {
    FiniteMetricSpace seg = segment_space(10);
    CHECK(seg.size() == 11);
    CHECK(seg.d(0, 10) == 10);
    FiniteMetricSpace cyc = cycle_space(6);
    CHECK(cyc.size() == 6);
    CHECK(cyc.d(0, 3) == 3);
    CHECK(cyc.d(0, 5) == 1);
}

TEST_CASE("point budget is enforced and named") {
    Budget& b = global_budget();
    std::size_t saved = b.points;
    b.points = 10;
    bool threw = false;
    try {
        free_abelian_ball(2, 8);
    } catch (const budget_error& e) {
        threw = true;
        CHECK(std::string(e.what()).find("points") != std::string::npos);
    }
    b.points = saved;
    CHECK(threw);
}

TEST_CASE("metric axiom checker catches violations") {
    // d(0,2) = 5 breaks the triangle inequality through 1
    std::vector<std::vector<Dist>> m = {{0, 1, 5}, {1, 0, 1}, {5, 1, 0}};
    FiniteMetricSpace s = FiniteMetricSpace::from_matrix(m, 1, 0, 5);
    CHECK_THROWS(s.check_metric_axioms());
}
