#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <memory>

#include "coarse/cones.hpp"
#include "coarse/corona.hpp"
#include "coarse/groups.hpp"

using namespace coarse;

namespace {

std::shared_ptr<FiniteMetricSpace> tree_ball(int radius) {
    GroupSpec spec;
    spec.kind = GroupSpec::Kind::FreeGroup;
    spec.rank = 2;
    return std::make_shared<FiniteMetricSpace>(build_cayley_graph(spec, radius));
}

std::shared_ptr<FiniteMetricSpace> grid_ball(int radius) {
    GroupSpec spec;
    spec.kind = GroupSpec::Kind::FreeAbelian;
    spec.rank = 2;
    return std::make_shared<FiniteMetricSpace>(build_cayley_graph(spec, radius));
}

ConeSpec identity_cone(FiniteMetricSpace base, Dist T) {
    ConeSpec spec;
    spec.base = std::move(base);
    spec.height_max = T;
    spec.resolution = 1;
    spec.phi.resize(static_cast<std::size_t>(T) + 1);
    for (std::size_t k = 0; k <= static_cast<std::size_t>(T); ++k)
        spec.phi[k] = static_cast<Dist>(k);
    return spec;
}

}  // namespace

TEST_CASE("ray gap is a pseudo-metric at every stage") {
    auto s = tree_ball(5);
    Combing c = geodesic_combing(s);
    for (PointId x = 0; x < 40; ++x)
        for (PointId y = 0; y < 40; ++y) {
            CHECK(ray_gap(c, x, y, 4) == ray_gap(c, y, x, 4));
            if (x == y) CHECK(ray_gap(c, x, y, 4) == 0);
        }
    // triangle inequality on a sample
    for (PointId x = 0; x < 15; ++x)
        for (PointId y = 0; y < 15; ++y)
            for (PointId z = 0; z < 15; ++z)
                CHECK(ray_gap(c, x, z, 4) <= ray_gap(c, x, y, 4) + ray_gap(c, y, z, 4));
}

TEST_CASE("tree rays realize the final gap at the stage itself") {
    auto s = tree_ball(6);
    Combing c = geodesic_combing(s);
    // for points of norm >= n, geodesic rays only separate further with m
    for (PointId x = 30; x < 90; ++x)
        for (PointId y = 30; y < 90; ++y) {
            if (s->d(x, 0) < 4 || s->d(y, 0) < 4) continue;
            CHECK(ray_gap(c, x, y, 4) == s->d(c.H(x, 4), c.H(y, 4)));
        }
}

TEST_CASE("tree sphere clusters count prefixes") {
    auto s = tree_ball(4);
    Combing c = geodesic_combing(s);
    std::vector<PointId> sphere = annulus(*s, 0, 4, 4);
    CHECK(sphere.size() == 108);
    ClusterPartition p2 = boundary_clusters(c, sphere, 2, 0, 4, 4);
    CHECK(p2.clusters.size() == 12);  // length-2 prefixes
    ClusterPartition p3 = boundary_clusters(c, sphere, 3, 0, 4, 4);
    CHECK(p3.clusters.size() == 36);
    // cluster count shrinks (weakly) as the threshold loosens
    ClusterPartition loose = boundary_clusters(c, sphere, 3, 2, 4, 4);
    CHECK(loose.clusters.size() <= p3.clusters.size());
    // representatives are the lex-least members
    for (std::size_t i = 0; i < p3.clusters.size(); ++i)
        CHECK(p3.representatives[i] == p3.clusters[i].front());
}

TEST_CASE("identity cone nerve over a 3-circle is the full triangle") {
    auto [space, combing] = open_cone(identity_cone(cycle_space(3), 30));
    std::vector<PointId> top = annulus(*space, 0, 27, 30);
    ClusterPartition p = boundary_clusters(combing, top, 12, 2, 27, 30);
    CHECK(p.clusters.size() == 3);
    NerveGraph g = cluster_nerve(combing, p, 12);
    CHECK(g.nodes == 3);
    CHECK(g.edges.size() == 3);
    for (Dist w : g.weights) CHECK(w == 12);
    CohomologyResult coh = nerve_cohomology(g, Ring::Z());
    CHECK(coh.betti == std::vector<std::int64_t>{1, 0});  // filled triangle
}

TEST_CASE("identity cone nerve over a 6-circle is the hexagon") {
    auto [space, combing] = open_cone(identity_cone(cycle_space(6), 30));
    std::vector<PointId> top = annulus(*space, 0, 27, 30);
    ClusterPartition p = boundary_clusters(combing, top, 12, 2, 27, 30);
    CHECK(p.clusters.size() == 6);
    NerveGraph g = cluster_nerve(combing, p, 12);
    CHECK(g.edges.size() == 6);
    CohomologyResult coh = nerve_cohomology(g, Ring::Z());
    CHECK(coh.betti == std::vector<std::int64_t>{1, 1});  // a circle
}

TEST_CASE("bresenham sphere-24 nerve: angular cycle plus pole chords") {
    auto s = grid_ball(24);
    Combing c = bresenham_combing(s);
    std::vector<PointId> sphere = annulus(*s, 0, 24, 24);
    CHECK(sphere.size() == 96);
    ClusterPartition p = boundary_clusters(c, sphere, 24, 1, 24, 24);
    CHECK(p.clusters.size() == 96);  // all singletons at this threshold
    NerveGraph g = cluster_nerve(c, p, 2);
    CHECK(g.edges.size() == 100);  // the 96-cycle and one chord pair per pole
}

TEST_CASE("corona comparison against a reference model") {
    auto [space, combing] = open_cone(identity_cone(cycle_space(3), 30));
    std::vector<PointId> top = annulus(*space, 0, 27, 30);
    ClusterPartition p = boundary_clusters(combing, top, 12, 2, 27, 30);
    FiniteMetricSpace ref = cycle_space(3);
    // clusters are the base directions; map each representative to its base index
    std::vector<PointId> rep_to_ref;
    for (PointId rep : p.representatives)
        rep_to_ref.push_back(static_cast<PointId>(space->cone_coords[rep].first));
    CoronaCompareReport cmp = corona_compare(p, ref, rep_to_ref);
    CHECK(cmp.mapped);
    CHECK(cmp.count_diff == 0);
    CHECK(cmp.hausdorff_mismatch == 0);

    CoronaCompareReport unmapped = corona_compare(p, ref, {});
    CHECK_FALSE(unmapped.mapped);
}

TEST_CASE("dot output lists nodes and edges") {
    auto [space, combing] = open_cone(identity_cone(cycle_space(3), 30));
    std::vector<PointId> top = annulus(*space, 0, 27, 30);
    ClusterPartition p = boundary_clusters(combing, top, 12, 2, 27, 30);
    NerveGraph g = cluster_nerve(combing, p, 12);
    std::string dot = nerve_to_dot(g);
    CHECK(dot.find("graph nerve {") == 0);
    CHECK(dot.find("n0 -- n1") != std::string::npos);
    CHECK(dot.find("}") != std::string::npos);
}
