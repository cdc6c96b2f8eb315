#pragma once
#include <string>
#include <vector>

#include "coarse/cohomology.hpp"
#include "coarse/combing.hpp"

namespace coarse {

// max_{0<=m<=n} d(H_m(x), H_m(y))
Dist ray_gap(const Combing& c, PointId x, PointId y, int n);

struct ClusterPartition {
    int stage = 0;
    Dist threshold = 0;
    Dist r_lo = 0, r_hi = 0;
    std::vector<std::vector<PointId>> clusters;  // sorted point lists, sorted by first element
    std::vector<PointId> representatives;        // lex-least point of each cluster
};

ClusterPartition boundary_clusters(const Combing& c, const std::vector<PointId>& annulus_points,
                                   int stage, Dist threshold, Dist r_lo = 0, Dist r_hi = 0);

struct NerveGraph {
    std::size_t nodes = 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::vector<Dist> weights;  // min over cross pairs of ray gap
    std::vector<std::string> node_labels;
    Dist edge_threshold = 0;
    int stage = 0;
};

// Edges join clusters whose representatives' rays come within s' by stage n.
NerveGraph cluster_nerve(const Combing& c, const ClusterPartition& p, Dist edge_threshold);

CohomologyResult nerve_cohomology(const NerveGraph& g, const Ring& ring);

struct CoronaCompareReport {
    std::size_t cluster_count = 0;
    std::size_t reference_count = 0;
    long count_diff = 0;
    Dist hausdorff_mismatch = 0;  // in the reference metric, between mapped reps and reference
    bool mapped = false;          // label map resolved for every representative
};

// rep_to_ref: representative index -> reference PointId (caller-resolved labels).
CoronaCompareReport corona_compare(const ClusterPartition& p, const FiniteMetricSpace& reference,
                                   const std::vector<PointId>& rep_to_ref);

std::string nerve_to_dot(const NerveGraph& g);

}  // namespace coarse
