#pragma once
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "coarse/types.hpp"

namespace coarse {

// A finite point set with an exact scaled-integer distance matrix: the
// truncated stand-in for a proper metric space (X, d, p).
class FiniteMetricSpace {
  public:
    std::int64_t scale = 1;
    std::optional<PointId> base_point;
    Dist truncation_radius = 0;
    std::vector<std::string> labels;
    // optional lattice coordinates (Z^d spaces) and cone coordinates
    std::vector<std::vector<std::int64_t>> lattice;          // empty if none
    std::vector<std::pair<std::int32_t, Dist>> cone_coords;  // (base index, height); empty if none

    std::size_t size() const { return n_; }

    Dist d(PointId a, PointId b) const {
        if (a == b) return 0;
        if (a < b) std::swap(a, b);
        return static_cast<Dist>(tri_[static_cast<std::size_t>(a) * (a - 1) / 2 + b]) * unit_;
    }

    Dist d_to_base(PointId a) const { return d(a, *base_point); }

    // Build from an explicit symmetric matrix given as lower-triangular rows
    // (entry unit = 1, i.e. already in scaled integers).
    static FiniteMetricSpace from_triangular(std::vector<std::uint16_t> tri, std::size_t n,
                                             std::int64_t scale, std::optional<PointId> base,
                                             Dist truncation_radius);

    // Build from an unweighted graph: distances are BFS distances within the
    // induced subgraph times `scale`.
    static FiniteMetricSpace from_graph(const std::vector<std::vector<PointId>>& adj,
                                        std::int64_t scale, std::optional<PointId> base,
                                        Dist truncation_radius);

    // Build from an int64 full matrix already in scaled units (chain metrics).
    static FiniteMetricSpace from_matrix(const std::vector<std::vector<Dist>>& m,
                                         std::int64_t scale, std::optional<PointId> base,
                                         Dist truncation_radius);

    void check_metric_axioms(std::size_t exhaustive_limit = 2000) const;

    // Unit-distance neighbours (d == scale); lazily built, deterministic order.
    const std::vector<std::vector<PointId>>& unit_graph() const;

    const std::vector<std::uint16_t>& raw_triangular() const { return tri_; }

  private:
    std::size_t n_ = 0;
    std::int64_t unit_ = 1;  // multiplier from stored uint16 to scaled Dist
    std::vector<std::uint16_t> tri_;
    mutable std::vector<std::vector<PointId>> unit_graph_;
};

std::vector<PointId> ball(const FiniteMetricSpace& s, PointId center, Dist r);
std::vector<PointId> annulus(const FiniteMetricSpace& s, PointId center, Dist r_lo, Dist r_hi);
HalfInt gromov_product(const FiniteMetricSpace& s, PointId x, PointId y);
HalfInt estimate_hyperbolicity(const FiniteMetricSpace& s, std::size_t sample_budget,
                               std::uint64_t seed = 12345);

// Largest metric pointwise <= bound (all-pairs shortest paths, Floyd-Warshall).
// bound uses DIST_INF for "no direct bound"; throws naming components if the
// result is disconnected.
std::vector<std::vector<Dist>> chain_metric(std::size_t n,
                                            const std::function<Dist(std::size_t, std::size_t)>& bound);

struct AsdimEstimate {
    std::vector<Dist> scales;
    std::vector<int> nerve_dims;
    int upper_bound = 0;
};

AsdimEstimate estimate_asdim_upper(const FiniteMetricSpace& s, const std::vector<Dist>& scales);

}  // namespace coarse
