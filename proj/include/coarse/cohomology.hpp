#pragma once
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "coarse/rips.hpp"

namespace coarse {

using BigInt = boost::multiprecision::cpp_int;

struct Ring {
    enum class Kind { Integers, Rationals, PrimeField };
    Kind kind = Kind::Integers;
    std::int64_t p = 0;  // PrimeField modulus
    static Ring Z() { return {Kind::Integers, 0}; }
    static Ring Q() { return {Kind::Rationals, 0}; }
    static Ring Fp(std::int64_t p) { return {Kind::PrimeField, p}; }
};

// Sparse integer matrix in triplet form (entries are +-1 for coboundaries).
struct SparseMat {
    std::size_t rows = 0, cols = 0;
    std::vector<std::tuple<std::size_t, std::size_t, std::int64_t>> entries;
};

// Relative cochain bookkeeping: which simplices of each dimension survive
// after deleting a closed subcomplex (i.e. the open complement).
struct RelativeBasis {
    std::vector<std::vector<long>> kept;      // per dim: list of simplex indices
    std::vector<std::vector<long>> position;  // per dim: simplex index -> kept position or -1
};

RelativeBasis relative_basis(const SimplicialComplex& cx, const SubcomplexHandle* closed_excluded);

// delta^q: C^q -> C^{q+1} on the kept simplices.
SparseMat coboundary(const SimplicialComplex& cx, int q, const RelativeBasis& basis);

// ---- exact linear algebra ----
struct SnfResult {
    std::vector<BigInt> diagonal;      // nonzero invariant factors d1 | d2 | ...
    std::size_t rank = 0;
    // transforms: U * A * V = S (row-major dense, only kept when requested)
    std::vector<std::vector<BigInt>> U, V;
    bool with_transforms = false;
};

SnfResult smith_normal_form(const SparseMat& a, bool with_transforms = false);
// Straightforward dense elimination without pivot-size heuristics (oracle).
SnfResult smith_normal_form_naive(const SparseMat& a);

std::size_t rank_mod_p(const SparseMat& a, std::int64_t p);

// Solve delta * xi = phi over the ring; returns xi if solvable.
std::optional<std::vector<BigInt>> solve_integral(const SparseMat& a, const std::vector<std::int64_t>& rhs);
bool solvable_rational(const SparseMat& a, const std::vector<std::int64_t>& rhs);
bool solvable_mod_p(const SparseMat& a, const std::vector<std::int64_t>& rhs, std::int64_t p);

struct CohomologyResult {
    std::vector<int> degrees;
    std::vector<std::int64_t> betti;                    // per degree
    std::vector<std::vector<std::int64_t>> torsion;     // per degree, invariant factors > 1 (Z only)
    bool top_degree_truncated = false;  // requested degree == dim_cap (no headroom)
};

CohomologyResult cohomology(const SimplicialComplex& cx, const Ring& ring,
                            const std::vector<int>& degrees,
                            const SubcomplexHandle* relative_to = nullptr);

// Cocycle representatives of H^q generators (kernel basis vectors surviving exactness test).
struct CocycleBasis {
    std::vector<std::vector<std::int64_t>> cocycles;  // coords in kept q-simplex basis
};
CocycleBasis cohomology_generators(const SimplicialComplex& cx, int q, const RelativeBasis& basis);

struct RestrictionReport {
    std::size_t generators = 0;
    std::vector<bool> vanishes;         // per generator, in the target
    std::vector<bool> restricted_closed;  // restricted cochain still a cocycle
};

// Restrict generators of H^q(cx_S rel) to cx_R (R <= S) and decide vanishing.
RestrictionReport restriction_map(const SimplicialComplex& cx_S, const SimplicialComplex& cx_R,
                                  const Ring& ring, int degree,
                                  const SubcomplexHandle* rel_S, const SubcomplexHandle* rel_R);

struct UniformTrivialityProbe {
    int degree = 0, inner_scale = 0, outer_scale = 0;
    Dist r = 0, s = 0;
    std::size_t generators = 0;
    std::vector<bool> vanishes;
    bool all_vanish = true;
};

UniformTrivialityProbe uniform_triviality_probe(const FiniteMetricSpace& space, int k, Dist n,
                                                Dist N, Dist r, Dist s, int dim_cap = 3);

struct StabilizationCell {
    Dist T, R;
    std::vector<std::int64_t> betti;
};

struct StabilizationReport {
    std::vector<Dist> truncations, scales;
    std::vector<int> degrees;
    std::vector<StabilizationCell> cells;
    std::string verdict;       // Stable | Unstable (table constant on top-right 2x2 corner)
    bool pattern_stable = false;  // nonzero pattern constant on the corner
    int top_nonzero_degree = -1;  // within the corner cells (-1 if all zero)
};

StabilizationReport coarse_cohomology_report(
    const std::vector<std::pair<Dist, FiniteMetricSpace>>& family,  // (T, box space)
    const std::vector<Dist>& scales, const std::vector<int>& degrees, Dist collar, int dim_cap);

}  // namespace coarse
