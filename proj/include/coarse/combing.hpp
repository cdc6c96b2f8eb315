#pragma once
#include <memory>
#include <string>
#include <vector>

#include "coarse/metric_space.hpp"

namespace coarse {

// H: X x N -> X as an explicit table on a finite truncation.
struct Combing {
    std::shared_ptr<const FiniteMetricSpace> space;
    PointId base = 0;
    int horizon = 0;
    std::vector<std::vector<PointId>> table;  // table[x][n], n <= horizon
    std::vector<int> settle;                  // least n with H[x][m] = x for m >= n

    PointId H(PointId x, int n) const {
        const auto& row = table[x];
        return row[static_cast<std::size_t>(n) < row.size() ? n : row.size() - 1];
    }
    Dist d(PointId a, PointId b) const { return space->d(a, b); }

    // invariants: H[x][0]=p, H[p][n]=p, H[x][n]=x for n >= settle[x].
    void validate() const;
};

Combing geodesic_combing(std::shared_ptr<const FiniteMetricSpace> s);
Combing bresenham_combing(std::shared_ptr<const FiniteMetricSpace> s);
Combing product_combing(const Combing& a, const Combing& b, Dist radius_cap);
Combing nonproper_example(int T);   // on segment_space(T), horizon 2T
Combing noncoherent_example(int T); // on segment_space(T)

enum class NormalForm { ShortlexLattice, ReducedWord };
Combing normal_form_combing(std::shared_ptr<const FiniteMetricSpace> s, NormalForm nf);

}  // namespace coarse
