#pragma once
#include <memory>
#include <utility>
#include <vector>

#include "coarse/combing.hpp"
#include "coarse/metric_space.hpp"

namespace coarse {

struct ConeSpec {
    FiniteMetricSpace base;    // scale must be 1
    std::vector<Dist> phi;     // value per height-grid step (index t/resolution), monotone, > 0
    Dist height_max = 0;       // T
    Dist resolution = 1;       // grid spacing Delta
};

struct WarpSpec {
    ConeSpec cone;  // phi must be the identity table
    std::vector<std::vector<PointId>> action;  // generator permutations of base points
};

// Points: apex + (base point, height) for heights Delta..T; metric = chain
// metric of |t-s| + phi(min(s,t))*d_B(x,y); combing H_n(x,t) = (x, min(n*Delta, t)).
std::pair<std::shared_ptr<FiniteMetricSpace>, Combing> open_cone(const ConeSpec& spec);

// Same, with extra weight-1 edges (x,t) <-> (g.x, t).
std::pair<std::shared_ptr<FiniteMetricSpace>, Combing> warped_cone(const WarpSpec& spec);

}  // namespace coarse
