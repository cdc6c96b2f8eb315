#include "coarse/cones.hpp"

#include <algorithm>

namespace coarse {

namespace {

struct ConePoints {
    // id 0 = apex; then (base b, height t = (k+1)*Delta) in row-major height order
    std::size_t n_base = 0;
    Dist T = 0, delta = 1;
    std::size_t heights = 0;  // number of positive grid heights

    std::size_t total() const { return 1 + n_base * heights; }
    PointId id(std::size_t b, std::size_t hk) const {  // hk in [0, heights)
        return static_cast<PointId>(1 + hk * n_base + b);
    }
    // (base, height index) of a non-apex id
    std::pair<std::size_t, std::size_t> coords(PointId v) const {
        std::size_t k = v - 1;
        return {k % n_base, k / n_base};
    }
    Dist height(PointId v) const {
        return v == 0 ? 0 : static_cast<Dist>(coords(v).second + 1) * delta;
    }
};

std::pair<std::shared_ptr<FiniteMetricSpace>, Combing> build_cone(
    const ConeSpec& spec, const std::vector<std::vector<PointId>>* action) {
    if (spec.base.size() == 0) throw std::runtime_error("cone base is empty");
    if (spec.base.scale != 1) throw std::runtime_error("cone base must have scale 1");
    if (spec.resolution < 1) throw std::runtime_error("cone resolution must be >= 1");
    if (spec.height_max < spec.resolution) throw std::runtime_error("cone height_max < resolution");
    ConePoints cp;
    cp.n_base = spec.base.size();
    cp.T = spec.height_max;
    cp.delta = spec.resolution;
    cp.heights = static_cast<std::size_t>(spec.height_max / spec.resolution);
    if (spec.phi.size() < cp.heights + 1)
        throw std::runtime_error("phi table too short for the height grid");
    // phi[0] is only ever applied against the apex (base distance 0), so it may be 0
    for (std::size_t i = 1; i < spec.phi.size(); ++i) {
        if (spec.phi[i] <= 0) throw std::runtime_error("phi must be positive");
        if (i + 1 < spec.phi.size() && spec.phi[i] > spec.phi[i + 1])
            throw std::runtime_error("phi must be non-decreasing");
    }
    const std::size_t n = cp.total();
    if (n > global_budget().points) throw budget_error("cone exceeds point budget");

    auto bound = [&](std::size_t i, std::size_t j) -> Dist {
        PointId a = static_cast<PointId>(i), b = static_cast<PointId>(j);
        Dist ta = cp.height(a), tb = cp.height(b);
        Dist base_d = 0;
        if (a != 0 && b != 0) {
            auto [xa, ha] = cp.coords(a);
            auto [xb, hb] = cp.coords(b);
            (void)ha;
            (void)hb;
            base_d = spec.base.d(static_cast<PointId>(xa), static_cast<PointId>(xb));
        }
        Dist lo = std::min(ta, tb);
        Dist phi_lo = spec.phi[static_cast<std::size_t>(lo / cp.delta)];
        Dist v = std::llabs(ta - tb) + phi_lo * base_d;
        if (action && a != 0 && b != 0 && ta == tb) {
            auto [xa, ha] = cp.coords(a);
            auto [xb, hb] = cp.coords(b);
            (void)ha;
            (void)hb;
            for (const auto& perm : *action)
                if (perm[xa] == xb || perm[xb] == xa) v = std::min<Dist>(v, 1);
        }
        return v;
    };
    auto mat = chain_metric(n, bound);
    Dist trunc = 0;
    for (std::size_t i = 0; i < n; ++i) trunc = std::max(trunc, mat[0][i]);
    auto space = std::make_shared<FiniteMetricSpace>(
        FiniteMetricSpace::from_matrix(mat, 1, 0, trunc));
    space->labels[0] = "apex";
    space->cone_coords.resize(n, {-1, 0});
    for (PointId v = 1; v < n; ++v) {
        auto [b, hk] = cp.coords(v);
        Dist t = static_cast<Dist>(hk + 1) * cp.delta;
        space->labels[v] = "(" + std::to_string(b) + "," + std::to_string(t) + ")";
        space->cone_coords[v] = {static_cast<std::int32_t>(b), t};
    }

    // canonical combing H_n(x,t) = (x, min(n*Delta, t))
    Combing c;
    c.space = space;
    c.base = 0;
    c.table.resize(n);
    c.settle.resize(n);
    int horizon = static_cast<int>(cp.heights);
    c.horizon = horizon;
    c.table[0].assign(1, 0);
    c.settle[0] = 0;
    for (PointId v = 1; v < n; ++v) {
        auto [b, hk] = cp.coords(v);
        std::vector<PointId> row;
        row.push_back(0);  // stage 0: apex
        for (std::size_t m = 0; m <= hk; ++m) row.push_back(cp.id(b, m));
        c.settle[v] = static_cast<int>(hk) + 1;
        c.table[v] = std::move(row);
    }
    return {space, c};
}

}  // namespace

std::pair<std::shared_ptr<FiniteMetricSpace>, Combing> open_cone(const ConeSpec& spec) {
    return build_cone(spec, nullptr);
}

std::pair<std::shared_ptr<FiniteMetricSpace>, Combing> warped_cone(const WarpSpec& spec) {
    for (std::size_t k = 1; k < spec.cone.phi.size(); ++k)
        if (spec.cone.phi[k] != static_cast<Dist>(k) * spec.cone.resolution)
            throw std::runtime_error("warped cone requires phi = identity");
    for (const auto& perm : spec.action) {
        if (perm.size() != spec.cone.base.size())
            throw std::runtime_error("action permutation size mismatch");
        std::vector<char> seen(perm.size(), 0);
        for (PointId v : perm) {
            if (v >= perm.size() || seen[v]) throw std::runtime_error("action is not a permutation");
            seen[v] = 1;
        }
    }
    return build_cone(spec.cone, &spec.action);
}

}  // namespace coarse
