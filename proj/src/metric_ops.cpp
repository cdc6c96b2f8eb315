#include <algorithm>
#include <numeric>

#include "coarse/metric_space.hpp"

namespace coarse {

std::vector<std::vector<Dist>> chain_metric(
    std::size_t n, const std::function<Dist(std::size_t, std::size_t)>& bound) {
    std::vector<std::vector<Dist>> d(n, std::vector<Dist>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Dist v = i == j ? 0 : bound(i, j);
            if (v < 0) throw std::runtime_error("chain_metric: negative bound");
            d[i][j] = std::min(v, DIST_INF);
        }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (d[i][j] != d[j][i]) throw std::runtime_error("chain_metric: bound not symmetric");
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i) {
            const Dist dik = d[i][k];
            if (dik >= DIST_INF) continue;
            for (std::size_t j = 0; j < n; ++j) {
                Dist via = dik + d[k][j];
                if (via < d[i][j]) d[i][j] = via;
            }
        }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (d[i][j] >= DIST_INF) {
                // name the two components for the error message
                throw std::runtime_error("chain_metric: disconnected (points " + std::to_string(i) +
                                         " and " + std::to_string(j) + " in different components)");
            }
    return d;
}

AsdimEstimate estimate_asdim_upper(const FiniteMetricSpace& s, const std::vector<Dist>& scales) {
    for (std::size_t i = 1; i < scales.size(); ++i)
        if (scales[i] <= scales[i - 1]) throw std::runtime_error("asdim scales must increase");
    AsdimEstimate est;
    est.scales = scales;
    const std::size_t n = s.size();
    for (Dist r : scales) {
        if (r <= 0) throw std::runtime_error("asdim scale must be positive");
        // greedy cover by radius-r balls, centers in lexicographic PointId order
        std::vector<char> covered(n, 0);
        std::vector<PointId> centers;
        for (PointId x = 0; x < n; ++x) {
            if (covered[x]) continue;
            centers.push_back(x);
            for (PointId y = 0; y < n; ++y)
                if (!covered[y] && s.d(x, y) <= r) covered[y] = 1;
        }
        int mult = 0;
        for (PointId y = 0; y < n; ++y) {
            int m = 0;
            for (PointId c : centers)
                if (s.d(c, y) <= r) ++m;
            mult = std::max(mult, m);
        }
        est.nerve_dims.push_back(mult > 0 ? mult - 1 : 0);
    }
    est.upper_bound = est.nerve_dims.empty()
                          ? 0
                          : *std::max_element(est.nerve_dims.begin(), est.nerve_dims.end());
    return est;
}

}  // namespace coarse
