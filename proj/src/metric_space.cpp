#include "coarse/metric_space.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <queue>
#include <random>

namespace coarse {

Budget& global_budget() {
    static Budget b = [] {
        Budget init;
        if (const char* env = std::getenv("COARSE_LAB_BUDGET_POINTS")) {
            char* end = nullptr;
            long long v = std::strtoll(env, &end, 10);
            if (end && *end == '\0' && v > 0) init.points = static_cast<std::size_t>(v);
        }
        return init;
    }();
    return b;
}

static void check_budgets(std::size_t n) {
    const Budget& b = global_budget();
    if (n > b.points)
        throw budget_error("point budget exceeded: " + std::to_string(n) + " > " +
                           std::to_string(b.points) + " (budget 'points', override with "
                           "COARSE_LAB_BUDGET_POINTS or config)");
    if (n * n > b.matrix_cells)
        throw budget_error("distance matrix budget exceeded: " + std::to_string(n) + "^2 cells > " +
                           std::to_string(b.matrix_cells) + " (budget 'matrix_cells')");
}

FiniteMetricSpace FiniteMetricSpace::from_triangular(std::vector<std::uint16_t> tri, std::size_t n,
                                                     std::int64_t scale, std::optional<PointId> base,
                                                     Dist truncation_radius) {
    check_budgets(n);
    if (tri.size() != n * (n - 1) / 2) throw std::runtime_error("triangular size mismatch");
    FiniteMetricSpace s;
    s.n_ = n;
    s.scale = scale;
    s.unit_ = 1;
    s.base_point = base;
    s.truncation_radius = truncation_radius;
    s.tri_ = std::move(tri);
    s.labels.resize(n);
    return s;
}

FiniteMetricSpace FiniteMetricSpace::from_graph(const std::vector<std::vector<PointId>>& adj,
                                                std::int64_t scale, std::optional<PointId> base,
                                                Dist truncation_radius) {
    const std::size_t n = adj.size();
    check_budgets(n);
    FiniteMetricSpace s;
    s.n_ = n;
    s.scale = scale;
    s.unit_ = scale;  // stored entries are hop counts
    s.base_point = base;
    s.truncation_radius = truncation_radius;
    s.labels.resize(n);
    s.tri_.assign(n * (n - 1) / 2, 0);

    std::vector<std::int32_t> dist(n);
    std::vector<PointId> queue(n);
    for (PointId src = 0; src < n; ++src) {
        std::fill(dist.begin(), dist.end(), -1);
        std::size_t head = 0, tail = 0;
        dist[src] = 0;
        queue[tail++] = src;
        while (head < tail) {
            PointId u = queue[head++];
            for (PointId v : adj[u])
                if (dist[v] < 0) {
                    dist[v] = dist[u] + 1;
                    queue[tail++] = v;
                }
        }
        for (PointId v = 0; v < src; ++v) {
            if (dist[v] < 0) throw std::runtime_error("graph space disconnected");
            if (dist[v] > 65535) throw std::runtime_error("distance exceeds uint16 storage");
            s.tri_[static_cast<std::size_t>(src) * (src - 1) / 2 + v] =
                static_cast<std::uint16_t>(dist[v]);
        }
    }
    return s;
}

FiniteMetricSpace FiniteMetricSpace::from_matrix(const std::vector<std::vector<Dist>>& m,
                                                 std::int64_t scale, std::optional<PointId> base,
                                                 Dist truncation_radius) {
    const std::size_t n = m.size();
    check_budgets(n);
    FiniteMetricSpace s;
    s.n_ = n;
    s.scale = scale;
    s.unit_ = 1;
    s.base_point = base;
    s.truncation_radius = truncation_radius;
    s.labels.resize(n);
    s.tri_.assign(n * (n - 1) / 2, 0);
    for (std::size_t a = 1; a < n; ++a)
        for (std::size_t b = 0; b < a; ++b) {
            Dist v = m[a][b];
            if (v != m[b][a]) throw std::runtime_error("matrix not symmetric");
            if (v < 0 || v > 65535) throw std::runtime_error("distance out of uint16 storage range");
            s.tri_[a * (a - 1) / 2 + b] = static_cast<std::uint16_t>(v);
        }
    return s;
}

void FiniteMetricSpace::check_metric_axioms(std::size_t exhaustive_limit) const {
    for (PointId a = 0; a < n_; ++a)
        for (PointId b = 0; b < a; ++b)
            if (d(a, b) <= 0) throw std::runtime_error("zero/negative distance between distinct points");
    auto check_triple = [&](PointId x, PointId y, PointId z) {
        if (d(x, z) > d(x, y) + d(y, z)) throw std::runtime_error("triangle inequality violated");
    };
    if (n_ <= exhaustive_limit) {
        for (PointId x = 0; x < n_; ++x)
            for (PointId y = 0; y < n_; ++y)
                for (PointId z = 0; z < n_; ++z) check_triple(x, y, z);
    } else {
        std::mt19937_64 rng(7);
        std::uniform_int_distribution<PointId> pick(0, static_cast<PointId>(n_ - 1));
        for (int i = 0; i < 200000; ++i) check_triple(pick(rng), pick(rng), pick(rng));
    }
}

const std::vector<std::vector<PointId>>& FiniteMetricSpace::unit_graph() const {
    if (unit_graph_.empty() && n_ > 0) {
        unit_graph_.assign(n_, {});
        for (PointId a = 0; a < n_; ++a)
            for (PointId b = 0; b < a; ++b)
                if (d(a, b) == scale) {
                    unit_graph_[a].push_back(b);
                    unit_graph_[b].push_back(a);
                }
        for (auto& nb : unit_graph_) std::sort(nb.begin(), nb.end());
    }
    return unit_graph_;
}

std::vector<PointId> ball(const FiniteMetricSpace& s, PointId center, Dist r) {
    std::vector<PointId> out;
    for (PointId x = 0; x < s.size(); ++x)
        if (s.d(x, center) <= r) out.push_back(x);
    return out;
}

std::vector<PointId> annulus(const FiniteMetricSpace& s, PointId center, Dist r_lo, Dist r_hi) {
    std::vector<PointId> out;
    for (PointId x = 0; x < s.size(); ++x) {
        Dist v = s.d(x, center);
        if (v >= r_lo && v <= r_hi) out.push_back(x);
    }
    return out;
}

HalfInt gromov_product(const FiniteMetricSpace& s, PointId x, PointId y) {
    if (!s.base_point) throw std::runtime_error("gromov_product: base point not set");
    PointId p = *s.base_point;
    return HalfInt{s.d(x, p) + s.d(y, p) - s.d(x, y)};
}

// four-point condition defect: for a quadruple, sort the three pairing sums
// d(x,y)+d(z,w), d(x,z)+d(y,w), d(x,w)+d(y,z); defect = (largest - middle)/2.
static std::int64_t quad_defect(const FiniteMetricSpace& s, PointId a, PointId b, PointId c,
                                PointId e) {
    Dist s1 = s.d(a, b) + s.d(c, e);
    Dist s2 = s.d(a, c) + s.d(b, e);
    Dist s3 = s.d(a, e) + s.d(b, c);
    Dist hi = std::max({s1, s2, s3});
    Dist mid = s1 + s2 + s3 - hi - std::min({s1, s2, s3});
    return hi - mid;  // twice the defect
}

HalfInt estimate_hyperbolicity(const FiniteMetricSpace& s, std::size_t sample_budget,
                               std::uint64_t seed) {
    const std::size_t n = s.size();
    if (n < 4) return HalfInt{0};
    std::int64_t worst = 0;
    // deterministic coarse subsample: every k-th point, at most 24 points
    std::size_t stride = (n + 23) / 24;
    std::vector<PointId> sub;
    for (std::size_t i = 0; i < n; i += stride) sub.push_back(static_cast<PointId>(i));
    for (std::size_t i = 0; i < sub.size(); ++i)
        for (std::size_t j = i + 1; j < sub.size(); ++j)
            for (std::size_t k = j + 1; k < sub.size(); ++k)
                for (std::size_t l = k + 1; l < sub.size(); ++l)
                    worst = std::max(worst, quad_defect(s, sub[i], sub[j], sub[k], sub[l]));
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<PointId> pick(0, static_cast<PointId>(n - 1));
    for (std::size_t i = 0; i < sample_budget; ++i)
        worst = std::max(worst, quad_defect(s, pick(rng), pick(rng), pick(rng), pick(rng)));
    return HalfInt{worst};
}

}  // namespace coarse
