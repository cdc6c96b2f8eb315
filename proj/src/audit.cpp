#include "coarse/audit.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace coarse {

Dist eval_witness(const Combing& c, const Witness& w) {
    const auto& s = *c.space;
    auto pt = [&](std::size_t i) { return w.points.at(i); };
    auto st = [&](std::size_t i) { return w.stages.at(i); };
    if (w.kind == "step") return s.d(c.H(pt(0), st(0) + 1), c.H(pt(0), st(0)));
    if (w.kind == "fellow" || w.kind == "expanding" || w.kind == "gromov")
        return s.d(c.H(pt(0), st(0)), c.H(pt(1), st(0)));
    if (w.kind == "proper") return s.d(pt(0), c.base);
    if (w.kind == "coherent") return s.d(c.H(c.H(pt(0), st(1)), st(0)), c.H(pt(0), st(0)));
    if (w.kind == "path_gap") return s.d(c.H(pt(0), st(0)), c.H(pt(0), st(1)));
    throw std::runtime_error("unknown witness kind: " + w.kind);
}

namespace {

// points with d(x,p) <= truncation_radius - collar
std::vector<PointId> interior(const Combing& c, Dist collar) {
    const auto& s = *c.space;
    std::vector<PointId> out;
    for (PointId x = 0; x < s.size(); ++x)
        if (s.d(x, c.base) <= s.truncation_radius - collar) out.push_back(x);
    return out;
}

}  // namespace

AuditReport audit_controlled(const Combing& c, std::vector<Dist> fellow_radii,
                             std::optional<Dist> collar_opt) {
    const auto& s = *c.space;
    if (fellow_radii.empty()) fellow_radii = {1 * s.scale, 2 * s.scale, 3 * s.scale};
    Dist collar = collar_opt.value_or(*std::max_element(fellow_radii.begin(), fellow_radii.end()));
    AuditReport r;
    r.property = "Controlled";
    r.collar_excluded = collar;
    auto pts = interior(c, collar);

    Witness best_step;
    Dist best_step_d = -1;
    for (int n = 0; n < c.horizon; ++n) {
        Dist mx = 0;
        PointId arg = c.base;
        for (PointId x : pts) {
            Dist v = s.d(c.H(x, n + 1), c.H(x, n));
            if (v > mx) {
                mx = v;
                arg = x;
            }
        }
        r.step_table.emplace_back(n, mx);
        if (mx > best_step_d) {
            best_step_d = mx;
            best_step = Witness{"step", {arg}, {n}, mx};
        }
    }
    if (best_step_d >= 0) r.witnesses.push_back(best_step);

    for (Dist rr : fellow_radii) {
        Dist mx = 0;
        Witness w{"fellow", {c.base, c.base}, {0}, 0};
        for (PointId x : pts)
            for (PointId y : pts) {
                if (y >= x || s.d(x, y) > rr) continue;
                for (int n = 0; n <= c.horizon; ++n) {
                    Dist v = s.d(c.H(x, n), c.H(y, n));
                    if (v > mx) {
                        mx = v;
                        w = Witness{"fellow", {y, x}, {n}, v};
                    }
                }
            }
        r.fellow_table.emplace_back(rr, mx);
        r.witnesses.push_back(w);
    }
    r.verdict = "SupportedAtScale";
    r.note = "finite-scale constants; bounded by construction on a truncation";
    return r;
}

AuditReport audit_proper(const Combing& c, Dist k_radius, std::optional<Dist> collar_opt) {
    const auto& s = *c.space;
    Dist collar = collar_opt.value_or(k_radius);
    AuditReport r;
    r.property = "Proper";
    r.collar_excluded = collar;
    if (c.horizon < k_radius / s.scale) {
        r.verdict = "Inconclusive";
        r.note = "horizon too small to evaluate (horizon < K_radius)";
        return r;
    }
    Dist max_avail = 0;
    for (PointId x = 0; x < s.size(); ++x) max_avail = std::max(max_avail, s.d(x, c.base));

    // stages beyond the truncation radius only see settled points (cut artifact)
    const int n_max =
        std::min<int>(c.horizon, static_cast<int>(s.truncation_radius / s.scale));
    bool pinned = true;
    for (int n = 0; n <= n_max; ++n) {
        Dist m = 0;
        PointId arg = c.base;
        for (PointId x = 0; x < s.size(); ++x) {
            if (s.d(c.H(x, n), c.base) > k_radius) continue;  // not in preimage of K
            Dist v = s.d(x, c.base);
            if (v > m) {
                m = v;
                arg = x;
            }
        }
        r.m_table.emplace_back(n, m);
        r.witnesses.push_back(Witness{"proper", {arg}, {n}, m});
        if (m != max_avail) pinned = false;
    }
    if (pinned) {
        r.verdict = "RefutedAtScale";
        r.note = "preimage of K pinned to the truncation boundary for every audited stage";
        return r;
    }
    // supported: m(n) eventually constant with value below truncation - collar
    Dist tail_val = r.m_table.back().second;
    int stable_from = n_max;
    while (stable_from > 0 && r.m_table[stable_from - 1].second == tail_val) --stable_from;
    if (stable_from < n_max && tail_val < s.truncation_radius - collar) {
        r.verdict = "SupportedAtScale";
        r.note = "m(n) constant from n = " + std::to_string(stable_from);
    } else {
        r.verdict = "Inconclusive";
        r.note = "m(n) neither pinned nor stabilized below the collar";
    }
    return r;
}

namespace {

// exact-rational least-squares slope of (x_i, y_i); returns slope > thresh_num/thresh_den
bool slope_exceeds(const std::vector<std::pair<Dist, Dist>>& pts, std::int64_t tn, std::int64_t td) {
    const std::int64_t n = static_cast<std::int64_t>(pts.size());
    if (n < 2) return false;
    __int128 sx = 0, sy = 0, sxy = 0, sxx = 0;
    for (auto [x, y] : pts) {
        sx += x;
        sy += y;
        sxy += static_cast<__int128>(x) * y;
        sxx += static_cast<__int128>(x) * x;
    }
    __int128 num = static_cast<__int128>(n) * sxy - sx * sy;   // slope numerator
    __int128 den = static_cast<__int128>(n) * sxx - sx * sx;   // slope denominator (>= 0)
    if (den == 0) return false;
    return num * td > static_cast<__int128>(tn) * den;
}

}  // namespace

AuditReport audit_coherent(const Combing& c, std::optional<Dist> collar_opt) {
    const auto& s = *c.space;
    Dist collar = collar_opt.value_or(0);
    AuditReport r;
    r.property = "Coherent";
    r.collar_excluded = collar;

    const Dist rho_max = s.truncation_radius - collar;
    // per-point max gap and its witness, scanning x asc, n asc, m asc
    std::vector<Dist> rho_of(s.size());
    std::vector<std::pair<Dist, Dist>> prefix;  // (rho, coh(rho)) for the envelope fit
    for (PointId x = 0; x < s.size(); ++x) rho_of[x] = s.d(x, c.base);

    // coh(rho) = max over d(x,p) <= rho; build per-radius maxima then prefix-max
    std::map<Dist, std::pair<Dist, Witness>> at_radius;
    for (PointId x = 0; x < s.size(); ++x) {
        if (rho_of[x] > rho_max) continue;
        Dist mx = -1;
        Witness w;
        for (int n = 0; n <= c.horizon; ++n) {
            PointId hn = c.H(x, n);
            for (int m = 0; m <= n; ++m) {
                Dist v = s.d(c.H(hn, m), c.H(x, m));
                if (v > mx) {
                    mx = v;
                    w = Witness{"coherent", {x}, {m, n}, v};
                }
            }
        }
        auto it = at_radius.find(rho_of[x]);
        if (it == at_radius.end() || mx > it->second.first) at_radius[rho_of[x]] = {mx, w};
    }
    Dist run = 0;
    for (auto& [rho, pr] : at_radius) {
        run = std::max(run, pr.first);
        r.coh_table.emplace_back(rho, run);
        r.witnesses.push_back(pr.second);
        prefix.emplace_back(rho, run);
    }
    // verdict: constant on the upper half of radii -> supported; envelope slope > 0.2 -> refuted
    bool constant_tail = true;
    if (!r.coh_table.empty()) {
        std::size_t half = r.coh_table.size() / 2;
        for (std::size_t i = half; i < r.coh_table.size(); ++i)
            constant_tail = constant_tail && r.coh_table[i].second == r.coh_table[half].second;
    }
    if (constant_tail) {
        r.verdict = "SupportedAtScale";
        r.note = "coh(rho) constant on the upper half of tested radii";
    } else if (slope_exceeds(prefix, 1, 5)) {  // slope > 0.2
        r.verdict = "RefutedAtScale";
        r.note = "coh(rho) upper envelope grows with fitted slope > 0.2";
    } else {
        r.verdict = "Inconclusive";
        r.note = "coh(rho) neither constant on the tail nor clearly growing";
    }
    return r;
}

AuditReport audit_expanding(const Combing& c, const std::vector<Dist>& r_list,
                            const std::vector<int>& n_list, std::optional<Dist> collar_opt,
                            std::optional<Dist> tolerance_opt) {
    if (r_list.empty() || n_list.empty())
        throw std::runtime_error("audit_expanding: r_list and n_list must be nonempty");
    const auto& s = *c.space;
    Dist collar = collar_opt.value_or(*std::max_element(r_list.begin(), r_list.end()) +
                                      static_cast<Dist>(*std::max_element(n_list.begin(),
                                                                          n_list.end())) *
                                          s.scale);
    Dist tol = tolerance_opt.value_or(2 * s.scale);
    AuditReport r;
    r.property = "Expanding";
    r.collar_excluded = collar;
    const Dist rho_hi = s.truncation_radius - collar;
    if (rho_hi < 0) {
        r.verdict = "Inconclusive";
        r.note = "grid empty after collar exclusion";
        return r;
    }
    // rho grid: multiples of scale, 0..rho_hi
    std::vector<Dist> rho_grid;
    for (Dist v = 0; v <= rho_hi; v += s.scale) rho_grid.push_back(v);

    std::vector<Dist> norm(s.size());
    for (PointId x = 0; x < s.size(); ++x) norm[x] = s.d(x, c.base);

    std::map<std::pair<Dist, int>, Dist> tail1, tail2;
    for (Dist rr : r_list) {
        for (int n : n_list) {
            // g(x) = max_{y in B_r(x)} d(H_n x, H_n y), x within the audited region
            std::vector<Dist> best_at(rho_grid.size(), 0);
            std::vector<Witness> wit_at(rho_grid.size());
            for (PointId x = 0; x < s.size(); ++x) {
                if (norm[x] > rho_hi) continue;
                Dist g = 0;
                PointId arg = x;
                for (PointId y = 0; y < s.size(); ++y) {
                    if (s.d(x, y) > rr) continue;
                    Dist v = s.d(c.H(x, n), c.H(y, n));
                    if (v > g) {
                        g = v;
                        arg = y;
                    }
                }
                std::size_t bucket = static_cast<std::size_t>(norm[x] / s.scale);
                if (g > best_at[bucket]) {
                    best_at[bucket] = g;
                    wit_at[bucket] = Witness{"expanding", {x, arg}, {n}, g};
                }
            }
            // suffix max: f(r,n,rho) = max over norm >= rho
            Witness cur_w = wit_at.back();
            Dist cur = 0;
            std::vector<Dist> f(rho_grid.size(), 0);
            std::vector<Witness> fw(rho_grid.size());
            for (std::size_t i = rho_grid.size(); i-- > 0;) {
                if (best_at[i] > cur || (best_at[i] == cur && !wit_at[i].points.empty())) {
                    cur = best_at[i];
                    if (!wit_at[i].points.empty()) cur_w = wit_at[i];
                }
                f[i] = cur;
                fw[i] = cur_w;
            }
            for (std::size_t i = 0; i < rho_grid.size(); ++i)
                r.f_table.push_back(ExpCell{rr, n, rho_grid[i], f[i]});
            std::size_t L = rho_grid.size();
            Dist t1 = f[L - 1], t2 = L >= 2 ? f[L - 2] : f[L - 1];
            tail1[{rr, n}] = t1;
            tail2[{rr, n}] = t2;
            if (!fw[L - 1].points.empty()) r.witnesses.push_back(fw[L - 1]);
        }
    }
    // tail(r) = max over n of max(last, second-last)
    std::map<Dist, Dist> tail_r;
    for (Dist rr : r_list) {
        Dist t = 0;
        for (int n : n_list) t = std::max({t, tail1[{rr, n}], tail2[{rr, n}]});
        tail_r[rr] = t;
    }
    Dist tmin = tail_r.begin()->second, tmax = tail_r.begin()->second;
    for (auto& [rr, t] : tail_r) {
        tmin = std::min(tmin, t);
        tmax = std::max(tmax, t);
    }
    if (tmax - tmin <= tol) {
        r.verdict = "SupportedAtScale";
        r.note = "large-rho tails coincide across r within tolerance " + std::to_string(tol);
    } else {
        bool refuted = true;
        for (auto& [rr, t] : tail_r) refuted = refuted && t >= rr - 2 * s.scale;
        if (refuted) {
            r.verdict = "RefutedAtScale";
            r.note = "large-rho tail grows with r: tail(r) >= r - 2*scale for every tested r";
        } else {
            r.verdict = "Inconclusive";
            r.note = "tails neither coincide nor grow linearly across tested r";
        }
    }
    return r;
}

QuasiGeodesicParams audit_quasi_geodesic(const Combing& c) {
    const auto& s = *c.space;
    struct Cand {
        std::int64_t num, den;
    };
    const std::vector<Cand> lambdas{{1, 1}, {3, 2}, {2, 1}, {3, 1}};
    QuasiGeodesicParams out;
    for (const auto& lam : lambdas) {
        for (Dist k = 0; k <= 8 * s.scale; k += s.scale) {
            bool ok = true;
            Witness viol;
            for (PointId x = 0; x < s.size() && ok; ++x) {
                int L = c.settle[x];
                for (int t = 0; t <= L && ok; ++t)
                    for (int u = 0; u < t; ++u) {
                        Dist gap = s.d(c.H(x, t), c.H(x, u));
                        Dist len = static_cast<Dist>(t - u) * s.scale;
                        // lambda^-1 * len - k <= gap <= lambda * len + k, exact in rationals
                        bool upper = gap * lam.den <= lam.num * len + k * lam.den;
                        bool lower = len * lam.den <= lam.num * (gap + k);
                        if (!upper || !lower) {
                            ok = false;
                            viol = Witness{"path_gap", {x}, {t, u}, gap};
                            break;
                        }
                    }
            }
            if (ok) {
                out.found = true;
                out.lambda_num = lam.num;
                out.lambda_den = lam.den;
                out.k = k;
                return out;
            }
            if (lam.num == lambdas.back().num && k == 8 * s.scale) out.violations.push_back(viol);
        }
    }
    return out;
}

GromovFellowReport check_gromov_fellow(const Combing& c, Dist delta, std::size_t sample_budget,
                                       std::uint64_t seed) {
    const auto& s = *c.space;
    GromovFellowReport rep;
    rep.delta = delta;
    auto check_pair = [&](PointId x, PointId y) {
        ++rep.pairs_checked;
        HalfInt gp = gromov_product(s, x, y);
        // n <= (x|y) - delta  <=>  2*n*scale <= gp.twice - 2*delta
        std::int64_t bound = gp.twice - 2 * delta;
        for (int n = 0; n <= c.horizon; ++n) {
            if (static_cast<std::int64_t>(n) * 2 * s.scale > bound) break;
            Dist v = s.d(c.H(x, n), c.H(y, n));
            if (v > 2 * delta && rep.failures.size() < 50)
                rep.failures.push_back(Witness{"gromov", {x, y}, {n}, v});
        }
    };
    const std::size_t n = s.size();
    if (n * (n - 1) / 2 <= sample_budget) {
        for (PointId x = 0; x < n; ++x)
            for (PointId y = 0; y < x; ++y) check_pair(y, x);
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<PointId> pick(0, static_cast<PointId>(n - 1));
        for (std::size_t i = 0; i < sample_budget; ++i) {
            PointId x = pick(rng), y = pick(rng);
            if (x != y) check_pair(std::min(x, y), std::max(x, y));
        }
    }
    rep.pass = rep.failures.empty();
    return rep;
}

}  // namespace coarse
