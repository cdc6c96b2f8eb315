#include "coarse/cohomology.hpp"

#include <algorithm>

namespace coarse {

RelativeBasis relative_basis(const SimplicialComplex& cx, const SubcomplexHandle* closed_excluded) {
    if (closed_excluded) {
        if (closed_excluded->parent != &cx)
            throw std::runtime_error("relative basis: subcomplex belongs to a different complex");
        if (!closed_excluded->closed)
            throw std::runtime_error("relative basis: excluded subcomplex must be closed");
    }
    RelativeBasis b;
    b.kept.resize(cx.simplices.size());
    b.position.resize(cx.simplices.size());
    for (std::size_t q = 0; q < cx.simplices.size(); ++q) {
        b.position[q].assign(cx.simplices[q].size(), -1);
        for (std::size_t i = 0; i < cx.simplices[q].size(); ++i) {
            bool excluded = closed_excluded && q < closed_excluded->flags.size() &&
                            closed_excluded->flags[q][i];
            if (!excluded) {
                b.position[q][i] = static_cast<long>(b.kept[q].size());
                b.kept[q].push_back(static_cast<long>(i));
            }
        }
    }
    return b;
}

SparseMat coboundary(const SimplicialComplex& cx, int q, const RelativeBasis& basis) {
    SparseMat m;
    if (q < 0 || q >= static_cast<int>(cx.simplices.size())) return m;
    m.cols = basis.kept[q].size();
    if (q + 1 >= static_cast<int>(cx.simplices.size())) return m;
    m.rows = basis.kept[q + 1].size();
    // (delta phi)(tau) = sum_i (-1)^i phi(tau without vertex i); faces that fall
    // into the excluded subcomplex contribute nothing to a relative cochain
    for (std::size_t r = 0; r < basis.kept[q + 1].size(); ++r) {
        const auto& tau = cx.simplices[q + 1][basis.kept[q + 1][r]];
        std::int64_t sign = 1;
        std::vector<PointId> face(tau.size() - 1);
        for (std::size_t i = 0; i < tau.size(); ++i) {
            for (std::size_t j = 0, k = 0; j < tau.size(); ++j)
                if (j != i) face[k++] = tau[j];
            long idx = cx.find(face);
            if (idx < 0) throw std::runtime_error("coboundary: complex not face-closed");
            long pos = basis.position[q][idx];
            if (pos >= 0) m.entries.emplace_back(r, static_cast<std::size_t>(pos), sign);
            sign = -sign;
        }
    }
    return m;
}

namespace {

std::size_t ring_rank(const SparseMat& a, const Ring& ring) {
    if (a.rows == 0 || a.cols == 0) return 0;
    if (ring.kind == Ring::Kind::PrimeField) return rank_mod_p(a, ring.p);
    return smith_normal_form(a).rank;
}

}  // namespace

CohomologyResult cohomology(const SimplicialComplex& cx, const Ring& ring,
                            const std::vector<int>& degrees,
                            const SubcomplexHandle* relative_to) {
    RelativeBasis basis = relative_basis(cx, relative_to);
    CohomologyResult out;
    out.degrees = degrees;
    // adjacent degrees share coboundaries; reduce each delta^q only once
    std::map<int, SnfResult> snf_cache;
    std::map<int, std::size_t> fp_rank_cache;
    auto reduce = [&](int q) -> std::pair<std::size_t, const SnfResult*> {
        SparseMat m = coboundary(cx, q, basis);
        if (m.rows == 0 || m.cols == 0) {
            auto [it, ok] = snf_cache.emplace(q, SnfResult{});
            (void)ok;
            return {0, &it->second};
        }
        if (ring.kind == Ring::Kind::PrimeField) {
            auto it = fp_rank_cache.find(q);
            if (it == fp_rank_cache.end()) it = fp_rank_cache.emplace(q, rank_mod_p(m, ring.p)).first;
            return {it->second, nullptr};
        }
        auto it = snf_cache.find(q);
        if (it == snf_cache.end()) it = snf_cache.emplace(q, smith_normal_form(m)).first;
        return {it->second.rank, &it->second};
    };
    for (int q : degrees) {
        if (q < 0) throw std::runtime_error("cohomology: negative degree");
        if (q >= cx.dim_cap) out.top_degree_truncated = true;
        std::size_t n_q = q < static_cast<int>(basis.kept.size()) ? basis.kept[q].size() : 0;
        std::size_t rank_up = reduce(q).first;
        std::size_t rank_down = 0;
        std::vector<std::int64_t> tor;
        if (q > 0) {
            auto [r, s] = reduce(q - 1);
            rank_down = r;
            if (ring.kind == Ring::Kind::Integers && s)
                for (const BigInt& d : s->diagonal)
                    if (d > 1) tor.push_back(d.convert_to<std::int64_t>());
        }
        out.betti.push_back(static_cast<std::int64_t>(n_q) - static_cast<std::int64_t>(rank_up) -
                            static_cast<std::int64_t>(rank_down));
        out.torsion.push_back(std::move(tor));
    }
    return out;
}

CocycleBasis cohomology_generators(const SimplicialComplex& cx, int q, const RelativeBasis& basis) {
    CocycleBasis out;
    if (q < 0 || q >= static_cast<int>(basis.kept.size())) return out;
    const std::size_t n_q = basis.kept[q].size();
    if (n_q == 0) return out;
    SparseMat up = coboundary(cx, q, basis);
    std::vector<std::vector<BigInt>> kernel;
    if (up.rows == 0) {
        // everything is a cocycle
        for (std::size_t i = 0; i < n_q; ++i) {
            std::vector<BigInt> e(n_q, 0);
            e[i] = 1;
            kernel.push_back(std::move(e));
        }
    } else {
        SnfResult s = smith_normal_form(up, true);
        // A x = 0  <=>  x = V y with y supported past the rank
        for (std::size_t k = s.rank; k < up.cols; ++k) {
            std::vector<BigInt> v(n_q);
            for (std::size_t i = 0; i < n_q; ++i) v[i] = s.V[i][k];
            kernel.push_back(std::move(v));
        }
    }
    // keep kernel vectors that are independent modulo the image of delta^{q-1}
    SparseMat down = coboundary(cx, q - 1, basis);
    SparseMat span;  // columns: image generators, then accepted cocycles
    span.rows = n_q;
    span.cols = q > 0 ? down.cols : 0;
    if (q > 0)
        for (auto [i, j, v] : down.entries) span.entries.emplace_back(i, j, v);
    std::size_t base_rank = ring_rank(span, Ring::Q());
    for (const auto& k : kernel) {
        SparseMat trial = span;
        trial.cols += 1;
        for (std::size_t i = 0; i < n_q; ++i)
            if (k[i] != 0) trial.entries.emplace_back(i, span.cols, k[i].convert_to<std::int64_t>());
        std::size_t r = ring_rank(trial, Ring::Q());
        if (r > base_rank) {
            base_rank = r;
            span = std::move(trial);
            std::vector<std::int64_t> coords(n_q);
            for (std::size_t i = 0; i < n_q; ++i) coords[i] = k[i].convert_to<std::int64_t>();
            out.cocycles.push_back(std::move(coords));
        }
    }
    return out;
}

RestrictionReport restriction_map(const SimplicialComplex& cx_S, const SimplicialComplex& cx_R,
                                  const Ring& ring, int degree,
                                  const SubcomplexHandle* rel_S, const SubcomplexHandle* rel_R) {
    RelativeBasis basis_S = relative_basis(cx_S, rel_S);
    RelativeBasis basis_R = relative_basis(cx_R, rel_R);
    CocycleBasis gens = cohomology_generators(cx_S, degree, basis_S);
    RestrictionReport rep;
    rep.generators = gens.cocycles.size();
    const std::size_t n_R = degree < static_cast<int>(basis_R.kept.size())
                                ? basis_R.kept[degree].size()
                                : 0;
    SparseMat up_R = coboundary(cx_R, degree, basis_R);
    SparseMat down_R = coboundary(cx_R, degree - 1, basis_R);
    for (const auto& phi : gens.cocycles) {
        // pull the cochain back along the inclusion cx_R -> cx_S
        std::vector<std::int64_t> psi(n_R, 0);
        for (std::size_t r = 0; r < n_R; ++r) {
            const auto& sim = cx_R.simplices[degree][basis_R.kept[degree][r]];
            long idx = cx_S.find(sim);
            if (idx < 0) throw std::runtime_error("restriction: target complex not contained in source");
            long pos = basis_S.position[degree][idx];
            if (pos >= 0) psi[r] = phi[static_cast<std::size_t>(pos)];
        }
        // still a cocycle on the target pair?
        std::vector<std::int64_t> dpsi(up_R.rows, 0);
        for (auto [i, j, v] : up_R.entries) dpsi[i] += v * psi[j];
        bool closed = true;
        for (std::int64_t v : dpsi)
            closed = closed && (ring.kind == Ring::Kind::PrimeField ? v % ring.p == 0 : v == 0);
        rep.restricted_closed.push_back(closed);
        if (!closed) {
            rep.vanishes.push_back(false);
            continue;
        }
        bool zero = std::all_of(psi.begin(), psi.end(), [&](std::int64_t v) {
            return ring.kind == Ring::Kind::PrimeField ? v % ring.p == 0 : v == 0;
        });
        if (zero) {
            rep.vanishes.push_back(true);
            continue;
        }
        if (degree == 0) {
            rep.vanishes.push_back(false);  // nothing below degree 0 to bound it
            continue;
        }
        bool vanish = false;
        switch (ring.kind) {
            case Ring::Kind::Integers: vanish = solve_integral(down_R, psi).has_value(); break;
            case Ring::Kind::Rationals: vanish = solvable_rational(down_R, psi); break;
            case Ring::Kind::PrimeField: vanish = solvable_mod_p(down_R, psi, ring.p); break;
        }
        rep.vanishes.push_back(vanish);
    }
    return rep;
}

UniformTrivialityProbe uniform_triviality_probe(const FiniteMetricSpace& space, int k, Dist n,
                                                Dist N, Dist r, Dist s, int dim_cap) {
    if (n > N) throw std::runtime_error("uniform triviality: need inner scale <= outer scale");
    if (r > s) throw std::runtime_error("uniform triviality: need support radius r <= s");
    PointId base = space.base_point.value_or(0);
    SimplicialComplex cx_N = rips_complex(space, N, dim_cap);
    SimplicialComplex cx_n = rips_complex(space, n, dim_cap);
    SubcomplexHandle u_N = simplicial_neighborhood(cx_N, space, {base}, r);
    SubcomplexHandle u_n = simplicial_neighborhood(cx_n, space, {base}, s);
    SubcomplexHandle rel_S = u_N.complement();
    SubcomplexHandle rel_R = u_n.complement();
    RestrictionReport rep = restriction_map(cx_N, cx_n, Ring::Z(), k, &rel_S, &rel_R);
    UniformTrivialityProbe probe;
    probe.degree = k;
    probe.inner_scale = static_cast<int>(n);
    probe.outer_scale = static_cast<int>(N);
    probe.r = r;
    probe.s = s;
    probe.generators = rep.generators;
    probe.vanishes = rep.vanishes;
    for (std::size_t i = 0; i < rep.vanishes.size(); ++i)
        probe.all_vanish = probe.all_vanish && rep.vanishes[i];
    return probe;
}

StabilizationReport coarse_cohomology_report(
    const std::vector<std::pair<Dist, FiniteMetricSpace>>& family,
    const std::vector<Dist>& scales, const std::vector<int>& degrees, Dist collar, int dim_cap) {
    if (family.empty() || scales.empty()) throw std::runtime_error("stabilization: empty grid");
    StabilizationReport rep;
    rep.scales = scales;
    rep.degrees = degrees;
    for (const auto& [T, space] : family) {
        rep.truncations.push_back(T);
        for (Dist R : scales) {
            SimplicialComplex cx = rips_complex(space, R * space.scale, dim_cap);
            // closed collar near the truncation sphere is quotiented away
            Dist cutoff = space.truncation_radius - collar * space.scale + space.scale;
            PointId base = space.base_point.value_or(0);
            std::vector<char> in_collar(space.size(), 0);
            for (PointId x = 0; x < space.size(); ++x) in_collar[x] = space.d(x, base) >= cutoff;
            SubcomplexHandle sub = closed_span(cx, in_collar);
            CohomologyResult coh = cohomology(cx, Ring::Z(), degrees, &sub);
            rep.cells.push_back({T, R, coh.betti});
        }
    }
    // stability is judged on the top-right corner of the (T, R) table
    std::size_t nt = rep.truncations.size(), nr = scales.size();
    std::size_t ct = std::min<std::size_t>(2, nt), cr = std::min<std::size_t>(2, nr);
    std::vector<const StabilizationCell*> corner;
    for (std::size_t i = nt - ct; i < nt; ++i)
        for (std::size_t j = nr - cr; j < nr; ++j) corner.push_back(&rep.cells[i * nr + j]);
    bool exact = true, pattern = true;
    for (const auto* c : corner) {
        for (std::size_t q = 0; q < degrees.size(); ++q) {
            exact = exact && c->betti[q] == corner.back()->betti[q];
            pattern = pattern && (c->betti[q] != 0) == (corner.back()->betti[q] != 0);
        }
    }
    rep.verdict = exact ? "Stable" : "Unstable";
    rep.pattern_stable = pattern;
    for (std::size_t q = 0; q < degrees.size(); ++q)
        if (corner.back()->betti[q] != 0) rep.top_nonzero_degree = std::max(rep.top_nonzero_degree, degrees[q]);
    return rep;
}

}  // namespace coarse
