#include "coarse/cohomology.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace coarse {

namespace {

using Mat = std::vector<std::vector<BigInt>>;

Mat to_dense(const SparseMat& a) {
    Mat m(a.rows, std::vector<BigInt>(a.cols, 0));
    for (auto [i, j, v] : a.entries) m[i][j] += v;
    return m;
}

Mat identity(std::size_t n) {
    Mat m(n, std::vector<BigInt>(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

void swap_rows(Mat& m, std::size_t a, std::size_t b) {
    if (a != b) std::swap(m[a], m[b]);
}
void swap_cols(Mat& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (auto& row : m) std::swap(row[a], row[b]);
}
// row[a] -= q * row[b]
void row_op(Mat& m, std::size_t a, std::size_t b, const BigInt& q) {
    if (q == 0) return;
    auto& ra = m[a];
    const auto& rb = m[b];
    for (std::size_t j = 0; j < ra.size(); ++j) ra[j] -= q * rb[j];
}
// col[a] -= q * col[b]
void col_op(Mat& m, std::size_t a, std::size_t b, const BigInt& q) {
    if (q == 0) return;
    for (auto& row : m) row[a] -= q * row[b];
}

BigInt big_abs(const BigInt& v) { return v < 0 ? BigInt(-v) : v; }

SnfResult snf_impl(const SparseMat& a, bool with_transforms, bool smart_pivot) {
    Mat m = to_dense(a);
    const std::size_t R = a.rows, C = a.cols;
    SnfResult out;
    out.with_transforms = with_transforms;
    Mat U, V;
    if (with_transforms) {
        U = identity(R);
        V = identity(C);
    }
    std::size_t t = 0;
    while (t < R && t < C) {
        // choose a pivot in the remaining block
        std::size_t pi = R, pj = C;
        if (smart_pivot) {
            BigInt best = 0;
            for (std::size_t i = t; i < R; ++i)
                for (std::size_t j = t; j < C; ++j)
                    if (m[i][j] != 0) {
                        BigInt v = big_abs(m[i][j]);
                        if (best == 0 || v < best) {
                            best = v;
                            pi = i;
                            pj = j;
                        }
                    }
        } else {
            for (std::size_t i = t; i < R && pi == R; ++i)
                for (std::size_t j = t; j < C; ++j)
                    if (m[i][j] != 0) {
                        pi = i;
                        pj = j;
                        break;
                    }
        }
        if (pi == R) break;  // remaining block is zero
        swap_rows(m, t, pi);
        if (with_transforms) swap_rows(U, t, pi);
        swap_cols(m, t, pj);
        if (with_transforms) swap_cols(V, t, pj);

        for (;;) {
            bool touched = false;
            for (std::size_t i = t + 1; i < R; ++i) {
                if (m[i][t] == 0) continue;
                BigInt q = m[i][t] / m[t][t];
                row_op(m, i, t, q);
                if (with_transforms) row_op(U, i, t, q);
                if (m[i][t] != 0) {
                    // remainder smaller than pivot: swap up and restart
                    swap_rows(m, t, i);
                    if (with_transforms) swap_rows(U, t, i);
                    touched = true;
                }
            }
            for (std::size_t j = t + 1; j < C; ++j) {
                if (m[t][j] == 0) continue;
                BigInt q = m[t][j] / m[t][t];
                col_op(m, j, t, q);
                if (with_transforms) col_op(V, j, t, q);
                if (m[t][j] != 0) {
                    swap_cols(m, t, j);
                    if (with_transforms) swap_cols(V, t, j);
                    touched = true;
                }
            }
            bool row_clear = true, col_clear = true;
            for (std::size_t i = t + 1; i < R; ++i) row_clear = row_clear && m[i][t] == 0;
            for (std::size_t j = t + 1; j < C; ++j) col_clear = col_clear && m[t][j] == 0;
            if (row_clear && col_clear && !touched) break;
        }
        ++t;
    }
    // ensure divisibility chain d1 | d2 | ...
    std::vector<std::size_t> diag_idx;
    for (std::size_t i = 0; i < std::min(R, C); ++i)
        if (m[i][i] != 0) diag_idx.push_back(i);
    for (std::size_t a1 = 0; a1 < diag_idx.size(); ++a1)
        for (std::size_t b1 = a1 + 1; b1 < diag_idx.size(); ++b1) {
            std::size_t i = diag_idx[a1], j = diag_idx[b1];
            if (m[j][j] % m[i][i] == 0) continue;
            // fold d_j under the pivot: col_i += col_j, then Euclid on the 2x2 block
            col_op(m, i, j, BigInt(-1));  // col i += col j
            if (with_transforms) col_op(V, i, j, BigInt(-1));
            for (;;) {
                if (m[j][i] == 0 && m[i][j] == 0 && m[j][j] % m[i][i] == 0) break;
                BigInt q = m[j][i] / m[i][i];
                row_op(m, j, i, q);
                if (with_transforms) row_op(U, j, i, q);
                if (m[j][i] != 0) {
                    swap_rows(m, i, j);
                    if (with_transforms) swap_rows(U, i, j);
                    continue;
                }
                q = m[i][j] / m[i][i];
                col_op(m, j, i, q);
                if (with_transforms) col_op(V, j, i, q);
                if (m[i][j] != 0) {
                    swap_cols(m, i, j);
                    if (with_transforms) swap_cols(V, i, j);
                    continue;
                }
            }
        }
    for (std::size_t i = 0; i < std::min(R, C); ++i)
        if (m[i][i] != 0) out.diagonal.push_back(big_abs(m[i][i]));
    std::sort(out.diagonal.begin(), out.diagonal.end());
    out.rank = out.diagonal.size();
    if (with_transforms) {
        out.U = std::move(U);
        out.V = std::move(V);
        // keep the final diagonal accessible in order of the transformed matrix:
        // after sign/sort normalization above U,V no longer reproduce the sorted
        // order, so retain the unsorted diagonal too via m
        out.diagonal.clear();
        for (std::size_t i = 0; i < std::min(R, C); ++i)
            if (m[i][i] != 0) out.diagonal.push_back(m[i][i]);
        out.rank = out.diagonal.size();
    }
    return out;
}

// Sparse reduction for coboundary-style matrices: as long as a +-1 entry
// exists, clearing its column with row operations leaves the pivot alone in
// the column, so the column operations of SNF reduce to deleting the pivot
// row — an invariant factor 1 with no fill from the column side. Whatever
// block survives without unit entries (rare here) goes to the dense routine.
SnfResult snf_sparse(const SparseMat& a) {
    std::vector<std::map<std::size_t, BigInt>> rows(a.rows);
    for (auto [i, j, v] : a.entries)
        if (v != 0) {
            auto& cell = rows[i][j];
            cell += v;
            if (cell == 0) rows[i].erase(j);
        }
    std::vector<std::set<std::size_t>> col_rows(a.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (const auto& [j, v] : rows[i]) col_rows[j].insert(i);
    std::vector<char> row_done(a.rows, 0), col_done(a.cols, 0);
    std::size_t units = 0;
    for (;;) {
        // find a unit pivot, preferring sparse columns to limit fill
        std::size_t pi = a.rows, pj = a.cols, best_len = SIZE_MAX;
        for (std::size_t j = 0; j < a.cols; ++j) {
            if (col_done[j] || col_rows[j].empty()) continue;
            if (col_rows[j].size() >= best_len) continue;
            for (std::size_t i : col_rows[j]) {
                const BigInt& v = rows[i].at(j);
                if (v == 1 || v == -1) {
                    pi = i;
                    pj = j;
                    best_len = col_rows[j].size();
                    break;
                }
            }
        }
        if (pi == a.rows) break;
        BigInt pv = rows[pi].at(pj);
        std::vector<std::size_t> targets(col_rows[pj].begin(), col_rows[pj].end());
        for (std::size_t i : targets) {
            if (i == pi) continue;
            BigInt q = rows[i].at(pj) / pv;  // exact since pv is a unit
            for (const auto& [j, v] : rows[pi]) {
                auto& cell = rows[i][j];
                bool was = cell != 0;
                cell -= q * v;
                if (cell == 0) {
                    rows[i].erase(j);
                    if (was) col_rows[j].erase(i);
                } else if (!was) {
                    col_rows[j].insert(i);
                }
            }
        }
        // retire the pivot row and column
        for (const auto& [j, v] : rows[pi]) col_rows[j].erase(pi);
        rows[pi].clear();
        row_done[pi] = 1;
        col_done[pj] = 1;
        ++units;
    }
    // residual block without unit entries -> dense SNF
    std::map<std::size_t, std::size_t> rmap, cmap;
    SparseMat rest;
    for (std::size_t i = 0; i < a.rows; ++i)
        for (const auto& [j, v] : rows[i]) {
            if (!rmap.count(i)) rmap[i] = rest.rows++;
            if (!cmap.count(j)) cmap[j] = rest.cols++;
            if (v > std::numeric_limits<std::int64_t>::max() ||
                v < std::numeric_limits<std::int64_t>::min())
                throw std::runtime_error("snf: residual entry exceeds 64 bits");
            rest.entries.emplace_back(rmap[i], cmap[j], v.convert_to<std::int64_t>());
        }
    SnfResult out = rest.entries.empty() ? SnfResult{} : snf_impl(rest, false, true);
    out.diagonal.insert(out.diagonal.begin(), units, BigInt(1));
    out.rank = out.diagonal.size();
    return out;
}

}  // namespace

SnfResult smith_normal_form(const SparseMat& a, bool with_transforms) {
    if (!with_transforms) return snf_sparse(a);
    return snf_impl(a, with_transforms, true);
}

SnfResult smith_normal_form_naive(const SparseMat& a) { return snf_impl(a, false, false); }

std::size_t rank_mod_p(const SparseMat& a, std::int64_t p) {
    std::vector<std::vector<std::int64_t>> m(a.rows, std::vector<std::int64_t>(a.cols, 0));
    for (auto [i, j, v] : a.entries) m[i][j] = ((m[i][j] + v) % p + p) % p;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < a.cols && rank < a.rows; ++col) {
        std::size_t piv = a.rows;
        for (std::size_t i = rank; i < a.rows; ++i)
            if (m[i][col] != 0) {
                piv = i;
                break;
            }
        if (piv == a.rows) continue;
        std::swap(m[rank], m[piv]);
        // normalize pivot to 1
        std::int64_t inv = 1, base = m[rank][col] % p, e = p - 2;
        std::int64_t b = base;
        while (e) {  // fermat inverse
            if (e & 1) inv = static_cast<std::int64_t>(static_cast<__int128>(inv) * b % p);
            b = static_cast<std::int64_t>(static_cast<__int128>(b) * b % p);
            e >>= 1;
        }
        for (std::size_t j = col; j < a.cols; ++j)
            m[rank][j] = static_cast<std::int64_t>(static_cast<__int128>(m[rank][j]) * inv % p);
        for (std::size_t i = 0; i < a.rows; ++i) {
            if (i == rank || m[i][col] == 0) continue;
            std::int64_t f = m[i][col];
            for (std::size_t j = col; j < a.cols; ++j) {
                m[i][j] = static_cast<std::int64_t>(
                    ((m[i][j] - static_cast<__int128>(f) * m[rank][j]) % p + p) % p);
            }
        }
        ++rank;
    }
    return rank;
}

std::optional<std::vector<BigInt>> solve_integral(const SparseMat& a,
                                                  const std::vector<std::int64_t>& rhs) {
    if (rhs.size() != a.rows) throw std::runtime_error("solve: rhs size mismatch");
    SnfResult s = smith_normal_form(a, true);
    // S = U A V, solve S y = U b, x = V y
    std::vector<BigInt> ub(a.rows, 0);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.rows; ++j)
            if (s.U[i][j] != 0 && rhs[j] != 0) ub[i] += s.U[i][j] * rhs[j];
    std::vector<BigInt> y(a.cols, 0);
    for (std::size_t i = 0; i < a.rows; ++i) {
        if (i < s.rank) {
            if (ub[i] % s.diagonal[i] != 0) return std::nullopt;  // no integral primitive
            y[i] = ub[i] / s.diagonal[i];
        } else if (ub[i] != 0) {
            return std::nullopt;  // not even rationally solvable
        }
    }
    std::vector<BigInt> x(a.cols, 0);
    for (std::size_t i = 0; i < a.cols; ++i)
        for (std::size_t j = 0; j < a.cols; ++j)
            if (s.V[i][j] != 0 && y[j] != 0) x[i] += s.V[i][j] * y[j];
    return x;
}

bool solvable_rational(const SparseMat& a, const std::vector<std::int64_t>& rhs) {
    SnfResult s = smith_normal_form(a, true);
    std::vector<BigInt> ub(a.rows, 0);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.rows; ++j)
            if (s.U[i][j] != 0 && rhs[j] != 0) ub[i] += s.U[i][j] * rhs[j];
    for (std::size_t i = s.rank; i < a.rows; ++i)
        if (ub[i] != 0) return false;
    return true;
}

bool solvable_mod_p(const SparseMat& a, const std::vector<std::int64_t>& rhs, std::int64_t p) {
    // rank of [A | b] vs rank of A over F_p
    SparseMat aug;
    aug.rows = a.rows;
    aug.cols = a.cols + 1;
    aug.entries = a.entries;
    for (std::size_t i = 0; i < rhs.size(); ++i)
        if (rhs[i] % p != 0) aug.entries.emplace_back(i, a.cols, rhs[i]);
    return rank_mod_p(aug, p) == rank_mod_p(a, p);
}

}  // namespace coarse
