#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dpc/util.hpp"

namespace dpc {

using Int = mpz_class;

/// Sparse integer matrix: per-row column maps plus a per-column index of the
/// rows holding a nonzero entry, kept in sync by all mutating helpers.
struct IntMat {
    int rows = 0, cols = 0;
    std::vector<std::map<int, Int>> row;

    IntMat() = default;
    IntMat(int r, int c) : rows(r), cols(c), row(r) {}

    static IntMat identity(int n) {
        IntMat M(n, n);
        for (int i = 0; i < n; ++i) M.row[i][i] = 1;
        return M;
    }

    Int get(int i, int j) const {
        auto it = row[i].find(j);
        return it == row[i].end() ? Int(0) : it->second;
    }
    void set(int i, int j, const Int& v) {
        if (v == 0) row[i].erase(j);
        else row[i][j] = v;
    }
    void add(int i, int j, const Int& v) {
        if (v == 0) return;
        auto it = row[i].find(j);
        if (it == row[i].end()) row[i][j] = v;
        else {
            it->second += v;
            if (it->second == 0) row[i].erase(it);
        }
    }
    long long nnz() const {
        long long n = 0;
        for (const auto& r : row) n += static_cast<long long>(r.size());
        return n;
    }
};

inline IntMat mat_mul(const IntMat& A, const IntMat& B) {
    if (A.cols != B.rows) throw PreconditionError("mat_mul shape mismatch");
    IntMat C(A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (const auto& [k, a] : A.row[i])
            for (const auto& [j, b] : B.row[k]) C.add(i, j, a * b);
    return C;
}

inline std::vector<Int> mat_vec(const IntMat& A, const std::vector<Int>& x) {
    if (static_cast<int>(x.size()) != A.cols) throw PreconditionError("mat_vec shape mismatch");
    std::vector<Int> y(A.rows, Int(0));
    for (int i = 0; i < A.rows; ++i)
        for (const auto& [j, a] : A.row[i]) y[i] += a * x[j];
    return y;
}

/// Exact determinant by fraction-free (Bareiss) elimination; for the
/// unimodularity checks on certificate factors.
inline Int determinant(const IntMat& A) {
    if (A.rows != A.cols) throw PreconditionError("determinant needs a square matrix");
    int n = A.rows;
    std::vector<std::vector<Int>> m(n, std::vector<Int>(n, Int(0)));
    for (int i = 0; i < n; ++i)
        for (const auto& [j, v] : A.row[i]) m[i][j] = v;
    Int prev = 1;
    int sign = 1;
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int r = c; r < n; ++r)
            if (m[r][c] != 0) { piv = r; break; }
        if (piv < 0) return 0;
        if (piv != c) { std::swap(m[piv], m[c]); sign = -sign; }
        for (int r = c + 1; r < n; ++r) {
            for (int j = c + 1; j < n; ++j) {
                m[r][j] = m[r][j] * m[c][c] - m[r][c] * m[c][j];
                mpz_divexact(m[r][j].get_mpz_t(), m[r][j].get_mpz_t(), prev.get_mpz_t());
            }
            m[r][c] = 0;
        }
        prev = m[c][c];
    }
    return sign * m[n - 1][n - 1];
}

namespace detail {

/// Quotient q minimizing |a - q p| (p != 0); ties resolved toward the
/// smaller q so the reduction is deterministic.
inline Int nearest_quotient(const Int& a, const Int& p) {
    Int q0;
    mpz_fdiv_q(q0.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
    Int r0 = a - q0 * p;
    Int r1 = r0 - p;  // remainder for q0 + 1
    if (abs(r1) < abs(r0)) return q0 + 1;
    return q0;
}

/// Shared Smith-reduction core.  Reduces `A` in place to Smith form while
/// mirroring row operations onto U and w (= accumulated image of v) and
/// column operations onto V, whichever are non-null.
struct SmithCore {
    IntMat& A;
    IntMat* U;
    IntMat* V;
    std::vector<Int>* w;
    std::vector<std::set<int>> col_rows;  // rows with a nonzero entry per column

    SmithCore(IntMat& a, IntMat* u, IntMat* v, std::vector<Int>* wv)
        : A(a), U(u), V(v), w(wv), col_rows(a.cols) {
        for (int i = 0; i < A.rows; ++i)
            for (const auto& [j, val] : A.row[i]) {
                (void)val;
                col_rows[j].insert(i);
            }
    }

    void set_entry(int i, int j, const Int& v) {
        if (v == 0) {
            A.row[i].erase(j);
            col_rows[j].erase(i);
        } else {
            A.row[i][j] = v;
            col_rows[j].insert(i);
        }
    }

    /// row[dst] -= q * row[src]
    void row_axpy(int dst, int src, const Int& q) {
        if (q == 0) return;
        std::vector<std::pair<int, Int>> src_entries(A.row[src].begin(), A.row[src].end());
        for (const auto& [j, v] : src_entries) set_entry(dst, j, A.get(dst, j) - q * v);
        if (U)
            for (const auto& [j, v] : std::vector<std::pair<int, Int>>(U->row[src].begin(),
                                                                       U->row[src].end()))
                U->add(dst, j, -q * v);
        if (w) (*w)[dst] -= q * (*w)[src];
    }

    void row_swap(int r1, int r2) {
        if (r1 == r2) return;
        std::set<int> touched;
        for (const auto& [j, v] : A.row[r1]) { (void)v; touched.insert(j); }
        for (const auto& [j, v] : A.row[r2]) { (void)v; touched.insert(j); }
        std::swap(A.row[r1], A.row[r2]);
        for (int j : touched) {
            col_rows[j].erase(r1);
            col_rows[j].erase(r2);
            if (A.row[r1].count(j)) col_rows[j].insert(r1);
            if (A.row[r2].count(j)) col_rows[j].insert(r2);
        }
        if (U) std::swap(U->row[r1], U->row[r2]);
        if (w) std::swap((*w)[r1], (*w)[r2]);
    }

    /// col[dst] -= q * col[src]
    void col_axpy(int dst, int src, const Int& q) {
        if (q == 0) return;
        std::vector<int> src_rows(col_rows[src].begin(), col_rows[src].end());
        for (int i : src_rows) set_entry(i, dst, A.get(i, dst) - q * A.row[i][src]);
        if (V) {
            // Mirror onto V as a right factor: V col[dst] -= q * V col[src].
            for (int i = 0; i < V->rows; ++i) {
                Int v = V->get(i, src);
                if (v != 0) V->add(i, dst, -q * v);
            }
        }
    }

    void col_swap(int c1, int c2) {
        if (c1 == c2) return;
        std::set<int> touched = col_rows[c1];
        touched.insert(col_rows[c2].begin(), col_rows[c2].end());
        for (int i : touched) {
            Int v1 = A.get(i, c1), v2 = A.get(i, c2);
            set_entry(i, c1, v2);
            set_entry(i, c2, v1);
        }
        if (V)
            for (int i = 0; i < V->rows; ++i) {
                Int v1 = V->get(i, c1), v2 = V->get(i, c2);
                V->set(i, c1, v2);
                V->set(i, c2, v1);
            }
    }

    void col_negate(int c) {
        for (int i : std::vector<int>(col_rows[c].begin(), col_rows[c].end()))
            A.row[i][c] = -A.row[i][c];
        if (V)
            for (int i = 0; i < V->rows; ++i) {
                Int v = V->get(i, c);
                if (v != 0) V->set(i, c, -v);
            }
    }

    /// Finds the entry of smallest |value| in the trailing submatrix at
    /// (t..), ties broken row-major.  Returns {row, col} or {-1, -1}.
    std::pair<int, int> find_pivot(int t) const {
        int bi = -1, bj = -1;
        Int best = 0;
        for (int i = t; i < A.rows; ++i)
            for (const auto& [j, v] : A.row[i]) {
                if (j < t) continue;
                Int av = abs(v);
                if (bi < 0 || av < best) {
                    best = av;
                    bi = i;
                    bj = j;
                    if (best == 1 && i == t) break;  // cannot improve ordering earlier than row t
                }
            }
        return {bi, bj};
    }

    /// Clears row t and column t against the pivot at (t, t) until only the
    /// pivot remains, swapping in strictly smaller remainders as they appear.
    void reduce_position(int t) {
        while (true) {
            bool swapped = false;
            // Column t below/above the pivot.
            while (true) {
                int victim = -1;
                for (int i : col_rows[t])
                    if (i != t) { victim = i; break; }
                if (victim < 0) break;
                Int p = A.get(t, t);
                Int a = A.row[victim][t];
                Int q = nearest_quotient(a, p);
                row_axpy(victim, t, q);
                if (A.row[victim].count(t)) {
                    row_swap(t, victim);  // strictly smaller remainder becomes the pivot
                    swapped = true;
                }
            }
            // Row t right/left of the pivot.
            while (true) {
                int victim = -1;
                for (const auto& [j, v] : A.row[t]) {
                    (void)v;
                    if (j != t) { victim = j; break; }
                }
                if (victim < 0) break;
                Int p = A.get(t, t);
                Int a = A.row[t][victim];
                Int q = nearest_quotient(a, p);
                col_axpy(victim, t, q);
                if (A.row[t].count(victim)) {
                    col_swap(t, victim);
                    swapped = true;
                }
            }
            if (!swapped && col_rows[t].size() <= 1 && A.row[t].size() <= 1) break;
        }
    }

    /// Full reduction; returns the rank (number of nonzero diagonal entries).
    int run() {
        int n = std::min(A.rows, A.cols);
        int t = 0;
        for (; t < n; ++t) {
            auto [pi, pj] = find_pivot(t);
            if (pi < 0) break;
            row_swap(t, pi);
            col_swap(t, pj);
            reduce_position(t);
        }
        int rank = t;
        // Positive diagonal.
        for (int i = 0; i < rank; ++i)
            if (A.get(i, i) < 0) col_negate(i);
        // Divisibility chain d_i | d_{i+1}: repair violations and rescan.
        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (int i = 0; i + 1 < rank; ++i) {
                Int di = A.get(i, i), dj = A.get(i + 1, i + 1);
                if (dj % di != 0) {
                    col_axpy(i, i + 1, Int(-1));  // col_i += col_{i+1}
                    reduce_position(i);
                    if (A.get(i, i) < 0) col_negate(i);
                    if (A.get(i + 1, i + 1) < 0) col_negate(i + 1);
                    dirty = true;
                }
            }
        }
        return rank;
    }
};

}  // namespace detail

/// Smith certificate: U A V = D with U, V unimodular and D diagonal with
/// nonnegative entries, each dividing the next, zeros trailing.
struct SNFCertificate {
    IntMat U, D, V;
    int rank = 0;

    std::vector<Int> diagonal() const {
        std::vector<Int> out;
        int n = std::min(D.rows, D.cols);
        out.reserve(n);
        for (int i = 0; i < n; ++i) out.push_back(D.get(i, i));
        return out;
    }
};

/// Computes the Smith normal form with full unimodular transforms, and
/// verifies U A V = D by exact multiplication before returning.
inline SNFCertificate smith_normal_form(const IntMat& A) {
    SNFCertificate cert;
    cert.D = A;
    cert.U = IntMat::identity(A.rows);
    cert.V = IntMat::identity(A.cols);
    detail::SmithCore core(cert.D, &cert.U, &cert.V, nullptr);
    cert.rank = core.run();
    IntMat check = mat_mul(mat_mul(cert.U, A), cert.V);
    for (int i = 0; i < A.rows; ++i)
        if (check.row[i] != cert.D.row[i])
            throw std::logic_error("Smith reduction self-check failed");
    return cert;
}

/// Exact check A x = v.
inline bool verify_solution(const IntMat& A, const std::vector<Int>& x,
                            const std::vector<Int>& v) {
    if (static_cast<int>(x.size()) != A.cols || static_cast<int>(v.size()) != A.rows)
        return false;
    return mat_vec(A, x) == v;
}

/// Outcome of an integer linear solve.  When unsolvable, carries a
/// divisibility witness: a row functional z with z·A = 0 mod `divisor`
/// (every entry) while z·v = `residue` != 0 mod `divisor` (for rows beyond
/// the rank, divisor = 0 and the functional annihilates A exactly).
struct IntSolveResult {
    bool solvable = false;
    std::vector<Int> x;        ///< a solution when solvable
    int witness_index = -1;    ///< diagonal position refusing divisibility
    Int divisor = 0;
    Int residue = 0;
    std::vector<Int> witness_row;  ///< the functional z (empty if not tracked)
};

/// Decides A x = v over the integers via Smith reduction with transform
/// tracking.  Solutions are re-verified by exact multiplication; refusals
/// carry the witness row.  `track_witness_rows` may be disabled for very
/// large systems (the row transform costs O(rows^2) memory).
inline IntSolveResult solve_integer(const IntMat& A, const std::vector<Int>& v,
                                    bool track_witness_rows = true) {
    if (static_cast<int>(v.size()) != A.rows)
        throw PreconditionError("solve_integer shape mismatch");
    IntMat D = A;
    IntMat U, Vt;
    if (track_witness_rows) U = IntMat::identity(A.rows);
    Vt = IntMat::identity(A.cols);
    std::vector<Int> w = v;
    detail::SmithCore core(D, track_witness_rows ? &U : nullptr, &Vt, &w);
    int rank = core.run();

    IntSolveResult res;
    auto refuse = [&](int i, const Int& d, const Int& rem) {
        res.solvable = false;
        res.witness_index = i;
        res.divisor = d;
        res.residue = rem;
        if (track_witness_rows) {
            res.witness_row.assign(A.rows, Int(0));
            for (const auto& [j, val] : U.row[i]) res.witness_row[j] = val;
        }
    };
    std::vector<Int> y(A.cols, Int(0));
    for (int i = 0; i < rank; ++i) {
        Int d = D.get(i, i);
        Int rem;
        mpz_fdiv_r(rem.get_mpz_t(), w[i].get_mpz_t(), d.get_mpz_t());
        if (rem != 0) { refuse(i, d, rem); return res; }
        mpz_divexact(y[i].get_mpz_t(), w[i].get_mpz_t(), d.get_mpz_t());
    }
    for (int i = rank; i < A.rows; ++i)
        if (w[i] != 0) { refuse(i, Int(0), w[i]); return res; }
    res.solvable = true;
    res.x = mat_vec(Vt, y);
    if (!verify_solution(A, res.x, v))
        throw std::logic_error("integer solve self-check failed");
    return res;
}

/// Independent check of an unsolvability witness against A and v.
inline bool verify_witness(const IntMat& A, const std::vector<Int>& v,
                           const IntSolveResult& res) {
    if (res.solvable || res.witness_row.empty()) return false;
    const std::vector<Int>& z = res.witness_row;
    if (static_cast<int>(z.size()) != A.rows) return false;
    std::vector<Int> zA(A.cols, Int(0));
    for (int i = 0; i < A.rows; ++i)
        if (z[i] != 0)
            for (const auto& [j, a] : A.row[i]) zA[j] += z[i] * a;
    Int zv = 0;
    for (int i = 0; i < A.rows; ++i) zv += z[i] * v[i];
    if (res.divisor == 0) {
        for (const Int& e : zA)
            if (e != 0) return false;
        return zv != 0;
    }
    for (const Int& e : zA)
        if (e % res.divisor != 0) return false;
    return zv % res.divisor != 0;
}

}  // namespace dpc
