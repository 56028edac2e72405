#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dpc/complex.hpp"
#include "dpc/util.hpp"

namespace dpc {

using Int = mpz_class;
using Rat = mpq_class;
using QVec = std::vector<Rat>;

inline int sign_of(const Rat& x) { return sgn(x); }
inline int sign_of(const Int& x) { return sgn(x); }

/// (-1)^e for e >= 0, and the sign s^e for s in {-1,0,+1}.
inline int pow_sign(int s, long long e) {
    if (s == 0) return 0;
    return (s < 0 && (e % 2 != 0)) ? -1 : +1;
}

// ---------------------------------------------------------------------------
// Dense rational matrices and exact elimination.
// ---------------------------------------------------------------------------

/// Dense rational matrix, row-major.  Columns usually hold direction vectors.
struct QMat {
    int rows = 0, cols = 0;
    std::vector<Rat> a;

    QMat() = default;
    QMat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}

    Rat& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    const Rat& at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

    QVec column(int j) const {
        QVec v(rows);
        for (int i = 0; i < rows; ++i) v[i] = at(i, j);
        return v;
    }

    static QMat from_columns(int rows, const std::vector<QVec>& cols_in) {
        QMat M(rows, static_cast<int>(cols_in.size()));
        for (int j = 0; j < M.cols; ++j) {
            if (static_cast<int>(cols_in[j].size()) != rows)
                throw PreconditionError("column length mismatch");
            for (int i = 0; i < rows; ++i) M.at(i, j) = cols_in[j][i];
        }
        return M;
    }

    /// Horizontal concatenation [A | B] (equal row counts).
    static QMat hcat(const QMat& A, const QMat& B) {
        if (A.rows != B.rows) throw PreconditionError("hcat row mismatch");
        QMat M(A.rows, A.cols + B.cols);
        for (int i = 0; i < A.rows; ++i) {
            for (int j = 0; j < A.cols; ++j) M.at(i, j) = A.at(i, j);
            for (int j = 0; j < B.cols; ++j) M.at(i, A.cols + j) = B.at(i, j);
        }
        return M;
    }
};

/// Sign of det(M) in {-1,0,+1} by fraction-free-ordered Gaussian elimination
/// over Q (exact).
inline int det_sign(QMat M) {
    if (M.rows != M.cols) throw PreconditionError("det_sign needs a square matrix");
    int n = M.rows;
    int sign = +1;
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int r = c; r < n; ++r)
            if (sign_of(M.at(r, c)) != 0) { piv = r; break; }
        if (piv < 0) return 0;
        if (piv != c) {
            for (int j = c; j < n; ++j) std::swap(M.at(c, j), M.at(piv, j));
            sign = -sign;
        }
        if (sign_of(M.at(c, c)) < 0) sign = -sign;
        for (int r = c + 1; r < n; ++r) {
            if (sign_of(M.at(r, c)) == 0) continue;
            Rat f = M.at(r, c) / M.at(c, c);
            M.at(r, c) = 0;
            for (int j = c + 1; j < n; ++j) M.at(r, j) -= f * M.at(c, j);
        }
    }
    return sign;
}

/// Unique solution of a nonsingular square system M x = rhs, or nullopt if
/// M is singular.
inline std::optional<QVec> solve_square(QMat M, QVec rhs) {
    if (M.rows != M.cols) throw PreconditionError("solve_square needs a square matrix");
    if (static_cast<int>(rhs.size()) != M.rows) throw PreconditionError("rhs length mismatch");
    int n = M.rows;
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int r = c; r < n; ++r)
            if (sign_of(M.at(r, c)) != 0) { piv = r; break; }
        if (piv < 0) return std::nullopt;
        if (piv != c) {
            for (int j = c; j < n; ++j) std::swap(M.at(c, j), M.at(piv, j));
            std::swap(rhs[c], rhs[piv]);
        }
        for (int r = c + 1; r < n; ++r) {
            if (sign_of(M.at(r, c)) == 0) continue;
            Rat f = M.at(r, c) / M.at(c, c);
            M.at(r, c) = 0;
            for (int j = c + 1; j < n; ++j) M.at(r, j) -= f * M.at(c, j);
            rhs[r] -= f * rhs[c];
        }
    }
    QVec x(n);
    for (int r = n - 1; r >= 0; --r) {
        Rat acc = rhs[r];
        for (int j = r + 1; j < n; ++j) acc -= M.at(r, j) * x[j];
        x[r] = acc / M.at(r, r);
    }
    return x;
}

/// Result of solving a general rectangular system M x = rhs over Q.
struct GeneralSolution {
    bool consistent = false;
    QVec particular;               ///< one solution (empty if inconsistent)
    std::vector<QVec> kernel;      ///< basis of the homogeneous solution space
    int rank = 0;
};

/// Full row reduction of M x = rhs.  Pass an empty rhs for kernel/rank only
/// (treated as the zero vector).
inline GeneralSolution solve_general(QMat M, QVec rhs) {
    bool homogeneous = rhs.empty();
    if (!homogeneous && static_cast<int>(rhs.size()) != M.rows)
        throw PreconditionError("rhs length mismatch");
    if (homogeneous) rhs.assign(M.rows, Rat(0));
    int nr = M.rows, nc = M.cols;
    std::vector<int> pivot_col;
    int row = 0;
    for (int c = 0; c < nc && row < nr; ++c) {
        int piv = -1;
        for (int r = row; r < nr; ++r)
            if (sign_of(M.at(r, c)) != 0) { piv = r; break; }
        if (piv < 0) continue;
        if (piv != row) {
            for (int j = 0; j < nc; ++j) std::swap(M.at(row, j), M.at(piv, j));
            std::swap(rhs[row], rhs[piv]);
        }
        Rat p = M.at(row, c);
        for (int j = 0; j < nc; ++j) M.at(row, j) /= p;
        rhs[row] /= p;
        for (int r = 0; r < nr; ++r) {
            if (r == row || sign_of(M.at(r, c)) == 0) continue;
            Rat f = M.at(r, c);
            for (int j = 0; j < nc; ++j) M.at(r, j) -= f * M.at(row, j);
            rhs[r] -= f * rhs[row];
        }
        pivot_col.push_back(c);
        ++row;
    }
    GeneralSolution out;
    out.rank = row;
    for (int r = row; r < nr; ++r)
        if (sign_of(rhs[r]) != 0) { out.consistent = false; return out; }
    out.consistent = true;
    out.particular.assign(nc, Rat(0));
    for (int r = 0; r < row; ++r) out.particular[pivot_col[r]] = rhs[r];
    std::vector<bool> is_pivot(nc, false);
    for (int c : pivot_col) is_pivot[c] = true;
    for (int c = 0; c < nc; ++c) {
        if (is_pivot[c]) continue;
        QVec k(nc, Rat(0));
        k[c] = 1;
        for (int r = 0; r < row; ++r) k[pivot_col[r]] = -M.at(r, c);
        out.kernel.push_back(std::move(k));
    }
    return out;
}

inline int rank_of(const QMat& M) { return solve_general(M, {}).rank; }

/// Basis of colspace(P) ∩ colspace(Q), both subspaces of Q^d given by
/// full-column-rank matrices.  Columns of the result are P·u over a kernel
/// basis of [P | -Q]; they are independent when P and Q have independent
/// columns.
inline QMat intersect_column_spaces(const QMat& P, const QMat& Q) {
    if (P.rows != Q.rows) throw PreconditionError("ambient dimension mismatch");
    int d = P.rows;
    if (P.cols == 0 || Q.cols == 0) return QMat(d, 0);
    QMat J(d, P.cols + Q.cols);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < P.cols; ++j) J.at(i, j) = P.at(i, j);
        for (int j = 0; j < Q.cols; ++j) J.at(i, P.cols + j) = -Q.at(i, j);
    }
    auto sol = solve_general(J, {});
    QMat out(d, static_cast<int>(sol.kernel.size()));
    for (int c = 0; c < out.cols; ++c)
        for (int i = 0; i < d; ++i) {
            Rat acc = 0;
            for (int j = 0; j < P.cols; ++j) acc += P.at(i, j) * sol.kernel[c][j];
            out.at(i, c) = acc;
        }
    return out;
}

// ---------------------------------------------------------------------------
// Oriented affine simplices and pieces.
// ---------------------------------------------------------------------------

/// Oriented geometric simplex: m+1 points in Q^d plus a sign relative to the
/// reference orientation given by the listed point order.
struct AffineSimplex {
    std::vector<QVec> pts;
    int sign = +1;

    int dim() const { return static_cast<int>(pts.size()) - 1; }
    int ambient_dim() const { return pts.empty() ? 0 : static_cast<int>(pts[0].size()); }

    /// d x m matrix whose columns are p_j - p_0, j = 1..m; its column order
    /// represents the reference orientation.
    QMat edge_matrix() const {
        int d = ambient_dim(), m = dim();
        QMat B(d, m);
        for (int j = 1; j <= m; ++j)
            for (int i = 0; i < d; ++i) B.at(i, j - 1) = pts[j][i] - pts[0][i];
        return B;
    }
};

/// A linear piece of an intersection: an oriented subspace direction basis
/// together with a +-1 weight (for dim 0 the weight is the whole datum).
struct OrientedPiece {
    QMat dirs;      ///< d x l, columns a basis of the direction space
    int sign = +1;
};

// ---------------------------------------------------------------------------
// The comparison sign between an r-fold product orientation and the ambient
// power orientation.
// ---------------------------------------------------------------------------

/// epsilon(d, (m_1..m_r)) = (-1)^t with
///   t = sum_i (r-i)·d·(d-m_i) + sum_{i<j} (d-m_i)(d-m_j),
/// defined whenever sum_i m_i = d(r-1).
inline int epsilon(int d, const std::vector<int>& dims) {
    int r = static_cast<int>(dims.size());
    if (r < 1) throw PreconditionError("epsilon needs at least one factor");
    long long total = 0;
    for (int m : dims) total += m;
    if (total != static_cast<long long>(d) * (r - 1))
        throw PreconditionError("epsilon: dimensions do not sum to d(r-1)");
    long long t = 0;
    for (int i = 0; i < r; ++i)
        t += static_cast<long long>(r - 1 - i) * d * (d - dims[i]);
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j)
            t += static_cast<long long>(d - dims[i]) * (d - dims[j]);
    return (((t % 2) + 2) % 2 == 0) ? +1 : -1;
}

/// epsilon for the equidimensional case d = rk, all m_i = (r-1)k:
/// -1 exactly when k is odd and r = 2 (mod 4).
inline int epsilon_rk(int r, int k) {
    if (r < 1 || k < 1) throw PreconditionError("epsilon_rk needs r, k >= 1");
    return (k % 2 == 1 && r % 4 == 2) ? -1 : +1;
}

// ---------------------------------------------------------------------------
// r-fold intersection signs.
// ---------------------------------------------------------------------------

/// Intersection sign of r oriented pieces meeting in a single point of Q^d,
/// computed against the thin diagonal: the sign of det [ M_P | M_delta ]
/// where M_P is the block diagonal of the direction bases and M_delta stacks
/// r copies of I_d, corrected by epsilon and by the piece weights.
/// Returns 0 when the configuration is not transverse.
inline int pieces_sign(const std::vector<OrientedPiece>& pieces, int d) {
    int r = static_cast<int>(pieces.size());
    if (r < 2) throw PreconditionError("pieces_sign needs r >= 2 pieces");
    std::vector<int> dims(r);
    long long total = 0;
    int weight = +1;
    for (int i = 0; i < r; ++i) {
        if (pieces[i].dirs.rows != d) throw PreconditionError("piece ambient dimension mismatch");
        dims[i] = pieces[i].dirs.cols;
        total += dims[i];
        weight *= pieces[i].sign;
    }
    if (total != static_cast<long long>(d) * (r - 1))
        throw PreconditionError("pieces_sign: dimensions do not sum to d(r-1)");
    int n = d * r;
    QMat M(n, n);
    int col = 0;
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < dims[i]; ++j, ++col)
            for (int row = 0; row < d; ++row) M.at(i * d + row, col) = pieces[i].dirs.at(row, j);
    for (int j = 0; j < d; ++j, ++col)
        for (int i = 0; i < r; ++i) M.at(i * d + j, col) = 1;
    int s = det_sign(M);
    if (s == 0) return 0;
    return epsilon(d, dims) * s * weight;
}

namespace detail {
/// Checks that y lies in the affine hull of each simplex (a sanity check on
/// the caller, not a genericity check).
inline void require_point_in_hulls(const std::vector<AffineSimplex>& simplices, const QVec& y) {
    int d = static_cast<int>(y.size());
    for (const auto& s : simplices) {
        if (s.ambient_dim() != d) throw PreconditionError("ambient dimension mismatch");
        QMat B = s.edge_matrix();
        QVec rhs(d);
        for (int i = 0; i < d; ++i) rhs[i] = y[i] - s.pts[0][i];
        if (!solve_general(B, rhs).consistent)
            throw PreconditionError("point does not lie in a factor's affine hull");
    }
}
}  // namespace detail

/// Intersection sign of r oriented simplices at a common interior point y,
/// via the product-versus-diagonal determinant.  Throws DegeneracyError when
/// the hulls are not transverse at y.
inline int r_fold_sign(const std::vector<AffineSimplex>& simplices, const QVec& y) {
    int r = static_cast<int>(simplices.size());
    if (r < 2) throw PreconditionError("r_fold_sign needs r >= 2 factors");
    int d = static_cast<int>(y.size());
    detail::require_point_in_hulls(simplices, y);
    std::vector<OrientedPiece> pieces;
    pieces.reserve(r);
    for (const auto& s : simplices) pieces.push_back({s.edge_matrix(), s.sign});
    int v = pieces_sign(pieces, d);
    if (v == 0) throw DegeneracyError("non-transverse r-fold intersection");
    return v;
}

/// The same sign by the unraveled route: pick bases gamma_i of the partial
/// intersections cap_{j != i} L_j, compare [gamma_r | ... | gamma_1] with the
/// ambient orientation (factor e0) and each [.. gamma_i omitted ..] with the
/// orientation of sigma_i (factor eps_i); the sign is e0^(r-1) * prod eps_i.
inline int unraveled_sign(const std::vector<AffineSimplex>& simplices) {
    int r = static_cast<int>(simplices.size());
    if (r < 2) throw PreconditionError("unraveled_sign needs r >= 2 factors");
    int d = simplices[0].ambient_dim();
    std::vector<QMat> B(r);
    std::vector<int> dims(r);
    long long total = 0;
    for (int i = 0; i < r; ++i) {
        if (simplices[i].ambient_dim() != d) throw PreconditionError("ambient dimension mismatch");
        B[i] = simplices[i].edge_matrix();
        dims[i] = B[i].cols;
        total += dims[i];
        if (dims[i] > d) throw PreconditionError("unraveled_sign needs every m_i <= d");
        if (rank_of(B[i]) != dims[i]) throw DegeneracyError("degenerate simplex");
    }
    if (total != static_cast<long long>(d) * (r - 1))
        throw PreconditionError("unraveled_sign: dimensions do not sum to d(r-1)");

    // gamma_i spans cap_{j != i} L_j and must have dimension d - m_i.
    std::vector<QMat> gamma(r);
    for (int i = 0; i < r; ++i) {
        QMat cur;
        bool first = true;
        for (int j = 0; j < r; ++j) {
            if (j == i) continue;
            if (first) { cur = B[j]; first = false; }
            else cur = intersect_column_spaces(cur, B[j]);
        }
        if (cur.cols != d - dims[i])
            throw DegeneracyError("partial intersections have unexpected dimension");
        gamma[i] = cur;
    }

    // e0: [gamma_r | ... | gamma_1] against the standard ambient orientation.
    QMat full(d, 0);
    for (int i = r - 1; i >= 0; --i) full = QMat::hcat(full, gamma[i]);
    int e0 = det_sign(full);
    if (e0 == 0) throw DegeneracyError("partial intersection bases are dependent");

    int result = pow_sign(e0, r - 1);
    for (int i = 0; i < r; ++i) {
        // Gamma_i = [gamma_r | ... omit i ... | gamma_1] expressed in sigma_i's
        // basis: B_i T = Gamma_i, and eps_i = sign(sigma_i) * sign(det T).
        QMat Gi(d, 0);
        for (int j = r - 1; j >= 0; --j) {
            if (j == i) continue;
            Gi = QMat::hcat(Gi, gamma[j]);
        }
        QMat T(dims[i], Gi.cols);
        for (int c = 0; c < Gi.cols; ++c) {
            auto sol = solve_general(B[i], Gi.column(c));
            if (!sol.consistent)
                throw DegeneracyError("partial intersection escapes its hull");
            for (int t = 0; t < dims[i]; ++t) T.at(t, c) = sol.particular[t];
        }
        int dt = det_sign(T);
        if (dt == 0) throw DegeneracyError("partial intersection bases are dependent");
        result *= simplices[i].sign * dt;
    }
    return result;
}

// ---------------------------------------------------------------------------
// Pairwise oriented intersections and the restriction route.
// ---------------------------------------------------------------------------

/// Oriented basis of the intersection of two oriented pieces: alpha is
/// oriented so that some completion [alpha | beta_1 | beta_2] is ambient
/// positive while each [alpha | beta_i] carries piece i's orientation; the
/// returned weight absorbs the correction factors so the basis can be used
/// directly.  Requires l = m1 + m2 - d >= 0; throws DegeneracyError when the
/// hulls are not in general position.
inline OrientedPiece oriented_intersection_piece(const OrientedPiece& a, const OrientedPiece& b,
                                                 int d) {
    int m1 = a.dirs.cols, m2 = b.dirs.cols;
    int l = m1 + m2 - d;
    if (l < 0) throw PreconditionError("intersection dimension would be negative");
    QMat alpha = intersect_column_spaces(a.dirs, b.dirs);
    if (alpha.cols != l) throw DegeneracyError("pair of hulls not in general position");

    // Greedy completion of alpha to a basis of each piece, using its own
    // reference columns.
    auto complete = [&](const QMat& base) {
        QMat acc = alpha;
        QMat beta(d, 0);
        for (int c = 0; c < base.cols && acc.cols < base.cols; ++c) {
            QMat trial = QMat::hcat(acc, QMat::from_columns(d, {base.column(c)}));
            if (rank_of(trial) == trial.cols) {
                acc = trial;
                beta = QMat::hcat(beta, QMat::from_columns(d, {base.column(c)}));
            }
        }
        if (acc.cols != base.cols) throw DegeneracyError("completion failed (degenerate piece)");
        return beta;
    };
    QMat beta1 = complete(a.dirs);
    QMat beta2 = complete(b.dirs);

    // c_i compares [alpha | beta_i] with piece i's oriented basis.
    auto transition = [&](const QMat& base, const QMat& beta, int piece_sign) {
        QMat target = QMat::hcat(alpha, beta);
        QMat T(base.cols, target.cols);
        for (int c = 0; c < target.cols; ++c) {
            auto sol = solve_general(base, target.column(c));
            if (!sol.consistent) throw DegeneracyError("intersection escapes its hull");
            for (int t = 0; t < base.cols; ++t) T.at(t, c) = sol.particular[t];
        }
        int dt = (T.rows == 0) ? +1 : det_sign(T);
        if (dt == 0) throw DegeneracyError("degenerate transition");
        return piece_sign * dt;
    };
    int c1 = transition(a.dirs, beta1, a.sign);
    int c2 = transition(b.dirs, beta2, b.sign);

    int e = det_sign(QMat::hcat(QMat::hcat(alpha, beta1), beta2));
    if (e == 0) throw DegeneracyError("pair of hulls not in general position");
    return {alpha, c1 * c2 * e};
}

/// Oriented intersection of the affine hulls of two oriented simplices.
inline OrientedPiece oriented_intersection_basis(const AffineSimplex& s1,
                                                 const AffineSimplex& s2) {
    if (s1.ambient_dim() != s2.ambient_dim())
        throw PreconditionError("ambient dimension mismatch");
    return oriented_intersection_piece({s1.edge_matrix(), s1.sign},
                                       {s2.edge_matrix(), s2.sign}, s1.ambient_dim());
}

namespace detail {
/// Recursive restriction computation on oriented pieces.
inline int restriction_sign(const std::vector<OrientedPiece>& pieces, int d) {
    int r = static_cast<int>(pieces.size());
    if (r == 2) {
        OrientedPiece p = oriented_intersection_piece(pieces[0], pieces[1], d);
        if (p.dirs.cols != 0) throw PreconditionError("pairwise base case expects a point");
        return p.sign;
    }
    // Intersect everything into the first piece and recurse inside it, with
    // coordinates taken in its reference basis.  Since the new ambient
    // orientation is the first piece's reference basis rather than its
    // oriented basis, the result picks up sign(piece_1)^(r-2).
    const OrientedPiece& first = pieces[0];
    int m1 = first.dirs.cols;
    std::vector<OrientedPiece> inner;
    inner.reserve(r - 1);
    for (int i = 1; i < r; ++i) {
        OrientedPiece q = oriented_intersection_piece(first, pieces[i], d);
        QMat X(m1, q.dirs.cols);
        for (int c = 0; c < q.dirs.cols; ++c) {
            auto sol = solve_general(first.dirs, q.dirs.column(c));
            if (!sol.consistent) throw DegeneracyError("piece escapes the first hull");
            for (int t = 0; t < m1; ++t) X.at(t, c) = sol.particular[t];
        }
        inner.push_back({X, q.sign});
    }
    return pow_sign(first.sign, r - 2) * restriction_sign(inner, m1);
}
}  // namespace detail

/// The r-fold sign computed by restricting to the first factor's hull and
/// recursing on the pairwise oriented intersections.  Agrees with
/// r_fold_sign on every transverse instance.
inline int sign_via_restriction(const std::vector<AffineSimplex>& simplices, const QVec& y) {
    int r = static_cast<int>(simplices.size());
    if (r < 2) throw PreconditionError("sign_via_restriction needs r >= 2 factors");
    detail::require_point_in_hulls(simplices, y);
    int d = static_cast<int>(y.size());
    std::vector<OrientedPiece> pieces;
    pieces.reserve(r);
    long long total = 0;
    for (const auto& s : simplices) {
        pieces.push_back({s.edge_matrix(), s.sign});
        total += s.dim();
    }
    if (total != static_cast<long long>(d) * (r - 1))
        throw PreconditionError("sign_via_restriction: dimensions do not sum to d(r-1)");
    return detail::restriction_sign(pieces, d);
}

// ---------------------------------------------------------------------------
// Affine chains and intersection numbers.
// ---------------------------------------------------------------------------

/// Formal integer combination of oriented affine simplices of one dimension.
struct AffineChain {
    std::vector<std::pair<Int, AffineSimplex>> terms;

    int dim() const { return terms.empty() ? -1 : terms[0].second.dim(); }
};

/// Boundary of a chain of dimension >= 1; simplex signs are folded into the
/// coefficients, facet simplices keep reference orientation.
inline AffineChain chain_boundary(const AffineChain& c) {
    AffineChain out;
    for (const auto& [coef, s] : c.terms) {
        int m = s.dim();
        if (m < 1) throw PreconditionError("boundary of a dim-0 chain");
        for (int i = 0; i <= m; ++i) {
            AffineSimplex facet;
            facet.sign = +1;
            for (int j = 0; j <= m; ++j)
                if (j != i) facet.pts.push_back(s.pts[j]);
            Int f = coef * s.sign * ((i % 2 == 0) ? 1 : -1);
            out.terms.push_back({f, facet});
        }
    }
    return out;
}

/// Common point of the affine hulls of r simplices with sum of dims d(r-1),
/// all m_i <= d, together with each factor's barycentric coordinates.
/// Returns nullopt when the hull point is strictly outside some factor;
/// throws DegeneracyError when the hull system is singular or some
/// barycentric coordinate vanishes exactly.
inline std::optional<std::pair<QVec, std::vector<QVec>>> intersection_point(
    const std::vector<AffineSimplex>& simplices, int d) {
    int r = static_cast<int>(simplices.size());
    if (r < 2) throw PreconditionError("intersection_point needs r >= 2 factors");
    std::vector<QMat> B(r);
    std::vector<int> dims(r);
    long long total = 0;
    for (int i = 0; i < r; ++i) {
        if (simplices[i].ambient_dim() != d) throw PreconditionError("ambient dimension mismatch");
        B[i] = simplices[i].edge_matrix();
        dims[i] = B[i].cols;
        if (dims[i] > d) throw PreconditionError("intersection_point needs every m_i <= d");
        total += dims[i];
    }
    if (total != static_cast<long long>(d) * (r - 1))
        throw PreconditionError("intersection_point: dimensions do not sum to d(r-1)");

    // Unknowns: affine parameters t_i in Q^{m_i}; equations for i = 2..r:
    //   B_1 t_1 - B_i t_i = p_{i,0} - p_{1,0}   (d rows each).
    int ncols = static_cast<int>(total);
    int nrows = d * (r - 1);
    QMat M(nrows, ncols);
    QVec rhs(nrows);
    std::vector<int> offset(r);
    for (int i = 1; i < r; ++i) offset[i] = offset[i - 1] + dims[i - 1];
    for (int i = 1; i < r; ++i) {
        int row0 = d * (i - 1);
        for (int row = 0; row < d; ++row) {
            for (int j = 0; j < dims[0]; ++j) M.at(row0 + row, offset[0] + j) = B[0].at(row, j);
            for (int j = 0; j < dims[i]; ++j) M.at(row0 + row, offset[i] + j) = -B[i].at(row, j);
            rhs[row0 + row] = simplices[i].pts[0][row] - simplices[0].pts[0][row];
        }
    }
    auto t = solve_square(std::move(M), std::move(rhs));
    if (!t) throw DegeneracyError("affine hulls not in general position");

    QVec y(d);
    for (int row = 0; row < d; ++row) {
        Rat acc = simplices[0].pts[0][row];
        for (int j = 0; j < dims[0]; ++j) acc += B[0].at(row, j) * (*t)[offset[0] + j];
        y[row] = acc;
    }
    std::vector<QVec> bary(r);
    bool outside = false;
    for (int i = 0; i < r; ++i) {
        QVec lam(dims[i] + 1);
        Rat rest = 0;
        for (int j = 0; j < dims[i]; ++j) {
            lam[j + 1] = (*t)[offset[i] + j];
            rest += lam[j + 1];
        }
        lam[0] = 1 - rest;
        for (const Rat& l : lam) {
            int s = sign_of(l);
            if (s == 0) throw DegeneracyError("intersection point hits a simplex boundary");
            if (s < 0) outside = true;
        }
        bary[i] = std::move(lam);
    }
    if (outside) return std::nullopt;
    return std::make_pair(std::move(y), std::move(bary));
}

/// Total intersection number of r chains whose dimensions sum to d(r-1):
/// the sum over cross terms of coefficient products times the r-fold sign of
/// the term at its common interior point (0 when there is none).  Throws on
/// a non-transverse cross term.
inline Int intersection_number(const std::vector<AffineChain>& chains, int d) {
    int r = static_cast<int>(chains.size());
    if (r < 2) throw PreconditionError("intersection_number needs r >= 2 chains");
    long long total = 0;
    for (const auto& c : chains) {
        if (c.terms.empty()) return 0;
        for (const auto& [coef, s] : c.terms)
            if (s.dim() != c.dim()) throw PreconditionError("mixed dimensions within a chain");
        total += c.dim();
    }
    if (total != static_cast<long long>(d) * (r - 1))
        throw PreconditionError("intersection_number: dimensions do not sum to d(r-1)");

    Int acc = 0;
    std::vector<std::size_t> idx(r, 0);
    while (true) {
        std::vector<AffineSimplex> tuple;
        Int coef = 1;
        tuple.reserve(r);
        for (int i = 0; i < r; ++i) {
            const auto& [ci, si] = chains[i].terms[idx[i]];
            coef *= ci;
            tuple.push_back(si);
        }
        if (sign_of(coef) != 0) {
            auto hit = intersection_point(tuple, d);
            if (hit) acc += coef * r_fold_sign(tuple, hit->first);
        }
        int pos = r - 1;
        while (pos >= 0 && ++idx[pos] == chains[pos].terms.size()) idx[pos--] = 0;
        if (pos < 0) break;
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Exact affine maps on complexes.
// ---------------------------------------------------------------------------

/// Vertex-wise rational map into Q^d, extended affinely on each simplex.
struct ExactAffineMap {
    int d = 0;
    std::vector<QVec> coords;  ///< coords[v] is the image of vertex v
};

/// Image of an abstract simplex as an oriented affine simplex.
inline AffineSimplex image_simplex(const ExactAffineMap& f, const Simplex& s, int sign = +1) {
    AffineSimplex out;
    out.sign = sign;
    out.pts.reserve(s.size());
    for (int v : s) {
        if (v < 0 || v >= static_cast<int>(f.coords.size()))
            throw PreconditionError("vertex id out of range for map");
        out.pts.push_back(f.coords[v]);
    }
    return out;
}

/// Deterministic sample of a vertex map with integer coordinates in
/// [0, box), resampling within the stream until all images are distinct.
inline ExactAffineMap sample_generic_map(const SimplicialComplex& K, int d, std::uint64_t seed,
                                         std::uint64_t box) {
    if (d < 1) throw PreconditionError("ambient dimension must be >= 1");
    if (box < 2) throw PreconditionError("coordinate box too small");
    std::uint64_t state = seed;
    for (int attempt = 0; attempt < 64; ++attempt) {
        ExactAffineMap f;
        f.d = d;
        f.coords.resize(K.vertex_count);
        for (int v = 0; v < K.vertex_count; ++v) {
            QVec p(d);
            for (int i = 0; i < d; ++i)
                p[i] = Rat(static_cast<unsigned long>(rng_below(state, box)));
            f.coords[v] = std::move(p);
        }
        bool distinct = true;
        for (int u = 0; u < K.vertex_count && distinct; ++u)
            for (int v = u + 1; v < K.vertex_count && distinct; ++v)
                if (f.coords[u] == f.coords[v]) distinct = false;
        if (distinct) return f;
    }
    throw DegeneracyError("could not sample distinct vertex images; box too small");
}

/// Canonical string form of a rational, "n" or "n/d".
inline std::string rat_to_string(const Rat& x) {
    Rat c = x;
    c.canonicalize();
    std::string s = c.get_num().get_str();
    if (c.get_den() != 1) s += "/" + c.get_den().get_str();
    return s;
}

/// Parses "n" or "n/d" (exact, arbitrary precision).
inline Rat rat_from_string(const std::string& s) {
    if (s.empty()) throw InputError("empty rational literal");
    for (char ch : s)
        if (!(std::isdigit(static_cast<unsigned char>(ch)) || ch == '-' || ch == '/'))
            throw InputError("bad rational literal: " + s);
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw InputError("bad rational literal: " + s);
    if (q.get_den() == 0) throw InputError("zero denominator: " + s);
    q.canonicalize();
    return q;
}

}  // namespace dpc
