#pragma once

#include <algorithm>
#include <climits>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "dpc/cocycle.hpp"
#include "dpc/complex.hpp"
#include "dpc/exactgeo.hpp"
#include "dpc/snf.hpp"
#include "dpc/util.hpp"

namespace dpc {

// ---------------------------------------------------------------------------
// The colorful complex and its prismatic configuration space.
// ---------------------------------------------------------------------------

/// Parameters of the prismatic construction: r threads, prism height
/// dimension k, simplex dimension m = (r-1)k, and N+1 = r(m+1) vertices
/// arranged in r classes of m+1 colors.  Vertex (class i0, color j) has id
/// j*r + i0.
struct ColorScheme {
    int r = 2, k = 1;

    ColorScheme() = default;
    ColorScheme(int r_, int k_) : r(r_), k(k_) {
        if (r < 2 || k < 1) throw PreconditionError("color scheme needs r >= 2, k >= 1");
    }
    int m() const { return (r - 1) * k; }
    int N() const { return (r * k + 1) * (r - 1); }
    int vertex_count() const { return r * (m() + 1); }
    int vertex_id(int class_i0, int color_j) const { return color_j * r + class_i0; }
    int class_of(int vid) const { return vid % r; }
    int color_of(int vid) const { return vid / r; }
};

/// The join-of-classes complex: simplices pick at most one vertex per color.
/// Maximal faces pick one vertex of every color (r^(m+1) of them).
inline SimplicialComplex build_colorful_complex(const ColorScheme& sc) {
    int m = sc.m();
    std::vector<std::vector<int>> maximal;
    std::vector<int> choice(m + 1, 0);
    while (true) {
        std::vector<int> simplex;
        for (int j = 0; j <= m; ++j) simplex.push_back(sc.vertex_id(choice[j], j));
        maximal.push_back(simplex);
        int pos = m;
        while (pos >= 0 && ++choice[pos] == sc.r) choice[pos--] = 0;
        if (pos < 0) break;
    }
    return from_maximal(sc.vertex_count(), maximal);
}

/// Cell of the prismatic configuration space: a set of colors J (ascending)
/// and one thread-assignment permutation per color.  Thread i occupies, at
/// color J[jj], the vertex of class perms[jj][i]; the cell itself is a
/// simplex on the colors J (all threads share its barycentric parameter).
struct PrismCell {
    std::vector<int> colors;
    std::vector<std::vector<int>> perms;

    int dim() const { return static_cast<int>(colors.size()) - 1; }
    bool operator==(const PrismCell& o) const { return colors == o.colors && perms == o.perms; }
    bool operator<(const PrismCell& o) const {
        if (colors != o.colors) return colors < o.colors;
        return perms < o.perms;
    }
};

inline std::vector<std::vector<int>> all_permutations(int r) {
    std::vector<int> p(r);
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> out;
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

namespace detail {
inline std::vector<std::vector<int>> color_subsets(int m, int q) {
    // Ascending (q+1)-subsets of {0..m} in lexicographic order.
    std::vector<std::vector<int>> out;
    std::vector<int> pick;
    auto rec = [&](auto&& self, int from) -> void {
        if (static_cast<int>(pick.size()) == q + 1) {
            out.push_back(pick);
            return;
        }
        for (int c = from; c <= m; ++c) {
            pick.push_back(c);
            self(self, c + 1);
            pick.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

inline void enumerate_prism_cells(const ColorScheme& sc, int q, bool reps_only,
                                  std::vector<PrismCell>& out) {
    if (q < 0 || q > sc.m()) return;
    std::vector<std::vector<int>> perms = all_permutations(sc.r);
    std::vector<int> id(sc.r);
    std::iota(id.begin(), id.end(), 0);
    for (const auto& J : color_subsets(sc.m(), q)) {
        std::vector<std::size_t> odo(q + 1, 0);
        while (true) {
            PrismCell cell;
            cell.colors = J;
            cell.perms.resize(q + 1);
            bool ok = true;
            for (int jj = 0; jj <= q; ++jj) {
                if (reps_only && jj == 0) {
                    cell.perms[0] = id;
                } else {
                    cell.perms[jj] = perms[odo[jj]];
                }
            }
            if (ok) out.push_back(std::move(cell));
            int pos = q;
            int lowest = reps_only ? 1 : 0;
            while (pos >= lowest && ++odo[pos] == perms.size()) odo[pos--] = 0;
            if (pos < lowest) break;
        }
    }
}
}  // namespace detail

/// All q-cells of the configuration space, deterministic order.
inline std::vector<PrismCell> cells_of_X(const ColorScheme& sc, int q) {
    std::vector<PrismCell> out;
    detail::enumerate_prism_cells(sc, q, false, out);
    return out;
}

/// Canonical orbit representatives (first color's permutation the identity).
inline std::vector<PrismCell> x_orbit_reps(const ColorScheme& sc, int q) {
    std::vector<PrismCell> out;
    detail::enumerate_prism_cells(sc, q, true, out);
    return out;
}

/// The r pairwise-disjoint simplices of the colorful complex traced out by a
/// cell's threads, in thread order.
inline std::vector<Simplex> cell_to_simplices(const PrismCell& cell, const ColorScheme& sc) {
    std::vector<Simplex> out(sc.r);
    for (int i = 0; i < sc.r; ++i) {
        Simplex s;
        for (std::size_t jj = 0; jj < cell.colors.size(); ++jj)
            s.push_back(sc.vertex_id(cell.perms[jj][i], cell.colors[jj]));
        out[i] = s;  // ids ascend with color, so already sorted
    }
    return out;
}

/// Inverse of cell_to_simplices: decodes a tuple of pairwise disjoint
/// same-color-set simplices back into a cell (thread order preserved).
inline PrismCell cell_from_simplices(const std::vector<Simplex>& tuple, const ColorScheme& sc) {
    if (static_cast<int>(tuple.size()) != sc.r)
        throw PreconditionError("expected one simplex per thread");
    PrismCell cell;
    for (int v : tuple[0]) cell.colors.push_back(sc.color_of(v));
    cell.perms.assign(cell.colors.size(), std::vector<int>(sc.r, -1));
    for (int i = 0; i < sc.r; ++i) {
        if (tuple[i].size() != cell.colors.size())
            throw PreconditionError("threads use different color counts");
        for (std::size_t jj = 0; jj < tuple[i].size(); ++jj) {
            int v = tuple[i][jj];
            if (sc.color_of(v) != cell.colors[jj])
                throw PreconditionError("threads use different color sets");
            cell.perms[jj][i] = sc.class_of(v);
        }
    }
    for (const auto& p : cell.perms) {
        std::vector<bool> seen(sc.r, false);
        for (int c : p) {
            if (c < 0 || c >= sc.r || seen[c])
                throw PreconditionError("threads collide at a color");
            seen[c] = true;
        }
    }
    return cell;
}

/// Right action of a thread permutation: new thread i is old thread pi[i].
inline PrismCell x_group_action(const PrismCell& cell, const std::vector<int>& pi) {
    PrismCell out;
    out.colors = cell.colors;
    out.perms.resize(cell.perms.size());
    for (std::size_t jj = 0; jj < cell.perms.size(); ++jj) {
        out.perms[jj].resize(pi.size());
        for (std::size_t i = 0; i < pi.size(); ++i) out.perms[jj][i] = cell.perms[jj][pi[i]];
    }
    return out;
}

/// Canonical representative of a cell's orbit plus the coefficient twist:
/// cochain value on the cell equals twist times the value on the
/// representative, twist = sign(first color's permutation)^k.
inline std::pair<PrismCell, int> x_canonicalize(const PrismCell& cell, int k) {
    const std::vector<int>& p0 = cell.perms.at(0);
    int r = static_cast<int>(p0.size());
    std::vector<int> inv(r);
    for (int i = 0; i < r; ++i) inv[p0[i]] = i;
    PrismCell rep = x_group_action(cell, inv);
    int twist = pow_sign(permutation_sign(p0), k);
    return {rep, twist};
}

/// Cellular boundary: dropping color position jj carries sign (-1)^jj.
inline std::vector<std::pair<int, PrismCell>> x_cell_boundary(const PrismCell& cell) {
    int q = cell.dim();
    if (q < 1) throw PreconditionError("boundary of a dim-0 cell");
    std::vector<std::pair<int, PrismCell>> out;
    for (int jj = 0; jj <= q; ++jj) {
        PrismCell face;
        for (int t = 0; t <= q; ++t) {
            if (t == jj) continue;
            face.colors.push_back(cell.colors[t]);
            face.perms.push_back(cell.perms[t]);
        }
        out.push_back({(jj % 2 == 0) ? +1 : -1, face});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Height data, the embedding, and the prismatic conditions.
// ---------------------------------------------------------------------------

/// Height vectors h[class][color] in the open standard k-simplex
/// (k positive Cartesian coordinates summing below 1).
struct PrismaticHeights {
    int r = 2, k = 1;
    std::vector<std::vector<QVec>> h;
};

inline bool height_interior(const QVec& x) {
    Rat sum = 0;
    for (const Rat& c : x) {
        if (sign_of(c) <= 0) return false;
        sum += c;
    }
    return sum < 1;
}

/// Deterministic interior heights: k+1 positive integer weights normalized.
inline PrismaticHeights sample_prismatic_heights(const ColorScheme& sc, std::uint64_t seed) {
    PrismaticHeights H;
    H.r = sc.r;
    H.k = sc.k;
    std::uint64_t state = seed;
    H.h.assign(sc.r, std::vector<QVec>(sc.m() + 1));
    for (int i0 = 0; i0 < sc.r; ++i0)
        for (int j = 0; j <= sc.m(); ++j) {
            std::vector<unsigned long> w(sc.k + 1);
            unsigned long total = 0;
            for (int t = 0; t <= sc.k; ++t) {
                w[t] = static_cast<unsigned long>(rng_below(state, 1000)) + 1;
                total += w[t];
            }
            QVec x(sc.k);
            for (int t = 1; t <= sc.k; ++t) x[t - 1] = Rat(w[t], total);
            for (Rat& c : x) c.canonicalize();
            H.h[i0][j] = x;
        }
    return H;
}

/// The regular embedding determined by heights: vertex (class i0, color j)
/// goes to (u_j, h[i0][j]) in Q^(m+k) = Q^(rk), where u_0 = 0 and u_j = e_j.
inline ExactAffineMap prism_embedding_map(const ColorScheme& sc, const PrismaticHeights& H) {
    if (H.r != sc.r || H.k != sc.k) throw PreconditionError("height shape mismatch");
    int m = sc.m(), d = m + sc.k;
    ExactAffineMap f;
    f.d = d;
    f.coords.assign(sc.vertex_count(), QVec(d, Rat(0)));
    for (int i0 = 0; i0 < sc.r; ++i0)
        for (int j = 0; j <= m; ++j) {
            if (static_cast<int>(H.h[i0][j].size()) != sc.k)
                throw PreconditionError("height vector has wrong length");
            QVec& p = f.coords[sc.vertex_id(i0, j)];
            if (j > 0) p[j - 1] = 1;
            for (int t = 0; t < sc.k; ++t) p[m + t] = H.h[i0][j][t];
        }
    return f;
}

/// Verdict of the prismatic-map conditions.
struct PrismaticCheckReport {
    bool reg = false;  ///< splits as (color projection, heights)
    bool pr1 = false;  ///< interiors project into open cells of the base
    bool pr2 = false;  ///< injective on every colorful simplex
    bool pr3 = false;  ///< intersections have the expected dimension
    std::string detail;

    bool prismatic() const { return pr1 && pr2 && pr3; }
    bool regular_prismatic() const { return prismatic() && reg; }
};

namespace detail {
/// Intersection dimension of the affine hulls of image simplices
/// (-1 when empty); simplices given by their vertex image lists.
inline int hull_intersection_dim(const std::vector<std::vector<QVec>>& tuples, int d) {
    int s = static_cast<int>(tuples.size());
    if (s == 1) {
        QMat B(d, static_cast<int>(tuples[0].size()) - 1);
        for (int c = 1; c < static_cast<int>(tuples[0].size()); ++c)
            for (int i = 0; i < d; ++i) B.at(i, c - 1) = tuples[0][c][i] - tuples[0][0][i];
        return rank_of(B);
    }
    int cols = 0;
    std::vector<int> dims(s), offset(s, 0);
    for (int i = 0; i < s; ++i) {
        dims[i] = static_cast<int>(tuples[i].size()) - 1;
        cols += dims[i];
    }
    for (int i = 1; i < s; ++i) offset[i] = offset[i - 1] + dims[i - 1];
    QMat M(d * (s - 1), cols);
    QVec rhs(d * (s - 1));
    for (int i = 1; i < s; ++i) {
        int row0 = d * (i - 1);
        for (int row = 0; row < d; ++row) {
            for (int j = 0; j < dims[0]; ++j)
                M.at(row0 + row, offset[0] + j) = tuples[0][j + 1][row] - tuples[0][0][row];
            for (int j = 0; j < dims[i]; ++j)
                M.at(row0 + row, offset[i] + j) = -(tuples[i][j + 1][row] - tuples[i][0][row]);
            rhs[row0 + row] = tuples[i][0][row] - tuples[0][0][row];
        }
    }
    auto sol = solve_general(M, rhs);
    if (!sol.consistent) return -1;
    // Solution-space dimension projected to the first factor's parameters:
    // the common-point set is p(t_1) over all solutions; its dimension is
    // the rank of the kernel restricted to the t_1 coordinates.
    if (sol.kernel.empty()) return 0;
    QMat Kmat(dims[0], static_cast<int>(sol.kernel.size()));
    for (int c = 0; c < Kmat.cols; ++c)
        for (int i = 0; i < dims[0]; ++i) Kmat.at(i, c) = sol.kernel[c][offset[0] + i];
    return rank_of(Kmat);
}

/// Enumerates size-s tuples of pairwise vertex-disjoint colorful simplices
/// over a fixed color subset and calls fn on each (by thread class rows).
/// Each tuple member owns its working row so outer loops resume intact after
/// deeper members have been explored.
template <typename Fn>
inline void for_disjoint_colorful_tuples(const ColorScheme& sc, const std::vector<int>& W, int s,
                                         Fn&& fn) {
    int w = static_cast<int>(W.size());
    std::vector<std::vector<int>> chosen;  // chosen[t][jj] = class at color W[jj]
    std::vector<std::vector<bool>> used(w, std::vector<bool>(sc.r, false));
    auto build = [&](auto&& self, std::vector<int>& cur, int jj) -> void {
        if (jj == w) {
            chosen.push_back(cur);
            for (int t = 0; t < w; ++t) used[t][cur[t]] = true;
            if (static_cast<int>(chosen.size()) == s) {
                fn(chosen);
            } else {
                std::vector<int> next(w, 0);
                self(self, next, 0);
            }
            for (int t = 0; t < w; ++t) used[t][cur[t]] = false;
            chosen.pop_back();
            return;
        }
        for (int c = 0; c < sc.r; ++c) {
            if (used[jj][c]) continue;
            // Enforce ascending first-color class between tuple members so
            // unordered tuples are visited once.
            if (jj == 0 && !chosen.empty() && c <= chosen.back()[0]) continue;
            cur[jj] = c;
            self(self, cur, jj + 1);
        }
    };
    std::vector<int> first(w, 0);
    build(build, first, 0);
}
}  // namespace detail

/// Checks the prismatic conditions for an arbitrary vertex map on the
/// colorful complex.  The regular form (image = (u_color, height) with the
/// height interior) is required for the interior-projection condition; the
/// injectivity and general-position conditions are checked on the actual
/// images over every color subset and every tuple size 1..r.
inline PrismaticCheckReport check_prismatic_images(const ColorScheme& sc,
                                                   const ExactAffineMap& f) {
    PrismaticCheckReport rep;
    int m = sc.m(), d = m + sc.k;
    if (f.d != d || static_cast<int>(f.coords.size()) != sc.vertex_count()) {
        rep.detail = "map shape mismatch";
        return rep;
    }
    // Regular form: the first m coordinates of every vertex image must be
    // the base vertex of its color, and the height part interior.
    rep.reg = true;
    rep.pr1 = true;
    for (int i0 = 0; i0 < sc.r && rep.reg; ++i0)
        for (int j = 0; j <= m && rep.reg; ++j) {
            const QVec& p = f.coords[sc.vertex_id(i0, j)];
            for (int t = 0; t < m; ++t) {
                Rat expected = (j > 0 && t == j - 1) ? 1 : 0;
                if (p[t] != expected) { rep.reg = false; break; }
            }
            if (rep.reg) {
                QVec h(p.begin() + m, p.end());
                if (!height_interior(h)) { rep.pr1 = false; }
            }
        }
    if (!rep.reg) {
        rep.pr1 = false;
        rep.detail = "image does not split as (color projection, interior height)";
    }
    // Injectivity on colorful simplices: vertex images affinely independent.
    rep.pr2 = true;
    for (int q = 0; q <= m && rep.pr2; ++q)
        for (const auto& W : detail::color_subsets(m, q)) {
            bool ok = true;
            detail::for_disjoint_colorful_tuples(sc, W, 1, [&](const auto& chosen) {
                if (!ok) return;
                std::vector<QVec> pts;
                for (int jj = 0; jj <= q; ++jj)
                    pts.push_back(f.coords[sc.vertex_id(chosen[0][jj], W[jj])]);
                std::vector<std::vector<QVec>> one = {pts};
                if (detail::hull_intersection_dim(one, d) != q) ok = false;
            });
            if (!ok) { rep.pr2 = false; break; }
        }
    // General position: over every color subset W (|W| = q+1) and every
    // tuple of 2..r pairwise disjoint colorful simplices on W, the affine
    // hulls of the images intersect in dimension max(-1, q - (s-1)k).
    rep.pr3 = rep.pr2;
    for (int q = 0; q <= m && rep.pr3; ++q) {
        for (const auto& W : detail::color_subsets(m, q)) {
            for (int s = 2; s <= sc.r && rep.pr3; ++s) {
                int expected = std::max(-1, q - (s - 1) * sc.k);
                detail::for_disjoint_colorful_tuples(sc, W, s, [&](const auto& chosen) {
                    if (!rep.pr3) return;
                    std::vector<std::vector<QVec>> tuples;
                    for (const auto& rowc : chosen) {
                        std::vector<QVec> pts;
                        for (int jj = 0; jj <= q; ++jj)
                            pts.push_back(f.coords[sc.vertex_id(rowc[jj], W[jj])]);
                        tuples.push_back(std::move(pts));
                    }
                    if (detail::hull_intersection_dim(tuples, d) != expected) rep.pr3 = false;
                });
            }
            if (!rep.pr3) break;
        }
    }
    if (rep.detail.empty() && !rep.prismatic()) rep.detail = "a prismatic condition failed";
    return rep;
}

/// Convenience form for height data (the regular embedding it determines).
inline PrismaticCheckReport check_prismatic_heights(const ColorScheme& sc,
                                                    const PrismaticHeights& H) {
    return check_prismatic_images(sc, prism_embedding_map(sc, H));
}

// ---------------------------------------------------------------------------
// The prismatic cocycle and obstruction system.
// ---------------------------------------------------------------------------

/// The comparison sign for the prismatic normal form:
/// epsilon_rk(r, k) * (-1)^(k^2 (r-1) C(r+1,2) + k (r-1)).
inline int epsilon_pris(int r, int k) {
    long long kk = k, rr = r;
    long long e = kk * kk * (rr - 1) * (rr * (rr + 1) / 2) + kk * (rr - 1);
    return epsilon_rk(r, k) * (e % 2 == 0 ? +1 : -1);
}

/// Cochain on top cells of the configuration space, stored on canonical
/// representatives.
struct PrismaticCocycle {
    int k = 1;
    std::map<PrismCell, long long> values;
};

inline long long eval_prismatic(const PrismaticCocycle& phi, const PrismCell& cell) {
    auto [rep, twist] = x_canonicalize(cell, phi.k);
    auto it = phi.values.find(rep);
    return it == phi.values.end() ? 0 : twist * it->second;
}

/// Sign of the stacked height-difference block matrix of a top cell: rows
/// are thread blocks [A_i | I_k] with A_i's column j-1 (j = 1..m) the height
/// difference h[class at color j][j] - h[class at color 0][0] of thread i.
/// Equals epsilon_pris * (the r-fold sign at a populated cell).
inline int diagonal_block_sign(const PrismCell& cell, const ColorScheme& sc,
                               const PrismaticHeights& H) {
    int m = sc.m(), k = sc.k, r = sc.r;
    if (cell.dim() != m) throw PreconditionError("top cell expected");
    QMat B(r * k, r * k);
    for (int i = 0; i < r; ++i) {
        int c0 = cell.perms[0][i];
        for (int j = 1; j <= m; ++j) {
            int cj = cell.perms[j][i];
            for (int t = 0; t < k; ++t)
                B.at(i * k + t, j - 1) = H.h[cj][j][t] - H.h[c0][0][t];
        }
        for (int t = 0; t < k; ++t) B.at(i * k + t, m + t) = 1;
    }
    return det_sign(B);
}

/// The intersection cochain of the regular embedding on top cells: value
/// epsilon_pris * (r-fold sign at the common interior point) on populated
/// representatives, 0 elsewhere.
inline PrismaticCocycle prismatic_cocycle(const ColorScheme& sc, const PrismaticHeights& H,
                                          int workers = 1) {
    ExactAffineMap f = prism_embedding_map(sc, H);
    int d = f.d;
    std::vector<PrismCell> reps = x_orbit_reps(sc, sc.m());
    std::vector<long long> vals(reps.size(), 0);
    int eps = epsilon_pris(sc.r, sc.k);
    parallel_for(reps.size(), workers, [&](std::size_t idx) {
        std::vector<AffineSimplex> images;
        for (const auto& s : cell_to_simplices(reps[idx], sc))
            images.push_back(image_simplex(f, s));
        auto hit = intersection_point(images, d);
        if (hit) vals[idx] = static_cast<long long>(eps) * r_fold_sign(images, hit->first);
    });
    PrismaticCocycle phi;
    phi.k = sc.k;
    for (std::size_t i = 0; i < reps.size(); ++i)
        if (vals[i] != 0) phi.values[reps[i]] = vals[i];
    return phi;
}

/// Number of top-cell orbits, (r!)^m, clamped to LLONG_MAX on overflow.
inline long long x_top_orbit_count(const ColorScheme& sc) {
    long long fact = 1;
    for (int i = 2; i <= sc.r; ++i) fact *= i;
    long long count = 1;
    for (int j = 0; j < sc.m(); ++j) {
        if (count > LLONG_MAX / fact) return LLONG_MAX;
        count *= fact;
    }
    return count;
}

/// Boundary-incidence system on the configuration space: rows are top-cell
/// representatives, columns codimension-1 representatives; the cochain of a
/// regular embedding is an equivariant coboundary iff A x = phi is solvable
/// over the integers.
struct XSolvabilitySystem {
    std::vector<PrismCell> top_reps;
    std::vector<PrismCell> codim_reps;
    IntMat A;
};

inline XSolvabilitySystem build_x_solvability_system(const ColorScheme& sc) {
    XSolvabilitySystem sys;
    int m = sc.m();
    sys.top_reps = x_orbit_reps(sc, m);
    sys.codim_reps = x_orbit_reps(sc, m - 1);
    std::map<PrismCell, int> col_of;
    for (std::size_t j = 0; j < sys.codim_reps.size(); ++j)
        col_of[sys.codim_reps[j]] = static_cast<int>(j);
    sys.A = IntMat(static_cast<int>(sys.top_reps.size()),
                   static_cast<int>(sys.codim_reps.size()));
    for (std::size_t i = 0; i < sys.top_reps.size(); ++i)
        for (const auto& [s, face] : x_cell_boundary(sys.top_reps[i])) {
            auto [rep, twist] = x_canonicalize(face, sc.k);
            auto it = col_of.find(rep);
            if (it == col_of.end()) throw std::logic_error("face orbit missing from system");
            sys.A.add(static_cast<int>(i), it->second, Int(s) * twist);
        }
    return sys;
}

/// Full obstruction decision for the prismatic configuration space.
struct PrismaticVerdict {
    bool vanishes = false;
    IntSolveResult solve;
    int rows = 0, cols = 0;
    long long populated_cells = 0;
    int attempts_used = 0;
    PrismaticHeights heights;
};

inline std::uint64_t derive_seed(std::uint64_t seed, int attempt) {
    std::uint64_t s = seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(attempt);
    return splitmix64(s);
}

inline PrismaticVerdict prismatic_obstruction(const ColorScheme& sc, std::uint64_t seed,
                                              long long max_orbits = 20000, int workers = 1,
                                              bool track_witness_rows = true) {
    if (x_top_orbit_count(sc) > max_orbits)
        throw ResourceLimitError("top-cell orbit count exceeds the configured budget");
    XSolvabilitySystem sys = build_x_solvability_system(sc);
    for (int attempt = 0; attempt < 64; ++attempt) {
        PrismaticHeights H = sample_prismatic_heights(sc, derive_seed(seed, attempt));
        try {
            PrismaticCheckReport chk = check_prismatic_heights(sc, H);
            if (!chk.regular_prismatic()) continue;  // resample (general position failed)
            PrismaticCocycle phi = prismatic_cocycle(sc, H, workers);
            std::vector<Int> v;
            v.reserve(sys.top_reps.size());
            for (const auto& repcell : sys.top_reps) {
                auto it = phi.values.find(repcell);
                v.push_back(it == phi.values.end() ? Int(0) : Int(static_cast<long>(it->second)));
            }
            PrismaticVerdict out;
            out.solve = solve_integer(sys.A, v, track_witness_rows);
            out.vanishes = out.solve.solvable;
            out.rows = sys.A.rows;
            out.cols = sys.A.cols;
            out.populated_cells = static_cast<long long>(phi.values.size());
            out.attempts_used = attempt + 1;
            out.heights = H;
            return out;
        } catch (const DegeneracyError&) {
            continue;
        }
    }
    throw DegeneracyError("no generic height sample found within the retry budget");
}

}  // namespace dpc
