#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

#include "dpc/complex.hpp"
#include "dpc/util.hpp"

namespace dpc {

/// Cell of the r-fold deleted product: an ordered tuple of pairwise
/// vertex-disjoint simplices of K.  Its dimension is the sum of the factor
/// dimensions; its reference orientation is the product of the factors'
/// increasing-vertex-order orientations, in tuple order.
struct DeletedProductCell {
    std::vector<Simplex> factors;

    int dim() const {
        int s = 0;
        for (const auto& f : factors) s += static_cast<int>(f.size()) - 1;
        return s;
    }
    std::vector<int> dims() const {
        std::vector<int> out;
        out.reserve(factors.size());
        for (const auto& f : factors) out.push_back(static_cast<int>(f.size()) - 1);
        return out;
    }
    bool operator==(const DeletedProductCell& o) const { return factors == o.factors; }
    bool operator<(const DeletedProductCell& o) const { return factors < o.factors; }
};

/// All cells of the given total dimension, as ordered r-tuples of pairwise
/// disjoint faces, in lexicographic order over the face order of K.
inline std::vector<DeletedProductCell> enumerate_cells(const SimplicialComplex& K, int r,
                                                       int dim) {
    if (r < 2) throw PreconditionError("deleted product needs r >= 2");
    if (dim < 0) throw PreconditionError("cell dimension must be nonnegative");
    std::vector<Simplex> faces = all_faces_lex(K);
    std::vector<std::uint64_t> masks(faces.size());
    int max_face_dim = 0;
    for (std::size_t i = 0; i < faces.size(); ++i) {
        masks[i] = vertex_mask(faces[i]);
        max_face_dim = std::max(max_face_dim, static_cast<int>(faces[i].size()) - 1);
    }
    std::vector<DeletedProductCell> out;
    std::vector<Simplex> chosen;
    auto rec = [&](auto&& self, int slot, std::uint64_t used, int remaining) -> void {
        if (slot == r) {
            if (remaining == 0) out.push_back({chosen});
            return;
        }
        int slots_left = r - slot;
        if (remaining > max_face_dim * slots_left) return;
        for (std::size_t i = 0; i < faces.size(); ++i) {
            int m = static_cast<int>(faces[i].size()) - 1;
            if (m > remaining) continue;
            if (masks[i] & used) continue;
            chosen.push_back(faces[i]);
            self(self, slot + 1, used | masks[i], remaining - m);
            chosen.pop_back();
        }
    };
    rec(rec, 0, 0, dim);
    return out;
}

/// Counts cells of the given dimension without materializing them, aborting
/// once the count exceeds `cap`.
inline long long count_cells_of_dim(const SimplicialComplex& K, int r, int dim, long long cap) {
    if (r < 2) throw PreconditionError("deleted product needs r >= 2");
    if (dim < 0) return 0;
    std::vector<Simplex> faces = all_faces_lex(K);
    std::vector<std::uint64_t> masks(faces.size());
    std::vector<int> fdims(faces.size());
    int max_face_dim = 0;
    for (std::size_t i = 0; i < faces.size(); ++i) {
        masks[i] = vertex_mask(faces[i]);
        fdims[i] = static_cast<int>(faces[i].size()) - 1;
        max_face_dim = std::max(max_face_dim, fdims[i]);
    }
    long long count = 0;
    auto rec = [&](auto&& self, int slot, std::uint64_t used, int remaining) -> void {
        if (slot == r) {
            if (remaining == 0 && ++count > cap)
                throw ResourceLimitError("deleted-product cell count exceeds the budget");
            return;
        }
        if (remaining > max_face_dim * (r - slot)) return;
        for (std::size_t i = 0; i < faces.size(); ++i) {
            if (fdims[i] > remaining) continue;
            if (masks[i] & used) continue;
            self(self, slot + 1, used | masks[i], remaining - fdims[i]);
        }
    };
    rec(rec, 0, 0, dim);
    return count;
}

/// Whether any cell of the given dimension exists (early-exit enumeration).
inline bool any_cell_of_dim(const SimplicialComplex& K, int r, int dim) {
    if (r < 2) throw PreconditionError("deleted product needs r >= 2");
    if (dim < 0) return false;
    std::vector<Simplex> faces = all_faces_lex(K);
    std::vector<std::uint64_t> masks(faces.size());
    int max_face_dim = 0;
    for (std::size_t i = 0; i < faces.size(); ++i) {
        masks[i] = vertex_mask(faces[i]);
        max_face_dim = std::max(max_face_dim, static_cast<int>(faces[i].size()) - 1);
    }
    auto rec = [&](auto&& self, int slot, std::uint64_t used, int remaining) -> bool {
        if (slot == r) return remaining == 0;
        if (remaining > max_face_dim * (r - slot)) return false;
        for (std::size_t i = 0; i < faces.size(); ++i) {
            int m = static_cast<int>(faces[i].size()) - 1;
            if (m > remaining) continue;
            if (masks[i] & used) continue;
            if (self(self, slot + 1, used | masks[i], remaining - m)) return true;
        }
        return false;
    };
    return rec(rec, 0, 0, dim);
}

/// Parity sign of a permutation given in one-line form.
inline int permutation_sign(const std::vector<int>& perm) {
    int inv = 0;
    int r = static_cast<int>(perm.size());
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j)
            if (perm[i] > perm[j]) ++inv;
    return (inv % 2 == 0) ? +1 : -1;
}

/// Applies a factor permutation: new_factors[i] = factors[perm[i]].  Returns
/// the permuted cell together with the orientation sign picked up by
/// reordering the product factors, (-1)^{sum of m_a m_b over inversions}.
inline std::pair<DeletedProductCell, int> permute(const DeletedProductCell& cell,
                                                  const std::vector<int>& perm) {
    int r = static_cast<int>(cell.factors.size());
    if (static_cast<int>(perm.size()) != r) throw PreconditionError("permutation size mismatch");
    DeletedProductCell out;
    out.factors.resize(r);
    for (int i = 0; i < r; ++i) out.factors[i] = cell.factors[perm[i]];
    std::vector<int> dims = cell.dims();
    long long exp = 0;
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j)
            if (perm[i] > perm[j])
                exp += static_cast<long long>(dims[perm[i]]) * dims[perm[j]];
    return {out, (exp % 2 == 0) ? +1 : -1};
}

/// Sign twisting the coefficient under the symmetric-group action when the
/// target dimension is d: sign(perm)^d.
inline int coefficient_action(const std::vector<int>& perm, int d) {
    int s = permutation_sign(perm);
    return (d % 2 == 0) ? +1 : s;
}

/// Canonical representative of a cell's orbit (factors sorted
/// lexicographically) together with the total orientation-and-coefficient
/// twist relating the cell's value to the representative's value.
inline std::pair<DeletedProductCell, int> canonicalize(const DeletedProductCell& cell, int d) {
    int r = static_cast<int>(cell.factors.size());
    std::vector<int> perm(r);
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(),
              [&](int a, int b) { return cell.factors[a] < cell.factors[b]; });
    auto [rep, reorder] = permute(cell, perm);
    return {rep, reorder * coefficient_action(perm, d)};
}

/// Boundary of a cell: factor i contributes its combinatorial boundary with
/// the product-complex prefix sign (-1)^{m_1 + ... + m_{i-1}}.
inline std::vector<std::pair<int, DeletedProductCell>> cell_boundary(
    const DeletedProductCell& cell) {
    std::vector<std::pair<int, DeletedProductCell>> out;
    int r = static_cast<int>(cell.factors.size());
    int prefix = +1;
    for (int i = 0; i < r; ++i) {
        int m = static_cast<int>(cell.factors[i].size()) - 1;
        if (m >= 1) {
            for (const auto& facet : combinatorial_boundary({cell.factors[i], +1})) {
                DeletedProductCell c = cell;
                c.factors[i] = facet.simplex;
                out.push_back({prefix * facet.sign, c});
            }
        }
        if (m % 2 == 1) prefix = -prefix;
    }
    return out;
}

/// First-seen orbit representatives (canonical forms) of a list of cells, in
/// the order their orbits first appear.
inline std::vector<DeletedProductCell> orbit_representatives(
    const std::vector<DeletedProductCell>& cells) {
    std::vector<DeletedProductCell> reps;
    std::set<std::vector<Simplex>> seen;
    for (const auto& c : cells) {
        std::vector<Simplex> key = c.factors;
        std::sort(key.begin(), key.end());
        if (seen.insert(key).second) reps.push_back({key});
    }
    return reps;
}

}  // namespace dpc
