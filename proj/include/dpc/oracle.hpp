#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "dpc/cocycle.hpp"
#include "dpc/complex.hpp"
#include "dpc/delprod.hpp"
#include "dpc/exactgeo.hpp"
#include "dpc/util.hpp"

namespace dpc {

/// One r-fold coincidence found by brute force: an unordered tuple of
/// pairwise disjoint faces (listed in lexicographic order) whose images
/// share an interior point.
struct TverbergHit {
    std::vector<Simplex> faces;
    QVec point;
    std::vector<int> type;  ///< sorted multiset of the face dimensions
    int sign = 0;           ///< r-fold intersection sign in lex factor order
};

/// Exhaustive scan over unordered r-tuples of pairwise disjoint faces with
/// dimension sum d(r-1).  Tuples whose factors all have dimension <= d are
/// decided by the exact interior-point test; tuples with an oversized factor
/// are ruled out by showing the small factors' hulls cannot share a point
/// (their codimensions sum past d), and any other outcome reports a
/// degenerate map.  Visits at most `max_tuples` tuples.
inline std::vector<TverbergHit> enumerate_tverberg(const SimplicialComplex& K, int r, int d,
                                                   const ExactAffineMap& f,
                                                   long long max_tuples = 1000000) {
    if (r < 2) throw PreconditionError("enumerate_tverberg needs r >= 2");
    if (f.d != d) throw PreconditionError("map target dimension mismatch");
    int n = d * (r - 1);
    std::vector<Simplex> faces = all_faces_lex(K);
    std::vector<std::uint64_t> masks(faces.size());
    int max_face_dim = 0;
    for (std::size_t i = 0; i < faces.size(); ++i) {
        masks[i] = vertex_mask(faces[i]);
        max_face_dim = std::max(max_face_dim, static_cast<int>(faces[i].size()) - 1);
    }
    std::vector<TverbergHit> hits;
    long long visited = 0;

    auto test_tuple = [&](const std::vector<int>& pick) {
        if (++visited > max_tuples)
            throw ResourceLimitError("tuple budget exhausted in brute-force scan");
        std::vector<AffineSimplex> images;
        std::vector<int> dims;
        bool oversized = false;
        images.reserve(r);
        for (int idx : pick) {
            images.push_back(image_simplex(f, faces[idx]));
            int m = images.back().dim();
            dims.push_back(m);
            if (m > d) oversized = true;
        }
        if (!oversized) {
            auto hit = intersection_point(images, d);
            if (!hit) return;
            TverbergHit h;
            for (int idx : pick) h.faces.push_back(faces[idx]);
            h.point = hit->first;
            h.type = dims;
            std::sort(h.type.begin(), h.type.end());
            h.sign = unraveled_sign(images);
            hits.push_back(std::move(h));
            return;
        }
        // Oversized factor: collect the hull constraints of the factors of
        // dimension <= d; their codimensions sum to more than d, so in
        // general position the combined system is inconsistent and no common
        // point can exist.  A consistent system means the map is degenerate.
        std::vector<int> small;
        for (int i = 0; i < r; ++i)
            if (dims[i] <= d) small.push_back(i);
        int rows = d * (static_cast<int>(small.size()) - 1);
        if (rows <= 0) {
            // A single small factor constrains nothing by itself; the
            // dimension count forbids this arrangement in general position.
            throw DegeneracyError("oversized tuple with a single bounded factor");
        }
        int cols = 0;
        for (int i : small) cols += dims[i];
        QMat M(rows, cols);
        QVec rhs(rows);
        std::vector<QMat> B;
        for (int i : small) B.push_back(images[i].edge_matrix());
        std::vector<int> offset(small.size(), 0);
        for (std::size_t i = 1; i < small.size(); ++i)
            offset[i] = offset[i - 1] + dims[small[i - 1]];
        for (std::size_t i = 1; i < small.size(); ++i) {
            int row0 = d * (static_cast<int>(i) - 1);
            for (int row = 0; row < d; ++row) {
                for (int j = 0; j < dims[small[0]]; ++j)
                    M.at(row0 + row, offset[0] + j) = B[0].at(row, j);
                for (int j = 0; j < dims[small[i]]; ++j)
                    M.at(row0 + row, offset[i] + j) = -B[i].at(row, j);
                rhs[row0 + row] =
                    images[small[i]].pts[0][row] - images[small[0]].pts[0][row];
            }
        }
        if (solve_general(M, rhs).consistent)
            throw DegeneracyError("bounded-factor hulls meet despite excess codimension");
    };

    std::vector<int> pick;
    auto rec = [&](auto&& self, std::size_t start, std::uint64_t used, int remaining) -> void {
        if (static_cast<int>(pick.size()) == r) {
            if (remaining == 0) test_tuple(pick);
            return;
        }
        int slots_left = r - static_cast<int>(pick.size());
        if (remaining > max_face_dim * slots_left) return;
        for (std::size_t i = start; i < faces.size(); ++i) {
            int m = static_cast<int>(faces[i].size()) - 1;
            if (masks[i] & used) continue;
            if (remaining - m < 0) continue;
            pick.push_back(static_cast<int>(i));
            self(self, i + 1, used | masks[i], remaining - m);
            pick.pop_back();
        }
    };
    rec(rec, 0, 0, n);
    return hits;
}

/// Census of hit types: sorted dimension multiset -> count.
inline std::map<std::vector<int>, long long> type_census(const std::vector<TverbergHit>& hits) {
    std::map<std::vector<int>, long long> out;
    for (const auto& h : hits) ++out[h.type];
    return out;
}

/// Checks the intersection cochain against the brute-force scan: for every
/// top orbit representative, epsilon(d, dims) times the signed hit count on
/// the representative's unordered tuple must equal the cochain value.
inline bool cross_validate(const SimplicialComplex& K, int r, int d, const ExactAffineMap& f,
                           const EquivariantCochain& phi, long long max_tuples = 1000000) {
    std::vector<TverbergHit> hits = enumerate_tverberg(K, r, d, f, max_tuples);
    std::map<std::vector<Simplex>, long long> signed_count;
    for (const auto& h : hits) signed_count[h.faces] += h.sign;
    int n = d * (r - 1);
    for (const auto& rep : orbit_representatives(enumerate_cells(K, r, n))) {
        long long expected = 0;
        auto it = signed_count.find(rep.factors);
        if (it != signed_count.end()) expected = epsilon(d, rep.dims()) * it->second;
        long long got = 0;
        auto jt = phi.values.find(rep.factors);
        if (jt != phi.values.end()) got = jt->second;
        if (expected != got) return false;
        if (it != signed_count.end()) signed_count.erase(it);
    }
    return signed_count.empty();  // every hit tuple must be a top representative
}

}  // namespace dpc
