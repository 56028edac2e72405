#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "dpc/util.hpp"

namespace dpc {

/// A simplex is its strictly increasing list of vertex ids.
using Simplex = std::vector<int>;

/// A simplex together with a sign relative to the increasing-vertex-order
/// reference orientation.  Dim-0 simplices carry a sign too (a point with a
/// plus/minus weight).
struct OrientedSimplex {
    Simplex simplex;
    int sign = +1;
};

/// Finite abstract simplicial complex, stored as the full downward-closed
/// face set, bucketed by dimension and lexicographically sorted.
struct SimplicialComplex {
    int vertex_count = 0;
    std::vector<std::vector<Simplex>> faces_by_dim;

    int dim() const { return static_cast<int>(faces_by_dim.size()) - 1; }
};

/// Bitmask of a simplex's vertex set; complexes are capped at 64 vertices.
inline std::uint64_t vertex_mask(const Simplex& s) {
    std::uint64_t m = 0;
    for (int v : s) m |= (std::uint64_t{1} << v);
    return m;
}

/// Builds the downward closure of the given maximal simplices.
inline SimplicialComplex from_maximal(int vertex_count,
                                      const std::vector<std::vector<int>>& maximal) {
    if (vertex_count < 1 || vertex_count > 64)
        throw InputError("vertex_count must be in [1, 64], got " + std::to_string(vertex_count));
    std::set<Simplex> faces;
    for (const auto& raw : maximal) {
        Simplex s = raw;
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end())
            throw InputError("duplicate vertex within a simplex");
        if (s.empty()) throw InputError("empty simplex listed");
        if (s.front() < 0 || s.back() >= vertex_count)
            throw InputError("vertex id out of range");
        if (s.size() > 24) throw InputError("simplex too large (max 24 vertices)");
        // Insert every nonempty subset.
        int n = static_cast<int>(s.size());
        for (std::uint32_t bits = 1; bits < (std::uint32_t{1} << n); ++bits) {
            Simplex sub;
            for (int b = 0; b < n; ++b)
                if (bits & (std::uint32_t{1} << b)) sub.push_back(s[b]);
            faces.insert(sub);
        }
    }
    std::vector<bool> seen(vertex_count, false);
    SimplicialComplex K;
    K.vertex_count = vertex_count;
    for (const auto& f : faces) {
        int q = static_cast<int>(f.size()) - 1;
        if (q >= static_cast<int>(K.faces_by_dim.size())) K.faces_by_dim.resize(q + 1);
        K.faces_by_dim[q].push_back(f);
        for (int v : f) seen[v] = true;
    }
    for (int v = 0; v < vertex_count; ++v)
        if (!seen[v]) throw InputError("vertex id " + std::to_string(v) + " appears in no simplex");
    for (auto& bucket : K.faces_by_dim) std::sort(bucket.begin(), bucket.end());
    return K;
}

/// All q-faces in lexicographic order; empty if there are none.
inline std::vector<Simplex> faces_of_dim(const SimplicialComplex& K, int q) {
    if (q < 0) throw PreconditionError("face dimension must be nonnegative");
    if (q >= static_cast<int>(K.faces_by_dim.size())) return {};
    return K.faces_by_dim[q];
}

/// Every face of K in lexicographic order on vertex lists (all dimensions
/// interleaved); the canonical total order used for orbit representatives.
inline std::vector<Simplex> all_faces_lex(const SimplicialComplex& K) {
    std::vector<Simplex> all;
    for (const auto& bucket : K.faces_by_dim)
        for (const auto& f : bucket) all.push_back(f);
    std::sort(all.begin(), all.end());
    return all;
}

/// Alternating sum of facets: facet i (dropping the i-th vertex of the
/// increasing order) carries sign (-1)^i, scaled by the input's sign.
inline std::vector<OrientedSimplex> combinatorial_boundary(const OrientedSimplex& s) {
    int m = static_cast<int>(s.simplex.size()) - 1;
    if (m < 1) throw PreconditionError("boundary of a dim-0 simplex");
    std::vector<OrientedSimplex> out;
    out.reserve(m + 1);
    for (int i = 0; i <= m; ++i) {
        Simplex facet;
        facet.reserve(m);
        for (int j = 0; j <= m; ++j)
            if (j != i) facet.push_back(s.simplex[j]);
        out.push_back({facet, (i % 2 == 0 ? s.sign : -s.sign)});
    }
    return out;
}

/// Canonical one-line encoding, used for hashing input identities.
inline std::string complex_to_string(const SimplicialComplex& K) {
    std::string out = std::to_string(K.vertex_count) + ";";
    for (const auto& bucket : K.faces_by_dim)
        for (const auto& f : bucket) {
            for (int v : f) out += std::to_string(v) + ",";
            out += "|";
        }
    return out;
}

}  // namespace dpc
