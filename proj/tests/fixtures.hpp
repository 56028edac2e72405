#pragma once

// Shared test fixtures: standard complexes, deterministic random transverse
// configurations, and small helpers for writing temp JSON inputs.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "dpc/complex.hpp"
#include "dpc/exactgeo.hpp"
#include "dpc/util.hpp"

namespace fixtures {

using namespace dpc;

inline SimplicialComplex complete_graph(int n) {
    std::vector<std::vector<int>> maximal;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) maximal.push_back({u, v});
    return from_maximal(n, maximal);
}

inline SimplicialComplex complete_bipartite(int a, int b) {
    std::vector<std::vector<int>> maximal;
    for (int u = 0; u < a; ++u)
        for (int v = 0; v < b; ++v) maximal.push_back({u, a + v});
    return from_maximal(a + b, maximal);
}

inline SimplicialComplex cycle_graph(int n) {
    std::vector<std::vector<int>> maximal;
    for (int u = 0; u < n; ++u) maximal.push_back({u, (u + 1) % n});
    return from_maximal(n, maximal);
}

inline SimplicialComplex path_graph(int n) {
    std::vector<std::vector<int>> maximal;
    for (int u = 0; u + 1 < n; ++u) maximal.push_back({u, u + 1});
    return from_maximal(n, maximal);
}

/// Random tree: vertex i attaches to a uniformly chosen earlier vertex.
inline SimplicialComplex random_tree(int n, std::uint64_t seed) {
    std::uint64_t state = seed;
    std::vector<std::vector<int>> maximal;
    for (int i = 1; i < n; ++i) {
        int parent = static_cast<int>(rng_below(state, static_cast<std::uint64_t>(i)));
        maximal.push_back({parent, i});
    }
    return from_maximal(n, maximal);
}

/// k-skeleton of the N-simplex (all (k+1)-subsets of {0..N}).
inline SimplicialComplex simplex_skeleton(int N, int k) {
    std::vector<std::vector<int>> maximal;
    std::vector<int> pick;
    auto rec = [&](auto&& self, int from) -> void {
        if (static_cast<int>(pick.size()) == k + 1) {
            maximal.push_back(pick);
            return;
        }
        for (int v = from; v <= N; ++v) {
            pick.push_back(v);
            self(self, v + 1);
            pick.pop_back();
        }
    };
    rec(rec, 0);
    return from_maximal(N + 1, maximal);
}

inline SimplicialComplex full_simplex(int N) { return simplex_skeleton(N, N); }

inline SimplicialComplex two_disjoint_edges() { return from_maximal(4, {{0, 1}, {2, 3}}); }

// ---------------------------------------------------------------------------
// Exact-geometry helpers.
// ---------------------------------------------------------------------------

inline QVec qvec(std::vector<long long> entries) {
    QVec v;
    v.reserve(entries.size());
    for (long long e : entries) v.push_back(Rat(static_cast<long>(e)));
    return v;
}

inline AffineSimplex simplex_at(std::vector<std::vector<long long>> pts, int sign = +1) {
    AffineSimplex s;
    s.sign = sign;
    for (auto& p : pts) s.pts.push_back(qvec(p));
    return s;
}

inline ExactAffineMap map_from_points(int d, std::vector<std::vector<long long>> pts) {
    ExactAffineMap f;
    f.d = d;
    for (auto& p : pts) f.coords.push_back(qvec(p));
    return f;
}

inline long long rand_range(std::uint64_t& state, long long lo, long long hi) {
    return lo + static_cast<long long>(rng_below(state, static_cast<std::uint64_t>(hi - lo + 1)));
}

/// Random factor dimensions with sum d(r-1) and every entry in [0, d].
inline std::vector<int> random_dims(std::uint64_t& state, int r, int d) {
    int target = d * (r - 1);
    while (true) {
        std::vector<int> dims(r);
        int sum = 0;
        for (int i = 0; i < r - 1; ++i) {
            dims[i] = static_cast<int>(rng_below(state, d + 1));
            sum += dims[i];
        }
        int last = target - sum;
        if (last < 0 || last > d) continue;
        dims[r - 1] = last;
        return dims;
    }
}

/// A transverse r-tuple sharing the interior point y: each simplex is a
/// random integer simplex translated so its centroid lands on y; rerolls
/// until the configuration is transverse.  Returns the simplices (random
/// orientation signs) and the common point.
struct TransverseTuple {
    std::vector<AffineSimplex> simplices;
    QVec y;
};

inline TransverseTuple random_transverse_tuple(std::uint64_t& state, int r, int d,
                                               const std::vector<int>* fixed_dims = nullptr) {
    for (int attempt = 0; attempt < 400; ++attempt) {
        std::vector<int> dims = fixed_dims ? *fixed_dims : random_dims(state, r, d);
        QVec y(d);
        for (int i = 0; i < d; ++i) y[i] = Rat(static_cast<long>(rand_range(state, -12, 12)));
        TransverseTuple out;
        out.y = y;
        bool degenerate_build = false;
        for (int i = 0; i < r && !degenerate_build; ++i) {
            int m = dims[i];
            AffineSimplex s;
            s.sign = (rng_below(state, 2) == 0) ? +1 : -1;
            std::vector<QVec> pts(m + 1, QVec(d));
            QVec centroid(d, Rat(0));
            for (int p = 0; p <= m; ++p) {
                for (int c = 0; c < d; ++c) {
                    pts[p][c] = Rat(static_cast<long>(rand_range(state, -9, 9))) * (m + 1);
                    centroid[c] += pts[p][c];
                }
            }
            for (int p = 0; p <= m; ++p)
                for (int c = 0; c < d; ++c)
                    pts[p][c] = pts[p][c] - centroid[c] / (m + 1) + y[c];
            s.pts = pts;
            if (rank_of(s.edge_matrix()) != m) degenerate_build = true;
            out.simplices.push_back(s);
        }
        if (degenerate_build) continue;
        std::vector<OrientedPiece> pieces;
        for (const auto& s : out.simplices) pieces.push_back({s.edge_matrix(), s.sign});
        if (pieces_sign(pieces, d) == 0) continue;
        return out;
    }
    throw std::runtime_error("could not build a transverse tuple (generator exhausted)");
}

// ---------------------------------------------------------------------------
// Temp-file helpers for the CLI tests.
// ---------------------------------------------------------------------------

inline std::string write_temp(const std::string& name, const std::string& content) {
    std::string path = std::string("/tmp/dpc_test_") + name;
    std::ofstream out(path);
    out << content;
    return path;
}

}  // namespace fixtures
