#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "dpc/complex.hpp"
#include "dpc/exactgeo.hpp"
#include "dpc/prismatic.hpp"
#include "dpc/snf.hpp"
#include "dpc/util.hpp"
#include "json.hpp"

namespace dpc {

using json = nlohmann::ordered_json;

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw InputError("bad JSON in " + path + ": " + e.what());
    }
    return j;
}

inline void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot open file for writing: " + path);
    out << j.dump(2) << "\n";
}

/// {"vertex_count": n, "maximal_simplices": [[...], ...]}
inline SimplicialComplex complex_from_json(const json& j) {
    if (!j.is_object() || !j.contains("vertex_count") || !j.contains("maximal_simplices"))
        throw InputError("complex JSON needs vertex_count and maximal_simplices");
    if (!j["vertex_count"].is_number_integer()) throw InputError("vertex_count must be an integer");
    int n = j["vertex_count"].get<int>();
    std::vector<std::vector<int>> maximal;
    for (const auto& s : j["maximal_simplices"]) {
        std::vector<int> simplex;
        for (const auto& v : s) {
            if (!v.is_number_integer()) throw InputError("vertex ids must be integers");
            simplex.push_back(v.get<int>());
        }
        maximal.push_back(simplex);
    }
    return from_maximal(n, maximal);
}

inline json complex_to_json(const SimplicialComplex& K) {
    json j;
    j["vertex_count"] = K.vertex_count;
    json maximal = json::array();
    // Emit the facets (faces not contained in a larger face).
    std::set<Simplex> all;
    for (const auto& bucket : K.faces_by_dim)
        for (const auto& f : bucket) all.insert(f);
    for (const auto& f : all) {
        bool is_facet = true;
        for (const auto& g : all) {
            if (g.size() <= f.size() || g == f) continue;
            if (std::includes(g.begin(), g.end(), f.begin(), f.end())) { is_facet = false; break; }
        }
        if (is_facet) maximal.push_back(f);
    }
    j["maximal_simplices"] = maximal;
    return j;
}

/// {"d": k, "coords": {"0": ["1/2", ...], ...}}
inline ExactAffineMap map_from_json(const json& j, int expected_vertices) {
    if (!j.is_object() || !j.contains("d") || !j.contains("coords"))
        throw InputError("map JSON needs d and coords");
    ExactAffineMap f;
    f.d = j["d"].get<int>();
    if (f.d < 1) throw InputError("map dimension must be >= 1");
    f.coords.assign(expected_vertices, QVec());
    std::vector<bool> seen(expected_vertices, false);
    for (const auto& [key, val] : j["coords"].items()) {
        int v;
        try {
            v = std::stoi(key);
        } catch (...) {
            throw InputError("bad vertex key in map: " + key);
        }
        if (v < 0 || v >= expected_vertices) throw InputError("vertex key out of range: " + key);
        QVec p;
        for (const auto& c : val) {
            if (c.is_number_integer()) p.push_back(Rat(static_cast<long>(c.get<long long>())));
            else if (c.is_string()) p.push_back(rat_from_string(c.get<std::string>()));
            else throw InputError("coordinates must be integers or rational strings");
        }
        if (static_cast<int>(p.size()) != f.d) throw InputError("coordinate arity mismatch");
        f.coords[v] = std::move(p);
        seen[v] = true;
    }
    for (int v = 0; v < expected_vertices; ++v)
        if (!seen[v]) throw InputError("map missing vertex " + std::to_string(v));
    for (int u = 0; u < expected_vertices; ++u)
        for (int v = u + 1; v < expected_vertices; ++v)
            if (f.coords[u] == f.coords[v])
                throw InputError("vertex images must be pairwise distinct");
    return f;
}

inline json map_to_json(const ExactAffineMap& f) {
    json j;
    j["d"] = f.d;
    json coords = json::object();
    for (std::size_t v = 0; v < f.coords.size(); ++v) {
        json arr = json::array();
        for (const Rat& c : f.coords[v]) arr.push_back(rat_to_string(c));
        coords[std::to_string(v)] = arr;
    }
    j["coords"] = coords;
    return j;
}

/// {"rows": m, "cols": n, "entries": [[i, j, value], ...]} with values given
/// as integers or decimal strings.
inline IntMat matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols"))
        throw InputError("matrix JSON needs rows and cols");
    IntMat A(j["rows"].get<int>(), j["cols"].get<int>());
    if (A.rows < 0 || A.cols < 0) throw InputError("negative matrix shape");
    if (j.contains("entries"))
        for (const auto& e : j["entries"]) {
            if (!e.is_array() || e.size() != 3) throw InputError("matrix entry must be [i,j,v]");
            int i = e[0].get<int>(), c = e[1].get<int>();
            if (i < 0 || i >= A.rows || c < 0 || c >= A.cols)
                throw InputError("matrix entry out of range");
            Int v;
            if (e[2].is_number_integer()) v = Int(static_cast<long>(e[2].get<long long>()));
            else if (e[2].is_string()) {
                try {
                    v = Int(e[2].get<std::string>());
                } catch (...) {
                    throw InputError("bad integer literal in matrix");
                }
            } else throw InputError("matrix value must be an integer or string");
            A.set(i, c, A.get(i, c) + v);
        }
    return A;
}

inline json matrix_to_json(const IntMat& A) {
    json j;
    j["rows"] = A.rows;
    j["cols"] = A.cols;
    json entries = json::array();
    for (int i = 0; i < A.rows; ++i)
        for (const auto& [c, v] : A.row[i]) entries.push_back({i, c, v.get_str()});
    j["entries"] = entries;
    return j;
}

/// [v_0, v_1, ...] with integer or decimal-string entries.
inline std::vector<Int> intvec_from_json(const json& j) {
    if (!j.is_array()) throw InputError("vector JSON must be an array");
    std::vector<Int> v;
    for (const auto& e : j) {
        if (e.is_number_integer()) v.push_back(Int(static_cast<long>(e.get<long long>())));
        else if (e.is_string()) {
            try {
                v.push_back(Int(e.get<std::string>()));
            } catch (...) {
                throw InputError("bad integer literal in vector");
            }
        } else throw InputError("vector entries must be integers or strings");
    }
    return v;
}

inline json intvec_to_json(const std::vector<Int>& v) {
    json arr = json::array();
    for (const Int& e : v) arr.push_back(e.get_str());
    return arr;
}

/// {"r": r, "k": k, "heights": {"i,j": ["1/4", ...], ...}} with classes i in
/// 1..r and colors j in 0..m (per the vertex layout of the color scheme).
inline PrismaticHeights heights_from_json(const json& j) {
    if (!j.is_object() || !j.contains("r") || !j.contains("k") || !j.contains("heights"))
        throw InputError("heights JSON needs r, k and heights");
    int r = j["r"].get<int>(), k = j["k"].get<int>();
    ColorScheme sc(r, k);
    PrismaticHeights H;
    H.r = r;
    H.k = k;
    H.h.assign(r, std::vector<QVec>(sc.m() + 1));
    std::vector<std::vector<bool>> seen(r, std::vector<bool>(sc.m() + 1, false));
    for (const auto& [key, val] : j["heights"].items()) {
        std::istringstream ss(key);
        int i, jj;
        char comma;
        if (!(ss >> i >> comma >> jj) || comma != ',')
            throw InputError("bad height key (want \"i,j\"): " + key);
        if (i < 1 || i > r || jj < 0 || jj > sc.m())
            throw InputError("height key out of range: " + key);
        QVec x;
        for (const auto& c : val) {
            if (c.is_string()) x.push_back(rat_from_string(c.get<std::string>()));
            else if (c.is_number_integer()) x.push_back(Rat(static_cast<long>(c.get<long long>())));
            else throw InputError("height coordinates must be rational strings");
        }
        if (static_cast<int>(x.size()) != k) throw InputError("height arity mismatch");
        if (!height_interior(x)) throw InputError("height not interior to the standard simplex");
        H.h[i - 1][jj] = std::move(x);
        seen[i - 1][jj] = true;
    }
    for (int i = 0; i < r; ++i)
        for (int jj = 0; jj <= sc.m(); ++jj)
            if (!seen[i][jj])
                throw InputError("missing height for class " + std::to_string(i + 1) + ", color " +
                                 std::to_string(jj));
    return H;
}

inline json heights_to_json(const PrismaticHeights& H) {
    json j;
    j["r"] = H.r;
    j["k"] = H.k;
    json hs = json::object();
    for (int i = 0; i < H.r; ++i)
        for (std::size_t jj = 0; jj < H.h[i].size(); ++jj) {
            json arr = json::array();
            for (const Rat& c : H.h[i][jj]) arr.push_back(rat_to_string(c));
            hs[std::to_string(i + 1) + "," + std::to_string(jj)] = arr;
        }
    j["heights"] = hs;
    return j;
}

inline json qvec_to_json(const QVec& v) {
    json arr = json::array();
    for (const Rat& c : v) arr.push_back(rat_to_string(c));
    return arr;
}

}  // namespace dpc
