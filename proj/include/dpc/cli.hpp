#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dpc/cocycle.hpp"
#include "dpc/complex.hpp"
#include "dpc/delprod.hpp"
#include "dpc/exactgeo.hpp"
#include "dpc/io.hpp"
#include "dpc/oracle.hpp"
#include "dpc/prismatic.hpp"
#include "dpc/snf.hpp"
#include "dpc/util.hpp"

namespace dpc {

/// Exit codes of the command layer: 0 verdict reached, 2 precondition or
/// degeneracy refusal, 3 resource budget exceeded, 4 malformed input.
enum ExitCode : int {
    kExitVerdict = 0,
    kExitPrecondition = 2,
    kExitResource = 3,
    kExitInput = 4,
};

struct CmdResult {
    int exit_code = kExitVerdict;
    json report;
};

namespace detail {
inline std::string hash_hex(const std::string& bytes) {
    std::ostringstream ss;
    ss << std::hex << fnv1a64(bytes);
    return ss.str();
}

inline long long factorial_ll(int r) {
    long long f = 1;
    for (int i = 2; i <= r; ++i) f *= i;
    return f;
}

inline json solve_to_json(const IntMat& A, const std::vector<Int>& v,
                          const IntSolveResult& res) {
    json out;
    out["solvable"] = res.solvable;
    if (res.solvable) {
        out["certificate"] = intvec_to_json(res.x);
        out["verified"] = verify_solution(A, res.x, v);
    } else {
        json w;
        w["diagonal_index"] = res.witness_index;
        w["divisor"] = res.divisor.get_str();
        w["residue"] = res.residue.get_str();
        if (!res.witness_row.empty()) {
            json zr = json::array();
            for (std::size_t i = 0; i < res.witness_row.size(); ++i)
                if (res.witness_row[i] != 0)
                    zr.push_back({static_cast<long long>(i), res.witness_row[i].get_str()});
            w["functional"] = zr;
            w["verified"] = verify_witness(A, v, res);
        }
        out["witness"] = w;
    }
    return out;
}
}  // namespace detail

struct ObstructionOptions {
    std::string complex_path;
    std::string map_path;  ///< empty: sample a generic map from the seed
    int r = 2;
    int d = 2;
    std::uint64_t seed = 1;
    int workers = 1;
    long long max_orbits = 20000;
};

/// Decides whether the r-fold obstruction cocycle of (a generic map on) K
/// into dimension d is an equivariant coboundary.
inline CmdResult cmd_obstruction(const ObstructionOptions& opt) {
    auto t0 = std::chrono::steady_clock::now();
    SimplicialComplex K = complex_from_json(load_json_file(opt.complex_path));
    if (opt.r < 2) throw InputError("r must be >= 2");
    if (opt.d < 1) throw InputError("d must be >= 1");
    int n = opt.d * (opt.r - 1);

    if (!any_cell_of_dim(K, opt.r, n))
        throw PreconditionError(
            "the deleted product has dimension below d(r-1); a generic map has no r-fold "
            "coincidence for dimension reasons and there is nothing to decide");
    if (any_cell_of_dim(K, opt.r, n + 1))
        throw PreconditionError(
            "the deleted product has dimension above d(r-1); the top-cell criterion does not "
            "apply to this (r, d)");

    long long fact = detail::factorial_ll(opt.r);
    long long cap_cells = opt.max_orbits > (1LL << 56) / fact ? (1LL << 56) : opt.max_orbits * fact;
    long long top_cells = count_cells_of_dim(K, opt.r, n, cap_cells);

    ExactAffineMap f;
    std::string map_source;
    EquivariantCochain phi;
    int attempts_used = 0;
    if (!opt.map_path.empty()) {
        map_source = "file";
        f = map_from_json(load_json_file(opt.map_path), K.vertex_count);
        if (f.d != opt.d) throw InputError("map dimension does not match --d");
        phi = intersection_cocycle(K, opt.r, opt.d, f, opt.workers);
        attempts_used = 1;
    } else {
        map_source = "sampled";
        std::uint64_t box = std::max<std::uint64_t>(
            1000000, 16ull * static_cast<std::uint64_t>(K.vertex_count) * opt.d);
        bool done = false;
        for (int attempt = 0; attempt < 64 && !done; ++attempt) {
            try {
                f = sample_generic_map(K, opt.d, derive_seed(opt.seed, attempt), box);
                phi = intersection_cocycle(K, opt.r, opt.d, f, opt.workers);
                attempts_used = attempt + 1;
                done = true;
            } catch (const DegeneracyError&) {
                continue;
            }
        }
        if (!done)
            throw DegeneracyError("no generic map found within the retry budget");
    }

    SolvabilitySystem sys = build_solvability_system(K, opt.r, opt.d);
    std::vector<Int> v = to_vector(phi, sys.top_reps);
    IntSolveResult res = solve_integer(sys.A, v);
    long long codim_cells = count_cells_of_dim(K, opt.r, n - 1, (1LL << 56));

    json rep;
    rep["command"] = "obstruction";
    json inputs;
    inputs["complex_hash"] = detail::hash_hex(complex_to_string(K));
    inputs["vertex_count"] = K.vertex_count;
    inputs["complex_dim"] = K.dim();
    inputs["r"] = opt.r;
    inputs["d"] = opt.d;
    inputs["seed"] = opt.seed;
    inputs["map_source"] = map_source;
    rep["inputs"] = inputs;
    json applic;
    applic["top_dimension_matches"] = true;
    applic["codimension_at_least_3"] = (opt.d - K.dim()) >= 3;
    rep["applicability"] = applic;
    json dp;
    dp["top_dim"] = n;
    dp["top_cells"] = top_cells;
    dp["top_orbits"] = static_cast<long long>(sys.top_reps.size());
    dp["codim1_cells"] = codim_cells;
    dp["codim1_orbits"] = static_cast<long long>(sys.codim_reps.size());
    rep["deleted_product"] = dp;
    json coc;
    coc["support_orbits"] = static_cast<long long>(phi.values.size());
    coc["sampling_attempts"] = attempts_used;
    rep["cocycle"] = coc;
    json system;
    system["rows"] = sys.A.rows;
    system["cols"] = sys.A.cols;
    rep["system"] = system;
    json verdict;
    verdict["obstruction_vanishes"] = res.solvable;
    verdict.update(detail::solve_to_json(sys.A, v, res));
    rep["verdict"] = verdict;
    rep["map"] = map_to_json(f);
    rep["timing_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - t0)
                           .count();
    return {kExitVerdict, rep};
}

struct ScanOptions {
    std::string complex_path;
    std::string map_path;
    int r = 2;
    long long max_tuples = 1000000;
};

/// Brute-force coincidence scan of an explicit map.
inline CmdResult cmd_tverberg_scan(const ScanOptions& opt) {
    auto t0 = std::chrono::steady_clock::now();
    SimplicialComplex K = complex_from_json(load_json_file(opt.complex_path));
    if (opt.r < 2) throw InputError("r must be >= 2");
    if (opt.map_path.empty()) throw InputError("tverberg-scan needs an explicit map file");
    json mj = load_json_file(opt.map_path);
    ExactAffineMap f = map_from_json(mj, K.vertex_count);
    std::vector<TverbergHit> hits = enumerate_tverberg(K, opt.r, f.d, f, opt.max_tuples);

    json rep;
    rep["command"] = "tverberg-scan";
    json inputs;
    inputs["complex_hash"] = detail::hash_hex(complex_to_string(K));
    inputs["r"] = opt.r;
    inputs["d"] = f.d;
    rep["inputs"] = inputs;
    rep["hit_count"] = static_cast<long long>(hits.size());
    json hj = json::array();
    for (const auto& h : hits) {
        json e;
        e["faces"] = h.faces;
        e["point"] = qvec_to_json(h.point);
        e["type"] = h.type;
        e["sign"] = h.sign;
        hj.push_back(e);
    }
    rep["hits"] = hj;
    json census = json::object();
    for (const auto& [type, count] : type_census(hits)) {
        std::string key;
        for (std::size_t i = 0; i < type.size(); ++i)
            key += (i ? "," : "") + std::to_string(type[i]);
        census[key] = count;
    }
    rep["census"] = census;
    rep["timing_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - t0)
                           .count();
    return {kExitVerdict, rep};
}

struct PrismaticOptions {
    int r = 2;
    int k = 1;
    std::uint64_t seed = 1;
    std::string mode = "obstruction";  ///< obstruction | scan | signcheck
    int workers = 1;
    long long max_orbits = 20000;
    long long max_tuples = 1000000;
};

namespace detail {
inline PrismaticHeights sample_checked_heights(const ColorScheme& sc, std::uint64_t seed,
                                               int* attempts_out) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        PrismaticHeights H = sample_prismatic_heights(sc, derive_seed(seed, attempt));
        if (check_prismatic_heights(sc, H).regular_prismatic()) {
            if (attempts_out) *attempts_out = attempt + 1;
            return H;
        }
    }
    throw DegeneracyError("no prismatic height sample found within the retry budget");
}
}  // namespace detail

/// Prismatic configuration-space pipeline: obstruction decision, brute-force
/// scan of the regular embedding, or the two-route sign self-check.
inline CmdResult cmd_prismatic(const PrismaticOptions& opt) {
    auto t0 = std::chrono::steady_clock::now();
    if (opt.r < 2 || opt.k < 1) throw InputError("prismatic needs r >= 2 and k >= 1");
    ColorScheme sc(opt.r, opt.k);
    json rep;
    rep["command"] = "prismatic";
    json inputs;
    inputs["r"] = opt.r;
    inputs["k"] = opt.k;
    inputs["m"] = sc.m();
    inputs["d"] = opt.r * opt.k;
    inputs["seed"] = opt.seed;
    inputs["mode"] = opt.mode;
    rep["inputs"] = inputs;

    if (opt.mode == "obstruction") {
        // Full witness-row tracking costs O(rows^2) memory; above certificate
        // scale keep only V and the transformed right-hand side.  Solutions
        // are still re-verified exactly, and refusals still carry the
        // divisor/residue pair.
        bool track_witness_rows = x_top_orbit_count(sc) <= 4096;
        PrismaticVerdict verdict = prismatic_obstruction(sc, opt.seed, opt.max_orbits,
                                                         opt.workers, track_witness_rows);
        XSolvabilitySystem sys = build_x_solvability_system(sc);
        PrismaticCocycle phi = prismatic_cocycle(sc, verdict.heights, opt.workers);
        std::vector<Int> v;
        for (const auto& repcell : sys.top_reps) {
            auto it = phi.values.find(repcell);
            v.push_back(it == phi.values.end() ? Int(0) : Int(static_cast<long>(it->second)));
        }
        json sysj;
        sysj["rows"] = verdict.rows;
        sysj["cols"] = verdict.cols;
        rep["system"] = sysj;
        json vj;
        vj["obstruction_vanishes"] = verdict.vanishes;
        vj.update(detail::solve_to_json(sys.A, v, verdict.solve));
        rep["verdict"] = vj;
        rep["populated_top_orbits"] = verdict.populated_cells;
        rep["sampling_attempts"] = verdict.attempts_used;
        rep["heights"] = heights_to_json(verdict.heights);
    } else if (opt.mode == "scan") {
        if (x_top_orbit_count(sc) > opt.max_orbits)
            throw ResourceLimitError("top-cell orbit count exceeds the configured budget");
        int attempts = 0;
        PrismaticHeights H = detail::sample_checked_heights(sc, opt.seed, &attempts);
        SimplicialComplex C = build_colorful_complex(sc);
        ExactAffineMap f = prism_embedding_map(sc, H);
        std::vector<TverbergHit> hits = enumerate_tverberg(C, sc.r, f.d, f, opt.max_tuples);
        bool colorful_only = true;
        std::vector<int> expect(sc.r, sc.m());
        for (const auto& h : hits)
            if (h.type != expect) colorful_only = false;
        rep["hit_count"] = static_cast<long long>(hits.size());
        rep["all_hits_colorful_type"] = colorful_only;
        json census = json::object();
        for (const auto& [type, count] : type_census(hits)) {
            std::string key;
            for (std::size_t i = 0; i < type.size(); ++i)
                key += (i ? "," : "") + std::to_string(type[i]);
            census[key] = count;
        }
        rep["census"] = census;
        rep["sampling_attempts"] = attempts;
        rep["heights"] = heights_to_json(H);
    } else if (opt.mode == "signcheck") {
        int attempts = 0;
        PrismaticHeights H = detail::sample_checked_heights(sc, opt.seed, &attempts);
        ExactAffineMap f = prism_embedding_map(sc, H);
        int eps = epsilon_pris(sc.r, sc.k);
        long long populated = 0, matches = 0;
        for (const auto& repcell : x_orbit_reps(sc, sc.m())) {
            std::vector<AffineSimplex> images;
            for (const auto& s : cell_to_simplices(repcell, sc))
                images.push_back(image_simplex(f, s));
            auto hit = intersection_point(images, f.d);
            if (!hit) continue;
            ++populated;
            int direct = r_fold_sign(images, hit->first);
            int block = diagonal_block_sign(repcell, sc, H);
            if (direct == eps * block) ++matches;
        }
        rep["populated_top_orbits"] = populated;
        rep["matching_signs"] = matches;
        rep["consistent"] = (populated == matches && populated > 0);
        rep["sampling_attempts"] = attempts;
        rep["heights"] = heights_to_json(H);
    } else {
        throw InputError("unknown prismatic mode: " + opt.mode);
    }
    rep["timing_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - t0)
                           .count();
    return {kExitVerdict, rep};
}

struct SnfOptions {
    std::string matrix_path;
    std::string vector_path;  ///< optional: also decide A x = v
};

/// Smith normal form with certificates, and optionally an integer solve.
inline CmdResult cmd_snf(const SnfOptions& opt) {
    auto t0 = std::chrono::steady_clock::now();
    IntMat A = matrix_from_json(load_json_file(opt.matrix_path));
    SNFCertificate cert = smith_normal_form(A);
    json rep;
    rep["command"] = "snf";
    rep["rows"] = A.rows;
    rep["cols"] = A.cols;
    rep["rank"] = cert.rank;
    json diag = json::array();
    for (const Int& d : cert.diagonal()) diag.push_back(d.get_str());
    rep["diagonal"] = diag;
    rep["U"] = matrix_to_json(cert.U);
    rep["V"] = matrix_to_json(cert.V);
    bool unimodular_checked = A.rows <= 256 && A.cols <= 256;
    rep["unimodularity_checked"] = unimodular_checked;
    if (unimodular_checked) {
        Int du = determinant(cert.U), dv = determinant(cert.V);
        rep["U_unimodular"] = (du == 1 || du == -1);
        rep["V_unimodular"] = (dv == 1 || dv == -1);
    }
    if (!opt.vector_path.empty()) {
        std::vector<Int> v = intvec_from_json(load_json_file(opt.vector_path));
        if (static_cast<int>(v.size()) != A.rows)
            throw InputError("vector length does not match matrix rows");
        IntSolveResult res = solve_integer(A, v);
        rep["solve"] = detail::solve_to_json(A, v, res);
    }
    rep["timing_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - t0)
                           .count();
    return {kExitVerdict, rep};
}

}  // namespace dpc
