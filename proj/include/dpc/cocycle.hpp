#pragma once

#include <map>
#include <utility>
#include <vector>

#include "dpc/complex.hpp"
#include "dpc/delprod.hpp"
#include "dpc/exactgeo.hpp"
#include "dpc/snf.hpp"
#include "dpc/util.hpp"

namespace dpc {

/// Equivariant integer cochain on deleted-product cells of one dimension,
/// stored sparsely on canonical orbit representatives.
struct EquivariantCochain {
    int degree = 0;  ///< cell dimension it evaluates on
    int d = 0;       ///< target dimension (controls the coefficient twist)
    std::map<std::vector<Simplex>, long long> values;
};

/// Value on an arbitrary cell: twist times the stored representative value.
inline long long eval_cochain(const EquivariantCochain& phi, const DeletedProductCell& cell) {
    if (cell.dim() != phi.degree) throw PreconditionError("cochain degree mismatch");
    auto [rep, twist] = canonicalize(cell, phi.d);
    auto it = phi.values.find(rep.factors);
    if (it == phi.values.end()) return 0;
    return twist * it->second;
}

/// The intersection cochain of a generic affine map f on the top-dimensional
/// cells: on a representative whose factors' images meet at a common
/// interior point y, the value is epsilon(d, dims) times the r-fold
/// intersection sign at y; otherwise 0.  Cells with a factor of dimension
/// above d never contribute (their image chains are degenerate).
inline EquivariantCochain intersection_cocycle(const SimplicialComplex& K, int r, int d,
                                               const ExactAffineMap& f, int workers = 1) {
    if (f.d != d) throw PreconditionError("map target dimension mismatch");
    int n = d * (r - 1);
    std::vector<DeletedProductCell> reps = orbit_representatives(enumerate_cells(K, r, n));
    std::vector<long long> vals(reps.size(), 0);
    parallel_for(reps.size(), workers, [&](std::size_t idx) {
        const DeletedProductCell& rep = reps[idx];
        std::vector<int> dims = rep.dims();
        for (int m : dims)
            if (m > d) return;
        std::vector<AffineSimplex> images;
        images.reserve(rep.factors.size());
        for (const auto& s : rep.factors) images.push_back(image_simplex(f, s));
        auto hit = intersection_point(images, d);
        if (!hit) return;
        vals[idx] = static_cast<long long>(epsilon(d, dims)) *
                    r_fold_sign(images, hit->first);
    });
    EquivariantCochain phi;
    phi.degree = n;
    phi.d = d;
    for (std::size_t i = 0; i < reps.size(); ++i)
        if (vals[i] != 0) phi.values[reps[i].factors] = vals[i];
    return phi;
}

/// Equivariant coboundary of the indicator cochain of one codimension-1
/// orbit (value +1 on the canonical representative of eta's orbit).
inline EquivariantCochain elementary_coboundary(const DeletedProductCell& eta,
                                                const SimplicialComplex& K, int r, int d) {
    auto [eta_rep, eta_twist] = canonicalize(eta, d);
    (void)eta_twist;
    if (eta.factors != eta_rep.factors)
        throw PreconditionError("eta must be a canonical orbit representative");
    int n = eta.dim() + 1;
    EquivariantCochain out;
    out.degree = n;
    out.d = d;
    for (const auto& rep : orbit_representatives(enumerate_cells(K, r, n))) {
        long long v = 0;
        for (const auto& [s, c] : cell_boundary(rep)) {
            auto [crep, twist] = canonicalize(c, d);
            if (crep.factors == eta_rep.factors) v += static_cast<long long>(s) * twist;
        }
        if (v != 0) out.values[rep.factors] = v;
    }
    return out;
}

/// phi + e * (coboundary of eta's orbit indicator): the elementary move that
/// walks within a cohomology class.
inline EquivariantCochain finger_move(const EquivariantCochain& phi, const DeletedProductCell& eta,
                                      long long e, const SimplicialComplex& K, int r, int d) {
    if (phi.d != d) throw PreconditionError("target dimension mismatch");
    EquivariantCochain delta = elementary_coboundary(eta, K, r, d);
    if (delta.degree != phi.degree) throw PreconditionError("degree mismatch in finger move");
    EquivariantCochain out = phi;
    for (const auto& [key, v] : delta.values) {
        long long nv = (out.values.count(key) ? out.values[key] : 0) + e * v;
        if (nv == 0) out.values.erase(key);
        else out.values[key] = nv;
    }
    return out;
}

/// Cochain as an integer vector over an explicit representative order.
inline std::vector<Int> to_vector(const EquivariantCochain& phi,
                                  const std::vector<DeletedProductCell>& reps) {
    std::vector<Int> v;
    v.reserve(reps.size());
    for (const auto& rep : reps) {
        auto it = phi.values.find(rep.factors);
        v.push_back(it == phi.values.end() ? Int(0) : Int(static_cast<long>(it->second)));
    }
    return v;
}

/// The integral linear system deciding whether a top cochain is an
/// equivariant coboundary: column eta of A holds, for each top
/// representative row, the signed incidence of eta's orbit in that row's
/// boundary.  A cochain phi is a coboundary iff A x = phi is solvable in
/// integers.
struct SolvabilitySystem {
    std::vector<DeletedProductCell> top_reps;
    std::vector<DeletedProductCell> codim_reps;
    IntMat A;
};

inline SolvabilitySystem build_solvability_system(const SimplicialComplex& K, int r, int d) {
    int n = d * (r - 1);
    SolvabilitySystem sys;
    sys.top_reps = orbit_representatives(enumerate_cells(K, r, n));
    sys.codim_reps = orbit_representatives(enumerate_cells(K, r, n - 1));
    std::map<std::vector<Simplex>, int> col_of;
    for (std::size_t j = 0; j < sys.codim_reps.size(); ++j)
        col_of[sys.codim_reps[j].factors] = static_cast<int>(j);
    sys.A = IntMat(static_cast<int>(sys.top_reps.size()),
                   static_cast<int>(sys.codim_reps.size()));
    for (std::size_t i = 0; i < sys.top_reps.size(); ++i) {
        for (const auto& [s, c] : cell_boundary(sys.top_reps[i])) {
            auto [crep, twist] = canonicalize(c, d);
            auto it = col_of.find(crep.factors);
            if (it == col_of.end()) throw std::logic_error("boundary orbit missing from system");
            sys.A.add(static_cast<int>(i), it->second, Int(s) * twist);
        }
    }
    return sys;
}

}  // namespace dpc
