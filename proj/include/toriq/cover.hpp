#pragma once

#include "toriq/fan.hpp"

#include <optional>
#include <vector>

namespace toriq {

struct CoverWitness {
    bool covered = false;
    std::optional<IntVec> gap_point;  // in tau, outside every cover cone
    std::size_t cell_count = 0;       // full-dimensional arrangement cells visited
};

namespace detail {

inline IntVec hyperplane_canonical(IntVec u) {
    u = primitive(std::move(u));
    for (const Int& x : u) {
        if (x > 0) break;
        if (x < 0) {
            u = neg(u);
            break;
        }
    }
    return u;
}

// point of cell's relative interior avoiding every cover cone; walks the
// curve sum_j k^j g_j, which leaves each lower-dimensional cover cone for
// all but finitely many k
inline IntVec gap_point_in_cell(const Cone& cell, const std::vector<Cone>& cover) {
    std::vector<IntVec> dirs = cell.generators;
    dirs.insert(dirs.end(), cell.lineality_basis.begin(), cell.lineality_basis.end());
    std::size_t limit = 2 * cover.size() * (dirs.size() + 1) + 2;
    for (std::size_t k = 1; k <= limit; ++k) {
        IntVec s(cell.ambient_rank, 0);
        Int kk = 1;
        for (const IntVec& d : dirs) {
            s = add(s, scale(kk, d));
            kk *= Int(k);
        }
        bool outside = true;
        for (const Cone& c : cover)
            if (c.contains(s)) {
                outside = false;
                break;
            }
        if (outside) return s;
    }
    throw error("gap_point_in_cell: no witness found (internal)");
}

}  // namespace detail

// Exact decision whether tau is contained in the union of the cover cones.
// The facet hyperplanes of tau and of every piece (cover cone cut down to
// tau) slice tau into cells; the decision is made on the cells of full
// dimension in tau.  Closed cones covering every full-dimensional cell
// cover all of tau, because tau is the closure of their union; conversely
// an uncovered full-dimensional cell has its whole relative interior
// outside the union.
inline CoverWitness cone_covered_by(const Cone& tau, const std::vector<Cone>& cover) {
    for (const Cone& c : cover)
        if (c.ambient_rank != tau.ambient_rank)
            throw error("cone_covered_by: ambient rank mismatch");

    std::vector<Cone> pieces;
    pieces.reserve(cover.size());
    for (const Cone& c : cover) pieces.push_back(intersect(c, tau));

    std::vector<IntVec> hyperplanes;
    auto add_hyperplane = [&](const IntVec& u) {
        IntVec h = detail::hyperplane_canonical(u);
        if (!is_zero(h)) hyperplanes.push_back(std::move(h));
    };
    for (const IntVec& u : tau.facet_normals) add_hyperplane(u);
    for (const Cone& p : pieces)
        for (const IntVec& u : p.facet_normals) add_hyperplane(u);
    std::sort(hyperplanes.begin(), hyperplanes.end(), lex_less);
    hyperplanes.erase(std::unique(hyperplanes.begin(), hyperplanes.end()), hyperplanes.end());

    CoverWitness w;
    w.covered = true;

    std::vector<std::pair<Cone, std::size_t>> stack;  // cell, next hyperplane index
    stack.push_back({tau, 0});
    while (!stack.empty()) {
        auto [cell, h0] = std::move(stack.back());
        stack.pop_back();
        bool split = false;
        for (std::size_t hi = h0; hi < hyperplanes.size() && !split; ++hi) {
            const IntVec& h = hyperplanes[hi];
            bool pos = false, neg_side = false;
            for (const IntVec& g : cell.generators) {
                int s = sign(dot(h, g));
                pos |= s > 0;
                neg_side |= s < 0;
            }
            for (const IntVec& l : cell.lineality_basis) {
                int s = sign(dot(h, l));
                pos |= s != 0;
                neg_side |= s != 0;
            }
            if (!pos || !neg_side) continue;  // cell already on one side
            std::vector<IntVec> ineqs = cell.facet_normals;
            ineqs.push_back(h);
            Cone above = Cone::from_inequalities(cell.ambient_rank, ineqs, cell.span_equations);
            ineqs.back() = neg(h);
            Cone below = Cone::from_inequalities(cell.ambient_rank, ineqs, cell.span_equations);
            stack.push_back({std::move(above), hi + 1});
            stack.push_back({std::move(below), hi + 1});
            split = true;
        }
        if (split) continue;

        ++w.cell_count;
        bool cell_covered = false;
        for (const Cone& p : pieces) {
            if (p.dim < cell.dim) continue;
            if (contains_cone(p, cell)) {
                cell_covered = true;
                break;
            }
        }
        if (!cell_covered && w.covered) {
            w.covered = false;
            w.gap_point = detail::gap_point_in_cell(cell, pieces);
        }
    }
    return w;
}

// Falsification harness for the face projection lemma: once the pieces
// cover sigma, the projection P modulo the span of the face tau satisfies
// P(sigma) = union of P(piece) over the pieces meeting tau's relative
// interior.  Always true; a false return would be a library bug.
inline bool lemma_conecover_check(const Cone& sigma, const FaceId& tau_id,
                                  const std::vector<Cone>& pieces) {
    Cone tau = materialize(sigma, tau_id);
    std::vector<Cone> cut;
    cut.reserve(pieces.size());
    for (const Cone& p : pieces) cut.push_back(intersect(p, sigma));
    CoverWitness cw = cone_covered_by(sigma, cut);
    if (!cw.covered) throw error("lemma_conecover_check: pieces do not cover the cone");

    Sublattice span_tau = kernel_basis_of_rows(tau.span_equations, sigma.ambient_rank);
    IntMat p = quotient_projection(sigma.ambient_rank, span_tau);

    Cone whole = image_cone(p, sigma);
    std::vector<Cone> images;
    for (const Cone& piece : cut) {
        // piece meets tau's relative interior iff the relint sample of
        // piece cap tau lies in it
        Cone d = intersect(piece, tau);
        if (!tau.relint_contains(d.relint_sample())) continue;
        images.push_back(image_cone(p, piece));
    }
    return cone_covered_by(whole, images).covered;
}

// support equality P(|S|) = |Delta|; the inclusion into the target support
// is already part of fan-map validity, so only coverage of each maximal
// target cone by the projected charts is decided
inline CoverWitness is_weakly_proper(const FanMap& m) {
    std::vector<Cone> images;
    images.reserve(m.source.charts.size());
    for (const Cone& c : m.source.charts) images.push_back(image_cone(m.matrix, c));

    CoverWitness all;
    all.covered = true;
    for (const Cone& t : m.target.maximal) {
        CoverWitness w = cone_covered_by(t, images);
        all.cell_count += w.cell_count;
        if (!w.covered && all.covered) {
            all.covered = false;
            all.gap_point = w.gap_point;
        }
    }
    return all;
}

}  // namespace toriq
