#pragma once

#include "toriq/linalg.hpp"

#include <cstddef>
#include <map>
#include <set>
#include <vector>

namespace toriq {

namespace detail {

// One double-description sweep: intersect the subspace spanned by
// `lineality` with the half-spaces {x : <a,x> >= 0}, a over `constraints`.
// Returns extreme rays modulo the remaining lineality.  Rays are kept
// minimal via the combinatorial adjacency test on tight sets, which is
// valid because the maintained lineality is exactly the lineality of the
// intermediate cone.
struct DdPair {
    std::vector<IntVec> rays;
    std::vector<IntVec> lineality;
};

inline DdPair double_description(std::size_t n, const std::vector<IntVec>& constraints,
                                 std::vector<IntVec> lineality) {
    std::vector<IntVec> rays;
    std::vector<IntVec> processed;

    auto tight_set = [&](const IntVec& r) {
        std::vector<char> t(processed.size());
        for (std::size_t k = 0; k < processed.size(); ++k)
            t[k] = (dot(processed[k], r) == 0);
        return t;
    };

    for (const IntVec& a : constraints) {
        if (a.size() != n) throw error("double_description: bad constraint length");
        std::size_t split = lineality.size();
        for (std::size_t i = 0; i < lineality.size(); ++i)
            if (dot(a, lineality[i]) != 0) {
                split = i;
                break;
            }
        if (split < lineality.size()) {
            IntVec w = lineality[split];
            lineality.erase(lineality.begin() + split);
            Int aw = dot(a, w);
            if (aw < 0) {
                w = neg(w);
                aw = -aw;
            }
            for (IntVec& l : lineality) {
                Int al = dot(a, l);
                if (al != 0) l = primitive(combine(aw, l, -al, w));
            }
            for (IntVec& r : rays) {
                Int ar = dot(a, r);
                if (ar != 0) r = primitive(combine(aw, r, -ar, w));
            }
            rays.push_back(std::move(w));
            processed.push_back(a);
            continue;
        }

        std::vector<std::size_t> pos, zer, neg_;
        std::vector<Int> val(rays.size());
        for (std::size_t i = 0; i < rays.size(); ++i) {
            val[i] = dot(a, rays[i]);
            (val[i] > 0 ? pos : val[i] == 0 ? zer : neg_).push_back(i);
        }
        if (neg_.empty()) {
            processed.push_back(a);
            continue;
        }

        std::vector<std::vector<char>> tights(rays.size());
        for (std::size_t i = 0; i < rays.size(); ++i) tights[i] = tight_set(rays[i]);
        auto adjacent = [&](std::size_t p, std::size_t q) {
            for (std::size_t r = 0; r < rays.size(); ++r) {
                if (r == p || r == q) continue;
                bool covers = true;
                for (std::size_t k = 0; k < processed.size() && covers; ++k)
                    if (tights[p][k] && tights[q][k] && !tights[r][k]) covers = false;
                if (covers) return false;
            }
            return true;
        };

        std::vector<IntVec> next;
        for (std::size_t i : pos) next.push_back(rays[i]);
        for (std::size_t i : zer) next.push_back(rays[i]);
        for (std::size_t p : pos)
            for (std::size_t q : neg_)
                if (adjacent(p, q)) next.push_back(primitive(combine(val[p], rays[q], -val[q], rays[p])));
        rays = std::move(next);
        processed.push_back(a);
    }
    return {std::move(rays), std::move(lineality)};
}

// canonical representative per extreme ray modulo a saturated lattice:
// primitive image in the quotient, lifted back with a fixed right inverse
// and reduced into the fundamental domain of the Hermite basis
inline std::vector<IntVec> canonical_rays_mod(std::size_t n, const std::vector<IntVec>& rays,
                                              const Sublattice& w) {
    std::vector<IntVec> out;
    if (w.basis.empty()) {
        for (const IntVec& r : rays) {
            IntVec p = primitive(r);
            if (!is_zero(p)) out.push_back(std::move(p));
        }
    } else {
        IntMat q = quotient_projection(n, w);
        auto rinv = right_inverse(q);
        if (!rinv) throw error("canonical_rays_mod: projection not surjective");
        for (const IntVec& r : rays) {
            IntVec p = primitive(mul(q, r));
            if (is_zero(p)) continue;
            out.push_back(reduce_mod_lattice(mul(*rinv, p), w));
        }
    }
    std::sort(out.begin(), out.end(), lex_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace detail

// A rational polyhedral cone carrying both canonical descriptions.
// Generators are the extreme rays modulo lineality, facet normals the
// extreme rays of the dual cone modulo the span equations; both lists are
// sorted, so equal cones have equal representations.
struct Cone {
    std::size_t ambient_rank = 0;
    std::size_t dim = 0;
    std::vector<IntVec> generators;
    std::vector<IntVec> lineality_basis;   // Hermite basis of sigma cap -sigma
    std::vector<IntVec> facet_normals;
    std::vector<IntVec> span_equations;    // Hermite basis of {u : <u, sigma> = 0}

    bool is_strictly_convex() const { return lineality_basis.empty(); }
    bool is_zero() const { return dim == 0; }

    bool contains(const IntVec& v) const {
        for (const IntVec& e : span_equations)
            if (dot(e, v) != 0) return false;
        for (const IntVec& u : facet_normals)
            if (dot(u, v) < 0) return false;
        return true;
    }

    bool relint_contains(const IntVec& v) const {
        for (const IntVec& e : span_equations)
            if (dot(e, v) != 0) return false;
        for (const IntVec& u : facet_normals)
            if (dot(u, v) <= 0) return false;
        return true;
    }

    // membership is invariant under positive scaling, so rational points
    // are decided on the denominator-cleared lattice point
    bool contains(const std::vector<Rat>& q) const { return contains(clear_denominators(q)); }
    bool relint_contains(const std::vector<Rat>& q) const {
        return relint_contains(clear_denominators(q));
    }

    static IntVec clear_denominators(const std::vector<Rat>& q) {
        Int l = 1;
        for (const Rat& x : q) {
            Int d = boost::multiprecision::denominator(x);
            l = l / gcd(l, d) * d;
        }
        IntVec v(q.size());
        for (std::size_t i = 0; i < q.size(); ++i)
            v[i] = boost::multiprecision::numerator(q[i]) *
                   (l / boost::multiprecision::denominator(q[i]));
        return v;
    }

    // sum of the canonical generators; an exact relative-interior point
    // (the zero vector for linear subspaces, whose relint contains 0)
    IntVec relint_sample() const {
        IntVec s(ambient_rank, 0);
        for (const IntVec& g : generators) s = add(s, g);
        return s;
    }

    bool operator==(const Cone& o) const {
        return ambient_rank == o.ambient_rank && generators == o.generators &&
               lineality_basis == o.lineality_basis;
    }
    bool operator!=(const Cone& o) const { return !(*this == o); }
    bool operator<(const Cone& o) const {
        if (ambient_rank != o.ambient_rank) return ambient_rank < o.ambient_rank;
        if (dim != o.dim) return dim < o.dim;
        if (generators != o.generators)
            return std::lexicographical_compare(generators.begin(), generators.end(),
                                                o.generators.begin(), o.generators.end(), lex_less);
        return std::lexicographical_compare(lineality_basis.begin(), lineality_basis.end(),
                                            o.lineality_basis.begin(), o.lineality_basis.end(),
                                            lex_less);
    }

    static Cone from_generators(std::size_t n, const std::vector<IntVec>& gens,
                                const std::vector<IntVec>& lin_gens = {});
    static Cone from_inequalities(std::size_t n, const std::vector<IntVec>& ineqs,
                                  const std::vector<IntVec>& eqs = {});
    static Cone zero(std::size_t n) { return from_generators(n, {}); }
    static Cone full(std::size_t n) { return from_inequalities(n, {}); }
};

inline Cone Cone::from_generators(std::size_t n, const std::vector<IntVec>& gens,
                                  const std::vector<IntVec>& lin_gens) {
    for (const IntVec& g : gens)
        if (g.size() != n) throw error("cone: generator length mismatch");
    for (const IntVec& l : lin_gens)
        if (l.size() != n) throw error("cone: lineality length mismatch");

    Cone c;
    c.ambient_rank = n;

    std::vector<IntVec> all = gens;
    all.insert(all.end(), lin_gens.begin(), lin_gens.end());
    Sublattice span_perp = kernel_basis_of_rows(all, n);
    c.span_equations = span_perp.basis;
    c.dim = n - span_perp.rank();

    // facets are the extreme rays of the dual cone
    detail::DdPair dual = detail::double_description(n, gens, kernel_basis_of_rows(lin_gens, n).basis);
    c.facet_normals = detail::canonical_rays_mod(n, dual.rays, span_perp);

    std::vector<IntVec> hrep = c.facet_normals;
    Sublattice span = kernel_basis_of_rows(c.span_equations, n);
    std::vector<IntVec> walls = c.facet_normals;
    walls.insert(walls.end(), c.span_equations.begin(), c.span_equations.end());
    Sublattice lin = kernel_basis_of_rows(walls, n);
    c.lineality_basis = lin.basis;

    detail::DdPair primal = detail::double_description(n, hrep, span.basis);
    c.generators = detail::canonical_rays_mod(n, primal.rays, lin);
    return c;
}

inline Cone Cone::from_inequalities(std::size_t n, const std::vector<IntVec>& ineqs,
                                    const std::vector<IntVec>& eqs) {
    detail::DdPair primal = detail::double_description(n, ineqs, kernel_basis_of_rows(eqs, n).basis);
    return from_generators(n, primal.rays, primal.lineality);
}

// the dual cone; with both canonical descriptions stored this is a swap
inline Cone dual(const Cone& c) {
    Cone d;
    d.ambient_rank = c.ambient_rank;
    d.generators = c.facet_normals;
    d.lineality_basis = c.span_equations;
    d.facet_normals = c.generators;
    d.span_equations = c.lineality_basis;
    d.dim = c.ambient_rank - c.lineality_basis.size();
    return d;
}

inline Cone intersect(const Cone& a, const Cone& b) {
    if (a.ambient_rank != b.ambient_rank) throw error("intersect: ambient rank mismatch");
    std::vector<IntVec> ineqs = a.facet_normals;
    ineqs.insert(ineqs.end(), b.facet_normals.begin(), b.facet_normals.end());
    std::vector<IntVec> eqs = a.span_equations;
    eqs.insert(eqs.end(), b.span_equations.begin(), b.span_equations.end());
    return Cone::from_inequalities(a.ambient_rank, ineqs, eqs);
}

inline Cone negate(const Cone& c) {
    std::vector<IntVec> gens;
    gens.reserve(c.generators.size());
    for (const IntVec& g : c.generators) gens.push_back(neg(g));
    return Cone::from_generators(c.ambient_rank, gens, c.lineality_basis);
}

inline Cone image_cone(const IntMat& p, const Cone& c) {
    if (p.cols != c.ambient_rank) throw error("image_cone: matrix does not match ambient rank");
    std::vector<IntVec> gens, lins;
    for (const IntVec& g : c.generators) gens.push_back(mul(p, g));
    for (const IntVec& l : c.lineality_basis) lins.push_back(mul(p, l));
    return Cone::from_generators(p.rows, gens, lins);
}

// {x : p x in c}
inline Cone preimage_cone(const IntMat& p, const Cone& c) {
    if (p.rows != c.ambient_rank) throw error("preimage_cone: matrix does not match ambient rank");
    std::vector<IntVec> ineqs, eqs;
    for (const IntVec& u : c.facet_normals) ineqs.push_back(mul(p.transpose(), u));
    for (const IntVec& e : c.span_equations) eqs.push_back(mul(p.transpose(), e));
    return Cone::from_inequalities(p.cols, ineqs, eqs);
}

inline bool contains_cone(const Cone& outer, const Cone& inner) {
    if (outer.ambient_rank != inner.ambient_rank) return false;
    for (const IntVec& g : inner.generators)
        if (!outer.contains(g)) return false;
    for (const IntVec& l : inner.lineality_basis)
        if (!outer.contains(l) || !outer.contains(neg(l))) return false;
    return true;
}

// A face named inside its parent: the facet normals vanishing on it
// (maximal such set) and the parent generators it keeps.
struct FaceId {
    std::vector<std::size_t> tight_normals;
    std::vector<std::size_t> generator_indices;

    bool operator==(const FaceId& o) const {
        return tight_normals == o.tight_normals && generator_indices == o.generator_indices;
    }
};

inline Cone materialize(const Cone& parent, const FaceId& f) {
    std::vector<IntVec> gens;
    for (std::size_t i : f.generator_indices) gens.push_back(parent.generators[i]);
    return Cone::from_generators(parent.ambient_rank, gens, parent.lineality_basis);
}

// smallest face of `parent` containing `inner`; requires inner within parent
inline FaceId minimal_face_containing(const Cone& parent, const Cone& inner) {
    if (!contains_cone(parent, inner))
        throw error("minimal_face_containing: cone is not contained in the parent");
    IntVec s = inner.relint_sample();
    FaceId f;
    for (std::size_t k = 0; k < parent.facet_normals.size(); ++k)
        if (dot(parent.facet_normals[k], s) == 0) f.tight_normals.push_back(k);
    for (std::size_t i = 0; i < parent.generators.size(); ++i) {
        bool on_face = true;
        for (std::size_t k : f.tight_normals)
            if (dot(parent.facet_normals[k], parent.generators[i]) != 0) {
                on_face = false;
                break;
            }
        if (on_face) f.generator_indices.push_back(i);
    }
    return f;
}

inline bool is_face_of(const Cone& parent, const Cone& candidate) {
    if (!contains_cone(parent, candidate)) return false;
    return materialize(parent, minimal_face_containing(parent, candidate)) == candidate;
}

// all faces of a strictly convex cone, ordered by (dim, generators);
// includes the zero face and the cone itself
inline std::vector<FaceId> faces(const Cone& c) {
    if (!c.is_strictly_convex())
        throw error("faces: cone is not strictly convex (lineality rank " +
                    std::to_string(c.lineality_basis.size()) + ")");
    std::set<std::vector<std::size_t>> seen;
    std::vector<std::vector<std::size_t>> queue;
    std::vector<std::size_t> all(c.generators.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    seen.insert(all);
    queue.push_back(all);
    while (!queue.empty()) {
        std::vector<std::size_t> g = std::move(queue.back());
        queue.pop_back();
        for (const IntVec& u : c.facet_normals) {
            std::vector<std::size_t> cut;
            for (std::size_t i : g)
                if (dot(u, c.generators[i]) == 0) cut.push_back(i);
            if (seen.insert(cut).second) queue.push_back(cut);
        }
    }

    std::vector<FaceId> out;
    for (const auto& g : seen) {
        FaceId f;
        f.generator_indices = g;
        for (std::size_t k = 0; k < c.facet_normals.size(); ++k) {
            bool tight = true;
            for (std::size_t i : g)
                if (dot(c.facet_normals[k], c.generators[i]) != 0) {
                    tight = false;
                    break;
                }
            if (tight) f.tight_normals.push_back(k);
        }
        out.push_back(std::move(f));
    }
    std::sort(out.begin(), out.end(), [&](const FaceId& x, const FaceId& y) {
        if (x.generator_indices.size() != y.generator_indices.size())
            return x.generator_indices.size() < y.generator_indices.size();
        return x.generator_indices < y.generator_indices;
    });
    return out;
}

inline std::vector<Cone> face_cones(const Cone& c) {
    std::vector<Cone> out;
    for (const FaceId& f : faces(c)) out.push_back(materialize(c, f));
    return out;
}

// whether the relative interiors meet; exact, via the relint sample of the
// intersection: relint(a) and relint(b) meet iff relint(a cap b) lies in both
inline bool relints_intersect(const Cone& a, const Cone& b) {
    if (a.ambient_rank != b.ambient_rank) throw error("relints_intersect: ambient rank mismatch");
    IntVec s = intersect(a, b).relint_sample();
    return a.relint_contains(s) && b.relint_contains(s);
}

inline std::string to_string(const Cone& c) {
    if (c.generators.empty() && c.lineality_basis.empty()) return "cone{0}";
    std::string s = "cone{";
    for (std::size_t i = 0; i < c.generators.size(); ++i) {
        if (i) s += ", ";
        s += to_string(c.generators[i]);
    }
    if (!c.lineality_basis.empty()) {
        s += c.generators.empty() ? "" : "; ";
        s += "lines:";
        for (const IntVec& l : c.lineality_basis) s += " " + to_string(l);
    }
    return s + "}";
}

}  // namespace toriq
