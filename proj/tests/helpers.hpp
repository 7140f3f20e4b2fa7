#pragma once

#include "toriq/quotient.hpp"

#include <initializer_list>
#include <random>
#include <vector>

namespace tt {

using namespace toriq;

inline IntVec v(std::initializer_list<long> xs) {
    IntVec r;
    for (long x : xs) r.push_back(Int(x));
    return r;
}

inline Cone mk(std::size_t n, std::initializer_list<std::initializer_list<long>> gens) {
    std::vector<IntVec> g;
    for (const auto& e : gens) g.push_back(v(e));
    return Cone::from_generators(n, g);
}

struct Rng {
    std::mt19937 gen;
    explicit Rng(unsigned seed) : gen(seed) {}
    int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen); }
};

inline IntVec random_vec(Rng& r, std::size_t n, int maxabs) {
    IntVec out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = Int(r.pick(-maxabs, maxabs));
    return out;
}

inline IntVec random_nonzero_vec(Rng& r, std::size_t n, int maxabs) {
    for (;;) {
        IntVec x = random_vec(r, n, maxabs);
        if (!is_zero(x)) return x;
    }
}

inline Cone random_cone(Rng& r, std::size_t n, int max_gens, int maxabs) {
    std::vector<IntVec> gens;
    int k = r.pick(0, max_gens);
    for (int i = 0; i < k; ++i) gens.push_back(random_nonzero_vec(r, n, maxabs));
    return Cone::from_generators(n, gens);
}

inline Cone random_pointed_cone(Rng& r, std::size_t n, int max_gens, int maxabs) {
    for (;;) {
        std::vector<IntVec> gens;
        int k = r.pick(1, max_gens);
        for (int i = 0; i < k; ++i) gens.push_back(random_nonzero_vec(r, n, maxabs));
        Cone c = Cone::from_generators(n, gens);
        if (c.is_strictly_convex() && c.dim > 0) return c;
    }
}

// a positive integer combination of the generators, strictly interior
inline IntVec random_relint_point(Rng& r, const Cone& c, int maxcoef) {
    IntVec x(c.ambient_rank, 0);
    for (const IntVec& g : c.generators) x = add(x, scale(Int(r.pick(1, maxcoef)), g));
    return x;
}

// stellar subdivision of one maximal cone at an interior lattice point
inline std::vector<Cone> stellar_subdivide(Rng& r, const Cone& c) {
    IntVec w = primitive(random_relint_point(r, c, 3));
    std::vector<Cone> out;
    for (const FaceId& f : faces(c)) {
        Cone fc = materialize(c, f);
        if (fc.dim + 1 != c.dim) continue;
        if (fc.relint_contains(w)) continue;
        std::vector<IntVec> gens = fc.generators;
        gens.push_back(w);
        Cone piece = Cone::from_generators(c.ambient_rank, gens);
        if (piece.dim == c.dim) out.push_back(std::move(piece));
    }
    if (out.empty()) out.push_back(c);
    return out;
}

// a valid fan: the face fan of a pointed cone, optionally refined by
// stellar subdivisions
inline Fan random_fan(Rng& r, std::size_t n, int maxabs, int subdivisions) {
    Cone top = random_pointed_cone(r, n, static_cast<int>(n) + 1, maxabs);
    std::vector<Cone> maximal = {top};
    for (int s = 0; s < subdivisions; ++s) {
        std::size_t at = static_cast<std::size_t>(r.pick(0, static_cast<int>(maximal.size()) - 1));
        std::vector<Cone> pieces = stellar_subdivide(r, maximal[at]);
        maximal.erase(maximal.begin() + at);
        maximal.insert(maximal.end(), pieces.begin(), pieces.end());
    }
    FanResult fr = validate_fan(n, maximal);
    if (!fr.ok()) throw std::logic_error("random_fan generated an invalid fan: " + fr.error->message());
    return *fr.fan;
}

inline AffineSystemOfFans random_system(Rng& r, std::size_t n, int charts, int maxabs) {
    std::vector<Cone> cs;
    for (int i = 0; i < charts; ++i) cs.push_back(random_pointed_cone(r, n, static_cast<int>(n) + 1, maxabs));
    std::vector<GlueInput> glue;
    for (std::size_t i = 0; i < cs.size(); ++i)
        for (std::size_t j = i + 1; j < cs.size(); ++j) {
            GlueInput g;
            g.i = i;
            g.j = j;
            Cone d = intersect(cs[i], cs[j]);
            if (r.pick(0, 1) == 1 && is_face_of(cs[i], d) && is_face_of(cs[j], d))
                g.cones.push_back(d);
            else
                g.cones.push_back(Cone::zero(n));
            glue.push_back(std::move(g));
        }
    SystemResult sr = validate_system(n, cs, glue);
    if (!sr.ok())
        throw std::logic_error("random_system generated an invalid system: " + sr.error->message());
    return *sr.system;
}

inline Sublattice random_proper_sublattice(Rng& r, std::size_t n, int maxabs) {
    for (;;) {
        std::vector<IntVec> gens;
        int k = r.pick(0, static_cast<int>(n) - 1);
        for (int i = 0; i < k; ++i) gens.push_back(random_vec(r, n, maxabs));
        Sublattice l = saturate(make_sublattice(gens, n));
        if (l.rank() < n) return l;
    }
}

inline SubtorusAction random_fan_action(Rng& r, std::size_t n, int maxabs, int subdivisions) {
    return make_action(random_fan(r, n, maxabs, subdivisions), random_proper_sublattice(r, n, 2));
}

inline SubtorusAction random_system_action(Rng& r, std::size_t n, int charts, int maxabs) {
    return make_action(random_system(r, n, charts, maxabs), random_proper_sublattice(r, n, 2));
}

// ---- the worked examples used across the suite ----

inline Cone mk2(std::initializer_list<std::initializer_list<long>> gens) {
    std::vector<IntVec> g;
    for (const auto& e : gens) g.push_back(v(e));
    return Cone::from_generators(g.empty() ? 0 : g.begin()->size(), g);
}

inline SubtorusAction hyperbolic_action() {
    Fan f = *validate_fan(2, {mk(2, {{1, 0}}), mk(2, {{0, 1}})}).fan;
    return make_action(f, make_sublattice({v({1, -1})}, 2));
}

inline SubtorusAction nobasechange_action() {
    Fan f = *validate_fan(3, {mk(3, {{-1, 0, 0}, {0, 1, 0}, {1, 1, 1}}),
                              mk(3, {{1, 0, 0}, {0, 1, 0}, {1, 1, 1}})})
                 .fan;
    return make_action(f, make_sublattice({v({0, 0, 1})}, 3));
}

inline SubtorusAction nobasechange_restricted_action() {
    Fan f = *validate_fan(3, {mk(3, {{-1, 0, 0}}), mk(3, {{1, 0, 0}})}).fan;
    return make_action(f, make_sublattice({v({0, 0, 1})}, 3));
}

inline SubtorusAction sec5_action() {
    Fan f = *validate_fan(4, {mk(4, {{1, 0, 0, 0}, {0, 1, 0, 0}}),
                              mk(4, {{0, 0, 1, 0}, {0, 0, 0, 1}})})
                 .fan;
    return make_action(f, make_sublattice({v({1, 1, 0, -1})}, 4));
}

inline SubtorusAction sec6_action() {
    Fan f = *validate_fan(4, {mk(4, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}),
                              mk(4, {{1, 0, 0, 0}, {2, -1, 0, 0}, {0, 0, 1, 0}})})
                 .fan;
    return make_action(f, make_sublattice({v({-2, 0, 1, 1})}, 4));
}

inline SubtorusAction sec7_action() {
    Fan f = *validate_fan(3, {mk(3, {{1, 0, 0}, {1, -1, 0}, {1, 1, 1}}),
                              mk(3, {{1, 0, 0}, {1, 1, 0}, {1, -1, -1}})})
                 .fan;
    return make_action(f, make_sublattice({v({0, 0, 1})}, 3));
}

inline IntMat sec5_paper_matrix() {
    return IntMat::from_rows({v({1, 0, 0, 1}), v({0, 1, 0, 1}), v({0, 0, 1, 0})}, 4);
}

inline IntMat sec6_paper_matrix() {
    return IntMat::from_rows({v({1, 1, 1, 1}), v({0, -1, 0, 0}), v({0, 0, 1, -1})}, 4);
}

inline Fan sec6_paper_target() {
    return *validate_fan(3, {mk(3, {{1, -1, 0}, {1, 0, 1}, {1, 0, -1}}),
                             mk(3, {{1, 1, 0}, {1, 0, 1}, {1, 0, -1}})})
                .fan;
}

// left-unimodular equivalence: the two matrices have the same row Hermite
// form, i.e. they differ by a change of basis of the target lattice
inline bool unimodularly_equivalent(const IntMat& a, const IntMat& b) {
    if (a.rows != b.rows || a.cols != b.cols) return false;
    return hnf(a).h == hnf(b).h;
}

// random unimodular matrix: a product of elementary row operations
inline IntMat random_unimodular(Rng& r, std::size_t n, int steps) {
    IntMat u = IntMat::identity(n);
    for (int s = 0; s < steps; ++s) {
        std::size_t i = static_cast<std::size_t>(r.pick(0, static_cast<int>(n) - 1));
        std::size_t j = static_cast<std::size_t>(r.pick(0, static_cast<int>(n) - 1));
        switch (r.pick(0, 2)) {
            case 0:
                if (i != j)
                    for (std::size_t k = 0; k < n; ++k) std::swap(u(i, k), u(j, k));
                break;
            case 1:
                for (std::size_t k = 0; k < n; ++k) u(i, k) = -u(i, k);
                break;
            default:
                if (i != j) {
                    Int c(r.pick(-3, 3));
                    for (std::size_t k = 0; k < n; ++k) u(i, k) += c * u(j, k);
                }
        }
    }
    return u;
}

}  // namespace tt
