#pragma once

#include "toriq/cover.hpp"

#include <numeric>
#include <optional>
#include <utility>
#include <vector>

namespace toriq {

// A subtorus of the big torus acting on the toric (pre)variety of an
// affine system of fans, encoded by a saturated sublattice.
struct SubtorusAction {
    AffineSystemOfFans space;
    Sublattice lattice;
    std::optional<Fan> source_fan;  // present when the space is separated
};

inline SubtorusAction make_action(const AffineSystemOfFans& space, const Sublattice& l) {
    if (l.ambient_rank != space.ambient_rank)
        throw error("subtorus action: sublattice rank does not match the ambient lattice");
    Sublattice sat = saturate(l);
    if (sat.rank() >= space.ambient_rank && space.ambient_rank > 0)
        throw error("subtorus action: the sublattice must be a proper subtorus");
    return {space, std::move(sat), std::nullopt};
}

inline SubtorusAction make_action(const Fan& f, const Sublattice& l) {
    SubtorusAction a = make_action(fan_as_system(f), l);
    a.source_fan = f;
    return a;
}

inline std::vector<std::pair<std::size_t, std::size_t>> non_separated_pairs(
    const SubtorusAction& a) {
    std::size_t n = a.space.ambient_rank;
    IntMat p = quotient_projection(n, saturate(a.lattice));
    std::vector<Cone> img;
    img.reserve(a.space.charts.size());
    for (const Cone& c : a.space.charts) img.push_back(image_cone(p, c));
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < img.size(); ++i)
        for (std::size_t j = i + 1; j < img.size(); ++j)
            if (relints_intersect(img[i], img[j])) out.emplace_back(i, j);
    return out;
}

// One enlargement step of the fixpoint.  Rule 1 records the face pair with
// opposite projected interior directions and the lattice vectors added;
// rule 2 records the chart pair whose projections contain an antipodal
// pair, the quotient direction and the preimage vector added.
struct TraceEntry {
    int rule = 0;  // 1 or 2
    std::size_t chart_i = 0, chart_j = 0;
    Cone face_i, face_j;
    IntVec added_i, added_j;   // rule 2: added_i is the preimage vector
    IntVec quotient_direction;  // rule 2 only
};

struct HhatResult {
    Sublattice lattice;
    std::vector<TraceEntry> trace;
    std::size_t codim = 0;
    bool certified = false;
};

namespace detail {

inline Sublattice enlarge_saturated(const Sublattice& l, const std::vector<IntVec>& add) {
    std::vector<IntVec> gens = l.basis;
    gens.insert(gens.end(), add.begin(), add.end());
    return saturation_of(gens, l.ambient_rank);
}

// lattice point in the relative interior of `within` whose image under p
// is a positive multiple of d
inline IntVec relint_point_over_ray(const IntMat& p, const Cone& within, const IntVec& d) {
    Cone ray = Cone::from_generators(p.rows, {d});
    Cone fiber = intersect(within, preimage_cone(p, ray));
    IntVec v = fiber.relint_sample();
    if (is_zero(mul(p, v))) throw error("relint_point_over_ray: fiber degenerated (internal)");
    return v;
}

inline std::vector<std::size_t> classes_for(const std::vector<Cone>& projected) {
    std::size_t m = projected.size();
    std::vector<std::size_t> parent(m);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            if (find(i) != find(j) && relints_intersect(projected[i], projected[j]))
                parent[find(i)] = find(j);
    // consecutive ids ordered by smallest member
    std::vector<std::size_t> ids(m, m);
    std::size_t next = 0;
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t r = find(i);
        if (ids[r] == m) ids[r] = next++;
    }
    std::vector<std::size_t> out(m);
    for (std::size_t i = 0; i < m; ++i) out[i] = ids[find(i)];
    return out;
}

}  // namespace detail

inline HhatResult compute_hhat_from(const AffineSystemOfFans& space, const Sublattice& start) {
    std::size_t n = space.ambient_rank;
    Sublattice l = saturate(start);
    std::vector<TraceEntry> trace;

    std::vector<std::vector<Cone>> chart_faces;
    chart_faces.reserve(space.charts.size());
    for (const Cone& c : space.charts) chart_faces.push_back(face_cones(c));

    bool fired = true;
    while (fired && l.rank() < n) {
        fired = false;
        IntMat p = quotient_projection(n, l);
        std::vector<Cone> pchart;
        pchart.reserve(space.charts.size());
        for (const Cone& c : space.charts) pchart.push_back(image_cone(p, c));
        std::vector<std::vector<Cone>> pfaces(space.charts.size());
        for (std::size_t i = 0; i < space.charts.size(); ++i)
            for (const Cone& f : chart_faces[i]) pfaces[i].push_back(image_cone(p, f));

        // rule 1: faces with opposite projected interior directions
        for (std::size_t i = 0; i < space.charts.size() && !fired; ++i)
            for (std::size_t j = i; j < space.charts.size() && !fired; ++j) {
                if (!relints_intersect(pchart[i], pchart[j])) continue;  // condition (*)
                for (std::size_t fi = 0; fi < pfaces[i].size() && !fired; ++fi)
                    for (std::size_t fj = 0; fj < pfaces[j].size() && !fired; ++fj) {
                        const Cone& a = pfaces[i][fi];
                        if (a.dim == 0) continue;
                        Cone nb = negate(pfaces[j][fj]);
                        if (nb.dim == 0) continue;
                        Cone d = intersect(a, nb);
                        if (d.dim == 0) continue;
                        IntVec s = d.relint_sample();
                        if (!a.relint_contains(s) || !nb.relint_contains(s)) continue;
                        IntVec u = primitive(s);
                        IntVec vi = detail::relint_point_over_ray(p, chart_faces[i][fi], u);
                        IntVec vj = detail::relint_point_over_ray(p, chart_faces[j][fj], neg(u));
                        Int gi = content(mul(p, vi)), gj = content(mul(p, vj));
                        Int g = gcd(gi, gj);
                        vi = scale(gj / g, std::move(vi));
                        vj = scale(gi / g, std::move(vj));
                        l = detail::enlarge_saturated(l, {vi, vj});
                        TraceEntry e;
                        e.rule = 1;
                        e.chart_i = i;
                        e.chart_j = j;
                        e.face_i = chart_faces[i][fi];
                        e.face_j = chart_faces[j][fj];
                        e.added_i = vi;
                        e.added_j = vj;
                        trace.push_back(std::move(e));
                        fired = true;
                    }
            }
        if (fired) continue;

        // rule 2: a class whose union of projected charts contains a line,
        // i.e. some pair of its members contains an antipodal pair
        std::vector<std::size_t> cls = detail::classes_for(pchart);
        for (std::size_t i = 0; i < space.charts.size() && !fired; ++i)
            for (std::size_t j = i; j < space.charts.size() && !fired; ++j) {
                if (cls[i] != cls[j]) continue;
                Cone d = intersect(pchart[i], negate(pchart[j]));
                if (d.dim == 0) continue;
                IntVec dir = primitive(d.relint_sample());
                IntVec w = detail::relint_point_over_ray(p, space.charts[i], dir);
                l = detail::enlarge_saturated(l, {w});
                TraceEntry e;
                e.rule = 2;
                e.chart_i = i;
                e.chart_j = j;
                e.face_i = space.charts[i];
                e.face_j = space.charts[j];
                e.added_i = w;
                e.quotient_direction = dir;
                trace.push_back(std::move(e));
                fired = true;
            }
    }

    HhatResult r;
    r.lattice = std::move(l);
    r.trace = std::move(trace);
    r.codim = n - r.lattice.rank();
    r.certified = r.codim <= 2;
    return r;
}

inline HhatResult compute_hhat(const SubtorusAction& a) {
    return compute_hhat_from(a.space, a.lattice);
}

inline std::vector<std::vector<std::size_t>> equivalence_classes(const SubtorusAction& a,
                                                                 const Sublattice& lhat) {
    IntMat p = quotient_projection(a.space.ambient_rank, lhat);
    std::vector<Cone> img;
    for (const Cone& c : a.space.charts) img.push_back(image_cone(p, c));
    std::vector<std::size_t> ids = detail::classes_for(img);
    std::size_t count = ids.empty() ? 0 : *std::max_element(ids.begin(), ids.end()) + 1;
    std::vector<std::vector<std::size_t>> out(count);
    for (std::size_t i = 0; i < ids.size(); ++i) out[ids[i]].push_back(i);
    return out;
}

struct SeparationResult {
    HhatResult hhat;
    IntMat projection;
    Fan quotient_fan;
    std::vector<std::size_t> class_of;
    std::vector<Cone> cone_of_class;
    bool certified = false;
};

// A combinatorial obstruction hit while assembling a separation; outside
// the certified range (codimension > 2) this is an unsupported-input
// report, not a bug.
struct SeparationFailure : error {
    enum class Kind {
        class_union_not_strictly_convex,
        class_union_not_convex,
        fan_condition,
        chain_condition
    };
    Kind kind;
    Cone a, b, witness;

    SeparationFailure(Kind k, std::string msg, Cone a_ = {}, Cone b_ = {}, Cone w = {})
        : error(std::move(msg)), kind(k), a(std::move(a_)), b(std::move(b_)), witness(std::move(w)) {}
};

namespace detail {

// condition ii of the separation criterion: inside each face bucket of the
// quotient fan, the labelled cones projecting into the open part must be
// connected through labelled cones projecting into the face
inline void check_chain_condition(const AffineSystemOfFans& space, const IntMat& p,
                                  const Fan& quotient, std::size_t codim) {
    std::vector<Cone> proj;
    for (const LabelledCone& lc : space.labelled_cones()) proj.push_back(image_cone(p, lc.cone));

    for (const Cone& rho : quotient.face_cache) {
        std::vector<std::size_t> bucket;  // projections inside rho
        std::vector<char> open_part;      // projections with relint inside rho's relint
        for (std::size_t k = 0; k < proj.size(); ++k) {
            if (!contains_cone(rho, proj[k])) continue;
            bucket.push_back(k);
            open_part.push_back(rho.relint_contains(proj[k].relint_sample()) ? 1 : 0);
        }
        std::size_t strict = std::count(open_part.begin(), open_part.end(), 1);
        if (strict <= 1) continue;
        std::vector<std::size_t> parent(bucket.size());
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](std::size_t x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (std::size_t x = 0; x < bucket.size(); ++x)
            for (std::size_t y = x + 1; y < bucket.size(); ++y)
                if (find(x) != find(y) && relints_intersect(proj[bucket[x]], proj[bucket[y]]))
                    parent[find(x)] = find(y);
        std::size_t root = bucket.size();
        bool connected = true;
        for (std::size_t x = 0; x < bucket.size() && connected; ++x) {
            if (!open_part[x]) continue;
            if (root == bucket.size())
                root = find(x);
            else
                connected = find(x) == root;
        }
        if (!connected) {
            std::string msg = "chain condition fails at quotient face " + to_string(rho);
            if (codim <= 2) throw std::logic_error(msg + " (internal: certified range)");
            throw SeparationFailure(SeparationFailure::Kind::chain_condition, msg, rho);
        }
    }
}

inline SeparationResult point_separation(const AffineSystemOfFans& space, HhatResult hh) {
    SeparationResult r;
    r.projection = IntMat(0, space.ambient_rank);
    FanResult f = validate_fan(0, {Cone::zero(0)});
    r.quotient_fan = *f.fan;
    r.class_of.assign(space.charts.size(), 0);
    r.cone_of_class = {Cone::zero(0)};
    r.certified = true;
    r.hhat = std::move(hh);
    return r;
}

}  // namespace detail

inline SeparationResult compute_separation(const SubtorusAction& a) {
    const AffineSystemOfFans& space = a.space;
    std::size_t n = space.ambient_rank;
    HhatResult hh = compute_hhat(a);
    if (hh.codim == 0) return detail::point_separation(space, std::move(hh));

    IntMat p = quotient_projection(n, hh.lattice);
    std::vector<Cone> pchart;
    for (const Cone& c : space.charts) pchart.push_back(image_cone(p, c));
    std::vector<std::size_t> cls = detail::classes_for(pchart);
    std::size_t count = pchart.empty() ? 0 : *std::max_element(cls.begin(), cls.end()) + 1;

    std::vector<Cone> cones;
    for (std::size_t e = 0; e < count; ++e) {
        std::vector<IntVec> gens;
        std::vector<Cone> members;
        for (std::size_t i = 0; i < pchart.size(); ++i)
            if (cls[i] == e) {
                members.push_back(pchart[i]);
                gens.insert(gens.end(), pchart[i].generators.begin(), pchart[i].generators.end());
            }
        Cone hull = Cone::from_generators(hh.codim, gens);
        if (!hull.is_strictly_convex()) {
            std::string msg = "class cone " + to_string(hull) + " is not strictly convex";
            if (hh.codim <= 2) throw std::logic_error(msg + " (internal: certified range)");
            throw SeparationFailure(SeparationFailure::Kind::class_union_not_strictly_convex, msg,
                                    hull);
        }
        // condition i: the union itself is the cone, not just its hull
        CoverWitness cw = cone_covered_by(hull, members);
        if (!cw.covered) {
            std::string msg = "class union is not convex at " + to_string(hull);
            if (hh.codim <= 2) throw std::logic_error(msg + " (internal: certified range)");
            throw SeparationFailure(SeparationFailure::Kind::class_union_not_convex, msg, hull);
        }
        cones.push_back(std::move(hull));
    }

    FanResult fr = validate_fan(hh.codim, cones);
    if (!fr.ok()) {
        std::string msg = "quotient cones violate the fan condition: " + fr.error->message();
        if (hh.codim <= 2) throw std::logic_error(msg + " (internal: certified range)");
        throw SeparationFailure(SeparationFailure::Kind::fan_condition, msg, fr.error->a,
                                fr.error->b, fr.error->intersection);
    }

    detail::check_chain_condition(space, p, *fr.fan, hh.codim);

    SeparationResult r;
    r.projection = std::move(p);
    r.quotient_fan = std::move(*fr.fan);
    r.class_of = std::move(cls);
    r.cone_of_class = std::move(cones);
    r.certified = hh.codim <= 2;
    r.hhat = std::move(hh);
    return r;
}

// TV-quotient of a subtorus action on a fan: the separation pipeline plus
// a repair loop that restores the fan condition between class cones.  When
// the intersection of two class cones fails to be a face of one of them,
// the other cone grows by the minimal face containing the overlap; a cone
// absorbing another merges the classes, and a line appearing in a grown
// cone is fed back into the enlargement fixpoint as a rule 2 direction.
// The repair never fires in the certified range.
inline SeparationResult tv_quotient(const SubtorusAction& a) {
    if (!a.source_fan)
        throw error("tv_quotient: the action must live on a fan (separated source)");
    const AffineSystemOfFans& space = a.space;
    std::size_t n = space.ambient_rank;

    Sublattice l = a.lattice;
    for (std::size_t restart = 0; restart <= n + 1; ++restart) {
        HhatResult hh = compute_hhat_from(space, l);
        l = hh.lattice;
        if (hh.codim == 0) return detail::point_separation(space, std::move(hh));

        IntMat p = quotient_projection(n, l);
        std::vector<Cone> pchart;
        for (const Cone& c : space.charts) pchart.push_back(image_cone(p, c));
        std::vector<std::size_t> cls = detail::classes_for(pchart);
        std::size_t count = pchart.empty() ? 0 : *std::max_element(cls.begin(), cls.end()) + 1;

        std::vector<Cone> cones;
        for (std::size_t e = 0; e < count; ++e) {
            std::vector<IntVec> gens;
            for (std::size_t i = 0; i < pchart.size(); ++i)
                if (cls[i] == e)
                    gens.insert(gens.end(), pchart[i].generators.begin(),
                                pchart[i].generators.end());
            cones.push_back(Cone::from_generators(hh.codim, gens));
        }

        std::optional<IntVec> feedback_line;
        auto spot_line = [&](const Cone& c) {
            if (c.is_strictly_convex()) return false;
            feedback_line = c.lineality_basis.front();
            return true;
        };
        for (const Cone& c : cones)
            if (spot_line(c)) break;

        auto hull_with_face = [&](const Cone& base, const Cone& other, const Cone& d) {
            std::vector<IntVec> g = base.generators;
            Cone mf = materialize(other, minimal_face_containing(other, d));
            g.insert(g.end(), mf.generators.begin(), mf.generators.end());
            return Cone::from_generators(hh.codim, g);
        };
        auto merge_classes = [&](std::size_t keep, std::size_t drop) {
            for (std::size_t& c : cls) {
                if (c == drop) c = keep;
                if (c > drop) --c;
            }
            cones.erase(cones.begin() + drop);
        };

        bool progress = !feedback_line;
        while (progress) {
            progress = false;
            // grow across fan-condition violations
            for (std::size_t e = 0; e < cones.size() && !progress; ++e)
                for (std::size_t f = e + 1; f < cones.size() && !progress; ++f) {
                    Cone d = intersect(cones[e], cones[f]);
                    bool fe = is_face_of(cones[e], d);
                    bool ff = is_face_of(cones[f], d);
                    if (fe && ff) continue;
                    if (hh.codim <= 2)
                        throw std::logic_error(
                            "tv_quotient: fan repair fired in the certified range (internal)");
                    Cone grown_e = ff ? cones[e] : hull_with_face(cones[e], cones[f], d);
                    Cone grown_f = fe ? cones[f] : hull_with_face(cones[f], cones[e], d);
                    cones[e] = std::move(grown_e);
                    cones[f] = std::move(grown_f);
                    progress = true;
                    if (spot_line(cones[e]) || spot_line(cones[f])) progress = false;
                }
            if (feedback_line) break;
            // a class cone absorbed by another merges into it
            for (std::size_t e = 0; e < cones.size() && !progress; ++e)
                for (std::size_t f = 0; f < cones.size() && !progress; ++f) {
                    if (e == f) continue;
                    if (cones[e] == cones[f]) {
                        if (e > f) continue;
                    } else if (!contains_cone(cones[e], cones[f])) {
                        continue;
                    }
                    merge_classes(e, f);
                    progress = true;
                }
        }

        if (feedback_line) {
            auto rinv = right_inverse(p);
            if (!rinv) throw std::logic_error("tv_quotient: projection lost surjectivity");
            IntVec w = reduce_mod_lattice(mul(*rinv, primitive(*feedback_line)), l);
            l = detail::enlarge_saturated(l, {w});
            continue;  // restart from the enlargement fixpoint
        }

        FanResult fr = validate_fan(hh.codim, cones);
        if (!fr.ok())
            throw std::logic_error("tv_quotient: repaired cones are not a fan (internal): " +
                                   fr.error->message());
        // no chain-condition check here: the toric quotient exists without
        // it, and enforcing it would reject exactly the non-separated cases
        // this construction is for

        SeparationResult r;
        r.projection = std::move(p);
        r.quotient_fan = std::move(*fr.fan);
        r.class_of = std::move(cls);
        r.cone_of_class = std::move(cones);
        r.certified = hh.codim <= 2;
        r.hhat = std::move(hh);
        return r;
    }
    throw std::logic_error("tv_quotient: enlargement did not terminate (internal)");
}

struct OrbitImageReport {
    std::vector<Cone> target_faces;  // face cache order
    std::vector<char> in_image;
    std::vector<Cone> missing_faces;
    bool surjective = false;
    bool image_open = false;
    // a face in the image together with one of its faces that is not
    std::optional<std::pair<Cone, Cone>> openness_witness;
};

// orbit-cone correspondence: the target orbit of a face is hit iff some
// labelled source cone projects with relative interior meeting the face's
inline OrbitImageReport orbit_image(const FanMap& m) {
    OrbitImageReport r;
    std::vector<Cone> proj;
    for (const LabelledCone& lc : m.source.labelled_cones())
        proj.push_back(image_cone(m.matrix, lc.cone));

    r.target_faces = m.target.face_cache;
    for (const Cone& rho : r.target_faces) {
        bool hit = false;
        for (const Cone& q : proj)
            if (relints_intersect(q, rho)) {
                hit = true;
                break;
            }
        r.in_image.push_back(hit ? 1 : 0);
        if (!hit) r.missing_faces.push_back(rho);
    }
    r.surjective = r.missing_faces.empty();
    r.image_open = true;
    for (std::size_t a = 0; a < r.target_faces.size() && r.image_open; ++a) {
        if (!r.in_image[a]) continue;
        for (const Cone& miss : r.missing_faces)
            if (contains_cone(r.target_faces[a], miss)) {
                r.image_open = false;
                r.openness_witness = {r.target_faces[a], miss};
                break;
            }
    }
    return r;
}

struct GlueingWitness {
    Cone rho;  // quotient face hit from both charts but from no glueing cone
    std::size_t chart_i = 0, chart_j = 0;
    std::vector<Cone> faces_i, faces_j;  // source faces realizing the hits
};

// pairs of points identified by the separation but not glued in the
// source: a quotient orbit reached from two charts while no cone of their
// intersection data reaches it
inline std::vector<GlueingWitness> glueing_deficiency(const SubtorusAction& a,
                                                      const SeparationResult& s) {
    const AffineSystemOfFans& space = a.space;
    std::vector<std::vector<Cone>> chart_faces;
    std::vector<std::vector<Cone>> chart_proj;
    for (const Cone& c : space.charts) {
        chart_faces.push_back(face_cones(c));
        std::vector<Cone> pr;
        for (const Cone& f : chart_faces.back()) pr.push_back(image_cone(s.projection, f));
        chart_proj.push_back(std::move(pr));
    }

    std::vector<GlueingWitness> out;
    for (const Cone& rho : s.quotient_fan.face_cache) {
        std::vector<std::vector<Cone>> hits(space.charts.size());
        for (std::size_t i = 0; i < space.charts.size(); ++i)
            for (std::size_t k = 0; k < chart_proj[i].size(); ++k)
                if (relints_intersect(chart_proj[i][k], rho)) hits[i].push_back(chart_faces[i][k]);
        for (std::size_t i = 0; i < space.charts.size(); ++i)
            for (std::size_t j = i + 1; j < space.charts.size(); ++j) {
                if (hits[i].empty() || hits[j].empty()) continue;
                bool glued = false;
                for (const Cone& d : space.glue_faces(i, j))
                    if (relints_intersect(image_cone(s.projection, d), rho)) {
                        glued = true;
                        break;
                    }
                if (!glued) out.push_back({rho, i, j, hits[i], hits[j]});
            }
    }
    return out;
}

struct TpQuotientResult {
    std::optional<AffineSystemOfFans> system;
    IntMat projection;
    std::string unsupported_reason;  // nonempty iff !system
    bool ok() const { return system.has_value(); }
};

// prequotient construction without any enlargement: project the charts and
// the glueing data and revalidate.  Non-separated targets tolerate what a
// separation must collapse, but the projected data need not be a system of
// fans at all, in which case the construction reports why.
inline TpQuotientResult naive_tp_quotient(const SubtorusAction& a) {
    std::size_t n = a.space.ambient_rank;
    TpQuotientResult r;
    r.projection = quotient_projection(n, saturate(a.lattice));

    std::vector<Cone> charts;
    for (std::size_t i = 0; i < a.space.charts.size(); ++i) {
        Cone img = image_cone(r.projection, a.space.charts[i]);
        if (!img.is_strictly_convex()) {
            r.unsupported_reason = "projected chart " + std::to_string(i) +
                                   " is not strictly convex: " + to_string(img);
            return r;
        }
        charts.push_back(std::move(img));
    }
    std::vector<GlueInput> glue;
    for (const auto& [key, cones] : a.space.glue) {
        GlueInput g;
        g.i = key.first;
        g.j = key.second;
        for (const Cone& c : cones) g.cones.push_back(image_cone(r.projection, c));
        glue.push_back(std::move(g));
    }
    SystemResult sr = validate_system(r.projection.rows, charts, glue);
    if (!sr.ok()) {
        r.unsupported_reason = "projected data is not a system of fans: " + sr.error->message();
        return r;
    }
    r.system = std::move(*sr.system);
    return r;
}

enum class AvQuotientStatus { exists_equals_tv, unknown };

struct DiagnosisReport {
    std::size_t codim = 0;
    AvQuotientStatus av_quotient = AvQuotientStatus::unknown;
    bool not_weakly_proper = false;
    bool image_not_open = false;
    bool has_glueing_deficiency = false;
    CoverWitness properness;
    OrbitImageReport image;
    std::vector<GlueingWitness> glueing;
    SeparationResult tv;
    std::vector<std::string> notes;
};

inline DiagnosisReport diagnose(const SubtorusAction& a) {
    if (!a.source_fan) throw error("diagnose: the action must live on a fan (separated source)");
    DiagnosisReport r;
    r.tv = tv_quotient(a);
    r.codim = r.tv.hhat.codim;
    r.av_quotient = r.codim <= 2 ? AvQuotientStatus::exists_equals_tv : AvQuotientStatus::unknown;

    FanMapResult mr = validate_fan_map(r.tv.projection, a.space, r.tv.quotient_fan);
    if (!mr.ok()) throw std::logic_error("diagnose: quotient map is not a fan map (internal)");
    r.properness = is_weakly_proper(*mr.map);
    r.not_weakly_proper = !r.properness.covered;
    r.image = orbit_image(*mr.map);
    r.image_not_open = !r.image.image_open;
    r.glueing = glueing_deficiency(a, r.tv);
    r.has_glueing_deficiency = !r.glueing.empty();

    if (r.av_quotient == AvQuotientStatus::exists_equals_tv)
        r.notes.push_back(
            "codimension <= 2: the quotient map is universal among invariant maps to "
            "separated varieties, and the separated and toric quotients agree");
    else
        r.notes.push_back(
            "codimension >= 3: the computed quotient is the toric one; universality among "
            "arbitrary varieties is not certified");
    if (r.not_weakly_proper)
        r.notes.push_back(
            "projected support is strictly smaller than the quotient support: the quotient "
            "map is not surjective");
    if (r.image_not_open)
        r.notes.push_back("the image of the quotient map is not open");
    if (r.has_glueing_deficiency)
        r.notes.push_back(
            "some quotient orbit is reached from two charts that are not glued over it: "
            "points are identified that no glued prevariety chart separates consistently");
    return r;
}

}  // namespace toriq
