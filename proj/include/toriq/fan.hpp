#pragma once

#include "toriq/cone.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace toriq {

struct FanError {
    enum class Kind { not_strictly_convex, not_common_face };
    Kind kind;
    Cone a;             // offending cone
    Cone b;             // partner (not_common_face)
    Cone intersection;  // a cap b (not_common_face)

    std::string message() const {
        if (kind == Kind::not_strictly_convex)
            return "cone is not strictly convex: " + to_string(a);
        return "intersection " + to_string(intersection) + " of " + to_string(a) + " and " +
               to_string(b) + " is not a common face";
    }
};

// A fan stored by its maximal cones (input order, face-redundant entries
// dropped); all faces are derived into a sorted cache.
struct Fan {
    std::size_t ambient_rank = 0;
    std::vector<Cone> maximal;
    std::vector<Cone> face_cache;  // sorted, unique, closed under faces

    bool contains_point(const IntVec& v) const {
        for (const Cone& c : maximal)
            if (c.contains(v)) return true;
        return false;
    }
};

struct FanResult {
    std::optional<Fan> fan;
    std::optional<FanError> error;
    bool ok() const { return fan.has_value(); }
};

inline std::vector<Cone> collect_faces(const std::vector<Cone>& maximal) {
    std::vector<Cone> all;
    for (const Cone& c : maximal)
        for (const Cone& f : face_cones(c)) all.push_back(f);
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return all;
}

inline FanResult validate_fan(std::size_t ambient_rank, const std::vector<Cone>& cones) {
    for (const Cone& c : cones) {
        if (c.ambient_rank != ambient_rank)
            return {std::nullopt, FanError{FanError::Kind::not_strictly_convex, c, {}, {}}};
        if (!c.is_strictly_convex())
            return {std::nullopt, FanError{FanError::Kind::not_strictly_convex, c, {}, {}}};
    }
    for (std::size_t i = 0; i < cones.size(); ++i)
        for (std::size_t j = i + 1; j < cones.size(); ++j) {
            Cone d = intersect(cones[i], cones[j]);
            if (!is_face_of(cones[i], d) || !is_face_of(cones[j], d))
                return {std::nullopt,
                        FanError{FanError::Kind::not_common_face, cones[i], cones[j], d}};
        }
    Fan f;
    f.ambient_rank = ambient_rank;
    for (std::size_t i = 0; i < cones.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < cones.size() && !redundant; ++j) {
            if (i == j) continue;
            if (contains_cone(cones[j], cones[i]) && !(cones[i] == cones[j] && i < j))
                redundant = true;
        }
        if (!redundant) f.maximal.push_back(cones[i]);
    }
    if (f.maximal.empty() && !cones.empty()) f.maximal.push_back(cones.front());
    if (f.maximal.empty()) f.maximal.push_back(Cone::zero(ambient_rank));
    f.face_cache = collect_faces(f.maximal);
    return {std::move(f), std::nullopt};
}

inline bool same_cones_up_to_order(std::vector<Cone> a, std::vector<Cone> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

struct LabelledCone {
    Cone cone;
    std::size_t chart = 0;
};

struct SystemError {
    enum class Kind { chart_not_strictly_convex, symmetry, not_common_face, triple_condition };
    Kind kind;
    std::size_t i = 0, j = 0, k = 0;
    Cone witness;

    std::string message() const {
        switch (kind) {
            case Kind::chart_not_strictly_convex:
                return "chart " + std::to_string(i) + " is not strictly convex: " + to_string(witness);
            case Kind::symmetry:
                return "intersection data for (" + std::to_string(i) + "," + std::to_string(j) +
                       ") and (" + std::to_string(j) + "," + std::to_string(i) + ") disagree";
            case Kind::not_common_face:
                return "glueing cone " + to_string(witness) + " is not a common face of charts " +
                       std::to_string(i) + " and " + std::to_string(j);
            default:
                return "triple condition fails for charts (" + std::to_string(i) + "," +
                       std::to_string(j) + "," + std::to_string(k) + ") at " + to_string(witness);
        }
    }
};

// An affine system of fans: charts sigma(i) plus glueing fans Delta_ij
// stored by maximal cones (closed under faces on demand).  Absent pairs
// glue along the zero cone only.
struct AffineSystemOfFans {
    std::size_t ambient_rank = 0;
    std::vector<Cone> charts;
    std::map<std::pair<std::size_t, std::size_t>, std::vector<Cone>> glue;  // key i < j

    const std::vector<Cone>* glue_maximal(std::size_t i, std::size_t j) const {
        auto it = glue.find({std::min(i, j), std::max(i, j)});
        return it == glue.end() ? nullptr : &it->second;
    }

    std::vector<Cone> glue_faces(std::size_t i, std::size_t j) const {
        if (i == j) return face_cones(charts[i]);
        const std::vector<Cone>* g = glue_maximal(i, j);
        if (!g) return {Cone::zero(ambient_rank)};
        std::vector<Cone> out = collect_faces(*g);
        if (out.empty()) out.push_back(Cone::zero(ambient_rank));
        return out;
    }

    std::vector<LabelledCone> labelled_cones() const {
        std::vector<LabelledCone> out;
        for (std::size_t i = 0; i < charts.size(); ++i)
            for (const Cone& f : face_cones(charts[i])) out.push_back({f, i});
        return out;
    }

    bool contains_point(const IntVec& v) const {
        for (const Cone& c : charts)
            if (c.contains(v)) return true;
        return false;
    }
};

struct SystemResult {
    std::optional<AffineSystemOfFans> system;
    std::optional<SystemError> error;
    bool ok() const { return system.has_value(); }
};

struct GlueInput {
    std::size_t i = 0, j = 0;
    std::vector<Cone> cones;
};

inline SystemResult validate_system(std::size_t ambient_rank, const std::vector<Cone>& charts,
                                    const std::vector<GlueInput>& glue_inputs) {
    for (std::size_t i = 0; i < charts.size(); ++i) {
        if (charts[i].ambient_rank != ambient_rank || !charts[i].is_strictly_convex())
            return {std::nullopt,
                    SystemError{SystemError::Kind::chart_not_strictly_convex, i, 0, 0, charts[i]}};
    }

    AffineSystemOfFans s;
    s.ambient_rank = ambient_rank;
    s.charts = charts;
    for (const GlueInput& g : glue_inputs) {
        if (g.i >= charts.size() || g.j >= charts.size() || g.i == g.j)
            return {std::nullopt, SystemError{SystemError::Kind::symmetry, g.i, g.j, 0, {}}};
        auto key = std::make_pair(std::min(g.i, g.j), std::max(g.i, g.j));
        std::vector<Cone> cones = g.cones;
        if (cones.empty()) cones.push_back(Cone::zero(ambient_rank));
        std::sort(cones.begin(), cones.end());
        cones.erase(std::unique(cones.begin(), cones.end()), cones.end());
        auto it = s.glue.find(key);
        if (it != s.glue.end()) {
            if (!same_cones_up_to_order(it->second, cones))
                return {std::nullopt, SystemError{SystemError::Kind::symmetry, g.i, g.j, 0, {}}};
        } else {
            s.glue.emplace(key, std::move(cones));
        }
    }

    for (const auto& [key, cones] : s.glue)
        for (const Cone& d : cones) {
            if (!is_face_of(s.charts[key.first], d) || !is_face_of(s.charts[key.second], d))
                return {std::nullopt, SystemError{SystemError::Kind::not_common_face, key.first,
                                                  key.second, 0, d}};
        }

    // triple condition Delta_ij cap Delta_jk < Delta_ik
    std::size_t m = charts.size();
    auto in_closure = [&](const std::vector<Cone>& closure, const Cone& d) {
        for (const Cone& c : closure)
            if (c == d) return true;
        return false;
    };
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t k = 0; k < m; ++k) {
                if (i == j || j == k || i == k) continue;
                std::vector<Cone> ij = s.glue_faces(i, j);
                std::vector<Cone> jk = s.glue_faces(j, k);
                std::vector<Cone> ik = s.glue_faces(i, k);
                for (const Cone& d : ij)
                    if (in_closure(jk, d) && !in_closure(ik, d))
                        return {std::nullopt,
                                SystemError{SystemError::Kind::triple_condition, i, j, k, d}};
            }
    return {std::move(s), std::nullopt};
}

// a separated toric space as a system: charts are the maximal cones and
// two charts glue along the faces of their intersection
inline AffineSystemOfFans fan_as_system(const Fan& f) {
    AffineSystemOfFans s;
    s.ambient_rank = f.ambient_rank;
    s.charts = f.maximal;
    for (std::size_t i = 0; i < f.maximal.size(); ++i)
        for (std::size_t j = i + 1; j < f.maximal.size(); ++j)
            s.glue[{i, j}] = {intersect(f.maximal[i], f.maximal[j])};
    return s;
}

inline bool support_membership(const Fan& f, const IntVec& v) { return f.contains_point(v); }
inline bool support_membership(const AffineSystemOfFans& s, const IntVec& v) {
    return s.contains_point(v);
}
inline bool support_membership(const Fan& f, const std::vector<Rat>& q) {
    return f.contains_point(Cone::clear_denominators(q));
}
inline bool support_membership(const AffineSystemOfFans& s, const std::vector<Rat>& q) {
    return s.contains_point(Cone::clear_denominators(q));
}

struct FanMapError {
    std::size_t chart = 0;
    Cone image;
    std::string message() const {
        return "image " + to_string(image) + " of chart " + std::to_string(chart) +
               " is not contained in any target cone";
    }
};

// A lattice homomorphism mapping a system of fans to a fan: every chart
// image must land inside some target cone; each chart is assigned the
// minimal one.
struct FanMap {
    IntMat matrix;
    AffineSystemOfFans source;
    Fan target;
    std::vector<Cone> chart_assignment;  // minimal target cone per chart
};

struct FanMapResult {
    std::optional<FanMap> map;
    std::optional<FanMapError> error;
    bool ok() const { return map.has_value(); }
};

// minimal cone of the fan containing `c`, if any; the set of containing
// cones is closed under intersection, so the minimum is unique
inline std::optional<Cone> minimal_containing_cone(const Fan& f, const Cone& c) {
    std::optional<Cone> best;
    for (const Cone& t : f.face_cache) {
        if (!contains_cone(t, c)) continue;
        if (!best || t.dim < best->dim) best = t;
    }
    if (best)
        for (const Cone& t : f.face_cache)
            if (contains_cone(t, c) && !contains_cone(t, *best))
                throw error("minimal_containing_cone: minimum is not unique");
    return best;
}

inline FanMapResult validate_fan_map(const IntMat& matrix, const AffineSystemOfFans& source,
                                     const Fan& target) {
    if (matrix.cols != source.ambient_rank || matrix.rows != target.ambient_rank)
        throw error("validate_fan_map: matrix shape does not match the ambient ranks");
    FanMap m;
    m.matrix = matrix;
    m.source = source;
    m.target = target;
    for (std::size_t i = 0; i < source.charts.size(); ++i) {
        Cone img = image_cone(matrix, source.charts[i]);
        std::optional<Cone> t = minimal_containing_cone(target, img);
        if (!t) return {std::nullopt, FanMapError{i, img}};
        m.chart_assignment.push_back(std::move(*t));
    }
    return {std::move(m), std::nullopt};
}

inline FanMapResult validate_fan_map(const IntMat& matrix, const Fan& source, const Fan& target) {
    return validate_fan_map(matrix, fan_as_system(source), target);
}

}  // namespace toriq
