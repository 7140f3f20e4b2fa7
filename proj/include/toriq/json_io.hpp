#pragma once

#include "toriq/quotient.hpp"

#include <json.hpp>

#include <limits>
#include <optional>
#include <sstream>
#include <string>

namespace toriq {

using json = nlohmann::ordered_json;

struct ParseError : error {
    explicit ParseError(const std::string& msg) : error(msg) {}
};

// ---- integers: JSON numbers inside the exact 64-bit range, strings beyond ----

inline json int_to_json(const Int& v) {
    static const Int lo = std::numeric_limits<std::int64_t>::min();
    static const Int hi = std::numeric_limits<std::int64_t>::max();
    if (v >= lo && v <= hi) return static_cast<std::int64_t>(v);
    return v.str();
}

inline Int json_to_int(const json& j, const std::string& path) {
    if (j.is_number_integer()) return Int(j.get<std::int64_t>());
    if (j.is_number()) throw ParseError("at " + path + ": expected an integer, got a non-integer number");
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s.empty()) throw ParseError("at " + path + ": empty integer string");
        std::size_t k = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (k == s.size()) throw ParseError("at " + path + ": malformed integer string '" + s + "'");
        for (; k < s.size(); ++k)
            if (!std::isdigit(static_cast<unsigned char>(s[k])))
                throw ParseError("at " + path + ": malformed integer string '" + s + "'");
        try {
            return s[0] == '+' ? Int(s.substr(1)) : Int(s);
        } catch (const std::exception&) {
            throw ParseError("at " + path + ": malformed integer string '" + s + "'");
        }
    }
    throw ParseError("at " + path + ": expected an integer");
}

inline json vec_to_json(const IntVec& v) {
    json a = json::array();
    for (const Int& x : v) a.push_back(int_to_json(x));
    return a;
}

inline IntVec json_to_vec(const json& j, const std::string& path, std::size_t expected_len) {
    if (!j.is_array()) throw ParseError("at " + path + ": expected an array of integers");
    IntVec v;
    for (std::size_t i = 0; i < j.size(); ++i)
        v.push_back(json_to_int(j[i], path + "[" + std::to_string(i) + "]"));
    if (v.size() != expected_len)
        throw ParseError("at " + path + ": expected " + std::to_string(expected_len) +
                         " entries, got " + std::to_string(v.size()));
    return v;
}

inline json matrix_to_json(const IntMat& m) {
    json a = json::array();
    for (const IntVec& r : m.row_list()) a.push_back(vec_to_json(r));
    return a;
}

inline json cone_to_json(const Cone& c) {
    json gens = json::array();
    for (const IntVec& g : c.generators) gens.push_back(vec_to_json(g));
    if (c.lineality_basis.empty()) return gens;
    json o;
    o["generators"] = gens;
    json lin = json::array();
    for (const IntVec& l : c.lineality_basis) lin.push_back(vec_to_json(l));
    o["lineality"] = lin;
    return o;
}

inline json cones_to_json(const std::vector<Cone>& cs) {
    json a = json::array();
    for (const Cone& c : cs) a.push_back(cone_to_json(c));
    return a;
}

inline json fan_to_json(const Fan& f) {
    json o;
    o["lattice_rank"] = f.ambient_rank;
    o["maximal_cones"] = cones_to_json(f.maximal);
    return o;
}

inline json system_to_json(const AffineSystemOfFans& s) {
    json o;
    o["lattice_rank"] = s.ambient_rank;
    o["charts"] = cones_to_json(s.charts);
    json inter = json::array();
    for (const auto& [key, cones] : s.glue) {
        json g;
        g["i"] = key.first;
        g["j"] = key.second;
        g["cones"] = cones_to_json(cones);
        inter.push_back(std::move(g));
    }
    o["intersections"] = inter;
    return o;
}

inline json sublattice_to_json(const Sublattice& l) {
    json a = json::array();
    for (const IntVec& b : l.basis) a.push_back(vec_to_json(b));
    return a;
}

// ---- problem files ----

struct ProblemFile {
    std::size_t lattice_rank = 0;
    bool is_fan = false;
    std::vector<std::vector<IntVec>> cone_gens;   // maximal_cones (fan) or charts (system)
    std::vector<GlueInput> glue;                  // systems only
    std::optional<std::vector<IntVec>> sublattice_gens;
    std::optional<IntMat> map_matrix;
    std::optional<std::size_t> map_target_rank;
    std::vector<std::vector<IntVec>> map_target_cones;
};

namespace detail {

inline std::vector<std::vector<IntVec>> read_cone_list(const json& j, const std::string& path,
                                                       std::size_t rank) {
    if (!j.is_array()) throw ParseError("at " + path + ": expected an array of cones");
    std::vector<std::vector<IntVec>> out;
    for (std::size_t c = 0; c < j.size(); ++c) {
        const json& jc = j[c];
        std::string cpath = path + "[" + std::to_string(c) + "]";
        if (!jc.is_array()) throw ParseError("at " + cpath + ": expected an array of generators");
        std::vector<IntVec> gens;
        for (std::size_t g = 0; g < jc.size(); ++g)
            gens.push_back(json_to_vec(jc[g], cpath + "[" + std::to_string(g) + "]", rank));
        out.push_back(std::move(gens));
    }
    return out;
}

inline void expect_keys(const json& j, const std::string& path,
                        std::initializer_list<const char*> allowed) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed) ok |= it.key() == k;
        if (!ok) throw ParseError("at " + path + ": unknown field '" + it.key() + "'");
    }
}

}  // namespace detail

inline ProblemFile parse_problem_json(const json& j, const std::string& path = "$") {
    if (!j.is_object()) throw ParseError("at " + path + ": expected an object");
    detail::expect_keys(j, path,
                        {"lattice_rank", "maximal_cones", "charts", "intersections", "sublattice",
                         "map"});
    ProblemFile p;
    if (!j.contains("lattice_rank"))
        throw ParseError("at " + path + ": missing required field 'lattice_rank'");
    Int rank = json_to_int(j["lattice_rank"], path + ".lattice_rank");
    if (rank < 1 || rank > 64)
        throw ParseError("at " + path + ".lattice_rank: rank must be between 1 and 64");
    p.lattice_rank = static_cast<std::size_t>(rank);

    bool has_fan = j.contains("maximal_cones"), has_charts = j.contains("charts");
    if (has_fan == has_charts)
        throw ParseError("at " + path + ": exactly one of 'maximal_cones' or 'charts' is required");
    p.is_fan = has_fan;
    p.cone_gens = detail::read_cone_list(j[has_fan ? "maximal_cones" : "charts"],
                                         path + (has_fan ? ".maximal_cones" : ".charts"),
                                         p.lattice_rank);
    if (p.cone_gens.empty())
        throw ParseError("at " + path + ": at least one cone/chart is required");

    if (j.contains("intersections")) {
        if (has_fan)
            throw ParseError("at " + path + ".intersections: only valid together with 'charts'");
        const json& ji = j["intersections"];
        std::string ipath = path + ".intersections";
        if (!ji.is_array()) throw ParseError("at " + ipath + ": expected an array");
        for (std::size_t k = 0; k < ji.size(); ++k) {
            std::string kpath = ipath + "[" + std::to_string(k) + "]";
            const json& je = ji[k];
            if (!je.is_object() || !je.contains("i") || !je.contains("j") || !je.contains("cones"))
                throw ParseError("at " + kpath + ": expected {\"i\", \"j\", \"cones\"}");
            detail::expect_keys(je, kpath, {"i", "j", "cones"});
            GlueInput g;
            Int i = json_to_int(je["i"], kpath + ".i"), jj = json_to_int(je["j"], kpath + ".j");
            if (i < 0 || jj < 0 || i >= Int(p.cone_gens.size()) || jj >= Int(p.cone_gens.size()) ||
                i == jj)
                throw ParseError("at " + kpath + ": chart indices out of range or equal");
            g.i = static_cast<std::size_t>(i);
            g.j = static_cast<std::size_t>(jj);
            for (auto& gens : detail::read_cone_list(je["cones"], kpath + ".cones", p.lattice_rank))
                g.cones.push_back(Cone::from_generators(p.lattice_rank, gens));
            p.glue.push_back(std::move(g));
        }
    }

    if (j.contains("sublattice")) {
        const json& js = j["sublattice"];
        std::string spath = path + ".sublattice";
        if (!js.is_array()) throw ParseError("at " + spath + ": expected an array of vectors");
        std::vector<IntVec> gens;
        for (std::size_t k = 0; k < js.size(); ++k)
            gens.push_back(json_to_vec(js[k], spath + "[" + std::to_string(k) + "]", p.lattice_rank));
        p.sublattice_gens = std::move(gens);
    }

    if (j.contains("map")) {
        const json& jm = j["map"];
        std::string mpath = path + ".map";
        if (!jm.is_object() || !jm.contains("matrix") || !jm.contains("target"))
            throw ParseError("at " + mpath + ": expected {\"matrix\", \"target\"}");
        detail::expect_keys(jm, mpath, {"matrix", "target"});
        const json& jt = jm["target"];
        std::string tpath = mpath + ".target";
        if (!jt.is_object() || !jt.contains("lattice_rank") || !jt.contains("maximal_cones"))
            throw ParseError("at " + tpath + ": expected a fan object");
        detail::expect_keys(jt, tpath, {"lattice_rank", "maximal_cones"});
        Int trank = json_to_int(jt["lattice_rank"], tpath + ".lattice_rank");
        if (trank < 0 || trank > 64) throw ParseError("at " + tpath + ".lattice_rank: out of range");
        p.map_target_rank = static_cast<std::size_t>(trank);
        p.map_target_cones = detail::read_cone_list(jt["maximal_cones"], tpath + ".maximal_cones",
                                                    *p.map_target_rank);
        const json& jx = jm["matrix"];
        std::string xpath = mpath + ".matrix";
        if (!jx.is_array() || jx.size() != *p.map_target_rank)
            throw ParseError("at " + xpath + ": expected " + std::to_string(*p.map_target_rank) +
                             " rows (target rank)");
        std::vector<IntVec> rows;
        for (std::size_t r = 0; r < jx.size(); ++r)
            rows.push_back(json_to_vec(jx[r], xpath + "[" + std::to_string(r) + "]", p.lattice_rank));
        p.map_matrix = IntMat::from_rows(rows, p.lattice_rank);
    }
    return p;
}

inline ProblemFile parse_problem_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        // recover line/column from the byte offset for a position-precise error
        std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError("malformed JSON at line " + std::to_string(line) + ", column " +
                         std::to_string(col));
    }
    return parse_problem_json(j);
}

// validated content of a problem file
struct LoadedProblem {
    std::size_t rank = 0;
    bool is_fan = false;
    std::optional<Fan> fan;
    std::optional<AffineSystemOfFans> system;
    std::optional<FanError> fan_error;
    std::optional<SystemError> system_error;
    std::optional<Sublattice> sublattice;
    std::optional<IntMat> map_matrix;
    std::optional<Fan> map_target;

    bool space_valid() const { return fan.has_value() || system.has_value(); }
    AffineSystemOfFans as_system() const {
        return system ? *system : fan_as_system(*fan);
    }
};

inline LoadedProblem load_problem(const ProblemFile& p) {
    LoadedProblem l;
    l.rank = p.lattice_rank;
    l.is_fan = p.is_fan;
    std::vector<Cone> cones;
    for (const auto& gens : p.cone_gens)
        cones.push_back(Cone::from_generators(p.lattice_rank, gens));
    if (p.is_fan) {
        FanResult fr = validate_fan(p.lattice_rank, cones);
        if (fr.ok())
            l.fan = std::move(*fr.fan);
        else
            l.fan_error = std::move(*fr.error);
    } else {
        SystemResult sr = validate_system(p.lattice_rank, cones, p.glue);
        if (sr.ok())
            l.system = std::move(*sr.system);
        else
            l.system_error = std::move(*sr.error);
    }
    if (p.sublattice_gens) l.sublattice = saturate(make_sublattice(*p.sublattice_gens, p.lattice_rank));
    if (p.map_matrix) {
        l.map_matrix = p.map_matrix;
        std::vector<Cone> tcones;
        for (const auto& gens : p.map_target_cones)
            tcones.push_back(Cone::from_generators(*p.map_target_rank, gens));
        FanResult fr = validate_fan(*p.map_target_rank, tcones);
        if (!fr.ok())
            throw ParseError("map target is not a valid fan: " + fr.error->message());
        l.map_target = std::move(*fr.fan);
    }
    return l;
}

// canonical serialization; parse(serialize(load(x))) == load(x)
inline json problem_to_json(const LoadedProblem& l) {
    json o;
    o["lattice_rank"] = l.rank;
    if (l.fan) {
        o["maximal_cones"] = fan_to_json(*l.fan)["maximal_cones"];
    } else if (l.system) {
        json s = system_to_json(*l.system);
        o["charts"] = s["charts"];
        o["intersections"] = s["intersections"];
    }
    if (l.sublattice) o["sublattice"] = sublattice_to_json(*l.sublattice);
    if (l.map_matrix) {
        json m;
        m["matrix"] = matrix_to_json(*l.map_matrix);
        m["target"] = fan_to_json(*l.map_target);
        o["map"] = m;
    }
    return o;
}

// ---- reports ----

inline json hhat_to_json(const HhatResult& h, std::size_t ambient_rank) {
    json o;
    o["ambient_rank"] = ambient_rank;
    o["codim"] = h.codim;
    o["certified"] = h.certified;
    o["lattice"] = sublattice_to_json(h.lattice);
    json tr = json::array();
    for (const TraceEntry& t : h.trace) {
        json e;
        e["rule"] = t.rule;
        e["chart_i"] = t.chart_i;
        e["chart_j"] = t.chart_j;
        e["face_i"] = cone_to_json(t.face_i);
        e["face_j"] = cone_to_json(t.face_j);
        if (t.rule == 1) {
            e["added"] = json::array({vec_to_json(t.added_i), vec_to_json(t.added_j)});
        } else {
            e["added"] = json::array({vec_to_json(t.added_i)});
            e["quotient_direction"] = vec_to_json(t.quotient_direction);
        }
        tr.push_back(std::move(e));
    }
    o["trace"] = tr;
    return o;
}

inline json separation_to_json(const SeparationResult& s) {
    json o;
    o["codim"] = s.hhat.codim;
    o["certified"] = s.certified;
    o["projection"] = matrix_to_json(s.projection);
    o["quotient_fan"] = fan_to_json(s.quotient_fan);
    json classes = json::array();
    std::size_t count = s.cone_of_class.size();
    for (std::size_t e = 0; e < count; ++e) {
        json members = json::array();
        for (std::size_t i = 0; i < s.class_of.size(); ++i)
            if (s.class_of[i] == e) members.push_back(i);
        classes.push_back(std::move(members));
    }
    o["classes"] = classes;
    o["class_cones"] = cones_to_json(s.cone_of_class);
    o["hhat"] = hhat_to_json(s.hhat, s.projection.cols);
    return o;
}

inline json cover_to_json(const CoverWitness& w) {
    json o;
    o["covered"] = w.covered;
    if (w.gap_point) o["gap_point"] = vec_to_json(*w.gap_point);
    o["cell_count"] = w.cell_count;
    return o;
}

inline json orbit_image_to_json(const OrbitImageReport& r) {
    json o;
    o["surjective"] = r.surjective;
    o["image_open"] = r.image_open;
    json faces = json::array();
    for (std::size_t i = 0; i < r.target_faces.size(); ++i) {
        json f;
        f["cone"] = cone_to_json(r.target_faces[i]);
        f["in_image"] = static_cast<bool>(r.in_image[i]);
        faces.push_back(std::move(f));
    }
    o["faces"] = faces;
    o["missing_faces"] = cones_to_json(r.missing_faces);
    if (r.openness_witness) {
        json w;
        w["in_image"] = cone_to_json(r.openness_witness->first);
        w["missing_face"] = cone_to_json(r.openness_witness->second);
        o["openness_witness"] = w;
    }
    return o;
}

inline json glueing_to_json(const std::vector<GlueingWitness>& ws) {
    json a = json::array();
    for (const GlueingWitness& w : ws) {
        json o;
        o["face"] = cone_to_json(w.rho);
        o["chart_i"] = w.chart_i;
        o["chart_j"] = w.chart_j;
        o["faces_i"] = cones_to_json(w.faces_i);
        o["faces_j"] = cones_to_json(w.faces_j);
        a.push_back(std::move(o));
    }
    return a;
}

inline json tp_to_json(const TpQuotientResult& r) {
    json o;
    o["projection"] = matrix_to_json(r.projection);
    if (r.ok()) {
        o["system"] = system_to_json(*r.system);
    } else {
        o["unsupported"] = r.unsupported_reason;
    }
    return o;
}

inline json diagnosis_to_json(const DiagnosisReport& d) {
    json o;
    o["codim"] = d.codim;
    o["av_quotient"] =
        d.av_quotient == AvQuotientStatus::exists_equals_tv ? "exists-equals-tv" : "unknown";
    json flags = json::array();
    if (d.not_weakly_proper) flags.push_back("not-weakly-proper");
    if (d.image_not_open) flags.push_back("image-not-open");
    if (d.has_glueing_deficiency) flags.push_back("glueing-deficiency");
    o["flags"] = flags;
    o["projection"] = matrix_to_json(d.tv.projection);
    o["quotient_fan"] = fan_to_json(d.tv.quotient_fan);
    o["weak_properness"] = cover_to_json(d.properness);
    json im;
    im["surjective"] = d.image.surjective;
    im["image_open"] = d.image.image_open;
    im["missing_faces"] = cones_to_json(d.image.missing_faces);
    o["orbit_image"] = im;
    o["glueing_witnesses"] = glueing_to_json(d.glueing);
    o["notes"] = d.notes;
    return o;
}

// ---- human-readable rendering ----

namespace human {

inline std::string vec(const IntVec& v) { return to_string(v); }

inline std::string cone_str(const Cone& c) { return to_string(c); }

inline std::string matrix(const IntMat& m, const std::string& indent) {
    std::ostringstream os;
    for (std::size_t i = 0; i < m.rows; ++i) {
        os << indent << "[";
        for (std::size_t j = 0; j < m.cols; ++j) os << (j ? " " : "") << m(i, j).str();
        os << "]\n";
    }
    if (m.rows == 0) os << indent << "[] (rank-0 target)\n";
    return os.str();
}

inline std::string fan(const Fan& f) {
    std::ostringstream os;
    os << "fan in Z^" << f.ambient_rank << " with " << f.maximal.size() << " maximal cone"
       << (f.maximal.size() == 1 ? "" : "s") << ":\n";
    for (std::size_t i = 0; i < f.maximal.size(); ++i)
        os << "  [" << i << "] " << cone_str(f.maximal[i]) << "\n";
    return os.str();
}

inline std::string system(const AffineSystemOfFans& s) {
    std::ostringstream os;
    os << "affine system of fans in Z^" << s.ambient_rank << " with " << s.charts.size()
       << " charts:\n";
    for (std::size_t i = 0; i < s.charts.size(); ++i)
        os << "  chart " << i << ": " << cone_str(s.charts[i]) << "\n";
    for (const auto& [key, cones] : s.glue) {
        os << "  glue (" << key.first << "," << key.second << "):";
        for (const Cone& c : cones) os << " " << cone_str(c);
        os << "\n";
    }
    return os.str();
}

inline std::string hhat(const HhatResult& h) {
    std::ostringstream os;
    os << "enlarged sublattice (rank " << h.lattice.rank() << ", codim " << h.codim << ", "
       << (h.certified ? "certified" : "not certified") << "):\n";
    for (const IntVec& b : h.lattice.basis) os << "  " << vec(b) << "\n";
    if (h.lattice.basis.empty()) os << "  (zero sublattice)\n";
    os << "trace (" << h.trace.size() << " enlargement" << (h.trace.size() == 1 ? "" : "s")
       << "):\n";
    for (const TraceEntry& t : h.trace) {
        if (t.rule == 1)
            os << "  R1 charts (" << t.chart_i << "," << t.chart_j << ") faces "
               << cone_str(t.face_i) << " | " << cone_str(t.face_j) << " added " << vec(t.added_i)
               << ", " << vec(t.added_j) << "\n";
        else
            os << "  R2 charts (" << t.chart_i << "," << t.chart_j << ") direction "
               << vec(t.quotient_direction) << " added " << vec(t.added_i) << "\n";
    }
    if (h.trace.empty()) os << "  (none: the input sublattice is already the fixpoint)\n";
    return os.str();
}

inline std::string separation(const SeparationResult& s) {
    std::ostringstream os;
    os << "codim: " << s.hhat.codim << "\n";
    os << "certified: " << (s.certified ? "yes" : "no") << "\n";
    os << "projection:\n" << matrix(s.projection, "  ");
    os << "quotient " << fan(s.quotient_fan);
    os << "classes:\n";
    for (std::size_t e = 0; e < s.cone_of_class.size(); ++e) {
        os << "  class " << e << " = charts {";
        bool first = true;
        for (std::size_t i = 0; i < s.class_of.size(); ++i)
            if (s.class_of[i] == e) {
                os << (first ? "" : ", ") << i;
                first = false;
            }
        os << "} -> " << cone_str(s.cone_of_class[e]) << "\n";
    }
    os << hhat(s.hhat);
    return os.str();
}

}  // namespace human

}  // namespace toriq
