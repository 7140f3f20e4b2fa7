#include "toriq/fixtures.hpp"
#include "toriq/json_io.hpp"
#include "toriq/svg.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#ifdef _WIN32
#define TORIQ_TTY false
#else
#include <unistd.h>
#define TORIQ_TTY (isatty(fileno(stdout)) != 0)
#endif

namespace {

using namespace toriq;

constexpr int exit_ok = 0;
constexpr int exit_invalid = 2;
constexpr int exit_unsupported = 3;

bool color_enabled() {
    const char* env = std::getenv("TORIQ_COLOR");
    if (env && std::string(env) == "0") return false;
    return TORIQ_TTY;
}

std::string paint(const std::string& s, const char* code) {
    if (!color_enabled()) return s;
    return std::string("\033[") + code + "m" + s + "\033[0m";
}

std::string read_input(const std::string& arg) {
    if (std::filesystem::exists(arg)) {
        std::ifstream in(arg, std::ios::binary);
        if (!in) throw error("cannot read '" + arg + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
    if (const Fixture* f = find_fixture(arg)) return std::string(f->text);
    throw error("no such file or bundled fixture: '" + arg + "'");
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << "\n";
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw error("cannot write '" + out_path + "'");
        out << text;
    }
}

void emit_report(const json& j, const std::string& human, bool as_json,
                 const std::string& out_path) {
    emit(as_json ? j.dump() + "\n" : human, out_path);
}

LoadedProblem load_from(const std::string& file) {
    return load_problem(parse_problem_text(read_input(file)));
}

json space_violation_json(const LoadedProblem& l) {
    json o;
    o["valid"] = false;
    if (l.fan_error) {
        o["kind"] = "fan";
        json v;
        v["message"] = l.fan_error->message();
        v["cone"] = cone_to_json(l.fan_error->a);
        if (l.fan_error->kind == FanError::Kind::not_common_face) {
            v["partner"] = cone_to_json(l.fan_error->b);
            v["intersection"] = cone_to_json(l.fan_error->intersection);
        }
        o["violation"] = v;
    } else if (l.system_error) {
        o["kind"] = "system";
        json v;
        v["message"] = l.system_error->message();
        v["witness"] = cone_to_json(l.system_error->witness);
        o["violation"] = v;
    }
    return o;
}

int require_valid_space(const LoadedProblem& l, bool as_json, const std::string& out_path) {
    if (l.space_valid()) return -1;
    json o = space_violation_json(l);
    std::string msg = l.fan_error ? l.fan_error->message() : l.system_error->message();
    emit_report(o, paint("invalid", "31") + ": " + msg + "\n", as_json, out_path);
    return exit_invalid;
}

SubtorusAction action_from(const LoadedProblem& l) {
    if (!l.sublattice) throw error("this command needs a 'sublattice' field in the input");
    if (l.fan) return make_action(*l.fan, *l.sublattice);
    return make_action(l.as_system(), *l.sublattice);
}

int cmd_validate(const std::string& file, bool as_json, const std::string& out_path) {
    LoadedProblem l = load_from(file);
    if (!l.space_valid()) return require_valid_space(l, as_json, out_path);
    json o;
    o["valid"] = true;
    o["kind"] = l.fan ? "fan" : "system";
    o["normalized"] = problem_to_json(l);
    std::ostringstream os;
    os << paint("valid", "32") << " " << (l.fan ? "fan" : "affine system of fans") << "\n";
    if (l.fan)
        os << human::fan(*l.fan);
    else
        os << human::system(*l.system);
    if (l.sublattice) {
        os << "sublattice (rank " << l.sublattice->rank() << "):";
        for (const IntVec& b : l.sublattice->basis) os << " " << to_string(b);
        os << "\n";
    }
    emit_report(o, os.str(), as_json, out_path);
    return exit_ok;
}

int cmd_hhat(const std::string& file, bool as_json, const std::string& out_path) {
    LoadedProblem l = load_from(file);
    if (int rc = require_valid_space(l, as_json, out_path); rc >= 0) return rc;
    SubtorusAction a = action_from(l);
    HhatResult h = compute_hhat(a);
    emit_report(hhat_to_json(h, a.space.ambient_rank), human::hhat(h), as_json, out_path);
    return exit_ok;
}

int report_separation(const SeparationResult& s, bool as_json, const std::string& out_path) {
    emit_report(separation_to_json(s), human::separation(s), as_json, out_path);
    return exit_ok;
}

int report_unsupported(const SeparationFailure& f, bool as_json, const std::string& out_path) {
    json o;
    o["unsupported"] = f.what();
    o["witness"] = cone_to_json(f.kind == SeparationFailure::Kind::fan_condition ? f.witness : f.a);
    emit_report(o, paint("unsupported", "33") + ": " + f.what() + "\n", as_json, out_path);
    return exit_unsupported;
}

int cmd_separation(const std::string& file, bool as_json, const std::string& out_path) {
    LoadedProblem l = load_from(file);
    if (int rc = require_valid_space(l, as_json, out_path); rc >= 0) return rc;
    try {
        return report_separation(compute_separation(action_from(l)), as_json, out_path);
    } catch (const SeparationFailure& f) {
        return report_unsupported(f, as_json, out_path);
    }
}

int cmd_tv_quotient(const std::string& file, bool as_json, const std::string& out_path) {
    LoadedProblem l = load_from(file);
    if (int rc = require_valid_space(l, as_json, out_path); rc >= 0) return rc;
    if (!l.fan) throw error("tv-quotient needs a fan input ('maximal_cones')");
    try {
        return report_separation(tv_quotient(action_from(l)), as_json, out_path);
    } catch (const SeparationFailure& f) {
        return report_unsupported(f, as_json, out_path);
    }
}

int cmd_tp_quotient(const std::string& file, bool as_json, const std::string& out_path) {
    LoadedProblem l = load_from(file);
    if (int rc = require_valid_space(l, as_json, out_path); rc >= 0) return rc;
    TpQuotientResult r = naive_tp_quotient(action_from(l));
    if (!r.ok()) {
        emit_report(tp_to_json(r), paint("unsupported", "33") + ": " + r.unsupported_reason + "\n",
                    as_json, out_path);
        return exit_unsupported;
    }
    std::ostringstream os;
    os << "projection:\n" << human::matrix(r.projection, "  ") << "quotient " << human::system(*r.system);
    emit_report(tp_to_json(r), os.str(), as_json, out_path);
    return exit_ok;
}

int cmd_image(const std::string& file, bool as_json, const std::string& out_path) {
    LoadedProblem l = load_from(file);
    if (int rc = require_valid_space(l, as_json, out_path); rc >= 0) return rc;
    if (!l.map_matrix) throw error("image needs a 'map' field (matrix and target fan)");
    FanMapResult mr = l.fan ? validate_fan_map(*l.map_matrix, *l.fan, *l.map_target)
                            : validate_fan_map(*l.map_matrix, *l.system, *l.map_target);
    if (!mr.ok()) throw error("not a map of fans: " + mr.error->message());
    OrbitImageReport r = orbit_image(*mr.map);
    std::ostringstream os;
    os << "surjective: " << (r.surjective ? "yes" : "no") << "\n";
    os << "image open: " << (r.image_open ? "yes" : "no") << "\n";
    os << "missing faces (" << r.missing_faces.size() << "):\n";
    for (const Cone& m : r.missing_faces) os << "  " << to_string(m) << "\n";
    if (r.openness_witness)
        os << "not open because " << to_string(r.openness_witness->second) << " is a face of the in-image "
           << to_string(r.openness_witness->first) << "\n";
    emit_report(orbit_image_to_json(r), os.str(), as_json, out_path);
    return exit_ok;
}

int cmd_diagnose(const std::string& file, bool as_json, const std::string& out_path) {
    LoadedProblem l = load_from(file);
    if (int rc = require_valid_space(l, as_json, out_path); rc >= 0) return rc;
    if (!l.fan) throw error("diagnose needs a fan input ('maximal_cones')");
    try {
        DiagnosisReport d = diagnose(action_from(l));
        std::ostringstream os;
        os << "codim: " << d.codim << "\n";
        os << "av-quotient: "
           << (d.av_quotient == AvQuotientStatus::exists_equals_tv ? "exists-equals-tv" : "unknown")
           << "\n";
        os << "flags:";
        if (d.not_weakly_proper) os << " " << paint("not-weakly-proper", "31");
        if (d.image_not_open) os << " " << paint("image-not-open", "31");
        if (d.has_glueing_deficiency) os << " " << paint("glueing-deficiency", "31");
        if (!d.not_weakly_proper && !d.image_not_open && !d.has_glueing_deficiency)
            os << " " << paint("none", "32");
        os << "\n";
        os << "projection:\n" << human::matrix(d.tv.projection, "  ");
        os << "quotient " << human::fan(d.tv.quotient_fan);
        if (d.properness.gap_point)
            os << "support gap point: " << to_string(*d.properness.gap_point) << "\n";
        if (!d.image.missing_faces.empty()) {
            os << "missing face orbits:\n";
            for (const Cone& m : d.image.missing_faces) os << "  " << to_string(m) << "\n";
        }
        for (const GlueingWitness& w : d.glueing)
            os << "glueing deficiency at " << to_string(w.rho) << ": charts " << w.chart_i << " and "
               << w.chart_j << " via " << to_string(w.faces_i.front()) << " | "
               << to_string(w.faces_j.front()) << "\n";
        os << "notes:\n";
        for (const std::string& n : d.notes) os << "  - " << n << "\n";
        emit_report(diagnosis_to_json(d), os.str(), as_json, out_path);
        return exit_ok;
    } catch (const SeparationFailure& f) {
        return report_unsupported(f, as_json, out_path);
    }
}

Rat parse_rational(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int num(s.substr(0, slash)), den(s.substr(slash + 1));
        if (den == 0) throw error("zero denominator");
        return Rat(num, den);
    } catch (const std::exception&) {
        throw error("malformed rational '" + s + "' (use p or p/q)");
    }
}

int cmd_slice_plot(const std::string& file, const std::string& plane, const std::string& level,
                   const std::string& out_path) {
    LoadedProblem l = load_from(file);
    if (!l.space_valid())
        throw error(l.fan_error ? l.fan_error->message() : l.system_error->message());
    if (!l.fan) throw error("slice-plot needs a fan input ('maximal_cones')");
    IntVec normal;
    std::stringstream ss(plane);
    std::string part;
    while (std::getline(ss, part, ',')) normal.push_back(Int(part));
    std::string svg = slice_plot_svg(*l.fan, normal, parse_rational(level));
    emit(svg, out_path);
    return exit_ok;
}

int cmd_examples(bool as_json, const std::string& out_path) {
    json a = json::array();
    std::ostringstream os;
    os << "bundled fixtures (usable as file arguments everywhere):\n";
    for (const Fixture& f : bundled_fixtures()) {
        json o;
        o["name"] = std::string(f.name);
        o["description"] = std::string(f.description);
        a.push_back(std::move(o));
        os << "  " << paint(std::string(f.name), "36") << "\n      " << f.description << "\n";
    }
    emit_report(a, os.str(), as_json, out_path);
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"toriq — exact quotients of subtorus actions on toric (pre)varieties"};
    app.require_subcommand(1);

    struct Common {
        std::string file;
        bool as_json = false;
        std::string out;
    };
    auto add_common = [&](CLI::App* sub, Common& c, bool needs_file = true) {
        if (needs_file)
            sub->add_option("file", c.file, "problem file (path or bundled fixture name)")
                ->required();
        sub->add_flag("--json", c.as_json, "machine-readable JSON output");
        sub->add_option("--out", c.out, "write the report to this path instead of stdout");
    };

    Common validate_c, hhat_c, sep_c, tv_c, tp_c, image_c, diag_c, ex_c;
    auto* validate = app.add_subcommand("validate", "check the fan / system axioms");
    add_common(validate, validate_c);
    auto* hhat = app.add_subcommand("hhat", "enlargement fixpoint of the acting subtorus");
    add_common(hhat, hhat_c);
    auto* sep = app.add_subcommand("separation", "invariant separation (quotient fan + projection)");
    add_common(sep, sep_c);
    auto* tv = app.add_subcommand("tv-quotient", "quotient in the toric category");
    add_common(tv, tv_c);
    auto* tp = app.add_subcommand("tp-quotient", "naive prequotient system (no enlargement)");
    add_common(tp, tp_c);
    auto* image = app.add_subcommand("image", "orbit image of the map bundled with the input");
    add_common(image, image_c);
    auto* diag = app.add_subcommand("diagnose", "full obstruction report for a fan action");
    add_common(diag, diag_c);

    std::string plane = "1,0,0", level = "1";
    Common slice_c;
    auto* slice = app.add_subcommand("slice-plot", "SVG cross-section of a rank-3 fan");
    slice->add_option("file", slice_c.file, "problem file (path or bundled fixture name)")
        ->required();
    slice->add_option("--plane", plane, "plane normal a,b,c (default 1,0,0)");
    slice->add_option("--level", level, "plane level, rational p or p/q (default 1)");
    slice->add_option("--out", slice_c.out, "output SVG path")->required();

    auto* examples = app.add_subcommand("examples", "list the bundled fixtures");
    add_common(examples, ex_c, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) return cmd_validate(validate_c.file, validate_c.as_json, validate_c.out);
        if (hhat->parsed()) return cmd_hhat(hhat_c.file, hhat_c.as_json, hhat_c.out);
        if (sep->parsed()) return cmd_separation(sep_c.file, sep_c.as_json, sep_c.out);
        if (tv->parsed()) return cmd_tv_quotient(tv_c.file, tv_c.as_json, tv_c.out);
        if (tp->parsed()) return cmd_tp_quotient(tp_c.file, tp_c.as_json, tp_c.out);
        if (image->parsed()) return cmd_image(image_c.file, image_c.as_json, image_c.out);
        if (diag->parsed()) return cmd_diagnose(diag_c.file, diag_c.as_json, diag_c.out);
        if (slice->parsed()) return cmd_slice_plot(slice_c.file, plane, level, slice_c.out);
        if (examples->parsed()) return cmd_examples(ex_c.as_json, ex_c.out);
    } catch (const ParseError& e) {
        std::cerr << paint("error", "31") << ": " << e.what() << "\n";
        return exit_invalid;
    } catch (const error& e) {
        std::cerr << paint("error", "31") << ": " << e.what() << "\n";
        return exit_invalid;
    } catch (const std::logic_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return exit_ok;
}
