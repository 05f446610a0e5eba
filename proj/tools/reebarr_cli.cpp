#include "reebarr/algebraic.h"
#include "reebarr/chords.h"
#include "reebarr/fuzz.h"
#include "reebarr/reeb.h"
#include "reebarr/scene.h"
#include "reebarr/surgery.h"
#include "reebarr/svg.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace reebarr;
using ojson = nlohmann::ordered_json;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kInputError = 2;

struct Common {
    std::string scene;
    std::string axis = "x";
    std::string format = "canon";
    std::string out;
    std::optional<double> tol;
    std::optional<double> event_gap;
};

Axis parse_axis(const std::string& s) { return s == "y" ? Axis::Y : Axis::X; }

Scene load(const Common& c) { return load_scene(c.scene, TolOverrides{c.tol, c.event_gap}); }

void emit(const Common& c, const std::string& text) {
    if (c.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(c.out, std::ios::binary);
    if (!f) throw Error(ErrorCode::ParseError, "cannot write " + c.out);
    f << text;
}

ojson point_json(Point p) { return ojson::array({p.x, p.y}); }

ojson graph_json(const PRGraph& g) {
    ojson j;
    j["axis"] = axis_name(g.axis);
    j["canonical"] = to_canonical(g);
    auto vs = ojson::array();
    for (const PRVertex& v : g.vertices) {
        ojson o;
        o["id"] = v.id;
        o["label"] = v.label;
        o["kind"] = v.kind == VertexKind::Pole ? "pole" : "double_point";
        auto w = ojson::array();
        for (Point p : v.witnesses) w.push_back(point_json(p));
        o["witnesses"] = w;
        vs.push_back(o);
    }
    j["vertices"] = vs;
    auto es = ojson::array();
    for (const PREdge& e : g.edges) es.push_back(ojson::array({e.tail, e.head}));
    j["edges"] = es;
    return j;
}

std::string render_graph(const PRGraph& g, const std::string& format) {
    if (format == "dot") return to_dot(g);
    if (format == "json") return graph_json(g).dump(2) + "\n";
    return to_canonical(g) + "\n";
}

ojson class_json(const ClassReport& r) {
    ojson j;
    j["ni"] = r.ni;
    j["ni_mbc"] = r.ni_mbc;
    j["nci"] = r.nci;
    j["nci_mbc"] = r.nci_mbc;
    j["mbcc"] = r.mbcc;
    j["ssc_ni"] = r.ssc_ni;
    j["notes"] = r.notes;
    return j;
}

ojson chord_class_json(const ChordClass& cc) {
    ojson j;
    if (cc.convexity) j["convexity"] = convexity_name(*cc.convexity);
    j["prop2"] = prop2_name(cc.prop2);
    if (cc.corner_case) j["corner_case"] = corner_case_name(*cc.corner_case);
    if (cc.signs4) j["signs4"] = *cc.signs4;
    return j;
}

ojson change_json(const ChangeReport& r) {
    ojson j;
    j["pattern"] = pattern_name(r.pattern);
    j["mapping"] = r.mapping;
    j["new_vertices"] = r.new_vertices;
    if (r.i_values) j["i_values"] = *r.i_values;
    j["mirrored"] = r.mirrored;
    if (!r.detail.empty()) j["detail"] = r.detail;
    return j;
}

SurgerySpec spec_of(const Arrangement& arr, const ScriptStep& s) {
    return make_spec(arr, s.anchor, s.rho, s.offsets, s.t, s.kind);
}

std::vector<ScriptStep> script_of(const Scene& sc, const std::string& path) {
    return path.empty() ? sc.script : load_script(path, sc.anchors);
}

std::set<Pattern> parse_patterns(const std::string& list) {
    std::set<Pattern> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto p = parse_pattern(item);
        if (!p || *p == Pattern::Unrecognized) throw Error(ErrorCode::ParseError, "unknown pattern " + item);
        out.insert(*p);
    }
    return out;
}

std::set<Pattern> theorem_family(int theorem) {
    switch (theorem) {
        case 2:
        case 4: return {Pattern::T2_1_1, Pattern::T2_1_2, Pattern::T2_2_1, Pattern::T2_2_2};
        case 5: return {Pattern::T5_lt, Pattern::T5_eq, Pattern::T5_gt};
        default: throw Error(ErrorCode::ParseError, "theorem must be 1, 2, 4 or 5");
    }
}

int cmd_validate(const Common& c) {
    const Scene sc = load(c);
    ojson j;
    j["valid"] = true;
    j["circles"] = sc.arr.size();
    j["initial_count"] = sc.arr.initial_count();
    j["double_points"] = double_points(sc.arr).size();
    j["class"] = class_json(classify(sc.arr));
    emit(c, j.dump(2) + "\n");
    return kPass;
}

int cmd_reeb(const Common& c) {
    const Scene sc = load(c);
    emit(c, render_graph(poincare_reeb(sc.arr, parse_axis(c.axis)), c.format));
    return kPass;
}

int cmd_oracle(const Common& c, int grid) {
    const Scene sc = load(c);
    const Axis ax = parse_axis(c.axis);
    const PRGraph g = poincare_reeb(sc.arr, ax);
    const PRGraph o = oracle_reeb(sc.arr, ax, grid);
    const bool iso = isomorphic(g, o, IsoMode::VDigraph).isomorphic;
    ojson j;
    j["axis"] = axis_name(ax);
    j["grid"] = grid;
    j["sweep"] = to_canonical(g);
    j["oracle"] = to_canonical(o);
    j["isomorphic"] = iso;
    emit(c, j.dump(2) + "\n");
    return iso ? kPass : kFail;
}

int cmd_probe(const Common& c, const std::vector<double>& pt, double rho, const std::vector<double>& offsets) {
    const Scene sc = load(c);
    const Point x0{pt.at(0), pt.at(1)};
    const Anchor an = probe_anchor(sc.arr, x0);
    const std::array<double, 2> off =
        offsets.empty() ? std::array<double, 2>{0.5 * rho, 0.5 * rho} : std::array<double, 2>{offsets.at(0), offsets.at(1)};
    const Chord ch = make_chord(sc.arr, x0, rho, off);
    ojson j;
    j["anchor"] = point_json(x0);
    j["anchor_kind"] = an.kind == AnchorKind::SingleCircle ? "single_circle" : "double_point";
    j["hosts"] = ch.hosts;
    j["chord"] = ojson::array({point_json(ch.seg.a), point_json(ch.seg.b)});
    j["class"] = chord_class_json(classify_chord(sc.arr, ch));
    if (an.kind == AnchorKind::DoublePoint) {
        const auto line = extreme_point_line(sc.arr, x0);
        j["extreme_line"] = line ? ojson{{"point", point_json(line->point)}, {"direction", point_json(line->direction)}}
                                 : ojson(nullptr);
    }
    emit(c, j.dump(2) + "\n");
    return kPass;
}

int cmd_surgery(const Common& c, const std::string& script_path) {
    const Scene sc = load(c);
    Arrangement arr = sc.arr;
    auto steps = ojson::array();
    for (const ScriptStep& st : script_of(sc, script_path)) {
        const SurgerySpec spec = spec_of(arr, st);
        const PRGraph before = poincare_reeb(arr, st.axis);
        Arrangement next = apply(arr, spec);
        const PRGraph after = poincare_reeb(next, st.axis);
        const double locus = st.axis == Axis::X ? st.anchor.x : st.anchor.y;
        ojson s;
        s["kind"] = surgery_kind_name(st.kind);
        s["axis"] = axis_name(st.axis);
        s["before"] = to_canonical(before);
        s["after"] = to_canonical(after);
        s["change"] = change_json(classify_change(before, after, locus));
        steps.push_back(s);
        arr = std::move(next);
    }
    if (c.out.empty()) {
        ojson j;
        j["steps"] = steps;
        j["scene"] = ojson::parse(scene_to_json(arr));
        std::cout << j.dump(2) << "\n";
    } else {
        emit(c, scene_to_json(arr));
        std::cout << steps.dump(2) << "\n";
    }
    return kPass;
}

int cmd_verify(const Common& c, const std::string& script_path, int theorem, const std::string& expected,
               bool axis_given) {
    const Scene sc = load(c);
    Arrangement arr = sc.arr;
    bool all_ok = true;
    auto reports = ojson::array();
    for (const ScriptStep& st : script_of(sc, script_path)) {
        const SurgerySpec spec = spec_of(arr, st);
        const Axis ax = axis_given ? parse_axis(c.axis) : st.axis;
        ojson r;
        r["kind"] = surgery_kind_name(st.kind);
        r["axis"] = axis_name(ax);
        if (theorem == 1) {
            const bool base = classify(arr).nci_mbc;
            const Arrangement next = apply(arr, spec);
            const ClassReport after = classify(next);
            const bool ok = !base || after.nci_mbc;
            r["base_nci_mbc"] = base;
            r["class"] = class_json(after);
            r["ok"] = ok;
            all_ok = all_ok && ok;
            arr = next;
        } else {
            std::set<Pattern> exp;
            if (!expected.empty()) exp = parse_patterns(expected);
            if (theorem != 0) {
                const std::set<Pattern> fam = theorem_family(theorem);
                const std::set<Pattern> base = exp.empty() ? predicted_patterns(arr, spec, ax) : exp;
                exp.clear();
                for (Pattern p : base)
                    if (fam.count(p)) exp.insert(p);
            }
            VerifyReport vr;
            if (theorem != 0 && exp.empty()) {
                vr.detail = "the surgery is outside the theorem's predicted patterns";
                r.update(ojson::parse(vr.to_json()));
            } else {
                vr = verify_theorem(arr, spec, ax, exp);
                r.update(ojson::parse(vr.to_json()));
            }
            if (!vr.ok && !vr.detail.empty()) r["detail"] = vr.detail;
            all_ok = all_ok && vr.ok;
            arr = apply(arr, spec);
        }
        reports.push_back(r);
    }
    ojson j;
    j["ok"] = all_ok;
    j["steps"] = reports;
    emit(c, j.dump(2) + "\n");
    return all_ok ? kPass : kFail;
}

int cmd_equations(const Common& c, const std::vector<std::string>& m0, std::size_t check, std::uint64_t seed) {
    const Scene sc = load(c);
    Labeling lab = default_labeling(sc.arr);
    for (const std::string& kv : m0) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw Error(ErrorCode::ParseError, "--m0 expects label=count, got " + kv);
        std::size_t a = 0;
        int k = 0;
        try {
            a = std::stoul(kv.substr(0, eq));
            k = std::stoi(kv.substr(eq + 1));
        } catch (const std::exception&) {
            throw Error(ErrorCode::ParseError, "--m0 expects label=count, got " + kv);
        }
        if (a >= lab.m0.size()) throw Error(ErrorCode::LabelingInvalid, "no label " + std::to_string(a));
        lab.m0[a] = k;
    }
    check_labeling(sc.arr, lab);
    const AlgebraicModel model = emit_model(sc.arr, lab);
    if (check == 0) {
        emit(c, c.format == "json" ? model.to_json() + "\n" : model.text());
        return kPass;
    }
    const SpotCheckReport rep = spot_check_model(model, sc.arr, check, seed);
    ojson j;
    j["model"] = ojson::parse(model.to_json());
    j["interior_samples"] = rep.interior_samples;
    j["exterior_samples"] = rep.exterior_samples;
    j["violation_count"] = rep.violation_count;
    j["violations"] = rep.violations;
    emit(c, j.dump(2) + "\n");
    return rep.violation_count == 0 ? kPass : kFail;
}

int cmd_svg(const Common& c, const std::string& script_path, int width) {
    const Scene sc = load(c);
    Arrangement arr = sc.arr;
    SvgOverlay ov;
    for (const auto& [name, p] : sc.anchors) ov.anchors.push_back(p);
    for (const ScriptStep& st : script_of(sc, script_path)) {
        const SurgerySpec spec = spec_of(arr, st);
        ov.anchors.push_back(st.anchor);
        ov.chords.push_back(spec.chord.seg);
        ov.secants.push_back(spec.secant.circle);
        arr = apply(arr, spec);
    }
    emit(c, render_svg(arr, ov, width));
    return kPass;
}

int cmd_fuzz(const Common& c, const std::string& campaign, std::uint64_t seed, std::size_t steps, std::size_t count,
             int grid) {
    if (steps == 0) throw Error(ErrorCode::ParseError, "--steps must be at least 1");
    std::vector<CampaignSummary> runs;
    const bool all = campaign == "all";
    if (all || campaign == "oracle") runs.push_back(oracle_campaign(seed, count, grid, 6, steps));
    if (all || campaign == "class") runs.push_back(class_campaign(seed, count));
    if (all || campaign == "pattern") runs.push_back(pattern_campaign(seed, count));
    if (all || campaign == "sign") runs.push_back(sign_campaign(seed, count, 20));
    bool ok = true;
    std::string text;
    for (const CampaignSummary& s : runs) {
        ok = ok && s.ok();
        text += s.to_json() + "\n";
    }
    emit(c, text);
    return ok ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Circle arrangements, Poincare-Reeb graphs and chord surgeries"};
    app.require_subcommand(1);
    Common c;

    auto add_common = [&](CLI::App* sub, bool need_scene = true) {
        auto* opt = sub->add_option("--scene", c.scene, "scene JSON file");
        if (need_scene) opt->required()->check(CLI::ExistingFile);
        sub->add_option("--out", c.out, "write output to this file");
        sub->add_option("--tol", c.tol, "geometric tolerance")->check(CLI::PositiveNumber);
        sub->add_option("--event-gap", c.event_gap, "minimum gap between distinct events")->check(CLI::PositiveNumber);
    };
    auto add_axis = [&](CLI::App* sub) {
        return sub->add_option("--axis", c.axis, "projection axis")->check(CLI::IsMember({"x", "y"}));
    };

    auto* validate = app.add_subcommand("validate", "validate a scene and report its classes");
    add_common(validate);

    auto* reeb = app.add_subcommand("reeb", "Poincare-Reeb V-digraph of a scene");
    add_common(reeb);
    add_axis(reeb);
    reeb->add_option("--format", c.format, "output format")->check(CLI::IsMember({"dot", "canon", "json"}));

    int grid = 512;
    auto* oracle = app.add_subcommand("oracle", "compare the sweep graph with the raster oracle");
    add_common(oracle);
    add_axis(oracle);
    oracle->add_option("--grid", grid, "raster resolution")->check(CLI::Range(64, 8192));

    std::vector<double> point;
    double rho = 0.05;
    std::vector<double> offsets;
    auto* probe = app.add_subcommand("probe", "classify an anchor and a chord at it");
    add_common(probe);
    probe->add_option("--point", point, "anchor x y")->required()->expected(2);
    probe->add_option("--rho", rho, "probe radius")->check(CLI::PositiveNumber);
    probe->add_option("--offsets", offsets, "arc-length offsets of the chord endpoints")->expected(2);

    std::string script;
    auto* surgery = app.add_subcommand("surgery", "apply a surgery script");
    add_common(surgery);
    surgery->add_option("--script", script, "script JSON file (defaults to the scene's own)")->check(CLI::ExistingFile);

    int theorem = 0;
    std::string expected;
    auto* verify = app.add_subcommand("verify", "check each script step against the predicted graph change");
    add_common(verify);
    auto* verify_axis = add_axis(verify);
    verify->add_option("--script", script, "script JSON file (defaults to the scene's own)")->check(CLI::ExistingFile);
    verify->add_option("--theorem", theorem, "1: class preservation; 2, 4: T2 patterns; 5: T5 patterns")
        ->check(CLI::IsMember({1, 2, 4, 5}));
    verify->add_option("--expected", expected, "comma-separated allowed patterns");

    std::vector<std::string> m0;
    std::size_t check = 0;
    std::uint64_t seed = 1;
    auto* equations = app.add_subcommand("equations", "emit the polynomial model of a scene");
    add_common(equations);
    equations->add_option("--m0", m0, "label=count overrides of the extra variables");
    equations->add_option("--format", c.format, "output format")->check(CLI::IsMember({"text", "json"}));
    equations->add_option("--check", check, "spot-check with this many samples");
    equations->add_option("--seed", seed, "sampling seed");

    int width = 600;
    auto* svg = app.add_subcommand("svg", "render a scene, optionally after a script");
    add_common(svg);
    svg->add_option("--script", script, "script JSON file (defaults to the scene's own)")->check(CLI::ExistingFile);
    svg->add_option("--width", width, "image width in pixels")->check(CLI::Range(50, 10000));

    std::string campaign = "oracle";
    std::size_t steps = 3;
    std::size_t count = 100;
    auto* fuzz = app.add_subcommand("fuzz", "run a seeded random campaign");
    add_common(fuzz, false);
    fuzz->add_option("--campaign", campaign, "campaign")->check(CLI::IsMember({"oracle", "class", "pattern", "sign", "all"}));
    fuzz->add_option("--seed", seed, "campaign seed");
    fuzz->add_option("--steps", steps, "maximum surgeries per random arrangement");
    fuzz->add_option("--count", count, "number of cases");
    fuzz->add_option("--grid", grid, "raster resolution")->check(CLI::Range(64, 8192));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kPass : kInputError;
    }

    try {
        if (*validate) return cmd_validate(c);
        if (*reeb) return cmd_reeb(c);
        if (*oracle) return cmd_oracle(c, grid);
        if (*probe) return cmd_probe(c, point, rho, offsets);
        if (*surgery) return cmd_surgery(c, script);
        if (*verify) return cmd_verify(c, script, theorem, expected, verify_axis->count() > 0);
        if (*equations) {
            if (c.format == "canon") c.format = "text";
            return cmd_equations(c, m0, check, seed);
        }
        if (*svg) return cmd_svg(c, script, width);
        if (*fuzz) return cmd_fuzz(c, campaign, seed, steps, count, grid);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}
