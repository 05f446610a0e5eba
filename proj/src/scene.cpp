#include "reebarr/scene.h"

#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace reebarr {

namespace {

using nlohmann::json;

[[noreturn]] void fail_at(const std::string& ptr, const std::string& msg) {
    throw Error(ErrorCode::ParseError, "at " + ptr + ": " + msg);
}

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ParseError, "at byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

const json& field(const json& obj, const std::string& key, const std::string& ptr) {
    if (!obj.is_object()) fail_at(ptr, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail_at(ptr + "/" + key, "missing field");
    return *it;
}

double number(const json& v, const std::string& ptr) {
    if (!v.is_number()) fail_at(ptr, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail_at(ptr, "expected a finite number");
    return d;
}

Point point(const json& v, const std::string& ptr) {
    if (!v.is_array() || v.size() != 2) fail_at(ptr, "expected [x, y]");
    return {number(v[0], ptr + "/0"), number(v[1], ptr + "/1")};
}

Side side_of(const json& v, const std::string& ptr) {
    if (v == "inside") return Side::Inside;
    if (v == "outside") return Side::Outside;
    fail_at(ptr, "side must be \"inside\" or \"outside\"");
}

SurgeryKind kind_of(const json& v, const std::string& ptr) {
    if (!v.is_string()) fail_at(ptr, "expected a surgery kind");
    auto k = parse_surgery_kind(v.get<std::string>());
    if (!k) fail_at(ptr, "unknown surgery kind " + v.dump());
    return *k;
}

Provenance provenance_of(const json& v, const std::string& ptr) {
    Provenance p;
    p.kind = kind_of(field(v, "kind", ptr), ptr + "/kind");
    p.anchor = point(field(v, "anchor", ptr), ptr + "/anchor");
    const json& ch = field(v, "chord", ptr);
    if (!ch.is_array() || ch.size() != 2) fail_at(ptr + "/chord", "expected two endpoints");
    p.chord = Segment{point(ch[0], ptr + "/chord/0"), point(ch[1], ptr + "/chord/1")};
    p.rho = number(field(v, "rho", ptr), ptr + "/rho");
    const json& off = field(v, "offsets", ptr);
    if (!off.is_array() || off.size() != 2) fail_at(ptr + "/offsets", "expected two offsets");
    p.offsets = {number(off[0], ptr + "/offsets/0"), number(off[1], ptr + "/offsets/1")};
    p.secant_t = number(field(v, "t", ptr), ptr + "/t");
    return p;
}

json point_json(Point p) { return json::array({p.x, p.y}); }

}  // namespace

Tolerances default_tolerances() {
    Tolerances t;
    if (const char* env = std::getenv("REEB_ARRANGE_TOL")) {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (end == env || *end != '\0' || !(v > 0))
            throw Error(ErrorCode::ParseError, "REEB_ARRANGE_TOL must be a positive number");
        t.tol = v;
    }
    return t;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::ParseError, "cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Scene parse_scene(const std::string& text, const TolOverrides& ov) {
    const json j = parse_json(text);
    Tolerances tol = default_tolerances();
    if (j.is_object() && j.contains("tol")) tol.tol = number(j["tol"], "/tol");
    if (ov.tol) tol.tol = *ov.tol;
    if (ov.event_gap) tol.event_gap = *ov.event_gap;
    tol.check();

    const json& circles = field(j, "circles", "");
    if (!circles.is_array() || circles.empty()) fail_at("/circles", "expected a nonempty array");
    const json& ic = field(j, "initial_count", "");
    if (!ic.is_number_integer() || ic.get<long>() < 1 || ic.get<std::size_t>() > circles.size())
        fail_at("/initial_count", "expected an integer between 1 and the number of circles");
    const std::size_t n0 = ic.get<std::size_t>();

    std::vector<Circle> cs;
    std::vector<Side> sides;
    std::vector<std::optional<Provenance>> provs;
    for (std::size_t i = 0; i < circles.size(); ++i) {
        const std::string ptr = "/circles/" + std::to_string(i);
        const json& c = circles[i];
        Circle circ{{number(field(c, "cx", ptr), ptr + "/cx"), number(field(c, "cy", ptr), ptr + "/cy")},
                    number(field(c, "r", ptr), ptr + "/r")};
        if (!(circ.radius > 0)) fail_at(ptr + "/r", "radius must be positive");
        cs.push_back(circ);
        sides.push_back(side_of(field(c, "side", ptr), ptr + "/side"));
        provs.push_back(c.contains("provenance") && !c["provenance"].is_null()
                            ? std::optional<Provenance>(provenance_of(c["provenance"], ptr + "/provenance"))
                            : std::nullopt);
    }

    Scene sc;
    const std::vector<Circle> initial(cs.begin(), cs.begin() + static_cast<long>(n0));
    sc.arr = Arrangement::initial(initial, tol);
    for (std::size_t i = 0; i < n0; ++i)
        if (sc.arr[i].side != sides[i])
            fail_at("/circles/" + std::to_string(i) + "/side", "side contradicts the nesting of the initial circles");
    for (std::size_t i = n0; i < cs.size(); ++i) {
        try {
            sc.arr = validate_step(sc.arr, cs[i], sides[i], provs[i]);
        } catch (const Error& e) {
            throw Error(e.code(), "at /circles/" + std::to_string(i) + ": " + e.detail());
        }
    }

    if (j.contains("anchors")) {
        const json& an = j["anchors"];
        if (!an.is_object()) fail_at("/anchors", "expected an object");
        for (auto it = an.begin(); it != an.end(); ++it) sc.anchors[it.key()] = point(it.value(), "/anchors/" + it.key());
    }
    if (j.contains("script")) sc.script = parse_script(j["script"].dump(), sc.anchors);
    return sc;
}

Scene load_scene(const std::string& path, const TolOverrides& ov) { return parse_scene(read_file(path), ov); }

std::vector<ScriptStep> parse_script(const std::string& text, const std::map<std::string, Point>& anchors) {
    const json j = parse_json(text);
    const json& steps = field(j, "steps", "");
    if (!steps.is_array()) fail_at("/steps", "expected an array");
    std::vector<ScriptStep> out;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const std::string ptr = "/steps/" + std::to_string(i);
        const json& s = steps[i];
        ScriptStep st;
        const json& a = field(s, "anchor", ptr);
        if (a.is_string()) {
            auto it = anchors.find(a.get<std::string>());
            if (it == anchors.end()) fail_at(ptr + "/anchor", "unknown anchor name " + a.dump());
            st.anchor = it->second;
        } else {
            st.anchor = point(a, ptr + "/anchor");
        }
        st.rho = number(field(s, "rho", ptr), ptr + "/rho");
        const json& off = field(s, "offsets", ptr);
        if (!off.is_array() || off.size() != 2) fail_at(ptr + "/offsets", "expected two offsets");
        st.offsets = {number(off[0], ptr + "/offsets/0"), number(off[1], ptr + "/offsets/1")};
        st.t = number(field(s, "t", ptr), ptr + "/t");
        st.kind = kind_of(field(s, "kind", ptr), ptr + "/kind");
        if (s.contains("axis")) {
            const json& ax = s["axis"];
            if (ax == "x")
                st.axis = Axis::X;
            else if (ax == "y")
                st.axis = Axis::Y;
            else
                fail_at(ptr + "/axis", "axis must be \"x\" or \"y\"");
        }
        out.push_back(st);
    }
    return out;
}

std::vector<ScriptStep> load_script(const std::string& path, const std::map<std::string, Point>& anchors) {
    return parse_script(read_file(path), anchors);
}

std::string scene_to_json(const Arrangement& arr) {
    nlohmann::ordered_json j;
    j["tol"] = arr.tolerances().tol;
    j["initial_count"] = arr.initial_count();
    auto cs = nlohmann::ordered_json::array();
    for (const ArrCircle& c : arr.circles()) {
        nlohmann::ordered_json o;
        o["cx"] = c.circle.center.x;
        o["cy"] = c.circle.center.y;
        o["r"] = c.circle.radius;
        o["side"] = c.side == Side::Inside ? "inside" : "outside";
        if (c.provenance) {
            const Provenance& p = *c.provenance;
            nlohmann::ordered_json pj;
            pj["kind"] = surgery_kind_name(p.kind);
            pj["anchor"] = point_json(p.anchor);
            pj["chord"] = json::array({point_json(p.chord.a), point_json(p.chord.b)});
            pj["rho"] = p.rho;
            pj["offsets"] = p.offsets;
            pj["t"] = p.secant_t;
            o["provenance"] = pj;
        }
        cs.push_back(o);
    }
    j["circles"] = cs;
    return j.dump(2) + "\n";
}

}  // namespace reebarr
