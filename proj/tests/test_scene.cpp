#include "helpers.h"

#include "reebarr/error.h"
#include "reebarr/scene.h"
#include "reebarr/svg.h"

#include <doctest.h>

#include <cstdlib>

using namespace reebarr;

namespace {

Error error_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e;
    }
    return Error(ErrorCode::Internal, "no error");
}

std::size_t count(const std::string& s, const std::string& needle) {
    std::size_t n = 0;
    for (std::size_t p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++n;
    return n;
}

}  // namespace

TEST_CASE("parse errors carry a position") {
    const Error syntax = error_of([] { parse_scene("{\"initial_count\": 1, \"circles\": [}"); });
    CHECK(syntax.code() == ErrorCode::ParseError);
    CHECK(std::string(syntax.what()).find("at byte") != std::string::npos);

    const Error field = error_of([] {
        parse_scene(R"({"initial_count": 1, "circles": [{"cx": 0, "cy": "0", "r": 1, "side": "inside"}]})");
    });
    CHECK(field.code() == ErrorCode::ParseError);
    CHECK(field.detail() == "at /circles/0/cy: expected a number");

    const Error missing = error_of([] { parse_scene(R"({"circles": []})"); });
    CHECK(missing.detail().find("/circles") != std::string::npos);

    const Error side = error_of([] {
        parse_scene(R"({"initial_count": 1, "circles": [{"cx": 0, "cy": 0, "r": 1, "side": "outside"}]})");
    });
    CHECK(side.detail().find("/circles/0/side") != std::string::npos);
}

TEST_CASE("bad scenes are rejected with their own errors") {
    const std::vector<std::pair<const char*, ErrorCode>> cases{
        {"bad_tangent_external.json", ErrorCode::TangencyDetected},
        {"bad_tangent_internal.json", ErrorCode::TangencyDetected},
        {"bad_triple_point.json", ErrorCode::TriplePoint},
        {"bad_detached_circle.json", ErrorCode::CircleDetached},
        {"bad_close_events_x.json", ErrorCode::DegenerateEvents},
        {"bad_close_events_y.json", ErrorCode::DegenerateEvents},
    };
    for (auto [file, code] : cases) {
        INFO(file);
        const Error e = error_of([&] { load_scene(test::data(file)); });
        CHECK(e.code() == code);
    }
    CHECK(error_of([] { load_scene(test::data("bad_tangent_external.json")); }).detail().rfind("at /circles/1", 0) == 0);
}

TEST_CASE("scene round trip keeps geometry, provenance and classes") {
    const Scene a = load_scene(test::data("example2.json"));
    const Scene b = parse_scene(scene_to_json(a.arr));
    REQUIRE(a.arr.size() == b.arr.size());
    for (std::size_t i = 0; i < a.arr.size(); ++i) {
        CHECK(a.arr[i].circle.center == b.arr[i].circle.center);
        CHECK(a.arr[i].circle.radius == b.arr[i].circle.radius);
        CHECK(a.arr[i].side == b.arr[i].side);
        CHECK(a.arr[i].provenance.has_value() == b.arr[i].provenance.has_value());
    }
    const ClassReport ca = classify(a.arr);
    const ClassReport cb = classify(b.arr);
    CHECK(ca.nci_mbc == cb.nci_mbc);
    CHECK(ca.ssc_ni == cb.ssc_ni);
    CHECK(ca.ssc_ni);
    CHECK(scene_to_json(b.arr) == scene_to_json(a.arr));
}

TEST_CASE("scripts resolve named anchors") {
    const Scene sc = load_scene(test::data("example2_recipe.json"));
    REQUIRE(sc.script.size() == 2);
    CHECK(sc.script[0].anchor == sc.anchors.at("generic"));
    CHECK(sc.script[1].kind == SurgeryKind::Thm32Double);
    CHECK(sc.script[1].axis == Axis::X);

    const Error unknown = error_of([] {
        parse_script(R"({"steps": [{"anchor": "nowhere", "rho": 0.1, "offsets": [0.01, 0.01], "t": 0, "kind": "thm1.1-unsupported"}]})");
    });
    CHECK(unknown.detail().find("/steps/0/anchor") != std::string::npos);
    const Error kind = error_of([] {
        parse_script(R"({"steps": [{"anchor": [1, 0], "rho": 0.1, "offsets": [0.01, 0.01], "t": 0, "kind": "thm9"}]})");
    });
    CHECK(kind.detail().find("/steps/0/kind") != std::string::npos);
}

TEST_CASE("tolerance overrides") {
    const std::string text = R"({"tol": 1e-10, "initial_count": 1, "circles": [{"cx": 0, "cy": 0, "r": 1, "side": "inside"}]})";
    CHECK(parse_scene(text).arr.tolerances().tol == 1e-10);
    CHECK(parse_scene(text, TolOverrides{1e-11, std::nullopt}).arr.tolerances().tol == 1e-11);
    CHECK(parse_scene(text, TolOverrides{std::nullopt, 1e-5}).arr.tolerances().event_gap == 1e-5);
    CHECK(error_of([&] { parse_scene(text, TolOverrides{1e-3, std::nullopt}); }).code() == ErrorCode::ParseError);

    ::setenv("REEB_ARRANGE_TOL", "2e-9", 1);
    CHECK(default_tolerances().tol == 2e-9);
    ::setenv("REEB_ARRANGE_TOL", "abc", 1);
    CHECK(error_of([] { default_tolerances(); }).code() == ErrorCode::ParseError);
    ::unsetenv("REEB_ARRANGE_TOL");
    CHECK(default_tolerances().tol == 1e-9);
}

TEST_CASE("svg draws every circle and overlay") {
    const Scene sc = load_scene(test::data("example2.json"));
    SvgOverlay ov;
    ov.anchors = {{0.8, 0.6}};
    ov.chords = {Segment{{0.7, 0.7}, {0.8, 0.6}}};
    const std::string svg = render_svg(sc.arr, ov, 400);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(count(svg, "<circle") >= sc.arr.size());
    CHECK(count(svg, "<line") >= 1);
}
