#include "helpers.h"

#include "reebarr/arrangement.h"
#include "reebarr/error.h"

#include <doctest.h>

#include <cmath>

using namespace reebarr;

namespace {

ErrorCode code_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::Internal;
}

// Disk minus a circle centered on its boundary: two double points.
Arrangement notched_disk() { return validate_step(test::disk(), {{1, 0}, 0.6}, Side::Outside); }

}  // namespace

TEST_CASE("initial sides follow nesting") {
    const auto sides = validate_initial({{{0, 0}, 3}, {{1, 0}, 0.5}, {{-1, 0}, 0.5}});
    REQUIRE(sides.size() == 3);
    CHECK(sides[0] == Side::Inside);
    CHECK(sides[1] == Side::Outside);
    CHECK(sides[2] == Side::Outside);
    CHECK(code_of([] { validate_initial({{{0, 0}, 1}, {{0.5, 0}, 1}}); }) == ErrorCode::NotDisjoint);
    CHECK(code_of([] { validate_initial({{{0, 0}, 1}, {{5, 0}, 1}}); }) != ErrorCode::Internal);
    CHECK(code_of([] { validate_initial({{{0, 0}, 3}, {{0, 0}, 2}, {{0, 0}, 1}}); }) != ErrorCode::Internal);
}

TEST_CASE("membership of the annulus") {
    const Arrangement a = test::annulus();
    CHECK(a.contains({1.5, 0}).kind == MemberKind::Interior);
    CHECK(a.contains({0.5, 0}).kind == MemberKind::Exterior);
    CHECK(a.contains({2.5, 0}).kind == MemberKind::Exterior);
    const Membership b = a.contains({0, 1});
    CHECK(b.kind == MemberKind::Boundary);
    REQUIRE(b.on_circles.size() == 1);
    CHECK(b.on_circles[0] == 1);
    CHECK(a.in_closure({0, -2}));
    const auto bb = a.bbox();
    CHECK(bb[0] == -2);
    CHECK(bb[3] == 2);
}

TEST_CASE("validate_step rejects each defect with its own error") {
    const Arrangement d = test::disk();
    CHECK(code_of([&] { validate_step(d, {{5, 0}, 1}, Side::Outside); }) == ErrorCode::NoIntersection);
    CHECK(code_of([&] { validate_step(d, {{2, 0}, 1}, Side::Outside); }) == ErrorCode::TangencyDetected);
    CHECK(code_of([&] { validate_step(d, {{0.5, 0}, 0.5}, Side::Outside); }) == ErrorCode::TangencyDetected);

    const Arrangement n = notched_disk();
    const double y = std::sqrt(1 - 0.82 * 0.82);
    CHECK(code_of([&] { validate_step(n, {{0.82, y + 0.3}, 0.3}, Side::Outside); }) == ErrorCode::TriplePoint);

    const Arrangement an = test::annulus();
    CHECK(code_of([&] { validate_step(an, {{1.8, 0}, 0.5}, Side::Inside); }) == ErrorCode::CircleDetached);
}

TEST_CASE("double points of a notched disk") {
    const Arrangement n = notched_disk();
    const auto dps = double_points(n);
    REQUIRE(dps.size() == 2);
    for (const DoublePoint& p : dps) {
        // both crossings of x^2+y^2=1 and (x-1)^2+y^2=0.36 have x = 0.82
        CHECK(std::abs(p.point.x - 0.82) < 1e-12);
        CHECK(std::abs(std::abs(p.point.y) - std::sqrt(1 - 0.82 * 0.82)) < 1e-12);
        CHECK(p.i1 != p.i2);
    }
}

TEST_CASE("boundary arcs separate the closure from its complement") {
    const Arrangement n = notched_disk();
    const auto arcs = boundary_arcs(n);
    REQUIRE(arcs.size() == 2);
    for (const BoundaryArc& ba : arcs) {
        const Circle& c = n[ba.circle].circle;
        for (double f : {0.1, 0.5, 0.9}) {
            const double a = ba.arc.start + f * ba.arc.sweep;
            const Point in = c.center + (c.at(a) - c.center) * (1 - 1e-4);
            const Point out = c.center + (c.at(a) - c.center) * (1 + 1e-4);
            CHECK(n.in_closure(in) != n.in_closure(out));
            CHECK(n.contains(c.at(a)).kind == MemberKind::Boundary);
        }
    }
}

TEST_CASE("class flags") {
    const ClassReport d = classify(test::disk());
    CHECK(d.ni);
    CHECK(d.nci_mbc);
    CHECK(d.mbcc);
    CHECK(d.ssc_ni);

    const ClassReport n = classify(notched_disk());
    CHECK(n.ni_mbc);
    CHECK(n.nci);
    CHECK_FALSE(n.ssc_ni);  // no chord provenance

    // a double point at a pole of the new circle breaks the MBC condition
    const ClassReport p = classify(validate_step(test::disk(), {{1, 1}, 1}, Side::Outside));
    CHECK_FALSE(p.ni_mbc);
}

TEST_CASE("transposition and mirroring") {
    const Arrangement n = notched_disk();
    const Arrangement t = transposed(n);
    const Arrangement m = mirrored_x(n);
    REQUIRE(t.size() == n.size());
    for (std::size_t i = 0; i < n.size(); ++i) {
        CHECK(t[i].circle.center.x == n[i].circle.center.y);
        CHECK(t[i].circle.center.y == n[i].circle.center.x);
        CHECK(m[i].circle.center.x == -n[i].circle.center.x);
        CHECK(t[i].side == n[i].side);
    }
    CHECK(t.in_closure({0.2, 0.9}) == n.in_closure({0.9, 0.2}));
}
