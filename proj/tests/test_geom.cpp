#include "reebarr/error.h"
#include "reebarr/geom.h"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

using namespace reebarr;

namespace {

constexpr double kPi = std::numbers::pi;

// Area of the part of disk c on the left of a->b: strips of width dw at
// distance w = r cos(th) from the centre along the left normal, integrated
// over th by the midpoint rule.
double left_area_quadrature(const Circle& c, const Segment& s, int n) {
    const Point v = perp(normalized(s.direction()));
    const double off = dot(s.a - c.center, v);
    const double th0 = std::acos(std::clamp(off / c.radius, -1.0, 1.0));
    const double r = c.radius;
    double area = 0.0;
    const double h = th0 / n;
    for (int i = 0; i < n; ++i) {
        const double th = (i + 0.5) * h;
        area += 2.0 * r * std::sin(th) * r * std::sin(th) * h;
    }
    return area;
}

}  // namespace

TEST_CASE("circle pair intersection points satisfy both equations") {
    const Tolerances t;
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int crossings = 0;
    for (int k = 0; k < 200; ++k) {
        const Circle a{{u(gen), u(gen)}, 0.5 + std::abs(u(gen))};
        const Circle b{{u(gen), u(gen)}, 0.5 + std::abs(u(gen))};
        const double d = dist(a.center, b.center);
        const auto r = circle_pair_intersect(a, b, t);
        const bool expect_two = d < a.radius + b.radius - 1e-6 && d > std::abs(a.radius - b.radius) + 1e-6;
        if (expect_two) {
            REQUIRE(r.points.size() == 2);
            ++crossings;
        }
        for (Point p : r.points) {
            CHECK(std::abs(dist(p, a.center) - a.radius) < 1e-12);
            CHECK(std::abs(dist(p, b.center) - b.radius) < 1e-12);
        }
    }
    CHECK(crossings > 50);
}

TEST_CASE("tangencies are reported, not collapsed") {
    const Tolerances t;
    const auto ext = circle_pair_intersect({{0, 0}, 1}, {{2, 0}, 1}, t);
    CHECK(ext.tangent);
    REQUIRE(ext.points.size() == 1);
    CHECK(dist(ext.points[0], {1, 0}) < 1e-12);

    const auto in = circle_pair_intersect({{0, 0}, 1}, {{0, 3}, 2}, t);
    CHECK(in.tangent);
    REQUIRE(in.points.size() == 1);
    CHECK(dist(in.points[0], {0, 1}) < 1e-12);

    CHECK(circle_pair_intersect({{0, 0}, 1}, {{5, 0}, 1}, t).points.empty());
    CHECK_THROWS_AS(circle_pair_intersect({{0, 0}, 1}, {{0, 0}, 1}, t), Error);
}

TEST_CASE("transversality at crossings and tangencies") {
    const Tolerances t;
    CHECK_FALSE(transversal_at({1, 0}, {{0, 0}, 1}, {{2, 0}, 1}, t));
    CHECK_FALSE(transversal_at({0, 1}, {{0, 0}, 1}, {{0, 3}, 2}, t));
    // unit circles a unit apart cross at 60 degrees to the axis
    CHECK(transversal_at({0.5, std::sqrt(0.75)}, {{0, 0}, 1}, {{1, 0}, 1}, t));
}

TEST_CASE("vertical slices match the circle equation") {
    const Circle c{{0.3, -0.2}, 1.5};
    for (double x = -1.1; x < 1.8; x += 0.17) {
        const auto s = vslice(x, c);
        REQUIRE(s);
        CHECK(std::abs(c.f({x, s->lo})) < 1e-12);
        CHECK(std::abs(c.f({x, s->hi})) < 1e-12);
        CHECK(s->lo <= s->hi);
    }
    CHECK_FALSE(vslice(2.0, c));
    CHECK_FALSE(vslice(-1.3, c));
}

TEST_CASE("poles are the axis extremes") {
    const Poles p = poles({{1, 2}, 0.5});
    CHECK(p.vertical[0] == Point{0.5, 2});
    CHECK(p.vertical[1] == Point{1.5, 2});
    CHECK(p.horizontal[0] == Point{1, 1.5});
    CHECK(p.horizontal[1] == Point{1, 2.5});
}

TEST_CASE("angles, tangents and arcs") {
    const Circle c{{1, 1}, 2};
    for (double a = 0.0; a < 2 * kPi; a += 0.3) {
        const Point p = c.at(a);
        CHECK(std::abs(dist(p, c.center) - 2.0) < 1e-12);
        CHECK(std::abs(wrap_angle(c.angle_of(p)) - a) < 1e-12);
        CHECK(std::abs(dot(c.tangent(a), p - c.center)) < 1e-12);
        CHECK(cross(p - c.center, c.tangent(a)) > 0);  // counter-clockwise
    }
    CHECK(std::abs(wrap_angle(-0.5) - (2 * kPi - 0.5)) < 1e-15);
    const Arc arc{5.5, 1.0};  // wraps through 0
    CHECK(arc.contains_angle(0.1));
    CHECK_FALSE(arc.contains_angle(1.0));
    CHECK(Arc{0.0, 2 * kPi}.full());
}

TEST_CASE("segment hits lie on the circle and on the segment") {
    const Tolerances t;
    const Circle c{{0, 0}, 1};
    const Segment through{{-2, 0.3}, {2, 0.3}};
    const auto hits = segment_circle_hits(through, c, t);
    REQUIRE(hits.size() == 2);
    for (const SegmentHit& h : hits) {
        CHECK(std::abs(c.f(h.point)) < 1e-12);
        CHECK(std::abs(h.point.y - 0.3) < 1e-15);
        CHECK_FALSE(h.at_endpoint);
    }
    const Segment chord{c.at(0.2), c.at(1.4)};
    const auto ch = segment_circle_hits(chord, c, t);
    REQUIRE(ch.size() == 2);
    CHECK(ch[0].at_endpoint);
    CHECK(ch[1].at_endpoint);
    CHECK(segment_circle_hits(Segment{{-0.5, 0}, {0.5, 0}}, c, t).empty());
    CHECK_THROWS_AS(segment_circle_hits(Segment{{0, 0}, {0, 0}}, c, t), Error);

    const auto params = line_circle_params({-3, 0}, {1, 0}, c);
    REQUIRE(params.size() == 2);
    CHECK(std::abs(std::min(params[0], params[1]) - 2.0) < 1e-12);
    CHECK(std::abs(std::max(params[0], params[1]) - 4.0) < 1e-12);
}

TEST_CASE("circular segment measures agree with quadrature") {
    const Tolerances t;
    const Circle c{{0.5, -0.25}, 1.3};
    for (auto [a0, a1] : {std::pair{0.3, 1.9}, std::pair{2.0, 5.5}, std::pair{4.0, 4.4}}) {
        const Segment s{c.at(a0), c.at(a1)};
        const auto m = circular_segment_measures(c, s, t);
        const double total = kPi * c.radius * c.radius;
        CHECK(std::abs(m[0].area + m[1].area - total) < 1e-12);
        CHECK(std::abs(m[0].area - left_area_quadrature(c, s, 20000)) < 1e-6);
        CHECK(std::abs(m[0].arc.sweep + m[1].arc.sweep - 2 * kPi) < 1e-12);
        CHECK(std::abs(m[0].boundary_length - (m[0].arc.sweep * c.radius + s.length())) < 1e-12);
    }
}

TEST_CASE("tolerance ordering is enforced") {
    CHECK_NOTHROW(Tolerances{}.check());
    CHECK_THROWS_AS((Tolerances{1e-5, 1e-6, 1e-7}.check()), Error);
    CHECK_THROWS_AS((Tolerances{0.0, 1e-6, 1e-7}.check()), Error);
    CHECK_THROWS_AS((Tolerances{1e-9, 1e-6, 1e-10}.check()), Error);
}
