#pragma once

#include "reebarr/error.h"

#include <array>
#include <cmath>
#include <optional>
#include <vector>

namespace reebarr {

struct Point {
    double x = 0.0;
    double y = 0.0;

    Point operator+(Point o) const { return {x + o.x, y + o.y}; }
    Point operator-(Point o) const { return {x - o.x, y - o.y}; }
    Point operator*(double s) const { return {x * s, y * s}; }
    bool operator==(const Point&) const = default;
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double dist(Point a, Point b) { return norm(a - b); }
inline Point perp(Point a) { return {-a.y, a.x}; }
Point normalized(Point a);

struct Circle {
    Point center;
    double radius = 1.0;

    /// ||p - c||^2 - r^2
    double f(Point p) const;
    /// Signed distance to the circle; negative inside the disk.
    double signed_dist(Point p) const { return dist(p, center) - radius; }
    Point at(double angle) const;
    double angle_of(Point p) const;
    /// Unit tangent at angle, oriented counter-clockwise.
    Point tangent(double angle) const;
};

struct Segment {
    Point a;
    Point b;

    Point direction() const { return b - a; }
    Point midpoint() const { return (a + b) * 0.5; }
    double length() const { return dist(a, b); }
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double length() const { return hi - lo; }
    bool contains(double v, double slack = 0.0) const { return v >= lo - slack && v <= hi + slack; }
};

struct Tolerances {
    double tol = 1e-9;
    double event_gap = 1e-6;
    double side_margin = 1e-7;

    /// Throws ParseError when the ordering 0 < tol < event_gap, side_margin >= tol fails.
    void check() const;
};

/// Counter-clockwise arc of a circle, `sweep` in (0, 2*pi].
struct Arc {
    double start = 0.0;
    double sweep = 0.0;

    double mid() const { return start + 0.5 * sweep; }
    double end() const { return start + sweep; }
    bool full() const;
    /// True when angle lies inside the arc (inclusive within slack radians).
    bool contains_angle(double angle, double slack = 0.0) const;
};

double wrap_angle(double a);  // into [0, 2*pi)

struct CircleIntersection {
    std::vector<Point> points;
    bool tangent = false;
};

CircleIntersection circle_pair_intersect(const Circle& c1, const Circle& c2, const Tolerances& t);

std::optional<Interval> vslice(double x, const Circle& c);

struct Poles {
    std::array<Point, 2> vertical;    // (cx - r, cy), (cx + r, cy)
    std::array<Point, 2> horizontal;  // (cx, cy - r), (cx, cy + r)
};
Poles poles(const Circle& c);

bool transversal_at(Point p, const Circle& c1, const Circle& c2, const Tolerances& t);

struct SegmentHit {
    Point point;
    double param = 0.0;  // position along the segment, 0 at a, 1 at b
    bool at_endpoint = false;
};
std::vector<SegmentHit> segment_circle_hits(const Segment& s, const Circle& c, const Tolerances& t);

/// Intersections of the infinite line p + s*dir with a circle, as parameters s.
std::vector<double> line_circle_params(Point p, Point dir, const Circle& c);

struct SideMeasure {
    double area = 0.0;
    double boundary_length = 0.0;
    Arc arc;  // the circle arc bounding this side
};

/// Circular segments cut off by a chord: index 0 is the side to the left of
/// a->b (counter-clockwise arc from b to a), index 1 the side to the right.
std::array<SideMeasure, 2> circular_segment_measures(const Circle& c, const Segment& chord,
                                                     const Tolerances& t);

}  // namespace reebarr
