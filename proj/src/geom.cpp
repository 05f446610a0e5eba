#include "reebarr/geom.h"

#include <algorithm>
#include <numbers>

namespace reebarr {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

std::string_view error_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::IdenticalCircles: return "IdenticalCircles";
        case ErrorCode::PointNotOnCircle: return "PointNotOnCircle";
        case ErrorCode::EndpointsNotOnCircle: return "EndpointsNotOnCircle";
        case ErrorCode::DegenerateSegment: return "DegenerateSegment";
        case ErrorCode::NotDisjoint: return "NotDisjoint";
        case ErrorCode::NoCommonBoundaryComponent: return "NoCommonBoundaryComponent";
        case ErrorCode::NoIntersection: return "NoIntersection";
        case ErrorCode::TangencyDetected: return "TangencyDetected";
        case ErrorCode::TriplePoint: return "TriplePoint";
        case ErrorCode::CircleDetached: return "CircleDetached";
        case ErrorCode::RegionEmpty: return "RegionEmpty";
        case ErrorCode::RegionDisconnected: return "RegionDisconnected";
        case ErrorCode::DegenerateEvents: return "DegenerateEvents";
        case ErrorCode::TooLarge: return "TooLarge";
        case ErrorCode::NotOnBoundary: return "NotOnBoundary";
        case ErrorCode::NotDoublePoint: return "NotDoublePoint";
        case ErrorCode::ProbeTooLarge: return "ProbeTooLarge";
        case ErrorCode::ChordInvalid: return "ChordInvalid";
        case ErrorCode::AmbiguousAtTolerance: return "AmbiguousAtTolerance";
        case ErrorCode::CoincidesWithHost: return "CoincidesWithHost";
        case ErrorCode::RegionTouchesOtherCircles: return "RegionTouchesOtherCircles";
        case ErrorCode::PreconditionUnmet: return "PreconditionUnmet";
        case ErrorCode::LabelingInvalid: return "LabelingInvalid";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::Internal: return "Internal";
    }
    return "Unknown";
}

Point normalized(Point a) {
    const double n = norm(a);
    return n > 0.0 ? a * (1.0 / n) : a;
}

double Circle::f(Point p) const {
    const Point d = p - center;
    return dot(d, d) - radius * radius;
}

Point Circle::at(double angle) const {
    return {center.x + radius * std::cos(angle), center.y + radius * std::sin(angle)};
}

double Circle::angle_of(Point p) const { return wrap_angle(std::atan2(p.y - center.y, p.x - center.x)); }

Point Circle::tangent(double angle) const { return {-std::sin(angle), std::cos(angle)}; }

void Tolerances::check() const {
    if (!(tol > 0.0 && tol < event_gap && side_margin >= tol))
        throw Error(ErrorCode::ParseError, "tolerances must satisfy 0 < tol < event_gap and side_margin >= tol");
}

double wrap_angle(double a) {
    double r = std::fmod(a, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r -= kTwoPi;
    return r;
}

bool Arc::full() const { return sweep >= kTwoPi - 1e-12; }

bool Arc::contains_angle(double angle, double slack) const {
    if (full()) return true;
    double rel = wrap_angle(angle - start);
    if (rel > kTwoPi - slack) rel -= kTwoPi;
    return rel >= -slack && rel <= sweep + slack;
}

CircleIntersection circle_pair_intersect(const Circle& c1, const Circle& c2, const Tolerances& t) {
    const Point d = c2.center - c1.center;
    const double dd = norm(d);
    if (dd <= t.tol && std::abs(c1.radius - c2.radius) <= t.tol)
        throw Error(ErrorCode::IdenticalCircles, "circles coincide");

    CircleIntersection out;
    if (dd <= t.tol) return out;  // concentric

    const double sum = c1.radius + c2.radius;
    const double diff = std::abs(c1.radius - c2.radius);
    const Point u = d * (1.0 / dd);
    if (std::abs(dd - sum) <= t.tol) {
        out.tangent = true;
        out.points.push_back(c1.center + u * c1.radius);
        return out;
    }
    if (std::abs(dd - diff) <= t.tol) {
        out.tangent = true;
        const double s = c1.radius >= c2.radius ? 1.0 : -1.0;
        out.points.push_back(c1.center + u * (s * c1.radius));
        return out;
    }
    if (dd > sum || dd < diff) return out;

    // distance from c1 along u to the radical line
    const double a = (dd * dd + c1.radius * c1.radius - c2.radius * c2.radius) / (2.0 * dd);
    const double h = std::sqrt(std::max(0.0, c1.radius * c1.radius - a * a));
    const Point base = c1.center + u * a;
    const Point n = perp(u);
    out.points.push_back(base + n * h);
    out.points.push_back(base - n * h);
    return out;
}

std::optional<Interval> vslice(double x, const Circle& c) {
    const double dx = x - c.center.x;
    if (std::abs(dx) > c.radius) return std::nullopt;
    const double s = std::sqrt(std::max(0.0, c.radius * c.radius - dx * dx));
    return Interval{c.center.y - s, c.center.y + s};
}

Poles poles(const Circle& c) {
    const Point o = c.center;
    const double r = c.radius;
    return Poles{{Point{o.x - r, o.y}, Point{o.x + r, o.y}}, {Point{o.x, o.y - r}, Point{o.x, o.y + r}}};
}

bool transversal_at(Point p, const Circle& c1, const Circle& c2, const Tolerances& t) {
    if (std::abs(c1.signed_dist(p)) > t.side_margin || std::abs(c2.signed_dist(p)) > t.side_margin)
        throw Error(ErrorCode::PointNotOnCircle, "point does not lie on both circles");
    const Point t1 = c1.tangent(c1.angle_of(p));
    const Point t2 = c2.tangent(c2.angle_of(p));
    return std::abs(cross(t1, t2)) > t.tol;
}

std::vector<double> line_circle_params(Point p, Point dir, const Circle& c) {
    // |p + s*dir - c|^2 = r^2
    const Point w = p - c.center;
    const double a = dot(dir, dir);
    const double b = 2.0 * dot(w, dir);
    const double cc = dot(w, w) - c.radius * c.radius;
    const double disc = b * b - 4.0 * a * cc;
    if (a == 0.0 || disc < 0.0) return {};
    const double sq = std::sqrt(disc);
    // numerically stable roots
    const double q = -0.5 * (b + (b >= 0.0 ? sq : -sq));
    std::vector<double> roots;
    if (q != 0.0) {
        roots.push_back(q / a);
        roots.push_back(cc / q);
    } else {
        roots.push_back(0.0);
        roots.push_back(0.0);
    }
    std::sort(roots.begin(), roots.end());
    if (disc == 0.0) roots.pop_back();
    return roots;
}

std::vector<SegmentHit> segment_circle_hits(const Segment& s, const Circle& c, const Tolerances& t) {
    const double len = s.length();
    if (len <= t.tol) throw Error(ErrorCode::DegenerateSegment, "segment endpoints coincide");
    std::vector<SegmentHit> hits;
    const double ptol = t.side_margin / len;
    for (double u : line_circle_params(s.a, s.direction(), c)) {
        if (u < -ptol || u > 1.0 + ptol) continue;
        const double uc = std::clamp(u, 0.0, 1.0);
        const bool at_end = std::abs(u) <= ptol || std::abs(u - 1.0) <= ptol;
        hits.push_back({s.a + s.direction() * uc, uc, at_end});
    }
    return hits;
}

std::array<SideMeasure, 2> circular_segment_measures(const Circle& c, const Segment& chord,
                                                     const Tolerances& t) {
    if (chord.length() <= t.tol) throw Error(ErrorCode::EndpointsNotOnCircle, "degenerate chord");
    if (std::abs(c.signed_dist(chord.a)) > t.side_margin || std::abs(c.signed_dist(chord.b)) > t.side_margin)
        throw Error(ErrorCode::EndpointsNotOnCircle, "chord endpoints must lie on the circle");

    const double ang_a = c.angle_of(chord.a);
    const double ang_b = c.angle_of(chord.b);
    const double left_sweep = wrap_angle(ang_a - ang_b);  // ccw from b to a
    const double r2 = c.radius * c.radius;
    const double clen = chord.length();

    auto measure = [&](double start, double sweep) {
        SideMeasure m;
        m.area = 0.5 * r2 * (sweep - std::sin(sweep));
        m.boundary_length = c.radius * sweep + clen;
        m.arc = Arc{start, sweep};
        return m;
    };
    return {measure(ang_b, left_sweep), measure(ang_a, kTwoPi - left_sweep)};
}

}  // namespace reebarr
