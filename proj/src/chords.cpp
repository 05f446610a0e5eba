#include "reebarr/chords.h"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace reebarr {

namespace {

constexpr double kPi = std::numbers::pi;

int sign_of(double v, double tol, const char* what) {
    if (std::abs(v) <= tol) throw Error(ErrorCode::AmbiguousAtTolerance, std::string(what) + " is within tolerance of 0");
    return v > 0 ? 1 : -1;
}

bool near_point(Point a, Point b, double eps) { return dist(a, b) <= eps; }

// Point at arc length s from x0 along circle c, in angular direction dir.
Point along(const Circle& c, Point x0, int dir, double s) { return c.at(c.angle_of(x0) + dir * s / c.radius); }

void check_probe(const Arrangement& arr, const Anchor& an, Point x0, double rho) {
    const Tolerances& t = arr.tolerances();
    if (!(rho > t.side_margin)) throw Error(ErrorCode::ProbeTooLarge, "probe radius must be positive");
    for (std::size_t k = 0; k < arr.size(); ++k) {
        const Circle& c = arr[k].circle;
        if (k == an.j1 || k == an.j2) {
            if (rho >= 2.0 * c.radius - t.side_margin)
                throw Error(ErrorCode::ProbeTooLarge, "probe circle does not cross its host twice");
            continue;
        }
        if (std::abs(c.signed_dist(x0)) <= rho + t.side_margin)
            throw Error(ErrorCode::ProbeTooLarge, "probe circle meets circle " + std::to_string(k));
    }
    if (an.kind == AnchorKind::DoublePoint) {
        for (Point p : circle_pair_intersect(arr[an.j1].circle, arr[an.j2].circle, t).points)
            if (!near_point(p, x0, t.side_margin) && dist(p, x0) <= rho + t.side_margin)
                throw Error(ErrorCode::ProbeTooLarge, "probe circle reaches the second crossing of the hosts");
    }
}

void check_chord_segment(const Arrangement& arr, const Chord& ch) {
    const Tolerances& t = arr.tolerances();
    const Point dir = normalized(ch.seg.direction());
    for (std::size_t k = 0; k < arr.size(); ++k) {
        const bool host = std::find(ch.hosts.begin(), ch.hosts.end(), k) != ch.hosts.end();
        for (const SegmentHit& h : segment_circle_hits(ch.seg, arr[k].circle, t)) {
            if (!h.at_endpoint || !host)
                throw Error(ErrorCode::ChordInvalid, "chord meets circle " + std::to_string(k) + " away from its endpoints");
            const Circle& c = arr[k].circle;
            if (std::abs(cross(dir, c.tangent(c.angle_of(h.point)))) <= t.tol)
                throw Error(ErrorCode::ChordInvalid, "chord is tangent to its host");
        }
    }
}

}  // namespace

std::string_view convexity_name(Convexity c) { return c == Convexity::Convex ? "Convex" : "Concave"; }

std::string_view prop2_name(Prop2Class c) {
    switch (c) {
        case Prop2Class::GenericSame: return "GenericSame";
        case Prop2Class::GenericDiff: return "GenericDiff";
        case Prop2Class::HPoleSame: return "HPoleSame";
        case Prop2Class::HPoleDiff: return "HPoleDiff";
        case Prop2Class::HPoleP2Zero: return "HPoleP2Zero";
        case Prop2Class::VPoleSame: return "VPoleSame";
        case Prop2Class::VPoleDiff: return "VPoleDiff";
        case Prop2Class::VPoleP1Zero: return "VPoleP1Zero";
    }
    return "?";
}

std::string_view corner_case_name(CornerCase c) {
    switch (c) {
        case CornerCase::C1: return "C1";
        case CornerCase::C2: return "C2";
        case CornerCase::C3: return "C3";
        case CornerCase::C4: return "C4";
    }
    return "?";
}

Anchor probe_anchor(const Arrangement& arr, Point x0) {
    const Membership m = arr.contains(x0);
    if (m.kind != MemberKind::Boundary) throw Error(ErrorCode::NotOnBoundary, "point is not on the region boundary");
    if (m.on_circles.size() == 1) return Anchor{AnchorKind::SingleCircle, m.on_circles[0], m.on_circles[0]};
    if (m.on_circles.size() == 2) return Anchor{AnchorKind::DoublePoint, m.on_circles[0], m.on_circles[1]};
    throw Error(ErrorCode::TriplePoint, "point lies on three or more circles");
}

int boundary_branch(const Arrangement& arr, Point x0, std::size_t j, double arc_len) {
    const Anchor an = probe_anchor(arr, x0);
    if (an.kind != AnchorKind::DoublePoint) throw Error(ErrorCode::NotDoublePoint, "anchor is not a double point");
    if (j != an.j1 && j != an.j2) throw Error(ErrorCode::PreconditionUnmet, "circle is not a host of the anchor");
    const std::size_t other = j == an.j1 ? an.j2 : an.j1;
    const Circle& c = arr[j].circle;
    const double gp = arr[other].region_dist(along(c, x0, +1, arc_len));
    const double gm = arr[other].region_dist(along(c, x0, -1, arc_len));
    if ((gp < 0) == (gm < 0)) throw Error(ErrorCode::AmbiguousAtTolerance, "boundary branch is not unique");
    return gp < 0 ? +1 : -1;
}

Chord make_chord(const Arrangement& arr, Point x0, double rho, std::array<double, 2> offsets) {
    const Anchor an = probe_anchor(arr, x0);
    check_probe(arr, an, x0, rho);
    const Tolerances& t = arr.tolerances();

    Chord ch;
    ch.anchor = x0;
    ch.probe_radius = rho;
    ch.offsets = offsets;
    for (double o : offsets)
        if (!(o > t.side_margin)) throw Error(ErrorCode::ChordInvalid, "chord offsets must be positive");

    if (an.kind == AnchorKind::SingleCircle) {
        const Circle& c = arr[an.j1].circle;
        ch.hosts = {an.j1};
        ch.seg = Segment{along(c, x0, -1, offsets[0]), along(c, x0, +1, offsets[1])};
    } else {
        ch.hosts = {an.j1, an.j2};
        const Circle& c1 = arr[an.j1].circle;
        const Circle& c2 = arr[an.j2].circle;
        const int d1 = boundary_branch(arr, x0, an.j1, 0.5 * offsets[0]);
        const int d2 = boundary_branch(arr, x0, an.j2, 0.5 * offsets[1]);
        ch.seg = Segment{along(c1, x0, d1, offsets[0]), along(c2, x0, d2, offsets[1])};
    }
    // the endpoints must lie strictly inside the probe disk
    for (Point p : {ch.seg.a, ch.seg.b})
        if (dist(p, x0) >= rho - t.side_margin)
            throw Error(ErrorCode::ChordInvalid, "chord endpoint outside the probe circle");
    check_chord_segment(arr, ch);
    return ch;
}

std::array<int, 4> double_point_signs(const Arrangement& arr, Point x0, std::size_t j1, std::size_t j2, double s) {
    const double tol = arr.tolerances().tol;
    const Point p1 = along(arr[j1].circle, x0, boundary_branch(arr, x0, j1, s), s) - x0;
    const Point p2 = along(arr[j2].circle, x0, boundary_branch(arr, x0, j2, s), s) - x0;
    return {sign_of(p1.x, tol, "branch x offset"), sign_of(p1.y, tol, "branch y offset"),
            sign_of(p2.x, tol, "branch x offset"), sign_of(p2.y, tol, "branch y offset")};
}

CornerCase corner_case_of(const std::array<int, 4>& s) {
    const bool same_x = s[0] == s[2];
    const bool same_y = s[1] == s[3];
    if (same_x && same_y) return CornerCase::C1;
    if (same_x) return CornerCase::C2;
    if (same_y) return CornerCase::C3;
    return CornerCase::C4;
}

ChordClass classify_chord(const Arrangement& arr, const Chord& ch) {
    const Tolerances& t = arr.tolerances();
    const Anchor an = probe_anchor(arr, ch.anchor);
    const Point d = ch.seg.direction();
    const bool zx = std::abs(d.x) <= t.tol;
    const bool zy = std::abs(d.y) <= t.tol;
    ChordClass cc;

    auto same_or_diff = [&](Prop2Class same, Prop2Class diff) {
        return sign_of(d.x, t.tol, "chord x component") == sign_of(d.y, t.tol, "chord y component") ? same : diff;
    };

    if (an.kind == AnchorKind::SingleCircle) {
        // membership of the midpoint at the fine tolerance: the sagitta of a
        // small chord can be far below side_margin
        double g = -1e300;
        for (const ArrCircle& c : arr.circles()) g = std::max(g, c.region_dist(ch.seg.midpoint()));
        cc.convexity = sign_of(g, t.tol, "chord midpoint distance") < 0 ? Convexity::Convex : Convexity::Concave;
        const Poles pl = poles(arr[an.j1].circle);
        const bool vpole = near_point(ch.anchor, pl.vertical[0], t.side_margin) ||
                           near_point(ch.anchor, pl.vertical[1], t.side_margin);
        const bool hpole = near_point(ch.anchor, pl.horizontal[0], t.side_margin) ||
                           near_point(ch.anchor, pl.horizontal[1], t.side_margin);
        if (vpole)
            cc.prop2 = zx ? Prop2Class::VPoleP1Zero : same_or_diff(Prop2Class::VPoleSame, Prop2Class::VPoleDiff);
        else if (hpole)
            cc.prop2 = zy ? Prop2Class::HPoleP2Zero : same_or_diff(Prop2Class::HPoleSame, Prop2Class::HPoleDiff);
        else
            cc.prop2 = same_or_diff(Prop2Class::GenericSame, Prop2Class::GenericDiff);
        return cc;
    }

    // Double point: the zero-component classes play the role of the pole cases.
    if (zx && zy) throw Error(ErrorCode::AmbiguousAtTolerance, "chord direction vanishes");
    if (zx)
        cc.prop2 = Prop2Class::VPoleP1Zero;
    else if (zy)
        cc.prop2 = Prop2Class::HPoleP2Zero;
    else
        cc.prop2 = same_or_diff(Prop2Class::GenericSame, Prop2Class::GenericDiff);
    cc.signs4 = double_point_signs(arr, ch.anchor, an.j1, an.j2, 0.25 * ch.probe_radius);
    cc.corner_case = corner_case_of(*cc.signs4);
    return cc;
}

SecantCircle secant_family(const Arrangement& arr, const Chord& ch, double t) {
    const Tolerances& tl = arr.tolerances();
    const Point a = ch.seg.a;
    const Point b = ch.seg.b;
    Point n = normalized(perp(b - a));
    if (dot(n, ch.anchor - ch.seg.midpoint()) < 0) n = n * -1.0;

    SecantCircle sc;
    sc.chord = ch;
    sc.t = t;
    sc.circle.center = ch.seg.midpoint() + n * t;
    sc.circle.radius = dist(sc.circle.center, a);
    for (std::size_t h : ch.hosts) {
        const Circle& c = arr[h].circle;
        if (dist(c.center, sc.circle.center) <= tl.tol && std::abs(c.radius - sc.circle.radius) <= tl.tol)
            throw Error(ErrorCode::CoincidesWithHost, "secant circle coincides with host circle " + std::to_string(h));
    }

    const auto m = circular_segment_measures(sc.circle, ch.seg, tl);
    const bool anchor_left = cross(b - a, ch.anchor - a) > 0;
    sc.near_arc = m[anchor_left ? 0 : 1].arc;
    sc.far_arc = m[anchor_left ? 1 : 0].arc;
    return sc;
}

namespace {

// Whether circle k meets the closed circular segment of sc on the given side.
bool segment_touches(const Circle& k, const SecantCircle& sc, bool left, const Tolerances& t) {
    const Segment& s = sc.chord.seg;
    auto on_side = [&](Point p) {
        const double c = cross(s.direction(), p - s.a) / s.length();
        return left ? c >= -t.side_margin : c <= t.side_margin;
    };
    try {
        for (Point p : circle_pair_intersect(k, sc.circle, t).points)
            if (on_side(p)) return true;
    } catch (const Error&) {
        return true;  // identical circles
    }
    if (!segment_circle_hits(s, k, t).empty()) return true;
    const Point p = k.at(0.0);
    return sc.circle.signed_dist(p) < 0 && on_side(p);
}

}  // namespace

CSRegions cs_regions(const Arrangement& arr, const SecantCircle& sc) {
    const Tolerances& t = arr.tolerances();
    const Chord& ch = sc.chord;
    const auto m = circular_segment_measures(sc.circle, ch.seg, t);
    const bool anchor_left = cross(ch.seg.direction(), ch.anchor - ch.seg.a) > 0;

    CSRegions r;
    auto fill = [&](CSRegion& reg, int idx, bool supported) {
        reg.secant_arc = m[static_cast<std::size_t>(idx)].arc;
        reg.secant_piece = ch.seg;
        reg.area = m[static_cast<std::size_t>(idx)].area;
        reg.boundary_length = m[static_cast<std::size_t>(idx)].boundary_length;
        reg.supported = supported;
        const bool left = idx == 0;
        for (std::size_t k = 0; k < arr.size(); ++k) {
            if (std::find(ch.hosts.begin(), ch.hosts.end(), k) != ch.hosts.end()) continue;
            if (segment_touches(arr[k].circle, sc, left, t)) reg.touches_other = true;
        }
    };
    fill(r.supported, anchor_left ? 0 : 1, true);
    fill(r.unsupported, anchor_left ? 1 : 0, false);
    if (r.supported.touches_other)
        throw Error(ErrorCode::RegionTouchesOtherCircles, "supported region meets a circle other than its hosts");
    r.contains_anchor_cap = sc.circle.signed_dist(ch.anchor) < -t.side_margin;
    return r;
}

std::optional<Line> extreme_point_line(const Arrangement& arr, Point x0) {
    const Anchor an = probe_anchor(arr, x0);
    if (an.kind != AnchorKind::DoublePoint) throw Error(ErrorCode::NotDoublePoint, "anchor is not a double point");
    const Tolerances& t = arr.tolerances();

    // tangent directions of the two boundary branches
    const double rmin = std::min(arr[an.j1].circle.radius, arr[an.j2].circle.radius);
    const double probe = 1e-3 * rmin;
    std::array<Point, 2> u;
    for (int i = 0; i < 2; ++i) {
        const std::size_t j = i == 0 ? an.j1 : an.j2;
        const Circle& c = arr[j].circle;
        u[static_cast<std::size_t>(i)] = c.tangent(c.angle_of(x0)) * static_cast<double>(boundary_branch(arr, x0, j, probe));
    }
    const double a1 = std::atan2(u[0].y, u[0].x);
    double gap = wrap_angle(std::atan2(u[1].y, u[1].x) - a1);
    double lo = a1;
    if (gap > kPi) {
        lo = std::atan2(u[1].y, u[1].x);
        gap = 2.0 * kPi - gap;
    }
    // The cone spans [lo, lo + gap]; valid line directions lie in
    // (lo + gap, lo + pi). Try the centre of that range first.
    const std::vector<double> fractions{0.5, 0.3, 0.7, 0.15, 0.85};
    const auto arcs = boundary_arcs(arr);
    for (double f : fractions) {
        const double ang = lo + gap + f * (kPi - gap);
        const Point dir{std::cos(ang), std::sin(ang)};
        bool ok = true;
        for (const BoundaryArc& ba : arcs) {
            const Circle& c = arr[ba.circle].circle;
            for (double s : line_circle_params(x0, dir, c)) {
                if (std::abs(s) <= t.side_margin) continue;
                if (ba.arc.contains_angle(c.angle_of(x0 + dir * s), 1e-12)) ok = false;
            }
            if (!ok) break;
        }
        for (double sgn : {-1.0, 1.0})
            if (ok && arr.in_closure(x0 + dir * (sgn * probe))) ok = false;
        if (ok) return Line{x0, dir};
    }
    return std::nullopt;
}

}  // namespace reebarr
