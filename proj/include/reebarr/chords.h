#pragma once

#include "reebarr/arrangement.h"

#include <array>
#include <optional>
#include <vector>

namespace reebarr {

enum class AnchorKind { SingleCircle, DoublePoint };

struct Anchor {
    AnchorKind kind = AnchorKind::SingleCircle;
    std::size_t j1 = 0;
    std::size_t j2 = 0;  // equal to j1 for single-circle anchors
};

/// Classifies a boundary point by the circles it lies on.
Anchor probe_anchor(const Arrangement& arr, Point x0);

struct Chord {
    Segment seg;  // a lies at the first offset, b at the second
    Point anchor;
    std::vector<std::size_t> hosts;
    double probe_radius = 0.0;
    std::array<double, 2> offsets{0.0, 0.0};
};

/// Direction (+1 or -1 in angle) along circle j in which the boundary of
/// the closure leaves the double point x0.
int boundary_branch(const Arrangement& arr, Point x0, std::size_t j, double arc_len);

/// Chord with endpoints at arc-length offsets from x0. Single-circle anchors
/// put one endpoint on each side of x0; double-point anchors put one endpoint
/// on each host's boundary branch.
Chord make_chord(const Arrangement& arr, Point x0, double rho, std::array<double, 2> offsets);

enum class Convexity { Convex, Concave };

enum class Prop2Class { GenericSame, GenericDiff, HPoleSame, HPoleDiff, HPoleP2Zero, VPoleSame, VPoleDiff, VPoleP1Zero };

enum class CornerCase { C1, C2, C3, C4 };

struct ChordClass {
    std::optional<Convexity> convexity;  // single-circle anchors
    Prop2Class prop2 = Prop2Class::GenericSame;
    std::optional<CornerCase> corner_case;  // double-point anchors
    std::optional<std::array<int, 4>> signs4;
};

std::string_view convexity_name(Convexity c);
std::string_view prop2_name(Prop2Class c);
std::string_view corner_case_name(CornerCase c);

/// Signs of the offsets from x0 of points at arc length s along the two
/// boundary branches of a double point: (dx1, dy1, dx2, dy2).
std::array<int, 4> double_point_signs(const Arrangement& arr, Point x0, std::size_t j1, std::size_t j2, double s);

CornerCase corner_case_of(const std::array<int, 4>& s);

ChordClass classify_chord(const Arrangement& arr, const Chord& ch);

struct SecantCircle {
    Circle circle;
    Chord chord;
    double t = 0.0;
    Arc near_arc;  // on the anchor's side of the chord line
    Arc far_arc;
};

/// Circle through the chord endpoints centred at midpoint + t * n, where n is
/// the unit normal of the chord pointing towards the anchor.
SecantCircle secant_family(const Arrangement& arr, const Chord& ch, double t);

struct CSRegion {
    Arc secant_arc;
    Segment secant_piece;
    double area = 0.0;
    double boundary_length = 0.0;
    bool supported = false;
    bool touches_other = false;  // meets a circle other than the hosts
};

struct CSRegions {
    CSRegion supported;
    CSRegion unsupported;
    /// The anchor lies strictly inside the secant disk, so the supported
    /// region contains the piece of the host disk cut off by the chord.
    bool contains_anchor_cap = false;
};

/// Throws RegionTouchesOtherCircles when the supported region meets a
/// non-host circle; the unsupported region reports contact by flag.
CSRegions cs_regions(const Arrangement& arr, const SecantCircle& sc);

struct Line {
    Point point;
    Point direction;  // unit
};

/// A line through the double point x0 meeting the closure only at x0.
std::optional<Line> extreme_point_line(const Arrangement& arr, Point x0);

}  // namespace reebarr
