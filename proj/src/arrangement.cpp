#include "reebarr/arrangement.h"
#include "reebarr/reeb.h"

#include <algorithm>
#include <numbers>
#include <numeric>

namespace reebarr {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

bool near_any_pole(Point p, const Arrangement& arr, double eps) {
    for (const auto& ac : arr.circles()) {
        const Poles ps = poles(ac.circle);
        for (const Point& q : ps.vertical)
            if (dist(p, q) <= eps) return true;
        for (const Point& q : ps.horizontal)
            if (dist(p, q) <= eps) return true;
    }
    return false;
}

}  // namespace

std::string_view side_name(Side s) { return s == Side::Inside ? "inside" : "outside"; }

std::string_view surgery_kind_name(SurgeryKind k) {
    switch (k) {
        case SurgeryKind::Thm11Supported: return "thm1.1-supported";
        case SurgeryKind::Thm11Unsupported: return "thm1.1-unsupported";
        case SurgeryKind::Thm12Concave: return "thm1.2-concave";
        case SurgeryKind::Thm32Double: return "thm3.2-double";
    }
    return "?";
}

std::optional<SurgeryKind> parse_surgery_kind(std::string_view s) {
    for (SurgeryKind k : {SurgeryKind::Thm11Supported, SurgeryKind::Thm11Unsupported, SurgeryKind::Thm12Concave,
                          SurgeryKind::Thm32Double})
        if (surgery_kind_name(k) == s) return k;
    return std::nullopt;
}

Arrangement Arrangement::unchecked(std::vector<ArrCircle> circles, std::size_t initial_count, const Tolerances& tol) {
    Arrangement a;
    a.circles_ = std::move(circles);
    a.initial_count_ = initial_count;
    a.tol_ = tol;
    return a;
}

Arrangement Arrangement::initial(const std::vector<Circle>& circles, const Tolerances& tol) {
    tol.check();
    const std::vector<Side> sides = validate_initial(circles, tol);
    std::vector<ArrCircle> acs;
    for (std::size_t i = 0; i < circles.size(); ++i) acs.push_back({circles[i], sides[i], 0, std::nullopt});
    Arrangement a = unchecked(std::move(acs), circles.size(), tol);
    check_region(a);
    return a;
}

Membership Arrangement::contains(Point p) const {
    Membership m;
    const double margin = tol_.side_margin;
    for (std::size_t i = 0; i < circles_.size(); ++i) {
        const double g = circles_[i].region_dist(p);
        if (g > margin) {
            m.kind = MemberKind::Exterior;
            m.on_circles.clear();
            return m;
        }
        if (g >= -margin) m.on_circles.push_back(i);
    }
    m.kind = m.on_circles.empty() ? MemberKind::Interior : MemberKind::Boundary;
    return m;
}

std::array<double, 4> Arrangement::bbox() const {
    std::array<double, 4> b{-1e300, -1e300, 1e300, 1e300};
    for (const auto& ac : circles_) {
        if (ac.side != Side::Inside) continue;
        const Circle& c = ac.circle;
        b[0] = std::max(b[0], c.center.x - c.radius);
        b[1] = std::max(b[1], c.center.y - c.radius);
        b[2] = std::min(b[2], c.center.x + c.radius);
        b[3] = std::min(b[3], c.center.y + c.radius);
    }
    return b;
}

Arrangement Arrangement::without_last() const {
    Arrangement a = *this;
    if (a.circles_.size() > a.initial_count_) a.circles_.pop_back();
    return a;
}

std::vector<Side> validate_initial(const std::vector<Circle>& circles, const Tolerances& tol) {
    if (circles.empty()) throw Error(ErrorCode::NoCommonBoundaryComponent, "initial set is empty");
    for (const Circle& c : circles)
        if (!(c.radius > 0.0) || !std::isfinite(c.radius) || !std::isfinite(c.center.x) || !std::isfinite(c.center.y))
            throw Error(ErrorCode::ParseError, "circle radius must be positive and coordinates finite");

    const std::size_t n = circles.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const auto inter = circle_pair_intersect(circles[i], circles[j], tol);
            if (!inter.points.empty())
                throw Error(ErrorCode::NotDisjoint,
                            "initial circles " + std::to_string(i) + " and " + std::to_string(j) + " meet");
        }
    if (n == 1) return {Side::Inside};

    std::optional<std::size_t> enclosing;
    for (std::size_t e = 0; e < n && !enclosing; ++e) {
        bool all_inside = true;
        for (std::size_t i = 0; i < n && all_inside; ++i)
            if (i != e)
                all_inside = dist(circles[e].center, circles[i].center) + circles[i].radius < circles[e].radius;
        if (all_inside) enclosing = e;
    }
    if (!enclosing)
        throw Error(ErrorCode::NoCommonBoundaryComponent, "no circle encloses all the others");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (i == *enclosing || j == *enclosing) continue;
            if (dist(circles[i].center, circles[j].center) <= circles[i].radius + circles[j].radius)
                throw Error(ErrorCode::NoCommonBoundaryComponent,
                            "holes " + std::to_string(i) + " and " + std::to_string(j) + " are nested");
        }
    std::vector<Side> sides(n, Side::Outside);
    sides[*enclosing] = Side::Inside;
    return sides;
}

Arrangement validate_step(const Arrangement& arr, const Circle& nc, Side side, std::optional<Provenance> provenance) {
    const Tolerances& tol = arr.tolerances();
    if (!(nc.radius > 0.0)) throw Error(ErrorCode::ParseError, "radius must be positive");

    bool crosses = false;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const auto inter = circle_pair_intersect(arr[i].circle, nc, tol);
        for (const Point& p : inter.points) {
            if (!arr.in_closure(p)) continue;
            if (inter.tangent || !transversal_at(p, arr[i].circle, nc, tol))
                throw Error(ErrorCode::TangencyDetected, "new circle is tangent to circle " + std::to_string(i));
            crosses = true;
        }
    }
    if (!crosses) throw Error(ErrorCode::NoIntersection, "new circle meets no circle inside the closure");

    std::size_t step = 1;
    for (const auto& ac : arr.circles()) step = std::max(step, ac.step_index + 1);
    Arrangement next = arr;
    next.circles_.push_back({nc, side, step, std::move(provenance)});

    for (std::size_t i = 0; i < next.size(); ++i)
        for (std::size_t j = i + 1; j < next.size(); ++j) {
            const auto inter = circle_pair_intersect(next[i].circle, next[j].circle, tol);
            for (const Point& p : inter.points) {
                if (!next.in_closure(p)) continue;
                if (inter.tangent)
                    throw Error(ErrorCode::TangencyDetected,
                                "circles " + std::to_string(i) + " and " + std::to_string(j) + " are tangent");
                for (std::size_t k = 0; k < next.size(); ++k) {
                    if (k == i || k == j) continue;
                    if (std::abs(next[k].circle.signed_dist(p)) <= tol.side_margin)
                        throw Error(ErrorCode::TriplePoint, "circles " + std::to_string(i) + ", " + std::to_string(j) +
                                                                " and " + std::to_string(k) + " share a point");
                }
            }
        }

    std::vector<bool> touched(next.size(), false);
    for (const auto& ba : boundary_arcs(next)) touched[ba.circle] = true;
    for (const auto& dp : double_points(next)) touched[dp.i1] = touched[dp.i2] = true;
    for (std::size_t i = 0; i < next.size(); ++i)
        if (!touched[i])
            throw Error(ErrorCode::CircleDetached, "circle " + std::to_string(i) + " no longer meets the closure");

    check_region(next);
    return next;
}

std::vector<DoublePoint> double_points(const Arrangement& arr) {
    std::vector<DoublePoint> out;
    for (std::size_t i = 0; i < arr.size(); ++i)
        for (std::size_t j = i + 1; j < arr.size(); ++j) {
            CircleIntersection inter;
            try {
                inter = circle_pair_intersect(arr[i].circle, arr[j].circle, arr.tolerances());
            } catch (const Error&) {
                continue;
            }
            for (const Point& p : inter.points)
                if (arr.in_closure(p)) out.push_back({p, i, j});
        }
    return out;
}

std::vector<BoundaryArc> boundary_arcs(const Arrangement& arr) {
    std::vector<BoundaryArc> out;
    const double half_pi = 0.5 * std::numbers::pi;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const Circle& c = arr[i].circle;
        std::vector<double> cuts{0.0, half_pi, std::numbers::pi, 3.0 * half_pi};
        for (std::size_t j = 0; j < arr.size(); ++j) {
            if (j == i) continue;
            try {
                for (const Point& p : circle_pair_intersect(c, arr[j].circle, arr.tolerances()).points)
                    cuts.push_back(c.angle_of(p));
            } catch (const Error&) {
            }
        }
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end(), [](double a, double b) { return b - a < 1e-12; }),
                   cuts.end());

        const std::size_t n = cuts.size();
        std::vector<Arc> pieces;
        std::vector<bool> kept;
        for (std::size_t k = 0; k < n; ++k) {
            const double a0 = cuts[k];
            const double a1 = k + 1 < n ? cuts[k + 1] : cuts[0] + kTwoPi;
            pieces.push_back({a0, a1 - a0});
            const Membership m = arr.contains(c.at(0.5 * (a0 + a1)));
            kept.push_back(m.kind == MemberKind::Boundary &&
                           std::find(m.on_circles.begin(), m.on_circles.end(), i) != m.on_circles.end());
        }
        if (std::all_of(kept.begin(), kept.end(), [](bool b) { return b; })) {
            out.push_back({i, Arc{0.0, kTwoPi}});
            continue;
        }
        // rotate so that we start right after a discarded piece, then merge runs
        std::size_t first = 0;
        while (kept[first]) ++first;
        std::optional<Arc> run;
        for (std::size_t s = 1; s <= n; ++s) {
            const std::size_t k = (first + s) % n;
            if (kept[k]) {
                if (run)
                    run->sweep += pieces[k].sweep;
                else
                    run = pieces[k];
            } else if (run) {
                out.push_back({i, Arc{wrap_angle(run->start), run->sweep}});
                run.reset();
            }
        }
        if (run) out.push_back({i, Arc{wrap_angle(run->start), run->sweep}});
    }
    return out;
}

namespace {

// Is the union of circles [0, k) intersected with the closed disk of circle k
// connected and nonempty?
bool step_is_connected(const Arrangement& arr, std::size_t k, std::string& note) {
    const Circle& disk = arr[k].circle;
    const Tolerances& tol = arr.tolerances();
    struct Piece {
        std::size_t circle;
        Arc arc;
    };
    std::vector<Piece> pieces;
    for (std::size_t i = 0; i < k; ++i) {
        const Circle& c = arr[i].circle;
        CircleIntersection inter;
        try {
            inter = circle_pair_intersect(c, disk, tol);
        } catch (const Error&) {
            pieces.push_back({i, Arc{0.0, kTwoPi}});
            continue;
        }
        if (inter.points.size() == 2) {
            const double a0 = c.angle_of(inter.points[0]);
            const double a1 = c.angle_of(inter.points[1]);
            Arc arc{a0, wrap_angle(a1 - a0)};
            if (disk.signed_dist(c.at(arc.mid())) > 0.0) arc = Arc{a1, kTwoPi - arc.sweep};
            pieces.push_back({i, arc});
        } else if (disk.signed_dist(c.center) + c.radius <= 0.0 || disk.signed_dist(c.at(0.0)) < 0.0) {
            pieces.push_back({i, Arc{0.0, kTwoPi}});
        } else if (inter.points.size() == 1) {
            pieces.push_back({i, Arc{c.angle_of(inter.points[0]), 0.0}});
        }
    }
    if (pieces.empty()) {
        note = "step " + std::to_string(k) + ": new disk meets no existing circle";
        return false;
    }
    UnionFind uf(pieces.size());
    for (std::size_t a = 0; a < pieces.size(); ++a)
        for (std::size_t b = a + 1; b < pieces.size(); ++b) {
            const Circle& ca = arr[pieces[a].circle].circle;
            const Circle& cb = arr[pieces[b].circle].circle;
            CircleIntersection inter;
            try {
                inter = circle_pair_intersect(ca, cb, tol);
            } catch (const Error&) {
                continue;
            }
            for (const Point& p : inter.points) {
                if (disk.signed_dist(p) > tol.side_margin) continue;
                if (pieces[a].arc.contains_angle(ca.angle_of(p), 1e-9) &&
                    pieces[b].arc.contains_angle(cb.angle_of(p), 1e-9))
                    uf.unite(a, b);
            }
        }
    for (std::size_t a = 1; a < pieces.size(); ++a)
        if (uf.find(a) != uf.find(0)) {
            note = "step " + std::to_string(k) + ": circles inside the new disk are disconnected";
            return false;
        }
    return true;
}

}  // namespace

ClassReport classify(const Arrangement& arr) {
    ClassReport r;
    const Tolerances& tol = arr.tolerances();

    r.ni_mbc = true;
    for (const auto& dp : double_points(arr))
        if (near_any_pole(dp.point, arr, tol.side_margin)) {
            r.ni_mbc = false;
            r.notes.push_back("double point of circles " + std::to_string(dp.i1) + "," + std::to_string(dp.i2) +
                              " is a pole");
        }

    r.nci = true;
    r.mbcc = true;
    r.ssc_ni = true;
    for (std::size_t k = arr.initial_count(); k < arr.size(); ++k) {
        std::string note;
        if (!step_is_connected(arr, k, note)) {
            r.nci = false;
            r.notes.push_back("NCI: " + note);
        }
        bool centered = false;
        for (std::size_t i = 0; i < k; ++i)
            if (std::abs(arr[i].circle.signed_dist(arr[k].circle.center)) <= tol.side_margin) centered = true;
        if (!centered || arr[k].side != Side::Outside) {
            r.mbcc = false;
            r.notes.push_back("MBCC: step " + std::to_string(k) + " is not an outside circle centered on a circle");
        }
        if (!arr[k].provenance) {
            r.ssc_ni = false;
            r.notes.push_back("SSC-NI: step " + std::to_string(k) + " has no chord surgery record");
        }
    }
    r.nci_mbc = r.nci && r.ni_mbc;
    r.mbcc = r.mbcc && r.ni_mbc;
    return r;
}

Arrangement transposed(const Arrangement& arr) {
    std::vector<ArrCircle> cs = arr.circles();
    for (auto& ac : cs) std::swap(ac.circle.center.x, ac.circle.center.y);
    return Arrangement::unchecked(std::move(cs), arr.initial_count(), arr.tolerances());
}

Arrangement mirrored_x(const Arrangement& arr) {
    std::vector<ArrCircle> cs = arr.circles();
    for (auto& ac : cs) ac.circle.center.x = -ac.circle.center.x;
    return Arrangement::unchecked(std::move(cs), arr.initial_count(), arr.tolerances());
}

void check_region(const Arrangement& arr) {
    (void)poincare_reeb(arr, Axis::X);
    (void)poincare_reeb(arr, Axis::Y);
}

}  // namespace reebarr
