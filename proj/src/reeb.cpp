#include "reebarr/reeb.h"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>

namespace reebarr {

std::string_view axis_name(Axis a) { return a == Axis::X ? "x" : "y"; }

std::size_t PRGraph::in_degree(std::size_t v) const {
    return static_cast<std::size_t>(std::count_if(edges.begin(), edges.end(), [v](const PREdge& e) { return e.head == v; }));
}

std::size_t PRGraph::out_degree(std::size_t v) const {
    return static_cast<std::size_t>(std::count_if(edges.begin(), edges.end(), [v](const PREdge& e) { return e.tail == v; }));
}

std::vector<std::size_t> PRGraph::label_ranks() const {
    std::vector<std::size_t> order(vertices.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return vertices[a].label < vertices[b].label; });
    std::vector<std::size_t> rank(vertices.size(), 0);
    std::size_t r = 0;
    for (std::size_t k = 0; k < order.size(); ++k) {
        if (k > 0 && vertices[order[k]].label - vertices[order[k - 1]].label > tie_tol) ++r;
        rank[order[k]] = r;
    }
    return rank;
}

PRGraph reversed(const PRGraph& g) {
    PRGraph r = g;
    for (auto& v : r.vertices) v.label = -v.label;
    for (auto& e : r.edges) std::swap(e.tail, e.head);
    return r;
}

std::vector<FiberInterval> fiber(const Arrangement& arr, double x, double eps) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<FiberInterval> cur{FiberInterval{Interval{-inf, inf}}};

    for (std::size_t ci = 0; ci < arr.size() && !cur.empty(); ++ci) {
        const ArrCircle& ac = arr[ci];
        const Circle& c = ac.circle;
        const double dx = x - c.center.x;
        if (std::abs(dx) > c.radius + eps) {
            if (ac.side == Side::Inside) return {};
            continue;
        }
        const double s = std::sqrt(std::max(0.0, c.radius * c.radius - dx * dx));
        const double lo = c.center.y - s;
        const double hi = c.center.y + s;
        const int idx = static_cast<int>(ci);
        std::vector<FiberInterval> next;
        for (const FiberInterval& fi : cur) {
            if (ac.side == Side::Inside) {
                FiberInterval n = fi;
                if (lo > n.span.lo) {
                    n.span.lo = lo;
                    n.lo_circle = idx;
                    n.lo_branch = -1;
                }
                if (hi < n.span.hi) {
                    n.span.hi = hi;
                    n.hi_circle = idx;
                    n.hi_branch = +1;
                }
                if (n.span.hi - n.span.lo >= -eps) next.push_back(n);
            } else {
                FiberInterval below = fi;
                if (lo < below.span.hi) {
                    below.span.hi = lo;
                    below.hi_circle = idx;
                    below.hi_branch = -1;
                }
                if (below.span.hi - below.span.lo >= -eps) next.push_back(below);
                FiberInterval above = fi;
                if (hi > above.span.lo) {
                    above.span.lo = hi;
                    above.lo_circle = idx;
                    above.lo_branch = +1;
                }
                if (above.span.hi - above.span.lo >= -eps) next.push_back(above);
            }
        }
        std::sort(next.begin(), next.end(),
                  [](const FiberInterval& a, const FiberInterval& b) { return a.span.lo < b.span.lo; });
        cur.clear();
        for (const FiberInterval& fi : next) {
            if (!cur.empty() && fi.span.lo <= cur.back().span.hi + eps) {
                if (fi.span.hi > cur.back().span.hi) {
                    cur.back().span.hi = fi.span.hi;
                    cur.back().hi_circle = fi.hi_circle;
                    cur.back().hi_branch = fi.hi_branch;
                }
            } else {
                cur.push_back(fi);
            }
        }
    }
    for (FiberInterval& fi : cur)
        if (fi.span.hi < fi.span.lo) fi.span.lo = fi.span.hi = 0.5 * (fi.span.lo + fi.span.hi);
    return cur;
}

std::vector<SweepEvent> sweep_events(const Arrangement& arr, Axis axis) {
    const Tolerances& tol = arr.tolerances();
    std::vector<SweepEvent> events;
    auto add = [&](Point p, VertexKind kind) {
        for (SweepEvent& e : events)
            if (dist(e.point, p) <= tol.side_margin) {
                if (kind == VertexKind::DoublePoint) e.kind = kind;
                return;
            }
        events.push_back({axis == Axis::X ? p.x : p.y, p, kind});
    };
    for (const DoublePoint& dp : double_points(arr)) add(dp.point, VertexKind::DoublePoint);
    for (const ArrCircle& ac : arr.circles()) {
        const Poles ps = poles(ac.circle);
        for (const Point& p : axis == Axis::X ? ps.vertical : ps.horizontal)
            if (arr.in_closure(p)) add(p, VertexKind::Pole);
    }
    std::sort(events.begin(), events.end(), [](const SweepEvent& a, const SweepEvent& b) {
        return a.value < b.value || (a.value == b.value && (a.point.y < b.point.y || a.point.x < b.point.x));
    });
    return events;
}

namespace {

double branch_y(const Arrangement& arr, int circle, int branch, double x) {
    const Circle& c = arr[static_cast<std::size_t>(circle)].circle;
    const double dx = x - c.center.x;
    const double s = std::sqrt(std::max(0.0, c.radius * c.radius - dx * dx));
    return c.center.y + branch * s;
}

struct EventComponent {
    Interval span;
    std::vector<std::size_t> witnesses;  // indices into the event list
    std::optional<std::size_t> vertex;
    std::vector<std::size_t> left_tracks;
    std::vector<std::size_t> right_tracks;
};

}  // namespace

PRGraph poincare_reeb(const Arrangement& input, Axis axis) {
    const Arrangement arr = axis == Axis::X ? input : transposed(input);
    const Tolerances& tol = arr.tolerances();
    std::vector<SweepEvent> events = sweep_events(input, axis);
    if (events.empty()) throw Error(ErrorCode::RegionEmpty, "no pole or double point lies in the closure");

    // Group events with equal projection value.
    std::vector<std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < events.size(); ++i) {
        if (!groups.empty() && events[i].value - events[groups.back().front()].value <= tol.tol) {
            groups.back().push_back(i);
            continue;
        }
        if (!groups.empty() && events[i].value - events[groups.back().back()].value <= tol.event_gap)
            throw Error(ErrorCode::DegenerateEvents, "sweep events closer than event_gap along " +
                                                         std::string(axis_name(axis)));
        groups.push_back({i});
    }

    auto sweep_y = [&](Point p) { return axis == Axis::X ? p.y : p.x; };

    PRGraph g;
    g.axis = axis;
    g.tie_tol = 0.5 * tol.event_gap;

    std::vector<std::vector<EventComponent>> comps(groups.size());
    std::vector<double> gx(groups.size());
    for (std::size_t k = 0; k < groups.size(); ++k) {
        double sum = 0.0;
        for (std::size_t i : groups[k]) sum += events[i].value;
        gx[k] = sum / static_cast<double>(groups[k].size());
        for (const FiberInterval& fi : fiber(arr, gx[k], tol.side_margin))
            comps[k].push_back(EventComponent{fi.span, {}, std::nullopt, {}, {}});
        for (std::size_t i : groups[k]) {
            const double y = sweep_y(events[i].point);
            auto it = std::find_if(comps[k].begin(), comps[k].end(),
                                   [&](const EventComponent& c) { return c.span.contains(y, 10.0 * tol.side_margin); });
            if (it == comps[k].end())
                throw Error(ErrorCode::Internal, "event point outside every fiber component");
            it->witnesses.push_back(i);
        }
        for (EventComponent& c : comps[k]) {
            if (c.witnesses.empty()) continue;
            PRVertex v;
            v.id = g.vertices.size();
            v.label = gx[k];
            bool has_pole = false;
            bool has_double = false;
            for (std::size_t i : c.witnesses) {
                v.witnesses.push_back(events[i].point);
                (events[i].kind == VertexKind::Pole ? has_pole : has_double) = true;
            }
            if (has_pole && has_double)
                throw Error(ErrorCode::DegenerateEvents, "a fiber component holds both a pole and a double point");
            v.kind = has_double ? VertexKind::DoublePoint : VertexKind::Pole;
            c.vertex = v.id;
            g.vertices.push_back(std::move(v));
        }
    }

    // The region must vanish outside the event range.
    const double h = 0.5 * tol.event_gap;
    if (!fiber(arr, gx.front() - h, tol.tol).empty() || !fiber(arr, gx.back() + h, tol.tol).empty())
        throw Error(ErrorCode::Internal, "region extends beyond its extreme events");

    // Tracks in each gap, matched to the components at both ends.
    struct Track {
        std::size_t left_comp;
        std::size_t right_comp;
    };
    std::vector<std::vector<Track>> tracks(groups.size() > 0 ? groups.size() - 1 : 0);
    for (std::size_t k = 0; k + 1 < groups.size(); ++k) {
        const double x0 = gx[k];
        const double x1 = gx[k + 1];
        const auto mid = fiber(arr, 0.5 * (x0 + x1), tol.tol);
        for (double frac : {0.25, 0.75})
            if (fiber(arr, x0 + frac * (x1 - x0), tol.tol).size() != mid.size())
                throw Error(ErrorCode::Internal, "fiber count changes between events");
        for (const FiberInterval& fi : mid) {
            if (fi.lo_circle < 0 || fi.hi_circle < 0) throw Error(ErrorCode::Internal, "unbounded fiber");
            auto locate = [&](std::size_t gk, double x) {
                const double lo = branch_y(arr, fi.lo_circle, fi.lo_branch, x);
                const double hi = branch_y(arr, fi.hi_circle, fi.hi_branch, x);
                const double y = 0.5 * (lo + hi);
                std::size_t best = 0;
                double best_d = std::numeric_limits<double>::infinity();
                for (std::size_t c = 0; c < comps[gk].size(); ++c) {
                    const Interval& s = comps[gk][c].span;
                    const double d = y < s.lo ? s.lo - y : (y > s.hi ? y - s.hi : 0.0);
                    if (d < best_d) {
                        best_d = d;
                        best = c;
                    }
                }
                if (comps[gk].empty() || best_d > 1e3 * tol.side_margin)
                    throw Error(ErrorCode::Internal, "fiber track does not reach an event component");
                return best;
            };
            Track t{locate(k, x0), locate(k + 1, x1)};
            const std::size_t id = tracks[k].size();
            comps[k][t.left_comp].right_tracks.push_back(id);
            comps[k + 1][t.right_comp].left_tracks.push_back(id);
            tracks[k].push_back(t);
        }
    }

    // Walk tracks left to right, carrying the origin vertex through
    // components without witnesses.
    std::vector<std::vector<std::size_t>> origin(tracks.size());
    for (std::size_t k = 0; k < tracks.size(); ++k) {
        origin[k].resize(tracks[k].size());
        for (std::size_t t = 0; t < tracks[k].size(); ++t) {
            const EventComponent& lc = comps[k][tracks[k][t].left_comp];
            if (lc.vertex) {
                origin[k][t] = *lc.vertex;
            } else {
                if (lc.left_tracks.size() != 1 || lc.right_tracks.size() != 1)
                    throw Error(ErrorCode::DegenerateEvents, "fiber topology changes away from poles and double points");
                origin[k][t] = origin[k - 1][lc.left_tracks.front()];
            }
            const EventComponent& rc = comps[k + 1][tracks[k][t].right_comp];
            if (rc.vertex) g.edges.push_back({origin[k][t], *rc.vertex});
        }
    }
    for (std::size_t k = 0; k < comps.size(); ++k)
        for (const EventComponent& c : comps[k])
            if (!c.vertex && (c.left_tracks.size() != 1 || c.right_tracks.size() != 1))
                throw Error(ErrorCode::DegenerateEvents, "fiber topology changes away from poles and double points");

    // Connectivity.
    std::vector<std::size_t> parent(g.vertices.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (const PREdge& e : g.edges) parent[find(e.tail)] = find(e.head);
    for (std::size_t v = 1; v < g.vertices.size(); ++v)
        if (find(v) != find(0)) throw Error(ErrorCode::RegionDisconnected, "closure has several components");

    std::sort(g.edges.begin(), g.edges.end(),
              [](const PREdge& a, const PREdge& b) { return std::tie(a.tail, a.head) < std::tie(b.tail, b.head); });
    return g;
}

}  // namespace reebarr
