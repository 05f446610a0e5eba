#include "reebarr/surgery.h"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <map>

namespace reebarr {

Side side_for(SurgeryKind kind) { return kind == SurgeryKind::Thm11Supported ? Side::Inside : Side::Outside; }

SurgerySpec make_spec(const Arrangement& arr, Point anchor, double rho, std::array<double, 2> offsets, double t,
                      SurgeryKind kind) {
    SurgerySpec s;
    s.anchor = anchor;
    s.chord = make_chord(arr, anchor, rho, offsets);
    s.secant = secant_family(arr, s.chord, t);
    s.kind = kind;
    s.side = side_for(kind);
    return s;
}

namespace {

void require(bool cond, const std::string& what) {
    if (!cond) throw Error(ErrorCode::PreconditionUnmet, what);
}

bool interior(const Arrangement& arr, Point p) { return arr.contains(p).kind == MemberKind::Interior; }

Point arc_mid(const SecantCircle& sc, const Arc& a) { return sc.circle.at(a.mid()); }

}  // namespace

Arrangement apply(const Arrangement& arr, const SurgerySpec& spec) {
    require(spec.side == side_for(spec.kind), "side does not match the surgery kind");
    require(dist(spec.anchor, spec.chord.anchor) <= arr.tolerances().side_margin, "chord is not anchored at the spec anchor");
    const Anchor an = probe_anchor(arr, spec.anchor);
    const bool dp = an.kind == AnchorKind::DoublePoint;
    require(dp == (spec.kind == SurgeryKind::Thm32Double), "anchor type does not match the surgery kind");

    const ChordClass cc = classify_chord(arr, spec.chord);
    const CSRegions reg = cs_regions(arr, spec.secant);
    const Point near_mid = arc_mid(spec.secant, spec.secant.near_arc);
    const Point far_mid = arc_mid(spec.secant, spec.secant.far_arc);

    switch (spec.kind) {
        case SurgeryKind::Thm11Supported:
            require(cc.convexity == Convexity::Convex, "supported surgery needs a convex anchor");
            require(interior(arr, near_mid), "near arc must run through the interior");
            break;
        case SurgeryKind::Thm11Unsupported:
            require(cc.convexity == Convexity::Convex, "unsupported surgery needs a convex anchor");
            require(interior(arr, far_mid), "far arc must run through the interior");
            require(reg.contains_anchor_cap, "secant disk must contain the anchor");
            require(!reg.unsupported.touches_other, "unsupported region meets another circle");
            break;
        case SurgeryKind::Thm12Concave:
            require(cc.convexity == Convexity::Concave, "concave surgery needs a concave anchor");
            require(reg.contains_anchor_cap, "supported region must contain the cut-off cap");
            require(interior(arr, near_mid), "near arc must run through the interior");
            break;
        case SurgeryKind::Thm32Double:
            require(extreme_point_line(arr, spec.anchor).has_value(), "double point has no extreme line");
            require(interior(arr, far_mid), "far arc must run through the interior");
            require(reg.contains_anchor_cap, "secant disk must contain the anchor");
            require(!reg.unsupported.touches_other, "unsupported region meets another circle");
            break;
    }

    Provenance prov;
    prov.kind = spec.kind;
    prov.anchor = spec.anchor;
    prov.chord = spec.chord.seg;
    prov.rho = spec.chord.probe_radius;
    prov.offsets = spec.chord.offsets;
    prov.secant_t = spec.secant.t;
    return validate_step(arr, spec.secant.circle, spec.side, prov);
}

std::string_view pattern_name(Pattern p) {
    switch (p) {
        case Pattern::T2_1_1: return "T2_1_1";
        case Pattern::T2_1_2: return "T2_1_2";
        case Pattern::T2_2_1: return "T2_2_1";
        case Pattern::T2_2_2: return "T2_2_2";
        case Pattern::T5_lt: return "T5_lt";
        case Pattern::T5_eq: return "T5_eq";
        case Pattern::T5_gt: return "T5_gt";
        case Pattern::Unrecognized: return "Unrecognized";
    }
    return "?";
}

std::optional<Pattern> parse_pattern(std::string_view s) {
    for (Pattern p : {Pattern::T2_1_1, Pattern::T2_1_2, Pattern::T2_2_1, Pattern::T2_2_2, Pattern::T5_lt, Pattern::T5_eq,
                      Pattern::T5_gt, Pattern::Unrecognized})
        if (pattern_name(p) == s) return p;
    return std::nullopt;
}

namespace {

constexpr double kWitnessEps = 1e-7;

using Edge = std::pair<std::size_t, std::size_t>;

struct Diff {
    std::vector<long> map;  // before -> after
    std::vector<long> inv;  // after -> before
    std::vector<std::size_t> removed;
    std::vector<std::size_t> added;
};

std::optional<Diff> match_vertices(const PRGraph& b, const PRGraph& a) {
    Diff d;
    d.map.assign(b.vertices.size(), -1);
    d.inv.assign(a.vertices.size(), -1);
    for (const PRVertex& v : b.vertices) {
        std::vector<std::size_t> cand;
        for (const PRVertex& w : a.vertices) {
            bool shared = false;
            for (Point p : v.witnesses)
                for (Point q : w.witnesses) shared = shared || dist(p, q) <= kWitnessEps;
            if (shared) cand.push_back(w.id);
        }
        if (cand.size() > 1) return std::nullopt;
        if (cand.empty()) continue;
        if (d.inv[cand[0]] >= 0) return std::nullopt;
        d.map[v.id] = static_cast<long>(cand[0]);
        d.inv[cand[0]] = static_cast<long>(v.id);
    }
    for (std::size_t i = 0; i < d.map.size(); ++i)
        if (d.map[i] < 0) d.removed.push_back(i);
    for (std::size_t i = 0; i < d.inv.size(); ++i)
        if (d.inv[i] < 0) d.added.push_back(i);
    return d;
}

std::vector<std::size_t> in_nbrs(const PRGraph& g, std::size_t v) {
    std::vector<std::size_t> r;
    for (const PREdge& e : g.edges)
        if (e.head == v) r.push_back(e.tail);
    std::sort(r.begin(), r.end());
    return r;
}

std::vector<std::size_t> out_nbrs(const PRGraph& g, std::size_t v) {
    std::vector<std::size_t> r;
    for (const PREdge& e : g.edges)
        if (e.tail == v) r.push_back(e.head);
    std::sort(r.begin(), r.end());
    return r;
}

// After edges equal the mapped before edges minus `removed`, plus `added`.
bool rest_matches(const PRGraph& b, const PRGraph& a, const Diff& d, const std::vector<Edge>& removed,
                  const std::vector<Edge>& added) {
    std::multiset<Edge> drop(removed.begin(), removed.end());
    std::multiset<Edge> expected(added.begin(), added.end());
    for (const PREdge& e : b.edges) {
        auto it = drop.find({e.tail, e.head});
        if (it != drop.end()) {
            drop.erase(it);
            continue;
        }
        if (d.map[e.tail] < 0 || d.map[e.head] < 0) return false;
        expected.insert({static_cast<std::size_t>(d.map[e.tail]), static_cast<std::size_t>(d.map[e.head])});
    }
    if (!drop.empty()) return false;
    std::multiset<Edge> actual;
    for (const PREdge& e : a.edges) actual.insert({e.tail, e.head});
    return actual == expected;
}

struct Ctx {
    const PRGraph& b;
    const PRGraph& a;
    const Diff& d;
    double locus;
    double gap;

    double la(std::size_t v) const { return a.vertices[v].label; }
    double lb(std::size_t v) const { return b.vertices[v].label; }
    bool kept_after(std::size_t v) const { return d.inv[v] >= 0; }
    std::size_t before_of(std::size_t v) const { return static_cast<std::size_t>(d.inv[v]); }
    std::size_t after_of(std::size_t v) const { return static_cast<std::size_t>(d.map[v]); }
    bool at_locus(double l) const { return std::abs(l - locus) <= gap; }

    std::pair<std::size_t, std::size_t> two_new_sorted() const {
        std::size_t n1 = d.added[0], n2 = d.added[1];
        if (la(n2) < la(n1)) std::swap(n1, n2);
        return {n1, n2};
    }
};

using Single = std::vector<std::size_t>;

std::optional<std::string> t2_1_1(const Ctx& c) {
    if (!c.d.removed.empty() || c.d.added.size() != 2) return std::nullopt;
    auto [n1, n2] = c.two_new_sorted();
    const auto i1 = in_nbrs(c.a, n1), o1 = out_nbrs(c.a, n1), i2 = in_nbrs(c.a, n2), o2 = out_nbrs(c.a, n2);
    if (i1.size() != 1 || o1 != Single{n2} || i2 != Single{n1} || o2.size() != 1) return std::nullopt;
    if (!c.kept_after(i1[0]) || !c.kept_after(o2[0])) return std::nullopt;
    if (!(c.la(n1) < c.locus && c.locus < c.la(n2))) return std::nullopt;
    const std::size_t ta = c.before_of(i1[0]), tb = c.before_of(o2[0]);
    if (!rest_matches(c.b, c.a, c.d, {{ta, tb}}, {{i1[0], n1}, {n1, n2}, {n2, o2[0]}})) return std::nullopt;
    return "edge v" + std::to_string(ta) + "->v" + std::to_string(tb) + " subdivided twice";
}

std::optional<std::string> t2_1_2(const Ctx& c) {
    if (c.d.added.size() != 2) return std::nullopt;
    auto [n1, n2] = c.two_new_sorted();
    if (!(c.la(n1) < c.locus && c.locus < c.la(n2))) return std::nullopt;
    const auto i1 = in_nbrs(c.a, n1), o1 = out_nbrs(c.a, n1), i2 = in_nbrs(c.a, n2), o2 = out_nbrs(c.a, n2);
    if (i1.size() != 1 || o1.size() != 1 || i2.size() != 1 || o2.size() != 1) return std::nullopt;
    if (!c.kept_after(i1[0]) || !c.kept_after(o2[0])) return std::nullopt;
    const std::size_t A = i1[0], B = o2[0];

    if (c.d.removed.empty()) {
        // the locus vertex survives between the two new vertices
        if (o1[0] != i2[0] || !c.kept_after(o1[0])) return std::nullopt;
        const std::size_t Q = o1[0];
        if (!c.at_locus(c.la(Q))) return std::nullopt;
        const std::size_t qb = c.before_of(Q);
        if (!rest_matches(c.b, c.a, c.d, {{c.before_of(A), qb}, {qb, c.before_of(B)}},
                          {{A, n1}, {n1, Q}, {Q, n2}, {n2, B}}))
            return std::nullopt;
        return "in- and out-edge of v" + std::to_string(qb) + " each subdivided";
    }
    if (c.d.removed.size() != 1) return std::nullopt;
    // the locus vertex (a corner) is replaced by the two new vertices
    const std::size_t q = c.d.removed[0];
    if (!c.at_locus(c.lb(q))) return std::nullopt;
    if (o1 != Single{n2} || i2 != Single{n1}) return std::nullopt;
    if (in_nbrs(c.b, q) != Single{c.before_of(A)} || out_nbrs(c.b, q) != Single{c.before_of(B)}) return std::nullopt;
    if (!rest_matches(c.b, c.a, c.d, {{c.before_of(A), q}, {q, c.before_of(B)}}, {{A, n1}, {n1, n2}, {n2, B}}))
        return std::nullopt;
    return "locus vertex v" + std::to_string(q) + " replaced by a new vertex on each side";
}

// Source q with a single out-edge, sitting at the locus.
std::optional<std::size_t> removed_source(const Ctx& c) {
    if (c.d.removed.size() != 1) return std::nullopt;
    const std::size_t q = c.d.removed[0];
    if (!c.at_locus(c.lb(q)) || !in_nbrs(c.b, q).empty() || out_nbrs(c.b, q).size() != 1) return std::nullopt;
    if (c.d.map[out_nbrs(c.b, q)[0]] < 0) return std::nullopt;
    return q;
}

std::optional<std::string> t2_2_1(const Ctx& c) {
    const auto q = removed_source(c);
    if (!q || c.d.added.size() != 2) return std::nullopt;
    const std::size_t v = out_nbrs(c.b, *q)[0];
    const std::size_t V = c.after_of(v);
    auto [n0, n1] = c.two_new_sorted();
    if (!in_nbrs(c.a, n0).empty() || out_nbrs(c.a, n0) != Single{n1} || in_nbrs(c.a, n1) != Single{n0} ||
        out_nbrs(c.a, n1) != Single{V})
        return std::nullopt;
    if (!(c.la(n0) > c.locus)) return std::nullopt;
    if (!rest_matches(c.b, c.a, c.d, {{*q, v}}, {{n0, n1}, {n1, V}})) return std::nullopt;
    return "extremal edge v" + std::to_string(*q) + "->v" + std::to_string(v) + " becomes a 3-vertex chain";
}

std::optional<std::string> t2_2_2(const Ctx& c) {
    const auto q = removed_source(c);
    if (!q || c.d.added.size() != 3) return std::nullopt;
    const std::size_t v = out_nbrs(c.b, *q)[0];
    const std::size_t V = c.after_of(v);
    std::vector<std::size_t> sources;
    std::optional<std::size_t> junction;
    for (std::size_t n : c.d.added) {
        if (in_nbrs(c.a, n).empty())
            sources.push_back(n);
        else
            junction = n;
    }
    if (sources.size() != 2 || !junction) return std::nullopt;
    const std::size_t j = *junction;
    if (in_nbrs(c.a, j) != Single{std::min(sources[0], sources[1]), std::max(sources[0], sources[1])} ||
        out_nbrs(c.a, j) != Single{V})
        return std::nullopt;
    for (std::size_t s : sources)
        if (out_nbrs(c.a, s) != Single{j} || !(c.la(s) > c.locus)) return std::nullopt;
    if (std::abs(c.la(sources[0]) - c.la(sources[1])) > c.gap) return std::nullopt;
    if (!rest_matches(c.b, c.a, c.d, {{*q, v}}, {{sources[0], j}, {sources[1], j}, {j, V}})) return std::nullopt;
    return "extremal edge v" + std::to_string(*q) + "->v" + std::to_string(v) + " becomes a Y with equal sources";
}

double perpendicular(const PRVertex& v, Axis axis) {
    double s = 0.0;
    for (Point p : v.witnesses) s += axis == Axis::X ? p.y : p.x;
    return v.witnesses.empty() ? 0.0 : s / static_cast<double>(v.witnesses.size());
}

// Merge vertex q (two in-edges, one out-edge) at the locus replaced by two
// new branch vertices below the locus feeding a new merge vertex above it.
std::optional<std::pair<std::string, std::array<std::size_t, 2>>> t5(const Ctx& c) {
    if (c.d.removed.size() != 1 || c.d.added.size() != 3) return std::nullopt;
    const std::size_t q = c.d.removed[0];
    const auto qin = in_nbrs(c.b, q);
    const auto qout = out_nbrs(c.b, q);
    if (!c.at_locus(c.lb(q)) || qin.size() != 2 || qout.size() != 1) return std::nullopt;
    for (std::size_t u : qin)
        if (c.d.map[u] < 0) return std::nullopt;
    if (c.d.map[qout[0]] < 0) return std::nullopt;
    const std::size_t W = c.after_of(qout[0]);

    std::vector<std::size_t> branch;
    std::optional<std::size_t> merge;
    for (std::size_t n : c.d.added) {
        if (in_nbrs(c.a, n).size() == 2)
            merge = n;
        else
            branch.push_back(n);
    }
    if (!merge || branch.size() != 2) return std::nullopt;
    const std::size_t s = *merge;
    if (out_nbrs(c.a, s) != Single{W} ||
        in_nbrs(c.a, s) != Single{std::min(branch[0], branch[1]), std::max(branch[0], branch[1])})
        return std::nullopt;
    std::vector<std::size_t> feeders;
    for (std::size_t n : branch) {
        const auto in = in_nbrs(c.a, n);
        if (in.size() != 1 || out_nbrs(c.a, n) != Single{s} || !c.kept_after(in[0])) return std::nullopt;
        if (!(c.la(n) < c.locus)) return std::nullopt;
        feeders.push_back(c.before_of(in[0]));
    }
    if (!(c.locus < c.la(s))) return std::nullopt;
    std::sort(feeders.begin(), feeders.end());
    if (feeders != qin) return std::nullopt;
    std::vector<Edge> added{{s, W}};
    for (std::size_t n : branch) {
        added.push_back({in_nbrs(c.a, n)[0], n});
        added.push_back({n, s});
    }
    if (!rest_matches(c.b, c.a, c.d, {{qin[0], q}, {qin[1], q}, {q, qout[0]}}, added)) return std::nullopt;
    std::array<std::size_t, 2> ns{branch[0], branch[1]};
    if (perpendicular(c.a.vertices[ns[1]], c.a.axis) > perpendicular(c.a.vertices[ns[0]], c.a.axis))
        std::swap(ns[0], ns[1]);
    return std::pair{"merge vertex v" + std::to_string(q) + " pushed past the locus", ns};
}

}  // namespace

std::vector<ChangeReport> matching_patterns(const PRGraph& before, const PRGraph& after, double locus) {
    std::vector<ChangeReport> out;
    const auto d = match_vertices(before, after);
    if (!d) return out;
    const double gap = 2.0 * std::max(before.tie_tol, after.tie_tol);

    auto push = [&](Pattern p, const std::string& detail, bool mirrored) {
        for (const ChangeReport& r : out)
            if (r.pattern == p) return;
        ChangeReport r;
        r.pattern = p;
        r.mapping = d->map;
        r.new_vertices = d->added;
        r.mirrored = mirrored;
        r.detail = detail;
        out.push_back(std::move(r));
    };

    for (bool mirrored : {false, true}) {
        const PRGraph b = mirrored ? reversed(before) : before;
        const PRGraph a = mirrored ? reversed(after) : after;
        const Ctx c{b, a, *d, mirrored ? -locus : locus, gap};
        if (auto s = t2_1_1(c)) push(Pattern::T2_1_1, *s, mirrored);
        if (auto s = t2_1_2(c)) push(Pattern::T2_1_2, *s, mirrored);
        if (auto s = t2_2_1(c)) push(Pattern::T2_2_1, *s, mirrored);
        if (auto s = t2_2_2(c)) push(Pattern::T2_2_2, *s, mirrored);
        if (auto m = t5(c)) {
            const double l1 = after.vertices[m->second[0]].label;
            const double l2 = after.vertices[m->second[1]].label;
            const Pattern p = std::abs(l1 - l2) <= gap ? Pattern::T5_eq : (l1 < l2 ? Pattern::T5_lt : Pattern::T5_gt);
            push(p, m->first, mirrored);
            for (ChangeReport& r : out)
                if (r.pattern == p) r.i_values = std::array<double, 2>{l1, l2};
        }
    }
    return out;
}

ChangeReport classify_change(const PRGraph& before, const PRGraph& after, double locus) {
    auto all = matching_patterns(before, after, locus);
    if (all.size() == 1) return all[0];
    ChangeReport r;
    r.detail = all.empty() ? "no template matches" : "several templates match";
    return r;
}

std::set<Pattern> predicted_patterns(const Arrangement& arr, const SurgerySpec& spec, Axis axis) {
    const std::set<Pattern> t21{Pattern::T2_1_1, Pattern::T2_1_2};
    const std::set<Pattern> t22{Pattern::T2_2_1, Pattern::T2_2_2};
    const std::set<Pattern> t5{Pattern::T5_lt, Pattern::T5_eq, Pattern::T5_gt};
    const Anchor an = probe_anchor(arr, spec.anchor);
    const double eps = arr.tolerances().side_margin;

    if (an.kind == AnchorKind::SingleCircle) {
        const Poles pl = poles(arr[an.j1].circle);
        const auto& pp = axis == Axis::X ? pl.vertical : pl.horizontal;
        const bool pole = dist(spec.anchor, pp[0]) <= eps || dist(spec.anchor, pp[1]) <= eps;
        if (!pole) return t21;
        return spec.kind == SurgeryKind::Thm12Concave ? t5 : t22;
    }
    CornerCase cc = classify_chord(arr, spec.chord).corner_case.value();
    if (axis == Axis::Y) {
        if (cc == CornerCase::C2)
            cc = CornerCase::C3;
        else if (cc == CornerCase::C3)
            cc = CornerCase::C2;
    }
    return cc == CornerCase::C1 || cc == CornerCase::C2 ? t22 : t21;
}

std::string VerifyReport::to_json() const {
    nlohmann::ordered_json j;
    j["pattern"] = pattern_name(pattern);
    auto ex = nlohmann::json::array();
    for (Pattern p : expected) ex.push_back(pattern_name(p));
    j["expected"] = ex;
    j["ok"] = ok;
    j["before"] = before;
    j["after"] = after;
    if (i_values) j["i_values"] = {(*i_values)[0], (*i_values)[1]};
    return j.dump();
}

VerifyReport verify_theorem(const Arrangement& arr, const SurgerySpec& spec, Axis axis, std::set<Pattern> expected) {
    VerifyReport rep;
    rep.expected = expected.empty() ? predicted_patterns(arr, spec, axis) : std::move(expected);
    const Arrangement next = apply(arr, spec);
    const PRGraph before = poincare_reeb(arr, axis);
    const PRGraph after = poincare_reeb(next, axis);
    const double locus = axis == Axis::X ? spec.anchor.x : spec.anchor.y;
    const ChangeReport cr = classify_change(before, after, locus);
    rep.pattern = cr.pattern;
    rep.i_values = cr.i_values;
    rep.detail = cr.detail;
    rep.before = to_canonical(before);
    rep.after = to_canonical(after);
    rep.ok = cr.pattern != Pattern::Unrecognized && rep.expected.count(cr.pattern) > 0;
    return rep;
}

}  // namespace reebarr
