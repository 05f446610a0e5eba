#include "reebarr/fuzz.h"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace reebarr {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDeg = kPi / 180.0;

double axis_coord(Point p, Axis ax) { return ax == Axis::X ? p.x : p.y; }

// Angular distance of a direction (mod pi) to the nearest axis direction.
double axis_clearance(Point d) {
    double a = std::fmod(std::atan2(d.y, d.x), kPi / 2);
    if (a < 0) a += kPi / 2;
    return std::min(a, kPi / 2 - a);
}

// Probe scale at x0: clear of other circles, of the hosts' second crossing
// and of every other sweep event on either axis.
double local_scale(const Arrangement& arr, const Anchor& an, Point x0, const std::vector<SweepEvent>& ev_x,
                   const std::vector<SweepEvent>& ev_y) {
    const Tolerances& tl = arr.tolerances();
    double L = 1e300;
    for (std::size_t k = 0; k < arr.size(); ++k) {
        if (k == an.j1 || k == an.j2)
            L = std::min(L, 0.5 * arr[k].circle.radius);
        else
            L = std::min(L, std::abs(arr[k].circle.signed_dist(x0)));
    }
    if (an.kind == AnchorKind::DoublePoint)
        for (Point p : circle_pair_intersect(arr[an.j1].circle, arr[an.j2].circle, tl).points)
            if (dist(p, x0) > tl.side_margin) L = std::min(L, 0.5 * dist(p, x0));
    for (Axis ax : {Axis::X, Axis::Y})
        for (const SweepEvent& e : ax == Axis::X ? ev_x : ev_y)
            if (dist(e.point, x0) > tl.side_margin) L = std::min(L, std::abs(axis_coord(e.point, ax) - axis_coord(x0, ax)));
    return L;
}

}  // namespace

Arrangement random_base(Rng& rng) {
    for (;;) {
        std::vector<Circle> cs;
        if (rng.uniform() < 0.4) {
            cs.push_back(Circle{{rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)}, rng.uniform(0.8, 1.5)});
        } else {
            const double R = rng.uniform(1.5, 2.5);
            cs.push_back(Circle{{0, 0}, R});
            const std::size_t holes = 1 + rng.index(2);
            for (int tries = 0; tries < 50 && cs.size() < holes + 1; ++tries) {
                const double r = rng.uniform(0.25, 0.6);
                const double ang = rng.uniform(0, 2 * kPi);
                const double d = rng.uniform(0, R - r - 0.2);
                const Circle h{{d * std::cos(ang), d * std::sin(ang)}, r};
                bool ok = true;
                for (std::size_t k = 1; k < cs.size(); ++k)
                    ok = ok && dist(h.center, cs[k].center) > h.radius + cs[k].radius + 0.2;
                if (ok) cs.push_back(h);
            }
        }
        try {
            return Arrangement::initial(cs);
        } catch (const Error&) {
        }
    }
}

std::optional<Drawn> draw_surgery(const Arrangement& arr, Rng& rng, const DrawOptions& opt) {
    const Tolerances& tl = arr.tolerances();
    const auto dps = double_points(arr);
    const auto arcs = boundary_arcs(arr);
    const auto ev_x = sweep_events(arr, Axis::X);
    const auto ev_y = sweep_events(arr, Axis::Y);

    for (int attempt = 0; attempt < opt.attempts; ++attempt) {
        Point x0;
        SurgeryKind kind = SurgeryKind::Thm11Unsupported;
        bool pole_anchor = false;
        std::size_t host = 0;

        if (opt.double_point && !dps.empty() && rng.uniform() < opt.double_point_prob) {
            x0 = dps[rng.index(dps.size())].point;
            kind = SurgeryKind::Thm32Double;
        } else {
            if (arcs.empty()) return std::nullopt;
            const BoundaryArc& ba = arcs[rng.index(arcs.size())];
            host = ba.circle;
            const Circle& c = arr[host].circle;
            std::vector<SurgeryKind> kinds;
            if (arr[host].side == Side::Inside) {
                if (opt.supported) kinds.push_back(SurgeryKind::Thm11Supported);
                if (opt.unsupported) kinds.push_back(SurgeryKind::Thm11Unsupported);
            } else if (opt.concave) {
                kinds.push_back(SurgeryKind::Thm12Concave);
            }
            if (kinds.empty()) continue;
            kind = kinds[rng.index(kinds.size())];
            if (rng.uniform() < opt.pole_prob) {
                const Poles pl = poles(c);
                std::vector<Point> cand;
                for (Point p : {pl.vertical[0], pl.vertical[1], pl.horizontal[0], pl.horizontal[1]})
                    if (ba.arc.contains_angle(c.angle_of(p), -1e-3)) cand.push_back(p);
                if (cand.empty()) continue;
                x0 = cand[rng.index(cand.size())];
                pole_anchor = true;
            } else {
                x0 = c.at(ba.arc.start + ba.arc.sweep * rng.uniform(0.1, 0.9));
            }
        }

        Anchor an;
        try {
            an = probe_anchor(arr, x0);
        } catch (const Error&) {
            continue;
        }
        const double L = local_scale(arr, an, x0, ev_x, ev_y);
        if (!(L > 1e-4)) continue;

        const double rho = L * rng.uniform(0.2, 0.9);
        const bool symmetric = pole_anchor && rng.uniform() < 0.5;
        std::array<double, 2> off;
        if (pole_anchor && !symmetric) {
            off = {rho * rng.uniform(0.05, 0.3), rho * rng.uniform(0.6, 0.9)};
            if (rng.uniform() < 0.5) std::swap(off[0], off[1]);
        } else {
            off[0] = rho * rng.uniform(0.3, 0.8);
            off[1] = symmetric ? off[0] : rho * rng.uniform(0.3, 0.8);
        }

        Chord ch;
        try {
            ch = make_chord(arr, x0, rho, off);
        } catch (const Error&) {
            continue;
        }
        const double h = 0.5 * ch.seg.length();
        const double clearance = axis_clearance(ch.seg.direction());
        const bool aligned = symmetric && clearance < 1e-9;
        double lo = 0.5 * kDeg;
        double hi = aligned ? 35 * kDeg : std::min(35 * kDeg, clearance - 1 * kDeg);
        if (kind == SurgeryKind::Thm11Supported || kind == SurgeryKind::Thm12Concave) {
            const double beta = std::asin(std::min(1.0, h / arr[host].circle.radius));
            if (kind == SurgeryKind::Thm11Supported) {
                lo = std::max(lo, 0.2 * beta);
                hi = std::min(hi, 0.8 * beta);
            } else {
                lo = std::max(lo, 1.2 * beta);
            }
        }
        if (!(lo < hi)) continue;
        const double alpha = rng.uniform(lo, hi);
        const bool far_side_center = kind == SurgeryKind::Thm11Supported || kind == SurgeryKind::Thm12Concave;
        const double t = (far_side_center ? -1.0 : 1.0) * h / std::tan(alpha);

        SurgerySpec spec;
        try {
            spec.anchor = x0;
            spec.chord = ch;
            spec.secant = secant_family(arr, ch, t);
            spec.kind = kind;
            spec.side = side_for(kind);
        } catch (const Error&) {
            continue;
        }
        const Circle& sc = spec.secant.circle;

        bool ok = true;
        for (std::size_t k = 0; k < arr.size() && ok; ++k) {
            const bool is_host = std::find(ch.hosts.begin(), ch.hosts.end(), k) != ch.hosts.end();
            try {
                const CircleIntersection ci = circle_pair_intersect(arr[k].circle, sc, tl);
                if (ci.tangent) ok = false;
                if (!is_host && !ci.points.empty()) ok = false;
                if (is_host)
                    for (Point p : ci.points)
                        if (dist(p, ch.seg.a) > tl.side_margin && dist(p, ch.seg.b) > tl.side_margin &&
                            arr.in_closure(p))
                            ok = false;
            } catch (const Error&) {
                ok = false;
            }
        }
        for (Axis ax : {Axis::X, Axis::Y})
            for (const SweepEvent& e : ax == Axis::X ? ev_x : ev_y)
                if (ok && dist(e.point, x0) > tl.side_margin &&
                    std::abs(axis_coord(e.point, ax) - axis_coord(x0, ax)) <= rho)
                    ok = false;
        if (!ok) continue;

        try {
            Drawn d;
            d.spec = spec;
            d.result = apply(arr, spec);
            return d;
        } catch (const Error&) {
            continue;
        }
    }
    return std::nullopt;
}

Arrangement random_ssc(Rng& rng, std::size_t max_circles, std::size_t max_steps) {
    for (;;) {
        Arrangement arr = random_base(rng);
        if (arr.size() >= max_circles) continue;
        const std::size_t steps = 1 + rng.index(std::min(max_steps, max_circles - arr.size()));
        for (std::size_t i = 0; i < steps; ++i) {
            auto d = draw_surgery(arr, rng);
            if (!d) break;
            arr = d->result;
        }
        return arr;
    }
}

bool events_separated(const Arrangement& arr, int grid, double cells) {
    const auto box = arr.bbox();
    const double tol = arr.tolerances().tol;
    for (Axis ax : {Axis::X, Axis::Y}) {
        const double along = (ax == Axis::X ? box[2] - box[0] : box[3] - box[1]) * 1.04 / grid;
        const double across = (ax == Axis::X ? box[3] - box[1] : box[2] - box[0]) * 1.04 / grid;
        const auto ev = sweep_events(arr, ax);
        for (std::size_t i = 0; i < ev.size(); ++i)
            for (std::size_t j = i + 1; j < ev.size(); ++j) {
                const double dv = std::abs(ev[i].value - ev[j].value);
                if (dv <= tol) {
                    const Axis other = ax == Axis::X ? Axis::Y : Axis::X;
                    if (std::abs(axis_coord(ev[i].point, other) - axis_coord(ev[j].point, other)) < cells * across)
                        return false;
                } else if (dv < cells * along) {
                    return false;
                }
            }
    }
    return true;
}

std::string CampaignSummary::to_json() const {
    nlohmann::ordered_json j;
    j["campaign"] = name;
    j["attempted"] = attempted;
    j["passed"] = passed;
    j["ok"] = ok();
    j["counts"] = counts;
    j["failures"] = failures;
    return j.dump();
}

namespace {

void note_failure(CampaignSummary& s, const std::string& msg) {
    if (s.failures.size() < 10) s.failures.push_back(msg);
}

// Base for the surgery campaigns: random base plus up to two prior steps.
Arrangement campaign_base(Rng& rng) {
    Arrangement arr = random_base(rng);
    const std::size_t prior = rng.index(3);
    for (std::size_t i = 0; i < prior; ++i) {
        auto d = draw_surgery(arr, rng);
        if (!d) break;
        arr = d->result;
    }
    return arr;
}

}  // namespace

CampaignSummary oracle_campaign(std::uint64_t seed, std::size_t count, int grid, std::size_t max_circles,
                               std::size_t max_steps) {
    CampaignSummary s;
    s.name = "oracle";
    Rng rng(seed);
    for (std::size_t draws = 0; s.attempted < count && draws < 100 * count; ++draws) {
        const Arrangement arr = random_ssc(rng, max_circles, max_steps);
        if (!events_separated(arr, grid, 4.0)) {
            ++s.counts["skipped_close_events"];
            continue;
        }
        ++s.attempted;
        ++s.counts["circles_" + std::to_string(arr.size())];
        bool ok = true;
        for (Axis ax : {Axis::X, Axis::Y}) {
            const PRGraph g = poincare_reeb(arr, ax);
            const PRGraph o = oracle_reeb(arr, ax, grid);
            if (!isomorphic(g, o, IsoMode::VDigraph).isomorphic) {
                ok = false;
                note_failure(s, "case " + std::to_string(s.attempted - 1) + " axis " + std::string(axis_name(ax)) +
                                    ": sweep " + to_canonical(g) + " oracle " + to_canonical(o));
            }
        }
        if (ok) ++s.passed;
    }
    return s;
}

CampaignSummary class_campaign(std::uint64_t seed, std::size_t count) {
    CampaignSummary s;
    s.name = "class_preservation";
    Rng rng(seed);
    DrawOptions opt;
    opt.double_point = false;
    for (std::size_t draws = 0; s.attempted < count && draws < 100 * count; ++draws) {
        const Arrangement base = campaign_base(rng);
        if (!classify(base).nci_mbc) {
            ++s.counts["skipped_base_not_nci_mbc"];
            continue;
        }
        auto d = draw_surgery(base, rng, opt);
        if (!d) continue;
        ++s.attempted;
        const ClassReport cr = classify(d->result);
        const bool ok = cr.nci && cr.ni_mbc;
        const std::string kind(surgery_kind_name(d->spec.kind));
        ++s.counts[kind + (ok ? ":ok" : ":fail")];
        if (ok) {
            ++s.passed;
        } else {
            std::string why;
            for (const std::string& n : cr.notes) why += (why.empty() ? "" : "; ") + n;
            note_failure(s, kind + " on " + std::to_string(base.size()) + "-circle base: " + why);
        }
    }
    return s;
}

CampaignSummary pattern_campaign(std::uint64_t seed, std::size_t count) {
    CampaignSummary s;
    s.name = "patterns";
    Rng rng(seed);
    DrawOptions opt;
    opt.double_point_prob = 0.5;
    opt.pole_prob = 0.35;
    for (std::size_t draws = 0; s.attempted < count && draws < 100 * count; ++draws) {
        const Arrangement base = campaign_base(rng);
        auto d = draw_surgery(base, rng, opt);
        if (!d) continue;
        ++s.attempted;
        ++s.counts[std::string("kind_") + std::string(surgery_kind_name(d->spec.kind))];
        bool ok = true;
        for (Axis ax : {Axis::X, Axis::Y}) {
            const PRGraph before = poincare_reeb(base, ax);
            const PRGraph after = poincare_reeb(d->result, ax);
            const double locus = axis_coord(d->spec.anchor, ax);
            const auto all = matching_patterns(before, after, locus);
            if (all.size() > 1) ++s.counts["multiple_matches"];
            const ChangeReport cr = classify_change(before, after, locus);
            ++s.counts[std::string(pattern_name(cr.pattern))];
            const auto pred = predicted_patterns(base, d->spec, ax);
            if (cr.pattern == Pattern::Unrecognized || !pred.count(cr.pattern)) {
                ok = false;
                note_failure(s, "case " + std::to_string(s.attempted - 1) + " " +
                                    std::string(surgery_kind_name(d->spec.kind)) + " axis " +
                                    std::string(axis_name(ax)) + ": got " + std::string(pattern_name(cr.pattern)) +
                                    " before " + to_canonical(before) + " after " + to_canonical(after));
            }
        }
        if (ok) ++s.passed;
    }
    return s;
}

CampaignSummary sign_campaign(std::uint64_t seed, std::size_t anchors, std::size_t chords_per_anchor) {
    CampaignSummary s;
    s.name = "sign_dichotomies";
    Rng rng(seed);
    std::size_t single_done = 0;
    std::size_t dp_done = 0;
    for (std::size_t draws = 0; (single_done < anchors || dp_done < anchors) && draws < 100 * anchors; ++draws) {
        const Arrangement arr = campaign_base(rng);
        const auto arcs = boundary_arcs(arr);
        const auto ev_x = sweep_events(arr, Axis::X);
        const auto ev_y = sweep_events(arr, Axis::Y);

        if (single_done < anchors) {
            const BoundaryArc& ba = arcs[rng.index(arcs.size())];
            const Circle& c = arr[ba.circle].circle;
            const Point x0 = c.at(ba.arc.start + ba.arc.sweep * rng.uniform(0.1, 0.9));
            const double L = local_scale(arr, Anchor{AnchorKind::SingleCircle, ba.circle, ba.circle}, x0, ev_x, ev_y);
            std::optional<Convexity> conv;
            std::optional<bool> same;
            std::size_t valid = 0;
            bool ok = true;
            for (std::size_t tries = 0; valid < chords_per_anchor && tries < 20 * chords_per_anchor; ++tries) {
                const double rho = L * rng.uniform(0.05, 0.9);
                try {
                    Chord ch = make_chord(arr, x0, rho, {rho * rng.uniform(0.05, 0.95), rho * rng.uniform(0.05, 0.95)});
                    const ChordClass cc = classify_chord(arr, ch);
                    std::swap(ch.seg.a, ch.seg.b);
                    const ChordClass cc2 = classify_chord(arr, ch);
                    const bool sm = cc.prop2 == Prop2Class::GenericSame;
                    if (cc2.prop2 != cc.prop2 || (conv && *conv != *cc.convexity) || (same && *same != sm)) {
                        if (ok)
                            note_failure(s, "anchor (" + std::to_string(x0.x) + ", " + std::to_string(x0.y) +
                                                ") rho " + std::to_string(rho) + ": class changed to " +
                                                std::string(prop2_name(cc.prop2)) + " " +
                                                std::string(convexity_name(*cc.convexity)));
                        ok = false;
                    }
                    conv = cc.convexity;
                    same = sm;
                    ++valid;
                } catch (const Error&) {
                }
            }
            if (valid >= chords_per_anchor) {
                ++single_done;
                ++s.attempted;
                ++s.counts["single_anchors"];
                if (ok) ++s.passed;
            }
        }

        if (dp_done < anchors) {
            const auto dps = double_points(arr);
            if (dps.empty()) continue;
            const DoublePoint& dp = dps[rng.index(dps.size())];
            const double L = local_scale(arr, Anchor{AnchorKind::DoublePoint, dp.i1, dp.i2}, dp.point, ev_x, ev_y);
            std::optional<std::array<int, 4>> ref;
            bool ok = true;
            std::size_t valid = 0;
            try {
                for (std::size_t k = 0; k < chords_per_anchor; ++k) {
                    const double sample = L * rng.uniform(0.01, 0.9);
                    const auto sg = double_point_signs(arr, dp.point, dp.i1, dp.i2, sample);
                    if (ref && *ref != sg) ok = false;
                    ref = sg;
                    const double rho = L * rng.uniform(0.05, 0.9);
                    try {
                        const Chord ch =
                            make_chord(arr, dp.point, rho, {rho * rng.uniform(0.05, 0.95), rho * rng.uniform(0.05, 0.95)});
                        const ChordClass cc = classify_chord(arr, ch);
                        if (*cc.signs4 != *ref) ok = false;
                        // case gating: zero-component chords only where the corner allows them
                        if (cc.corner_case == CornerCase::C2 && cc.prop2 == Prop2Class::HPoleP2Zero) ok = false;
                        if (cc.corner_case == CornerCase::C3 && cc.prop2 == Prop2Class::VPoleP1Zero) ok = false;
                        if (cc.corner_case == CornerCase::C4 && cc.prop2 != Prop2Class::GenericSame &&
                            cc.prop2 != Prop2Class::GenericDiff)
                            ok = false;
                        if (!arr.in_closure(ch.seg.midpoint())) ok = false;
                    } catch (const Error& e) {
                        if (e.code() != ErrorCode::ChordInvalid && e.code() != ErrorCode::ProbeTooLarge) throw;
                    }
                    ++valid;
                }
            } catch (const Error& e) {
                ++s.counts[std::string("double_point_skipped_") + std::string(error_name(e.code()))];
                continue;
            }
            ++dp_done;
            ++s.attempted;
            ++s.counts["double_point_anchors"];
            if (ok)
                ++s.passed;
            else
                note_failure(s, "double-point signs not constant");
        }
    }
    return s;
}

}  // namespace reebarr
