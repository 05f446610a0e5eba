#include "helpers.h"

#include "reebarr/error.h"
#include "reebarr/reeb.h"
#include "reebarr/scene.h"

#include <doctest.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>

using namespace reebarr;

namespace {

PRGraph make_graph(const std::vector<double>& labels, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    PRGraph g;
    for (std::size_t i = 0; i < labels.size(); ++i) g.vertices.push_back(PRVertex{i, labels[i], {}, VertexKind::Pole});
    for (auto [t, h] : edges) g.edges.push_back(PREdge{t, h});
    return g;
}

std::string golden(const std::string& name) {
    std::string s = read_file(test::data(name));
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
    return s;
}

// Brute force over all vertex permutations.
bool brute_iso(const PRGraph& a, const PRGraph& b, IsoMode mode) {
    const std::size_t n = a.vertices.size();
    if (n != b.vertices.size() || a.edges.size() != b.edges.size()) return false;
    const auto ra = a.label_ranks();
    const auto rb = b.label_ranks();
    auto edge_keys = [&](const PRGraph& g, const std::vector<std::size_t>& p) {
        std::vector<std::pair<std::size_t, std::size_t>> es;
        for (const PREdge& e : g.edges) {
            std::size_t t = p[e.tail], h = p[e.head];
            if (mode == IsoMode::Graph && t > h) std::swap(t, h);
            es.push_back({t, h});
        }
        std::sort(es.begin(), es.end());
        return es;
    };
    std::vector<std::size_t> id(n);
    std::iota(id.begin(), id.end(), 0);
    const auto eb = edge_keys(b, id);
    std::vector<std::size_t> p = id;
    do {
        bool ok = true;
        if (mode == IsoMode::VDigraph)
            for (std::size_t v = 0; v < n && ok; ++v) ok = ra[v] == rb[p[v]];
        if (ok && edge_keys(a, p) == eb) return true;
    } while (std::next_permutation(p.begin(), p.end()));
    return false;
}

PRGraph random_graph(std::mt19937_64& gen, std::size_t n) {
    std::uniform_int_distribution<int> lab(0, 3);
    std::vector<double> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back(lab(gen));
    if (labels.front() == labels.back()) labels.back() += 1;  // some edge must exist
    std::vector<std::pair<std::size_t, std::size_t>> es;
    std::uniform_int_distribution<std::size_t> v(0, n - 1);
    const std::size_t m = n + v(gen);
    while (es.size() < m) {
        std::size_t a = v(gen), b = v(gen);
        if (labels[a] == labels[b]) continue;
        if (labels[a] > labels[b]) std::swap(a, b);
        es.push_back({a, b});
    }
    return make_graph(labels, es);
}

PRGraph shuffled(const PRGraph& g, std::mt19937_64& gen) {
    std::vector<std::size_t> p(g.vertices.size());
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), gen);
    PRGraph h = g;
    for (std::size_t i = 0; i < p.size(); ++i) h.vertices[p[i]] = PRVertex{p[i], g.vertices[i].label, {}, VertexKind::Pole};
    for (PREdge& e : h.edges) e = PREdge{p[e.tail], p[e.head]};
    return h;
}

}  // namespace

TEST_CASE("unit disk graph matches the golden") {
    const auto t0 = std::chrono::steady_clock::now();
    const Scene sc = load_scene(test::data("unit_disk.json"));
    for (Axis ax : {Axis::X, Axis::Y}) {
        const PRGraph g = poincare_reeb(sc.arr, ax);
        CHECK(to_canonical(g) == golden("unit_disk.canon"));
        REQUIRE(g.vertices.size() == 2);
        const auto& lo = g.vertices[g.edges[0].tail];
        CHECK(lo.label == doctest::Approx(-1.0));
    }
    CHECK(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() < 0.1);
}

TEST_CASE("annulus graph matches the golden") {
    const Scene sc = load_scene(test::data("annulus.json"));
    for (Axis ax : {Axis::X, Axis::Y}) CHECK(to_canonical(poincare_reeb(sc.arr, ax)) == golden("annulus.canon"));
}

TEST_CASE("notched disk graphs") {
    // unit disk minus the disk of radius 0.6 at (1, 0): along x the region
    // forks at the notch's left pole into two corners at x = 0.82
    const Arrangement n = validate_step(test::disk(), {{1, 0}, 0.6}, Side::Outside);
    const PRGraph gx = poincare_reeb(n, Axis::X);
    const PRGraph ex = make_graph({-1, 0.4, 0.82, 0.82}, {{0, 1}, {1, 2}, {1, 3}});
    CHECK(isomorphic(gx, ex, IsoMode::VDigraph).isomorphic);
    for (const PRVertex& v : gx.vertices)
        if (std::abs(v.label - 0.82) < 1e-9) CHECK(v.kind == VertexKind::DoublePoint);

    const double yc = std::sqrt(1 - 0.82 * 0.82);
    const PRGraph gy = poincare_reeb(n, Axis::Y);
    CHECK(isomorphic(gy, make_graph({-1, -yc, yc, 1}, {{0, 1}, {1, 2}, {2, 3}}), IsoMode::VDigraph).isomorphic);
}

TEST_CASE("fibers and events of the annulus") {
    const Arrangement a = test::annulus();
    const auto f0 = fiber(a, 0.0, 1e-7);
    REQUIRE(f0.size() == 2);
    CHECK(f0[0].span.lo == doctest::Approx(-2));
    CHECK(f0[0].span.hi == doctest::Approx(-1));
    CHECK(f0[1].span.lo == doctest::Approx(1));
    CHECK(f0[1].span.hi == doctest::Approx(2));
    CHECK(fiber(a, 1.5, 1e-7).size() == 1);
    CHECK(fiber(a, 2.5, 1e-7).empty());

    const auto ev = sweep_events(a, Axis::Y);
    REQUIRE(ev.size() == 4);
    CHECK(std::is_sorted(ev.begin(), ev.end(), [](const SweepEvent& l, const SweepEvent& r) { return l.value < r.value; }));
    CHECK(ev.front().point.y == doctest::Approx(-2));
}

TEST_CASE("close events are degenerate") {
    CHECK_THROWS_AS(load_scene(test::data("bad_close_events_x.json")), Error);
    const Arrangement a = Arrangement::unchecked(
        {{{{0, 0}, 3}, Side::Inside}, {{{-1, 0}, 0.5}, Side::Outside}, {{{5e-7, 1.2}, 0.5}, Side::Outside}}, 3);
    try {
        poincare_reeb(a, Axis::X);
        FAIL("expected DegenerateEvents");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DegenerateEvents);
    }
    CHECK_NOTHROW(poincare_reeb(a, Axis::Y));
}

TEST_CASE("raster oracle agrees with the sweep on fixtures") {
    for (const char* f : {"unit_disk.json", "annulus.json", "example2.json"}) {
        const Scene sc = load_scene(test::data(f));
        for (Axis ax : {Axis::X, Axis::Y}) {
            INFO(f << " " << axis_name(ax));
            CHECK(isomorphic(poincare_reeb(sc.arr, ax), oracle_reeb(sc.arr, ax, 512), IsoMode::VDigraph).isomorphic);
        }
    }
    CHECK_THROWS_AS(oracle_reeb(test::disk(), Axis::X, 16), Error);
}

TEST_CASE("isomorphism agrees with brute force") {
    std::mt19937_64 gen(11);
    int positives = 0;
    for (int k = 0; k < 300; ++k) {
        const std::size_t n = 2 + k % 5;
        const PRGraph a = random_graph(gen, n);
        const PRGraph b = k % 2 ? shuffled(a, gen) : random_graph(gen, n);
        for (IsoMode m : {IsoMode::Graph, IsoMode::Digraph, IsoMode::VDigraph}) {
            const bool expect = brute_iso(a, b, m);
            const IsoResult r = isomorphic(a, b, m);
            CHECK(r.isomorphic == expect);
            if (m == IsoMode::VDigraph) {
                CHECK((to_canonical(a) == to_canonical(b)) == expect);
                positives += expect;
            }
        }
    }
    CHECK(positives >= 150);
}

TEST_CASE("label ranks, reversal and export") {
    const PRGraph g = make_graph({0.0, 1.0, 1.0 + 1e-8, 2.0}, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
    CHECK(g.label_ranks() == std::vector<std::size_t>{0, 1, 1, 2});
    CHECK(g.in_degree(3) == 2);
    CHECK(g.out_degree(0) == 2);
    const PRGraph r = reversed(g);
    CHECK(r.vertices[0].label == -0.0);
    CHECK(r.edges[0].tail == 1);
    CHECK(r.edges[0].head == 0);
    CHECK(isomorphic(reversed(r), g, IsoMode::VDigraph).isomorphic);
    const std::string dot = to_dot(g);
    CHECK(dot.find("digraph") != std::string::npos);
    CHECK(dot.find("->") != std::string::npos);
}
