#include "reebarr/reeb.h"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>

namespace reebarr {

namespace {

using Matrix = std::vector<std::vector<int>>;

Matrix adjacency(const PRGraph& g, bool directed) {
    const std::size_t n = g.vertices.size();
    Matrix a(n, std::vector<int>(n, 0));
    for (const PREdge& e : g.edges) {
        ++a[e.tail][e.head];
        if (!directed && e.tail != e.head) ++a[e.head][e.tail];
    }
    return a;
}

struct Matcher {
    const Matrix& a1;
    const Matrix& a2;
    std::vector<std::size_t> order;
    std::vector<std::vector<std::size_t>> candidates;
    std::vector<std::size_t> map;
    std::vector<bool> used;

    bool extend(std::size_t depth) {
        if (depth == order.size()) return true;
        const std::size_t v = order[depth];
        for (std::size_t w : candidates[v]) {
            if (used[w]) continue;
            bool ok = a1[v][v] == a2[w][w];
            for (std::size_t d = 0; d < depth && ok; ++d) {
                const std::size_t u = order[d];
                ok = a1[v][u] == a2[w][map[u]] && a1[u][v] == a2[map[u]][w];
            }
            if (!ok) continue;
            map[v] = w;
            used[w] = true;
            if (extend(depth + 1)) return true;
            used[w] = false;
        }
        return false;
    }
};

}  // namespace

IsoResult isomorphic(const PRGraph& g1, const PRGraph& g2, IsoMode mode) {
    const std::size_t n = g1.vertices.size();
    if (n > kIsoMaxVertices || g2.vertices.size() > kIsoMaxVertices)
        throw Error(ErrorCode::TooLarge, "graph exceeds the matcher budget of 64 vertices");
    IsoResult res;
    if (n != g2.vertices.size() || g1.edges.size() != g2.edges.size()) return res;

    const bool directed = mode != IsoMode::Graph;
    const Matrix a1 = adjacency(g1, directed);
    const Matrix a2 = adjacency(g2, directed);
    const auto r1 = g1.label_ranks();
    const auto r2 = g2.label_ranks();

    auto signature = [&](const Matrix& a, std::size_t v) {
        int in = 0, out = 0;
        for (std::size_t u = 0; u < a.size(); ++u) {
            out += a[v][u];
            in += a[u][v];
        }
        return std::pair{in, out};
    };

    Matcher m{a1, a2, {}, std::vector<std::vector<std::size_t>>(n), std::vector<std::size_t>(n), std::vector<bool>(n)};
    for (std::size_t v = 0; v < n; ++v)
        for (std::size_t w = 0; w < n; ++w) {
            if (signature(a1, v) != signature(a2, w)) continue;
            if (mode == IsoMode::VDigraph && r1[v] != r2[w]) continue;
            m.candidates[v].push_back(w);
        }

    // BFS order keeps each new vertex adjacent to mapped ones where possible.
    std::vector<bool> seen(n, false);
    for (std::size_t s = 0; s < n; ++s) {
        if (seen[s]) continue;
        std::vector<std::size_t> queue{s};
        seen[s] = true;
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            const std::size_t v = queue[qi];
            m.order.push_back(v);
            for (std::size_t u = 0; u < n; ++u)
                if (!seen[u] && (a1[v][u] || a1[u][v])) {
                    seen[u] = true;
                    queue.push_back(u);
                }
        }
    }

    if (m.extend(0)) {
        res.isomorphic = true;
        res.mapping = m.map;
    }
    return res;
}

std::string to_dot(const PRGraph& g) {
    std::ostringstream os;
    os << "digraph PR {\n  rankdir=LR;\n";
    char buf[64];
    for (const PRVertex& v : g.vertices) {
        std::snprintf(buf, sizeof(buf), "%.6g", v.label);
        os << "  v" << v.id << " [label=\"v" << v.id << "\\n" << buf << "\""
           << (v.kind == VertexKind::Pole ? ", shape=circle" : ", shape=box") << "];\n";
    }
    for (const PREdge& e : g.edges) os << "  v" << e.tail << " -> v" << e.head << ";\n";
    os << "}\n";
    return os.str();
}

std::string to_canonical(const PRGraph& g) {
    const std::size_t n = g.vertices.size();
    if (n > kIsoMaxVertices) throw Error(ErrorCode::TooLarge, "graph exceeds the canonical-form budget");
    const auto rank = g.label_ranks();

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return rank[a] < rank[b]; });

    // tie groups: [begin, end) ranges of `order`
    std::vector<std::pair<std::size_t, std::size_t>> groups;
    bool ties = false;
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && rank[order[j]] == rank[order[i]]) ++j;
        if (j - i > 1) ties = true;
        groups.push_back({i, j});
        i = j;
    }

    std::vector<std::pair<std::size_t, std::size_t>> best;
    bool have_best = false;
    std::size_t budget = 100000;

    auto evaluate = [&]() {
        std::vector<std::size_t> pos(n);
        for (std::size_t i = 0; i < n; ++i) pos[order[i]] = i;
        std::vector<std::pair<std::size_t, std::size_t>> es;
        for (const PREdge& e : g.edges) es.push_back({pos[e.tail], pos[e.head]});
        std::sort(es.begin(), es.end());
        if (!have_best || es < best) {
            best = std::move(es);
            have_best = true;
        }
    };

    // odometer over permutations of every tie group
    std::function<void(std::size_t)> rec = [&](std::size_t gi) {
        if (budget == 0) throw Error(ErrorCode::TooLarge, "too many label ties for canonical form");
        if (gi == groups.size()) {
            --budget;
            evaluate();
            return;
        }
        auto [b, e] = groups[gi];
        std::sort(order.begin() + static_cast<long>(b), order.begin() + static_cast<long>(e));
        do {
            rec(gi + 1);
        } while (std::next_permutation(order.begin() + static_cast<long>(b), order.begin() + static_cast<long>(e)));
    };
    rec(0);

    std::ostringstream os;
    os << n << ';' << g.edges.size() << ';';
    for (std::size_t i = 0; i < best.size(); ++i) os << (i ? "," : "") << best[i].first << '>' << best[i].second;
    if (ties) {
        os << ";r=";
        for (std::size_t i = 0; i < n; ++i) os << (i ? "," : "") << rank[order[i]];
    }
    return os.str();
}

}  // namespace reebarr
