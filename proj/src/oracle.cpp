#include "reebarr/reeb.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

namespace reebarr {

namespace {

struct Run {
    int col = 0;
    int r0 = 0;
    int r1 = 0;  // inclusive
    std::vector<std::size_t> left;
    std::vector<std::size_t> right;
    std::vector<std::size_t> events;
    bool special = false;
};

}  // namespace

PRGraph oracle_reeb(const Arrangement& input, Axis axis, int grid_n) {
    if (grid_n < 64) throw Error(ErrorCode::PreconditionUnmet, "oracle grid must be at least 64");
    const Arrangement arr = axis == Axis::X ? input : transposed(input);
    const std::vector<SweepEvent> events = sweep_events(input, axis);

    auto box = arr.bbox();
    const double padx = 0.02 * (box[2] - box[0]);
    const double pady = 0.02 * (box[3] - box[1]);
    const double x0 = box[0] - padx;
    const double y0 = box[1] - pady;
    const double dx = (box[2] - box[0] + 2.0 * padx) / grid_n;
    const double dy = (box[3] - box[1] + 2.0 * pady) / grid_n;

    std::vector<Run> runs;
    std::vector<std::size_t> col_begin(static_cast<std::size_t>(grid_n) + 1, 0);
    for (int c = 0; c < grid_n; ++c) {
        col_begin[static_cast<std::size_t>(c)] = runs.size();
        const double x = x0 + (c + 0.5) * dx;
        int start = -1;
        for (int r = 0; r <= grid_n; ++r) {
            const bool in = r < grid_n && arr.in_closure({x, y0 + (r + 0.5) * dy});
            if (in && start < 0) start = r;
            if (!in && start >= 0) {
                runs.push_back(Run{c, start, r - 1, {}, {}, {}, false});
                start = -1;
            }
        }
    }
    col_begin[static_cast<std::size_t>(grid_n)] = runs.size();

    for (int c = 0; c + 1 < grid_n; ++c) {
        for (std::size_t a = col_begin[static_cast<std::size_t>(c)]; a < col_begin[static_cast<std::size_t>(c) + 1]; ++a)
            for (std::size_t b = col_begin[static_cast<std::size_t>(c) + 1];
                 b < col_begin[static_cast<std::size_t>(c) + 2]; ++b)
                if (runs[a].r0 <= runs[b].r1 && runs[b].r0 <= runs[a].r1) {
                    runs[a].right.push_back(b);
                    runs[b].left.push_back(a);
                }
    }

    // Attach each true event to the nearest run within two cells.
    for (std::size_t e = 0; e < events.size(); ++e) {
        const double ex = (events[e].value - x0) / dx - 0.5;
        const double ey = ((axis == Axis::X ? events[e].point.y : events[e].point.x) - y0) / dy - 0.5;
        const int c = static_cast<int>(std::lround(ex));
        double best_d = 1e300;
        std::optional<std::size_t> best;
        for (int cc = std::max(0, c - 2); cc <= std::min(grid_n - 1, c + 2); ++cc)
            for (std::size_t k = col_begin[static_cast<std::size_t>(cc)]; k < col_begin[static_cast<std::size_t>(cc) + 1];
                 ++k) {
                const double ry = ey < runs[k].r0 ? runs[k].r0 - ey : (ey > runs[k].r1 ? ey - runs[k].r1 : 0.0);
                const double d = std::hypot(cc - ex, ry);
                if (ry <= 2.0 && d < best_d) {
                    best_d = d;
                    best = k;
                }
            }
        if (best) runs[*best].events.push_back(e);
    }
    for (Run& r : runs) r.special = !r.events.empty() || r.left.size() != 1 || r.right.size() != 1;

    // Cluster special runs that are joined within a few columns.
    std::vector<std::size_t> parent(runs.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    constexpr int kWindow = 2;
    for (std::size_t s = 0; s < runs.size(); ++s) {
        if (!runs[s].special) continue;
        std::vector<std::size_t> stack{s};
        std::set<std::size_t> seen{s};
        while (!stack.empty()) {
            const std::size_t k = stack.back();
            stack.pop_back();
            if (runs[k].special) parent[find(k)] = find(s);
            for (const auto* nb : {&runs[k].left, &runs[k].right})
                for (std::size_t m : *nb)
                    if (std::abs(runs[m].col - runs[s].col) <= kWindow && seen.insert(m).second) stack.push_back(m);
        }
    }

    PRGraph g;
    g.axis = axis;
    g.tie_tol = 0.5 * input.tolerances().event_gap;
    std::map<std::size_t, std::size_t> cluster_vertex;
    for (std::size_t k = 0; k < runs.size(); ++k) {
        if (!runs[k].special) continue;
        const std::size_t root = find(k);
        if (!cluster_vertex.count(root)) {
            cluster_vertex[root] = g.vertices.size();
            PRVertex v;
            v.id = g.vertices.size();
            v.label = std::numeric_limits<double>::quiet_NaN();
            g.vertices.push_back(v);
        }
    }
    // labels: snapped to the attached events, else the mean column
    std::vector<double> col_sum(g.vertices.size(), 0.0);
    std::vector<int> col_cnt(g.vertices.size(), 0);
    for (std::size_t k = 0; k < runs.size(); ++k) {
        if (!runs[k].special) continue;
        PRVertex& v = g.vertices[cluster_vertex[find(k)]];
        col_sum[v.id] += x0 + (runs[k].col + 0.5) * dx;
        ++col_cnt[v.id];
        for (std::size_t e : runs[k].events) {
            v.witnesses.push_back(events[e].point);
            if (events[e].kind == VertexKind::DoublePoint) v.kind = VertexKind::DoublePoint;
            v.label = std::isnan(v.label) ? events[e].value : v.label;
        }
    }
    for (PRVertex& v : g.vertices)
        if (std::isnan(v.label)) v.label = col_sum[v.id] / col_cnt[v.id];

    for (std::size_t k = 0; k < runs.size(); ++k) {
        if (!runs[k].special) continue;
        const std::size_t a = cluster_vertex[find(k)];
        for (std::size_t n : runs[k].right) {
            std::size_t cur = n;
            while (!runs[cur].special) cur = runs[cur].right.front();
            const std::size_t b = cluster_vertex[find(cur)];
            if (b == a) continue;
            const bool forward = g.vertices[a].label < g.vertices[b].label ||
                                 (g.vertices[a].label == g.vertices[b].label && a < b);
            g.edges.push_back(forward ? PREdge{a, b} : PREdge{b, a});
        }
    }
    std::sort(g.edges.begin(), g.edges.end(),
              [](const PREdge& a, const PREdge& b) { return std::tie(a.tail, a.head) < std::tie(b.tail, b.head); });
    return g;
}

}  // namespace reebarr
