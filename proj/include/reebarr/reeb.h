#pragma once

#include "reebarr/arrangement.h"

#include <string>
#include <vector>

namespace reebarr {

enum class Axis { X, Y };

enum class VertexKind { Pole, DoublePoint };

struct PRVertex {
    std::size_t id = 0;
    double label = 0.0;
    std::vector<Point> witnesses;
    VertexKind kind = VertexKind::Pole;
};

struct PREdge {
    std::size_t tail = 0;
    std::size_t head = 0;
};

/// Poincare-Reeb V-digraph: vertices are the fiber components holding a pole
/// or a double point, edges run from smaller to larger projection value.
struct PRGraph {
    std::vector<PRVertex> vertices;
    std::vector<PREdge> edges;
    Axis axis = Axis::X;
    /// Labels closer than this are treated as equal when ranking.
    double tie_tol = 5e-7;

    std::size_t in_degree(std::size_t v) const;
    std::size_t out_degree(std::size_t v) const;
    /// Dense rank of each vertex label (ties share a rank).
    std::vector<std::size_t> label_ranks() const;
};

PRGraph poincare_reeb(const Arrangement& arr, Axis axis);

/// Raster oracle: columns of a grid_n x grid_n sampling of the closure are
/// split into runs, linked by overlap, and contracted to vertices around
/// the true pole and double-point events.
PRGraph oracle_reeb(const Arrangement& arr, Axis axis, int grid_n);

/// A fiber interval with the circle branches that bound it.
struct FiberInterval {
    Interval span;
    int lo_circle = -1;
    int lo_branch = 0;  // -1 lower half of the circle, +1 upper half
    int hi_circle = -1;
    int hi_branch = 0;
};

/// Connected components of the vertical line at x intersected with the
/// closure. Pieces closer than eps are merged; degenerate point pieces kept.
std::vector<FiberInterval> fiber(const Arrangement& arr, double x, double eps);

/// Projection values of the sweep events (poles and double points in the
/// closure) with their witnesses, in the coordinates of the given axis.
struct SweepEvent {
    double value = 0.0;
    Point point;  // original coordinates
    VertexKind kind = VertexKind::Pole;
};
std::vector<SweepEvent> sweep_events(const Arrangement& arr, Axis axis);

enum class IsoMode { Graph, Digraph, VDigraph };

struct IsoResult {
    bool isomorphic = false;
    std::vector<std::size_t> mapping;  // g1 vertex -> g2 vertex
};

inline constexpr std::size_t kIsoMaxVertices = 64;

IsoResult isomorphic(const PRGraph& g1, const PRGraph& g2, IsoMode mode);

std::string to_dot(const PRGraph& g);
/// Equal text iff V-digraph isomorphic.
std::string to_canonical(const PRGraph& g);

/// Negates every label and flips every edge (the x -> -x mirror).
PRGraph reversed(const PRGraph& g);

std::string_view axis_name(Axis a);

}  // namespace reebarr
