#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gtsp/graph.hpp"
#include "gtsp/rational.hpp"

namespace gtsp {

struct DfsTree {
    VertexId root = 0;
    /// -1 at the root.
    std::vector<VertexId> parent;
    std::vector<EdgeId> parent_edge;
    std::vector<int> depth;
    /// Discovery order.
    std::vector<VertexId> order;
    /// Tree edge ids in discovery order of their lower endpoint.
    std::vector<EdgeId> tree_edges;
    /// (descendant, ancestor), aligned with back_edge_ids.
    std::vector<std::pair<VertexId, VertexId>> back_edges;
    std::vector<EdgeId> back_edge_ids;
    std::vector<std::vector<VertexId>> children;
};

/// DFS that always follows the incident edge of largest x to an unvisited
/// vertex, ties to the smaller neighbour id.
DfsTree dfs_tree_max_x(const Graph& g, const std::vector<Rational>& x, VertexId root);

enum class ArcKind { TreeUpper, TreeLower, Back, AggregatorFree, AggregatorPaid };

std::string to_string(ArcKind kind);

struct Arc {
    int tail = 0;
    int head = 0;
    std::int64_t lower = 0;
    std::int64_t upper = 0;
    std::int64_t cost = 0;
    ArcKind kind = ArcKind::TreeUpper;
    /// Original edge for tree and back arcs, -1 otherwise.
    EdgeId edge = -1;
    /// Owning in-vertex for back and aggregator arcs, -1 otherwise.
    int in_vertex = -1;
};

struct InVertex {
    int node = 0;
    int aggregator = 0;
    /// The original vertex this in-vertex was split from (or the root).
    VertexId original = 0;
    /// The tree edge leaving this in-vertex.
    EdgeId tree_edge = -1;
};

/// Node layout: original vertices keep ids 0..n-1 (root is the root
/// in-vertex, the rest are out-vertices), then split in-vertices, then one
/// aggregator per in-vertex. Index 0 of in_vertices is the root.
struct CirculationNetwork {
    int node_count = 0;
    std::vector<Arc> arcs;
    std::vector<InVertex> in_vertices;
    DfsTree tree;
    int vertex_count = 0;
    /// Capacity standing in for an unbounded paid arc.
    std::int64_t infinity = 0;
};

/// Requires g two-vertex-connected with n >= 3 and t a DFS tree of g.
CirculationNetwork build_network(const Graph& g, const DfsTree& t);

/// "tail head lower upper cost provenance" per arc.
std::string format_network(const CirculationNetwork& net);

struct Circulation {
    std::vector<std::int64_t> flow;
    std::int64_t cost = 0;
};

/// Bounds and conservation.
bool is_feasible(const CirculationNetwork& net, const Circulation& f);

/// True if the residual network has a negative cycle.
bool has_negative_residual_cycle(const CirculationNetwork& net, const Circulation& f);

/// Integral minimum-cost circulation. Back-arc flows in the result are 0
/// or 1. Throws InputError if the network is infeasible.
Circulation min_cost_circulation(const CirculationNetwork& net);

/// Sum over in-vertices of max(back flow in - 1, 0), checked against the
/// arc-cost total of f.
std::int64_t circulation_cost_audit(const CirculationNetwork& net, const Circulation& f);

}  // namespace gtsp
