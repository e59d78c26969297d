#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gtsp/error.hpp"

namespace gtsp {

using VertexId = int;
using EdgeId = int;

/// Unordered vertex pair stored with u < v.
struct Edge {
    VertexId u = 0;
    VertexId v = 0;

    VertexId other(VertexId w) const { return w == u ? v : u; }
    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge make_edge(VertexId a, VertexId b) { return a < b ? Edge{a, b} : Edge{b, a}; }

/// Simple undirected graph on dense vertex ids 0..n-1. Edge ids are
/// assigned in insertion order; adjacency lists keep insertion order.
class Graph {
public:
    Graph() = default;
    explicit Graph(int vertex_count);

    /// Validating construction: throws InputError on self-loops, duplicates
    /// or out-of-range endpoints.
    static Graph from_edges(int vertex_count, std::span<const std::pair<VertexId, VertexId>> edges);

    EdgeId add_edge(VertexId a, VertexId b);

    int vertex_count() const { return static_cast<int>(adjacency_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const Edge& edge(EdgeId e) const { return edges_[static_cast<std::size_t>(e)]; }
    const std::vector<Edge>& edges() const { return edges_; }
    std::span<const EdgeId> incident(VertexId v) const { return adjacency_[static_cast<std::size_t>(v)]; }
    int degree(VertexId v) const { return static_cast<int>(incident(v).size()); }
    int max_degree() const;
    VertexId other(EdgeId e, VertexId v) const { return edge(e).other(v); }
    bool valid_vertex(VertexId v) const { return v >= 0 && v < vertex_count(); }

    std::optional<EdgeId> find_edge(VertexId a, VertexId b) const;
    bool has_edge(VertexId a, VertexId b) const { return find_edge(a, b).has_value(); }

private:
    std::vector<Edge> edges_;
    std::vector<std::vector<EdgeId>> adjacency_;
    std::map<Edge, EdgeId> index_;
};

/// A subgraph together with the ids it had in its parent.
struct Subgraph {
    Graph graph;
    std::vector<VertexId> vertex_to_parent;
    std::vector<EdgeId> edge_to_parent;
};

/// Induced subgraph on `vertices` (relabelled 0..k-1 in the given order).
Subgraph induced_subgraph(const Graph& g, std::span<const VertexId> vertices);

/// Spanning subgraph keeping exactly the listed edges (vertex ids unchanged).
Subgraph edge_subgraph(const Graph& g, std::span<const EdgeId> edges);

/// Edge multiset over a fixed vertex set.
class Multigraph {
public:
    Multigraph() = default;
    explicit Multigraph(int vertex_count) : vertex_count_(vertex_count) {}

    int vertex_count() const { return vertex_count_; }
    void add(VertexId a, VertexId b, int count = 1);
    /// Removes `count` copies; throws InvariantViolation if fewer are present.
    void remove(VertexId a, VertexId b, int count = 1);
    int multiplicity(VertexId a, VertexId b) const;
    /// Total number of edges counted with multiplicity.
    std::int64_t size() const { return size_; }
    const std::map<Edge, int>& edges() const { return edges_; }
    std::vector<int> degrees() const;
    /// Connected on all vertices (a single vertex counts as connected).
    bool spans_connected() const;

    friend bool operator==(const Multigraph&, const Multigraph&) = default;

private:
    int vertex_count_ = 0;
    std::map<Edge, int> edges_;
    std::int64_t size_ = 0;
};

struct BlockDecomposition {
    /// Vertex sets, each sorted; blocks sorted by smallest vertex id.
    std::vector<std::vector<VertexId>> blocks;
    /// Edge ids per block (same order as `blocks`).
    std::vector<std::vector<EdgeId>> block_edges;
    std::vector<VertexId> cut_vertices;
    /// Bipartite block-cut tree as (block index, cut vertex) incidences.
    std::vector<std::pair<int, VertexId>> block_cut_tree;
};

bool is_connected(const Graph& g);

/// Throws InputError if g is disconnected.
BlockDecomposition blocks(const Graph& g);

/// Connected, no cut vertex, at least two vertices.
bool is_two_vertex_connected(const Graph& g);

/// Connected and bridgeless (at least two vertices).
bool is_two_edge_connected(const Graph& g);

std::vector<EdgeId> bridges(const Graph& g);

struct ShortestPath {
    int distance = 0;
    std::vector<VertexId> vertices;  // s ... t
    std::vector<EdgeId> edges;
};

/// BFS hop distances from s; unreachable vertices get -1.
std::vector<int> bfs_distances(const Graph& g, VertexId s);

/// Exact hop distance with one witness path. Neighbours are explored in
/// increasing id order, so the witness is deterministic.
ShortestPath bfs_distance(const Graph& g, VertexId s, VertexId t);

/// One step of a walk, oriented in traversal order.
struct WalkStep {
    VertexId from = 0;
    VertexId to = 0;
    friend bool operator==(const WalkStep&, const WalkStep&) = default;
};

/// Hierholzer traversal from s to t using every multiset edge exactly once.
/// s == t asks for a closed walk (all degrees even), otherwise exactly s and
/// t must have odd degree.
std::vector<WalkStep> euler_traversal(const Multigraph& m, VertexId s, VertexId t);

/// Checks that `walk` starts at s, ends at t, is contiguous and uses exactly
/// the multiset of m.
bool is_euler_walk(const Multigraph& m, std::span<const WalkStep> walk, VertexId s, VertexId t);

// ---------------------------------------------------------------- file io

/// Distinct failure modes of the graph text format.
enum class ParseErrorKind {
    MalformedHeader,
    MalformedEdge,
    VertexOutOfRange,
    DuplicateEdge,
    SelfLoop,
    EdgeCountMismatch,
};

std::string to_string(ParseErrorKind kind);

class ParseError : public InputError {
public:
    ParseError(ParseErrorKind kind, int line, const std::string& detail);
    ParseErrorKind kind() const { return kind_; }
    int line() const { return line_; }

private:
    ParseErrorKind kind_;
    int line_;
};

/// "n m" header, then m lines "u v"; '#' lines are comments.
Graph parse_graph(std::istream& in);
Graph parse_graph(const std::string& text);
void write_graph(std::ostream& out, const Graph& g);
std::string format_graph(const Graph& g);

}  // namespace gtsp
