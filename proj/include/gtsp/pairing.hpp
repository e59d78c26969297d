#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "gtsp/circulation.hpp"
#include "gtsp/graph.hpp"
#include "gtsp/matching.hpp"

namespace gtsp {

/// Removable edges R and disjoint pairs P over a spanning base graph.
/// Edge ids below are base_graph ids; base_to_parent maps them back.
struct RemovablePairing {
    Graph base_graph;
    std::vector<EdgeId> base_to_parent;
    /// Sorted.
    std::vector<EdgeId> removable;
    std::vector<std::pair<EdgeId, EdgeId>> pairs;
    /// Number of support back arcs entering the root.
    int root_back_arcs = 0;

    bool is_removable(EdgeId e) const;
};

/// Support of f mapped back onto g. Each in-vertex with a support back arc
/// pairs its smallest (tail, edge id) back arc with its outgoing tree edge;
/// the root only does so when it has two or more. Checks the edge-count
/// identity, the |R| - 2|P| count and that the base is 2-vertex-connected.
RemovablePairing extract_pairing(const Graph& g, const CirculationNetwork& net, const Circulation& f);

/// Appends an edge outside R to the base graph and returns its base id.
EdgeId add_base_edge(RemovablePairing& rp, VertexId a, VertexId b, EdgeId parent);

/// Deleting R minus one edge per pair (every maximal admissible deletion)
/// leaves the base connected. Exhaustive up to 2^max_exhaustive_pairs sets,
/// otherwise `samples` seeded random sets.
bool verify_removable_pairing(const RemovablePairing& rp, int max_exhaustive_pairs = 12, int samples = 1000,
                              std::uint64_t seed = 1);

struct CubicExpansion {
    Graph cubic_graph;
    /// Per expansion edge: base edge id, or -1 for gadget edges.
    std::vector<EdgeId> core_edge;
    /// Per base edge: its expansion edge.
    std::vector<EdgeId> core_image;
    /// Per expansion vertex: the base vertex it replaces.
    std::vector<VertexId> vertex_origin;
};

/// Degree-2 vertices become a 4-cycle with a chord, degree-3 vertices stay,
/// higher degrees become a tree with floor(d/2) leaves holding two base
/// edges each (pairs share a leaf), plus a binary root when d is odd.
CubicExpansion cubic_expand(const RemovablePairing& rp);

/// Tour weights: -1 on removable core edges, +1 on other core edges, 0 on
/// gadgets. With e_prime set, that core edge weighs `dist` instead.
std::vector<std::int64_t> assign_weights(const CubicExpansion& exp, const RemovablePairing& rp,
                                         std::optional<EdgeId> e_prime = std::nullopt, int dist = 0);

std::vector<Rational> to_rational(const std::vector<std::int64_t>& w);

/// Base edges, matched removable ones dropped, matched others doubled.
Multigraph assemble_tour(const RemovablePairing& rp, const CubicExpansion& exp, const PerfectMatching& m);

/// As assemble_tour over a base that contains e_prime = {s,t}; one copy of
/// e_prime is deleted, two or zero copies are replaced by `shortest_path`
/// (a vertex sequence s..t in the input graph).
Multigraph assemble_path(const RemovablePairing& rp, const CubicExpansion& exp, const PerfectMatching& m, EdgeId e_prime,
                         VertexId s, VertexId t, const std::vector<VertexId>& shortest_path);

}  // namespace gtsp
