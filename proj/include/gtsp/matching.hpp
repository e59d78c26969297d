#pragma once

#include <tuple>
#include <vector>

#include "gtsp/graph.hpp"
#include "gtsp/rational.hpp"

namespace gtsp {

struct PerfectMatching {
    /// Sorted edge ids.
    std::vector<EdgeId> edges;
    Rational weight;
};

struct WeightedEdge {
    VertexId u = 0;
    VertexId v = 0;
    BigInt weight;
};

/// Maximum-weight matching by Edmonds' blossom algorithm with integral
/// duals (a port of van Rantwijk's mwmatching). With `max_cardinality`
/// the weight is maximised among maximum-cardinality matchings. Returns
/// mate[v], or -1 for exposed vertices.
std::vector<VertexId> max_weight_matching(int vertex_count, const std::vector<WeightedEdge>& edges, bool max_cardinality);

/// Minimum-weight perfect matching. Among optima the lexicographically
/// smallest sorted edge-id list is returned. Throws InputError when g has no
/// perfect matching.
PerfectMatching min_weight_perfect_matching(const Graph& g, const std::vector<Rational>& w);

/// 3 * w(m) <= sum of all weights.
bool third_bound_check(const Graph& g, const std::vector<Rational>& w, const PerfectMatching& m);

}  // namespace gtsp
