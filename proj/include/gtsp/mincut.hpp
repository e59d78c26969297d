#pragma once

#include <vector>

#include "gtsp/graph.hpp"
#include "gtsp/rational.hpp"

namespace gtsp {

/// Dense symmetric capacity matrix.
using CapacityMatrix = std::vector<std::vector<Rational>>;

CapacityMatrix capacity_matrix(const Graph& g, const std::vector<Rational>& x);

struct Cut {
    Rational value;
    /// One shore, sorted. Never empty, never everything.
    std::vector<VertexId> side;
};

/// Global minimum cut by Stoer-Wagner contraction in exact arithmetic.
/// Each phase starts from the lowest-id super-vertex and ties in the
/// maximum-adjacency order break towards the lowest id; the first minimum
/// found wins. The returned shore is the one not containing vertex 0.
/// Requires at least two vertices.
Cut global_min_cut(const CapacityMatrix& w);

/// Minimum s-t cut by shortest augmenting paths; `side` is the source shore.
Cut min_st_cut(const CapacityMatrix& w, VertexId s, VertexId t);

}  // namespace gtsp
