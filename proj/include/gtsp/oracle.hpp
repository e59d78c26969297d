#pragma once

#include <cstdint>
#include <vector>

#include "gtsp/graph.hpp"

namespace gtsp {

inline constexpr int kOracleDefaultCutoff = 12;
inline constexpr int kOracleHardCap = 16;

/// All-pairs hop distances by BFS.
std::vector<std::vector<int>> all_pairs_distances(const Graph& g);

/// Optimal visiting order over the metric closure (bitmask DP). For a tour
/// the order starts at 0 and the return leg is implicit; for a path it runs
/// s..t. Throws InputError when n exceeds `cutoff` (itself at most 16) or g
/// is disconnected.
struct OracleResult {
    std::int64_t optimum = 0;
    std::vector<VertexId> order;
};

OracleResult oracle_tour(const Graph& g, int cutoff = kOracleDefaultCutoff);
OracleResult oracle_path(const Graph& g, VertexId s, VertexId t, int cutoff = kOracleDefaultCutoff);

std::int64_t oracle_opt_tour(const Graph& g, int cutoff = kOracleDefaultCutoff);
std::int64_t oracle_opt_path(const Graph& g, VertexId s, VertexId t, int cutoff = kOracleDefaultCutoff);

/// Replaces consecutive order entries by BFS shortest paths. `closed` adds
/// the leg back to the first vertex.
Multigraph realize_order(const Graph& g, const std::vector<VertexId>& order, bool closed);

}  // namespace gtsp
