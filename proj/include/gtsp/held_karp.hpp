#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gtsp/graph.hpp"
#include "gtsp/rational.hpp"

namespace gtsp {

enum class LpMode { Tour, Path };

/// Optimum of the Held-Karp relaxation, x indexed by edge id.
struct LpSolution {
    std::vector<Rational> x;
    Rational value;
    bool is_vertex = false;
    LpMode mode = LpMode::Tour;
    VertexId s = 0;
    VertexId t = 0;
    /// Every cut row the solver ever held, singletons first.
    std::vector<std::vector<VertexId>> active_cuts;
    std::int64_t pivots = 0;
};

struct CutViolation {
    std::vector<VertexId> side;
    Rational value;
    int bound = 2;
};

/// x(delta(S)) for a sorted side S.
Rational cut_value(const Graph& g, const std::vector<Rational>& x, const std::vector<VertexId>& side);

/// Global min cut under x, reported when below 2.
std::optional<CutViolation> separate_tour(const Graph& g, const std::vector<Rational>& x);

/// Cuts keeping s and t together need 2, cuts separating them need 1.
/// Returns the cut with the larger shortfall; ties go to the former.
std::optional<CutViolation> separate_path(const Graph& g, VertexId s, VertexId t, const std::vector<Rational>& x);

/// Tour relaxation. Throws InputError on disconnected input.
LpSolution solve_held_karp(const Graph& g);

/// Path relaxation with endpoints s, t. s == t is the tour relaxation.
LpSolution solve_held_karp_path(const Graph& g, VertexId s, VertexId t);

/// Spanning subgraph on the edges with positive x. In tour mode with a
/// vertex solution the size is checked against 2n-1; with `verify` the LP is
/// solved again on the support and must give the same value.
Subgraph support_graph(const Graph& g, const LpSolution& lp, bool verify = true);

}  // namespace gtsp
