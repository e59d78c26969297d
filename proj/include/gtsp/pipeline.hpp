#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gtsp/graph.hpp"
#include "gtsp/matching.hpp"
#include "gtsp/rational.hpp"

namespace gtsp {

/// One run of one route inside a block solve.
struct RouteTrace {
    /// "max-x", "subcubic", "christofides", "path-max-x", "path-subcubic",
    /// "path-fallback" or "doubled-tree".
    std::string route;
    int n = 0;
    /// OLP(G) for tours, OLP(G') for paths.
    Rational olp;
    std::int64_t circulation_cost = 0;
    /// Set when the DFS ran on a bounded LP support.
    std::optional<Rational> cost_bound;
    std::int64_t edges = 0;
    /// The edge-count bound asserted for this route.
    Rational edge_bound;
    int dist = 0;
};

struct SolveOptions {
    /// Re-solve the relaxation on the LP support and compare values.
    bool verify_support = true;
    /// Check the deletion property of every extracted pairing.
    bool verify_pairing = true;
    /// Path blocks with fewer vertices are solved exactly; 0 disables.
    int oracle_cutoff = 12;
    /// Observers, called synchronously from the solving thread.
    std::function<void(const RouteTrace&)> on_route;
    std::function<void(const Graph& cubic, const std::vector<std::int64_t>& w, const PerfectMatching& m)> on_matching;
};

struct TourCertificate {
    /// Sum of block relaxation values; a lower bound on the optimum.
    Rational olp;
    std::int64_t circulation_cost = 0;
    /// Edge counts of the two algorithms summed over blocks.
    std::int64_t ms_edges = 0;
    std::int64_t christofides_edges = 0;
    /// Sum over blocks of (4n + 2c - 2)/3 for the circulation route.
    Rational bound_lemma4;
    /// Sum over blocks of n - 1 + OLP/2.
    Rational bound_christofides;
    /// "algorithm1", "christofides", "trivial" or "mixed".
    std::string chosen;
    int blocks = 0;
    /// Set when some block ran the subcubic route.
    bool subcubic_route = false;
};

struct TourSolution {
    Multigraph multigraph;
    std::vector<WalkStep> walk;
    std::int64_t edge_count = 0;
    TourCertificate certificate;
};

struct PathCertificate {
    /// Lower bound: sum over blocks of OLP(G'_i) - 1, or OLP(G_i) for blocks
    /// where both endpoints coincide.
    Rational lower_bound;
    /// Path relaxation value LP(G,s,t), reported only.
    Rational olp_path;
    /// OLP(G + {s,t}) on the whole graph.
    Rational olp_prime;
    int dist = 0;
    Rational d;
    Rational zeta;
    std::int64_t circulation_cost = 0;
    std::int64_t ms_edges = 0;
    std::int64_t baseline_edges = 0;
    /// Sum of the main-algorithm bounds actually asserted.
    Rational bound_main;
    std::int64_t bound_baseline = 0;
    /// Additive constant in edges <= (3 - sqrt2)(OLP(G') - 1) + C.
    Rational constant_c;
    std::string chosen;
    int blocks = 0;
};

struct PathSolution {
    VertexId s = 0;
    VertexId t = 0;
    Multigraph multigraph;
    std::vector<WalkStep> walk;
    std::int64_t edge_count = 0;
    PathCertificate certificate;
};

/// Algorithm 1 plus Christofides on a 2-vertex-connected graph (or a single
/// vertex or edge); the fewer-edge result wins.
TourSolution solve_block_tour(const Graph& g, const SolveOptions& opt = {});

/// BFS tree from 0 plus a min-weight perfect matching of its odd vertices
/// under hop distance, realised by shortest paths. With `olp` the count is
/// checked against n - 1 + OLP/2.
TourSolution christofides(const Graph& g, std::optional<Rational> olp = std::nullopt);

/// Block decomposition, per-block solves, gluing at cut vertices.
TourSolution tsp_tour(const Graph& g, const SolveOptions& opt = {});

/// BFS tree from s with every edge doubled except the tree path to t.
PathSolution doubled_tree_path(const Graph& g, VertexId s, VertexId t);

PathSolution solve_block_path(const Graph& g, VertexId s, VertexId t, const SolveOptions& opt = {});

/// Recursion at the smallest cut vertex; s == t gives the tour.
PathSolution tsp_path(const Graph& g, VertexId s, VertexId t, const SolveOptions& opt = {});

/// Rational bounds used by the assertions, exposed for tests.
Rational max_x_cost_bound(int n, const Rational& olp);
Rational path_main_bound(int n, int dist, const Rational& olp_prime);
/// (3 - sqrt2) * olp_prime - 1, the best-of path guarantee.
Rational path_guarantee(const Rational& olp_prime);

}  // namespace gtsp
