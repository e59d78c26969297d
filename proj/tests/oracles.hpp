#pragma once

// Brute-force reference implementations used only by the tests. None of
// them call into the library beyond the plain data types.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <queue>
#include <vector>

#include "gtsp/circulation.hpp"
#include "gtsp/graph.hpp"
#include "gtsp/pipeline.hpp"
#include "gtsp/rational.hpp"

namespace oracle {

using gtsp::EdgeId;
using gtsp::Graph;
using gtsp::Rational;
using gtsp::VertexId;

inline std::vector<std::vector<int>> adjacency(const Graph& g) {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(g.vertex_count()));
    for (const auto& e : g.edges()) {
        adj[static_cast<std::size_t>(e.u)].push_back(e.v);
        adj[static_cast<std::size_t>(e.v)].push_back(e.u);
    }
    return adj;
}

// Connected after deleting `removed` (a vertex id, or -1).
inline bool connected_without(const Graph& g, int removed) {
    const int n = g.vertex_count();
    const auto adj = adjacency(g);
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    int start = removed == 0 ? 1 : 0;
    if (start >= n) return true;
    std::vector<int> stack{start};
    seen[static_cast<std::size_t>(start)] = 1;
    int count = 1;
    while (!stack.empty()) {
        const int a = stack.back();
        stack.pop_back();
        for (int b : adj[static_cast<std::size_t>(a)]) {
            if (b == removed || seen[static_cast<std::size_t>(b)]) continue;
            seen[static_cast<std::size_t>(b)] = 1;
            ++count;
            stack.push_back(b);
        }
    }
    return count == n - (removed >= 0 ? 1 : 0);
}

inline bool two_vertex_connected(const Graph& g) {
    const int n = g.vertex_count();
    if (n < 2 || !connected_without(g, -1)) return false;
    if (n == 2) return true;
    for (int v = 0; v < n; ++v) {
        if (!connected_without(g, v)) return false;
    }
    return true;
}

inline Rational cut_of_mask(const Graph& g, const std::vector<Rational>& x, std::uint32_t mask) {
    Rational total = 0;
    for (std::size_t e = 0; e < g.edges().size(); ++e) {
        const bool a = (mask >> g.edges()[e].u) & 1u;
        const bool b = (mask >> g.edges()[e].v) & 1u;
        if (a != b) total += x[e];
    }
    return total;
}

// Minimum of x(delta(S)) over every nonempty proper S (vertex n-1 kept out of S).
inline Rational min_cut_enum(const Graph& g, const std::vector<Rational>& x) {
    const int n = g.vertex_count();
    std::optional<Rational> best;
    for (std::uint32_t mask = 1; mask < (1u << (n - 1)); ++mask) {
        const Rational v = cut_of_mask(g, x, mask);
        if (!best || v < *best) best = v;
    }
    return *best;
}

// Smallest shortfall below the path bounds (2 for S keeping s,t together,
// 1 otherwise); returns the largest bound - value, or nullopt when feasible.
inline std::optional<Rational> path_shortfall_enum(const Graph& g, VertexId s, VertexId t, const std::vector<Rational>& x) {
    const int n = g.vertex_count();
    std::optional<Rational> worst;
    for (std::uint32_t mask = 1; mask < (1u << n) - 1; ++mask) {
        const bool together = ((mask >> s) & 1u) == ((mask >> t) & 1u);
        const Rational gap = Rational(together ? 2 : 1) - cut_of_mask(g, x, mask);
        if (sgn(gap) > 0 && (!worst || gap > *worst)) worst = gap;
    }
    return worst;
}

// Minimum-weight perfect matching by recursion on the lowest unmatched
// vertex. Returns nullopt when none exists.
struct MatchingEnum {
    Rational weight;
    std::vector<EdgeId> edges;  // lexicographically smallest optimum
};

inline std::optional<MatchingEnum> min_perfect_matching_enum(const Graph& g, const std::vector<Rational>& w) {
    const int n = g.vertex_count();
    std::optional<MatchingEnum> best;
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    std::vector<EdgeId> chosen;
    Rational cur = 0;
    std::function<void()> rec = [&] {
        int v = 0;
        while (v < n && used[static_cast<std::size_t>(v)]) ++v;
        if (v == n) {
            std::vector<EdgeId> sorted = chosen;
            std::sort(sorted.begin(), sorted.end());
            if (!best || cur < best->weight || (cur == best->weight && sorted < best->edges)) best = MatchingEnum{cur, sorted};
            return;
        }
        used[static_cast<std::size_t>(v)] = 1;
        for (EdgeId e : g.incident(v)) {
            const VertexId u = g.other(e, v);
            if (used[static_cast<std::size_t>(u)]) continue;
            used[static_cast<std::size_t>(u)] = 1;
            chosen.push_back(e);
            cur += w[static_cast<std::size_t>(e)];
            rec();
            cur -= w[static_cast<std::size_t>(e)];
            chosen.pop_back();
            used[static_cast<std::size_t>(u)] = 0;
        }
        used[static_cast<std::size_t>(v)] = 0;
    };
    if (n % 2 == 0) rec();
    return best;
}

// Exhaustive minimum-cost integral circulation. Back arcs range over
// 0..bound and free aggregator arcs over 0..1; the remaining arcs form a
// tree in the node graph, so conservation fixes them by leaf peeling.
inline std::optional<std::int64_t> min_circulation_enum(const gtsp::CirculationNetwork& net, std::int64_t bound) {
    using gtsp::ArcKind;
    const auto& arcs = net.arcs;
    const std::size_t m = arcs.size();
    std::vector<std::size_t> free_arcs;
    std::vector<std::int64_t> hi;
    for (std::size_t a = 0; a < m; ++a) {
        if (arcs[a].kind == ArcKind::Back) {
            free_arcs.push_back(a);
            hi.push_back(std::min(bound, arcs[a].upper));
        } else if (arcs[a].kind == ArcKind::AggregatorFree) {
            free_arcs.push_back(a);
            hi.push_back(std::min<std::int64_t>(1, arcs[a].upper));
        }
    }
    std::vector<std::int64_t> flow(m, 0);
    std::optional<std::int64_t> best;

    auto evaluate = [&]() -> std::optional<std::int64_t> {
        std::vector<char> known(m, 0);
        for (std::size_t a : free_arcs) known[a] = 1;
        std::vector<std::int64_t> f = flow;
        std::vector<std::int64_t> balance(static_cast<std::size_t>(net.node_count), 0);
        std::vector<std::vector<std::size_t>> unknown(static_cast<std::size_t>(net.node_count));
        for (std::size_t a = 0; a < m; ++a) {
            if (known[a]) {
                balance[static_cast<std::size_t>(arcs[a].head)] += f[a];
                balance[static_cast<std::size_t>(arcs[a].tail)] -= f[a];
            } else {
                unknown[static_cast<std::size_t>(arcs[a].head)].push_back(a);
                unknown[static_cast<std::size_t>(arcs[a].tail)].push_back(a);
            }
        }
        std::vector<int> open(static_cast<std::size_t>(net.node_count), 0);
        for (int v = 0; v < net.node_count; ++v) open[static_cast<std::size_t>(v)] = static_cast<int>(unknown[static_cast<std::size_t>(v)].size());
        std::queue<int> q;
        for (int v = 0; v < net.node_count; ++v) {
            if (open[static_cast<std::size_t>(v)] == 1) q.push(v);
        }
        while (!q.empty()) {
            const int v = q.front();
            q.pop();
            if (open[static_cast<std::size_t>(v)] != 1) continue;
            std::size_t a = m;
            for (std::size_t c : unknown[static_cast<std::size_t>(v)]) {
                if (!known[c]) a = c;
            }
            // In-flow minus out-flow at v must end at zero.
            const std::int64_t val = arcs[a].head == v ? -balance[static_cast<std::size_t>(v)] : balance[static_cast<std::size_t>(v)];
            f[a] = val;
            known[a] = 1;
            balance[static_cast<std::size_t>(arcs[a].head)] += val;
            balance[static_cast<std::size_t>(arcs[a].tail)] -= val;
            for (int end : {arcs[a].head, arcs[a].tail}) {
                if (--open[static_cast<std::size_t>(end)] == 1) q.push(end);
            }
        }
        std::int64_t cost = 0;
        for (std::size_t a = 0; a < m; ++a) {
            if (!known[a]) return std::nullopt;
            if (f[a] < arcs[a].lower || f[a] > arcs[a].upper) return std::nullopt;
            cost += f[a] * arcs[a].cost;
        }
        for (int v = 0; v < net.node_count; ++v) {
            if (balance[static_cast<std::size_t>(v)] != 0) return std::nullopt;
        }
        return cost;
    };

    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == free_arcs.size()) {
            if (auto c = evaluate(); c && (!best || *c < *best)) best = c;
            return;
        }
        for (std::int64_t v = 0; v <= hi[i]; ++v) {
            flow[free_arcs[i]] = v;
            rec(i + 1);
        }
        flow[free_arcs[i]] = 0;
    };
    rec(0);
    return best;
}

inline std::vector<std::vector<int>> distances(const Graph& g) {
    const int n = g.vertex_count();
    const auto adj = adjacency(g);
    std::vector<std::vector<int>> d(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), -1));
    for (int s = 0; s < n; ++s) {
        auto& row = d[static_cast<std::size_t>(s)];
        std::queue<int> q;
        q.push(s);
        row[static_cast<std::size_t>(s)] = 0;
        while (!q.empty()) {
            const int a = q.front();
            q.pop();
            for (int b : adj[static_cast<std::size_t>(a)]) {
                if (row[static_cast<std::size_t>(b)] < 0) {
                    row[static_cast<std::size_t>(b)] = row[static_cast<std::size_t>(a)] + 1;
                    q.push(b);
                }
            }
        }
    }
    return d;
}

// Metric-closure TSP by trying every permutation.
inline std::int64_t permutation_tour(const Graph& g) {
    const int n = g.vertex_count();
    if (n <= 1) return 0;
    const auto d = distances(g);
    std::vector<int> perm(static_cast<std::size_t>(n - 1));
    std::iota(perm.begin(), perm.end(), 1);
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    do {
        std::int64_t len = d[0][static_cast<std::size_t>(perm.front())] + d[static_cast<std::size_t>(perm.back())][0];
        for (std::size_t i = 0; i + 1 < perm.size(); ++i) len += d[static_cast<std::size_t>(perm[i])][static_cast<std::size_t>(perm[i + 1])];
        best = std::min(best, len);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

inline std::int64_t permutation_path(const Graph& g, VertexId s, VertexId t) {
    if (s == t) return permutation_tour(g);
    const int n = g.vertex_count();
    const auto d = distances(g);
    std::vector<int> mid;
    for (int v = 0; v < n; ++v) {
        if (v != s && v != t) mid.push_back(v);
    }
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    do {
        std::int64_t len = 0;
        int prev = s;
        for (int v : mid) {
            len += d[static_cast<std::size_t>(prev)][static_cast<std::size_t>(v)];
            prev = v;
        }
        len += d[static_cast<std::size_t>(prev)][static_cast<std::size_t>(t)];
        best = std::min(best, len);
    } while (std::next_permutation(mid.begin(), mid.end()));
    return best;
}

// Smallest connected spanning multigraph over g's edges (multiplicity at
// most 2) whose odd vertices are exactly {s,t} (none when s == t).
inline std::int64_t multigraph_enum(const Graph& g, VertexId s, VertexId t) {
    const int n = g.vertex_count();
    const int m = g.edge_count();
    if (n == 1) return 0;
    std::vector<int> mult(static_cast<std::size_t>(m), 0);
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    std::function<void(int, std::int64_t)> rec = [&](int i, std::int64_t size) {
        if (size >= best) return;
        if (i == m) {
            std::vector<int> deg(static_cast<std::size_t>(n), 0);
            std::vector<int> comp(static_cast<std::size_t>(n));
            std::iota(comp.begin(), comp.end(), 0);
            std::function<int(int)> find = [&](int a) { return comp[static_cast<std::size_t>(a)] == a ? a : comp[static_cast<std::size_t>(a)] = find(comp[static_cast<std::size_t>(a)]); };
            for (int e = 0; e < m; ++e) {
                if (!mult[static_cast<std::size_t>(e)]) continue;
                const auto& ed = g.edge(e);
                deg[static_cast<std::size_t>(ed.u)] += mult[static_cast<std::size_t>(e)];
                deg[static_cast<std::size_t>(ed.v)] += mult[static_cast<std::size_t>(e)];
                comp[static_cast<std::size_t>(find(ed.u))] = find(ed.v);
            }
            for (int v = 0; v < n; ++v) {
                const bool want_odd = s != t && (v == s || v == t);
                if ((deg[static_cast<std::size_t>(v)] % 2 != 0) != want_odd) return;
                if (find(v) != find(0)) return;
            }
            best = size;
            return;
        }
        for (int k = 0; k <= 2; ++k) {
            mult[static_cast<std::size_t>(i)] = k;
            rec(i + 1, size + k);
        }
        mult[static_cast<std::size_t>(i)] = 0;
    };
    rec(0, 0);
    return best;
}

// Spanning, connected, degrees of the right parity, edges inside g, and the
// walk is an Euler traversal of the multigraph.
inline bool valid_solution(const Graph& g, const gtsp::Multigraph& h, const std::vector<gtsp::WalkStep>& walk, VertexId s,
                           VertexId t, std::int64_t edge_count) {
    const int n = g.vertex_count();
    if (h.vertex_count() != n || h.size() != edge_count) return false;
    for (const auto& [e, k] : h.edges()) {
        if (k <= 0 || !g.has_edge(e.u, e.v)) return false;
    }
    if (n > 1 && !h.spans_connected()) return false;
    const auto deg = h.degrees();
    for (int v = 0; v < n; ++v) {
        const bool want_odd = s != t && (v == s || v == t);
        if ((deg[static_cast<std::size_t>(v)] % 2 != 0) != want_odd) return false;
    }
    if (static_cast<std::int64_t>(walk.size()) != edge_count) return false;
    if (walk.empty()) return s == t;
    if (walk.front().from != s || walk.back().to != t) return false;
    gtsp::Multigraph rebuilt(n);
    for (std::size_t i = 0; i < walk.size(); ++i) {
        if (i > 0 && walk[i - 1].to != walk[i].from) return false;
        rebuilt.add(walk[i].from, walk[i].to);
    }
    return rebuilt == h;
}

inline bool valid_tour(const Graph& g, const gtsp::TourSolution& sol) {
    return valid_solution(g, sol.multigraph, sol.walk, 0, 0, sol.edge_count);
}

inline bool valid_path(const Graph& g, const gtsp::PathSolution& sol) {
    return valid_solution(g, sol.multigraph, sol.walk, sol.s, sol.t, sol.edge_count);
}

}  // namespace oracle
