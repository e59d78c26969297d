#include "gtsp/oracle.hpp"

#include <algorithm>
#include <limits>

namespace gtsp {

std::vector<std::vector<int>> all_pairs_distances(const Graph& g) {
    std::vector<std::vector<int>> d;
    d.reserve(static_cast<std::size_t>(g.vertex_count()));
    for (VertexId v = 0; v < g.vertex_count(); ++v) d.push_back(bfs_distances(g, v));
    return d;
}

namespace {

OracleResult solve_dp(const Graph& g, VertexId start, VertexId end, bool closed, int cutoff) {
    const int n = g.vertex_count();
    if (cutoff > kOracleHardCap) throw InputError("oracle: cutoff above the hard cap of 16");
    if (n > cutoff) throw InputError("oracle: " + std::to_string(n) + " vertices exceed the cutoff " + std::to_string(cutoff));
    if (!is_connected(g)) throw InputError("oracle: graph is disconnected");
    OracleResult res;
    if (n == 0) return res;
    if (n == 1) {
        res.order = {0};
        return res;
    }
    const auto d = all_pairs_distances(g);
    const std::size_t full = (std::size_t{1} << n) - 1;
    constexpr int kInf = std::numeric_limits<int>::max() / 2;
    std::vector<int> dp((full + 1) * static_cast<std::size_t>(n), kInf);
    std::vector<signed char> from((full + 1) * static_cast<std::size_t>(n), -1);
    auto at = [n](std::size_t mask, int v) { return mask * static_cast<std::size_t>(n) + static_cast<std::size_t>(v); };
    dp[at(std::size_t{1} << start, start)] = 0;
    for (std::size_t mask = 1; mask <= full; ++mask) {
        if (!(mask >> start & 1)) continue;
        for (int v = 0; v < n; ++v) {
            const int cur = dp[at(mask, v)];
            if (cur >= kInf) continue;
            for (int w = 0; w < n; ++w) {
                if (mask >> w & 1) continue;
                // A fixed end vertex is entered last.
                const std::size_t next = mask | (std::size_t{1} << w);
                if (!closed && w == end && next != full) continue;
                const int cand = cur + d[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)];
                if (cand < dp[at(next, w)]) {
                    dp[at(next, w)] = cand;
                    from[at(next, w)] = static_cast<signed char>(v);
                }
            }
        }
    }
    int last = end;
    std::int64_t best = kInf;
    if (closed) {
        for (int v = 0; v < n; ++v) {
            if (v == start) continue;
            const std::int64_t c = static_cast<std::int64_t>(dp[at(full, v)]) + d[static_cast<std::size_t>(v)][static_cast<std::size_t>(start)];
            if (c < best) {
                best = c;
                last = v;
            }
        }
    } else {
        best = dp[at(full, end)];
    }
    res.optimum = best;
    std::size_t mask = full;
    for (int v = last; v != -1;) {
        res.order.push_back(v);
        const int prev = from[at(mask, v)];
        mask &= ~(std::size_t{1} << v);
        v = prev;
    }
    std::reverse(res.order.begin(), res.order.end());
    GTSP_ENSURE(static_cast<int>(res.order.size()) == n && res.order.front() == start, "oracle reconstruction failed");
    return res;
}

}  // namespace

OracleResult oracle_tour(const Graph& g, int cutoff) { return solve_dp(g, 0, 0, true, cutoff); }

OracleResult oracle_path(const Graph& g, VertexId s, VertexId t, int cutoff) {
    if (!g.valid_vertex(s) || !g.valid_vertex(t)) throw InputError("oracle: endpoint out of range");
    if (s == t) {
        // Closed walk through s: rotate the optimal tour to start there.
        OracleResult r = oracle_tour(g, cutoff);
        const auto it = std::find(r.order.begin(), r.order.end(), s);
        std::rotate(r.order.begin(), it, r.order.end());
        return r;
    }
    return solve_dp(g, s, t, false, cutoff);
}

std::int64_t oracle_opt_tour(const Graph& g, int cutoff) { return oracle_tour(g, cutoff).optimum; }

std::int64_t oracle_opt_path(const Graph& g, VertexId s, VertexId t, int cutoff) { return oracle_path(g, s, t, cutoff).optimum; }

Multigraph realize_order(const Graph& g, const std::vector<VertexId>& order, bool closed) {
    Multigraph m(g.vertex_count());
    auto leg = [&](VertexId a, VertexId b) {
        const ShortestPath p = bfs_distance(g, a, b);
        for (std::size_t i = 0; i + 1 < p.vertices.size(); ++i) m.add(p.vertices[i], p.vertices[i + 1]);
    };
    for (std::size_t i = 0; i + 1 < order.size(); ++i) leg(order[i], order[i + 1]);
    if (closed && order.size() >= 2) leg(order.back(), order.front());
    return m;
}

}  // namespace gtsp
