#include "gtsp/mincut.hpp"

#include <algorithm>
#include <queue>

namespace gtsp {

CapacityMatrix capacity_matrix(const Graph& g, const std::vector<Rational>& x) {
    const auto n = static_cast<std::size_t>(g.vertex_count());
    CapacityMatrix w(n, std::vector<Rational>(n));
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const auto [u, v] = g.edge(e);
        w[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] += x[static_cast<std::size_t>(e)];
        w[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] += x[static_cast<std::size_t>(e)];
    }
    return w;
}

Cut global_min_cut(const CapacityMatrix& input) {
    const std::size_t n = input.size();
    if (n < 2) throw InputError("global_min_cut: need at least two vertices");
    CapacityMatrix w = input;
    std::vector<std::vector<VertexId>> members(n);
    for (std::size_t v = 0; v < n; ++v) members[v] = {static_cast<VertexId>(v)};
    std::vector<std::size_t> alive(n);
    for (std::size_t v = 0; v < n; ++v) alive[v] = v;

    Cut best;
    bool have_best = false;
    std::vector<Rational> key(n);
    std::vector<char> added(n);
    while (alive.size() > 1) {
        for (std::size_t v : alive) {
            key[v] = 0;
            added[v] = 0;
        }
        std::size_t prev = alive.front();
        std::size_t last = alive.front();
        added[last] = 1;
        for (std::size_t v : alive) {
            if (!added[v]) key[v] += w[last][v];
        }
        for (std::size_t step = 1; step < alive.size(); ++step) {
            std::size_t pick = n;
            for (std::size_t v : alive) {
                if (added[v]) continue;
                if (pick == n || key[v] > key[pick]) pick = v;
            }
            prev = last;
            last = pick;
            added[pick] = 1;
            for (std::size_t v : alive) {
                if (!added[v]) key[v] += w[pick][v];
            }
        }
        // Cut of the phase separates `last` from the rest.
        if (!have_best || key[last] < best.value) {
            best.value = key[last];
            best.side = members[last];
            have_best = true;
        }
        // Merge last into prev.
        for (std::size_t v : alive) {
            if (v == prev || v == last) continue;
            w[prev][v] += w[last][v];
            w[v][prev] = w[prev][v];
        }
        members[prev].insert(members[prev].end(), members[last].begin(), members[last].end());
        alive.erase(std::find(alive.begin(), alive.end(), last));
    }

    std::sort(best.side.begin(), best.side.end());
    if (best.side.front() == 0) {
        std::vector<VertexId> other;
        std::size_t j = 0;
        for (std::size_t v = 0; v < n; ++v) {
            if (j < best.side.size() && best.side[j] == static_cast<VertexId>(v)) {
                ++j;
            } else {
                other.push_back(static_cast<VertexId>(v));
            }
        }
        best.side = std::move(other);
    }
    return best;
}

Cut min_st_cut(const CapacityMatrix& w, VertexId s, VertexId t) {
    const std::size_t n = w.size();
    const auto si = static_cast<std::size_t>(s);
    const auto ti = static_cast<std::size_t>(t);
    if (s == t || si >= n || ti >= n) throw InputError("min_st_cut: bad terminals");
    CapacityMatrix residual = w;
    Rational flow = 0;
    std::vector<std::size_t> parent(n);
    while (true) {
        std::fill(parent.begin(), parent.end(), n);
        parent[si] = si;
        std::queue<std::size_t> q;
        q.push(si);
        while (!q.empty() && parent[ti] == n) {
            const std::size_t v = q.front();
            q.pop();
            for (std::size_t u = 0; u < n; ++u) {
                if (parent[u] == n && sgn(residual[v][u]) > 0) {
                    parent[u] = v;
                    q.push(u);
                }
            }
        }
        if (parent[ti] == n) break;
        Rational push = residual[parent[ti]][ti];
        for (std::size_t v = ti; v != si; v = parent[v]) push = std::min(push, residual[parent[v]][v]);
        for (std::size_t v = ti; v != si; v = parent[v]) {
            residual[parent[v]][v] -= push;
            residual[v][parent[v]] += push;
        }
        flow += push;
    }
    Cut cut;
    cut.value = flow;
    for (std::size_t v = 0; v < n; ++v) {
        if (parent[v] != n) cut.side.push_back(static_cast<VertexId>(v));
    }
    return cut;
}

}  // namespace gtsp
