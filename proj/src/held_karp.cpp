#include "gtsp/held_karp.hpp"

#include <algorithm>

#include "gtsp/mincut.hpp"
#include "gtsp/simplex.hpp"

namespace gtsp {

namespace {

std::vector<char> membership(int n, const std::vector<VertexId>& side) {
    std::vector<char> in(static_cast<std::size_t>(n), 0);
    for (VertexId v : side) in[static_cast<std::size_t>(v)] = 1;
    return in;
}

std::vector<int> crossing_edges(const Graph& g, const std::vector<VertexId>& side) {
    const auto in = membership(g.vertex_count(), side);
    std::vector<int> out;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const auto [u, v] = g.edge(e);
        if (in[static_cast<std::size_t>(u)] != in[static_cast<std::size_t>(v)]) out.push_back(e);
    }
    return out;
}

int cut_bound(LpMode mode, VertexId s, VertexId t, const std::vector<VertexId>& side) {
    if (mode == LpMode::Tour) return 2;
    const bool has_s = std::binary_search(side.begin(), side.end(), s);
    const bool has_t = std::binary_search(side.begin(), side.end(), t);
    return has_s == has_t ? 2 : 1;
}

LpSolution solve(const Graph& g, LpMode mode, VertexId s, VertexId t) {
    if (!is_connected(g)) throw InputError("held-karp: input graph is disconnected");
    const int n = g.vertex_count();
    LpSolution sol;
    sol.mode = mode;
    sol.s = s;
    sol.t = t;
    sol.is_vertex = true;
    if (n <= 1) {
        sol.value = 0;
        return sol;
    }

    CoveringLp lp(std::vector<Rational>(static_cast<std::size_t>(g.edge_count()), Rational(1)));
    auto add_cut = [&](std::vector<VertexId> side) {
        const int bound = cut_bound(mode, s, t, side);
        lp.add_row(crossing_edges(g, side), Rational(bound));
        sol.active_cuts.push_back(std::move(side));
    };
    for (VertexId v = 0; v < n; ++v) add_cut({v});

    while (true) {
        if (lp.solve() == CoveringLp::Status::Infeasible) {
            throw InvariantViolation("held-karp: relaxation infeasible on a connected graph");
        }
        sol.x = lp.primal();
        auto cut = mode == LpMode::Tour ? separate_tour(g, sol.x) : separate_path(g, s, t, sol.x);
        if (!cut) break;
        GTSP_ENSURE(std::find(sol.active_cuts.begin(), sol.active_cuts.end(), cut->side) == sol.active_cuts.end(),
                    "separated a cut that is already a row");
        add_cut(std::move(cut->side));
    }
    sol.value = lp.value();
    sol.pivots = lp.pivot_count();
    for (const auto& xe : sol.x) GTSP_ENSURE(sgn(xe) >= 0, "negative primal value");
    return sol;
}

}  // namespace

Rational cut_value(const Graph& g, const std::vector<Rational>& x, const std::vector<VertexId>& side) {
    Rational total = 0;
    for (int e : crossing_edges(g, side)) total += x[static_cast<std::size_t>(e)];
    return total;
}

std::optional<CutViolation> separate_tour(const Graph& g, const std::vector<Rational>& x) {
    if (g.vertex_count() < 2) return std::nullopt;
    Cut cut = global_min_cut(capacity_matrix(g, x));
    if (cut.value >= 2) return std::nullopt;
    return CutViolation{std::move(cut.side), std::move(cut.value), 2};
}

std::optional<CutViolation> separate_path(const Graph& g, VertexId s, VertexId t, const std::vector<Rational>& x) {
    if (s == t) return separate_tour(g, x);
    const int n = g.vertex_count();
    std::optional<CutViolation> best;

    // Cuts keeping s and t on one side: identify t with s.
    if (n >= 3) {
        std::vector<int> index(static_cast<std::size_t>(n));
        std::vector<VertexId> back;
        for (VertexId v = 0; v < n; ++v) {
            if (v == t) continue;
            index[static_cast<std::size_t>(v)] = static_cast<int>(back.size());
            back.push_back(v);
        }
        index[static_cast<std::size_t>(t)] = index[static_cast<std::size_t>(s)];
        const std::size_t k = back.size();
        CapacityMatrix w(k, std::vector<Rational>(k));
        for (EdgeId e = 0; e < g.edge_count(); ++e) {
            const auto a = static_cast<std::size_t>(index[static_cast<std::size_t>(g.edge(e).u)]);
            const auto b = static_cast<std::size_t>(index[static_cast<std::size_t>(g.edge(e).v)]);
            if (a == b) continue;
            w[a][b] += x[static_cast<std::size_t>(e)];
            w[b][a] += x[static_cast<std::size_t>(e)];
        }
        Cut cut = global_min_cut(w);
        if (cut.value < 2) {
            std::vector<VertexId> side;
            for (VertexId i : cut.side) {
                side.push_back(back[static_cast<std::size_t>(i)]);
                if (back[static_cast<std::size_t>(i)] == s) side.push_back(t);
            }
            std::sort(side.begin(), side.end());
            best = CutViolation{std::move(side), std::move(cut.value), 2};
        }
    }

    Cut st = min_st_cut(capacity_matrix(g, x), s, t);
    if (st.value < 1) {
        if (!best || Rational(1) - st.value > Rational(2) - best->value) {
            best = CutViolation{std::move(st.side), std::move(st.value), 1};
        }
    }
    return best;
}

LpSolution solve_held_karp(const Graph& g) { return solve(g, LpMode::Tour, 0, 0); }

LpSolution solve_held_karp_path(const Graph& g, VertexId s, VertexId t) {
    if (!g.valid_vertex(s) || !g.valid_vertex(t)) throw InputError("held-karp: endpoint out of range");
    if (s == t) return solve(g, LpMode::Tour, 0, 0);
    return solve(g, LpMode::Path, s, t);
}

Subgraph support_graph(const Graph& g, const LpSolution& lp, bool verify) {
    std::vector<EdgeId> keep;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (sgn(lp.x[static_cast<std::size_t>(e)]) > 0) keep.push_back(e);
    }
    Subgraph sub = edge_subgraph(g, keep);
    const int n = g.vertex_count();
    if (lp.mode == LpMode::Tour && lp.is_vertex) {
        GTSP_ENSURE(sub.graph.edge_count() <= std::max(0, 2 * n - 1), "support of a vertex solution exceeds 2n-1 edges");
    }
    if (verify && n >= 2) {
        const LpSolution again = lp.mode == LpMode::Tour ? solve_held_karp(sub.graph) : solve_held_karp_path(sub.graph, lp.s, lp.t);
        GTSP_ENSURE(again.value == lp.value, "relaxation value changed on the support");
    }
    return sub;
}

}  // namespace gtsp
