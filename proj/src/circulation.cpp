#include "gtsp/circulation.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <sstream>

namespace gtsp {

DfsTree dfs_tree_max_x(const Graph& g, const std::vector<Rational>& x, VertexId root) {
    const int n = g.vertex_count();
    if (!g.valid_vertex(root)) throw InputError("dfs_tree_max_x: root out of range");
    if (static_cast<int>(x.size()) != g.edge_count()) throw InputError("dfs_tree_max_x: x has wrong size");
    DfsTree t;
    t.root = root;
    t.parent.assign(static_cast<std::size_t>(n), -1);
    t.parent_edge.assign(static_cast<std::size_t>(n), -1);
    t.depth.assign(static_cast<std::size_t>(n), -1);
    t.children.assign(static_cast<std::size_t>(n), {});

    std::vector<VertexId> stack{root};
    t.depth[static_cast<std::size_t>(root)] = 0;
    t.order.push_back(root);
    while (!stack.empty()) {
        const VertexId v = stack.back();
        EdgeId pick = -1;
        VertexId next = -1;
        for (EdgeId e : g.incident(v)) {
            const VertexId w = g.other(e, v);
            if (t.depth[static_cast<std::size_t>(w)] >= 0) continue;
            const auto& xe = x[static_cast<std::size_t>(e)];
            if (pick == -1 || xe > x[static_cast<std::size_t>(pick)] || (xe == x[static_cast<std::size_t>(pick)] && w < next)) {
                pick = e;
                next = w;
            }
        }
        if (pick == -1) {
            stack.pop_back();
            continue;
        }
        t.parent[static_cast<std::size_t>(next)] = v;
        t.parent_edge[static_cast<std::size_t>(next)] = pick;
        t.depth[static_cast<std::size_t>(next)] = t.depth[static_cast<std::size_t>(v)] + 1;
        t.children[static_cast<std::size_t>(v)].push_back(next);
        t.order.push_back(next);
        t.tree_edges.push_back(pick);
        stack.push_back(next);
    }
    if (static_cast<int>(t.order.size()) != n) throw InputError("dfs_tree_max_x: graph is disconnected");

    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const auto [a, b] = g.edge(e);
        if (t.parent_edge[static_cast<std::size_t>(a)] == e || t.parent_edge[static_cast<std::size_t>(b)] == e) continue;
        VertexId lo = a, hi = b;
        if (t.depth[static_cast<std::size_t>(lo)] < t.depth[static_cast<std::size_t>(hi)]) std::swap(lo, hi);
        VertexId up = lo;
        while (t.depth[static_cast<std::size_t>(up)] > t.depth[static_cast<std::size_t>(hi)]) up = t.parent[static_cast<std::size_t>(up)];
        GTSP_ENSURE(up == hi, "non-tree edge joins two unrelated vertices");
        t.back_edges.emplace_back(lo, hi);
        t.back_edge_ids.push_back(e);
    }
    return t;
}

std::string to_string(ArcKind kind) {
    switch (kind) {
        case ArcKind::TreeUpper: return "tree-upper";
        case ArcKind::TreeLower: return "tree-lower";
        case ArcKind::Back: return "back";
        case ArcKind::AggregatorFree: return "aggregator-free";
        case ArcKind::AggregatorPaid: return "aggregator-paid";
    }
    return "unknown";
}

CirculationNetwork build_network(const Graph& g, const DfsTree& t) {
    const int n = g.vertex_count();
    if (n < 3) throw InputError("build_network: need at least three vertices");
    if (!is_two_vertex_connected(g)) throw InputError("build_network: graph is not 2-vertex-connected");
    if (static_cast<int>(t.parent.size()) != n) throw InputError("build_network: tree does not match graph");
    const VertexId root = t.root;
    GTSP_ENSURE(t.children[static_cast<std::size_t>(root)].size() == 1, "DFS root of a 2-connected graph has several children");

    CirculationNetwork net;
    net.tree = t;
    net.vertex_count = n;
    // Tree-arc demand plus one unit per back arc bounds every flow value the
    // normalized circulation can take.
    const std::int64_t inf = 2 * static_cast<std::int64_t>(n) - 3 + static_cast<std::int64_t>(t.back_edges.size());
    net.infinity = inf;

    // In-vertex index owning each non-root vertex's incoming tree edge.
    std::vector<int> owner(static_cast<std::size_t>(n), -1);
    int next_node = n;
    const VertexId first = t.children[static_cast<std::size_t>(root)].front();
    net.in_vertices.push_back({root, -1, root, t.parent_edge[static_cast<std::size_t>(first)]});
    owner[static_cast<std::size_t>(first)] = 0;
    net.arcs.push_back({root, first, 1, inf, 0, ArcKind::TreeLower, t.parent_edge[static_cast<std::size_t>(first)], 0});
    for (VertexId v : t.order) {
        if (v == root) continue;
        for (VertexId w : t.children[static_cast<std::size_t>(v)]) {
            const int split = next_node++;
            const EdgeId e = t.parent_edge[static_cast<std::size_t>(w)];
            const int idx = static_cast<int>(net.in_vertices.size());
            net.in_vertices.push_back({split, -1, v, e});
            owner[static_cast<std::size_t>(w)] = idx;
            net.arcs.push_back({v, split, 1, inf, 0, ArcKind::TreeUpper, e, idx});
            net.arcs.push_back({split, w, 1, inf, 0, ArcKind::TreeLower, e, idx});
        }
    }
    for (auto& iv : net.in_vertices) iv.aggregator = next_node++;
    net.node_count = next_node;

    for (std::size_t i = 0; i < t.back_edges.size(); ++i) {
        const auto [u, a] = t.back_edges[i];
        VertexId c = u;
        while (t.parent[static_cast<std::size_t>(c)] != a) c = t.parent[static_cast<std::size_t>(c)];
        const int idx = owner[static_cast<std::size_t>(c)];
        net.arcs.push_back({u, net.in_vertices[static_cast<std::size_t>(idx)].aggregator, 0, inf, 0, ArcKind::Back,
                            t.back_edge_ids[i], idx});
    }
    for (std::size_t i = 0; i < net.in_vertices.size(); ++i) {
        const auto& iv = net.in_vertices[i];
        net.arcs.push_back({iv.aggregator, iv.node, 0, 1, 0, ArcKind::AggregatorFree, -1, static_cast<int>(i)});
        net.arcs.push_back({iv.aggregator, iv.node, 0, inf, 1, ArcKind::AggregatorPaid, -1, static_cast<int>(i)});
    }
    return net;
}

std::string format_network(const CirculationNetwork& net) {
    std::ostringstream out;
    for (const Arc& a : net.arcs) {
        out << a.tail << ' ' << a.head << ' ' << a.lower << ' ';
        if (a.upper == net.infinity && a.kind != ArcKind::AggregatorFree) {
            out << "inf";
        } else {
            out << a.upper;
        }
        out << ' ' << a.cost << ' ' << to_string(a.kind) << '\n';
    }
    return out.str();
}

bool is_feasible(const CirculationNetwork& net, const Circulation& f) {
    if (f.flow.size() != net.arcs.size()) return false;
    std::vector<std::int64_t> balance(static_cast<std::size_t>(net.node_count), 0);
    for (std::size_t i = 0; i < net.arcs.size(); ++i) {
        const Arc& a = net.arcs[i];
        if (f.flow[i] < a.lower || f.flow[i] > a.upper) return false;
        balance[static_cast<std::size_t>(a.tail)] -= f.flow[i];
        balance[static_cast<std::size_t>(a.head)] += f.flow[i];
    }
    return std::all_of(balance.begin(), balance.end(), [](std::int64_t b) { return b == 0; });
}

bool has_negative_residual_cycle(const CirculationNetwork& net, const Circulation& f) {
    struct R {
        int from, to;
        std::int64_t cost;
    };
    std::vector<R> res;
    for (std::size_t i = 0; i < net.arcs.size(); ++i) {
        const Arc& a = net.arcs[i];
        if (f.flow[i] < a.upper) res.push_back({a.tail, a.head, a.cost});
        if (f.flow[i] > a.lower) res.push_back({a.head, a.tail, -a.cost});
    }
    // Bellman-Ford from a virtual source joined to every node at distance 0.
    std::vector<std::int64_t> dist(static_cast<std::size_t>(net.node_count), 0);
    for (int round = 0; round < net.node_count; ++round) {
        bool changed = false;
        for (const R& r : res) {
            if (dist[static_cast<std::size_t>(r.from)] + r.cost < dist[static_cast<std::size_t>(r.to)]) {
                dist[static_cast<std::size_t>(r.to)] = dist[static_cast<std::size_t>(r.from)] + r.cost;
                changed = true;
            }
        }
        if (!changed) return false;
    }
    return true;
}

namespace {

// Min-cost flow from S to T by successive shortest paths with potentials.
class FlowSolver {
public:
    explicit FlowSolver(int n) : adj_(static_cast<std::size_t>(n)) {}

    int add(int from, int to, std::int64_t cap, std::int64_t cost) {
        adj_[static_cast<std::size_t>(from)].push_back({to, cap, cost, static_cast<int>(adj_[static_cast<std::size_t>(to)].size())});
        adj_[static_cast<std::size_t>(to)].push_back({from, 0, -cost, static_cast<int>(adj_[static_cast<std::size_t>(from)].size()) - 1});
        return static_cast<int>(adj_[static_cast<std::size_t>(from)].size()) - 1;
    }

    std::int64_t flow_on(int from, int index) const {
        const auto& e = adj_[static_cast<std::size_t>(from)][static_cast<std::size_t>(index)];
        return adj_[static_cast<std::size_t>(e.to)][static_cast<std::size_t>(e.rev)].cap;
    }

    std::int64_t run(int s, int t) {
        const std::size_t n = adj_.size();
        constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
        std::vector<std::int64_t> pot(n, 0), dist(n);
        std::vector<int> prev_node(n), prev_edge(n);
        std::int64_t total = 0;
        while (true) {
            std::fill(dist.begin(), dist.end(), kInf);
            dist[static_cast<std::size_t>(s)] = 0;
            using Item = std::pair<std::int64_t, int>;
            std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
            pq.push({0, s});
            while (!pq.empty()) {
                auto [d, v] = pq.top();
                pq.pop();
                if (d != dist[static_cast<std::size_t>(v)]) continue;
                const auto& edges = adj_[static_cast<std::size_t>(v)];
                for (std::size_t i = 0; i < edges.size(); ++i) {
                    const auto& e = edges[i];
                    if (e.cap <= 0) continue;
                    const std::int64_t nd = d + e.cost + pot[static_cast<std::size_t>(v)] - pot[static_cast<std::size_t>(e.to)];
                    if (nd < dist[static_cast<std::size_t>(e.to)]) {
                        dist[static_cast<std::size_t>(e.to)] = nd;
                        prev_node[static_cast<std::size_t>(e.to)] = v;
                        prev_edge[static_cast<std::size_t>(e.to)] = static_cast<int>(i);
                        pq.push({nd, e.to});
                    }
                }
            }
            if (dist[static_cast<std::size_t>(t)] >= kInf) break;
            for (std::size_t v = 0; v < n; ++v) {
                if (dist[v] < kInf) pot[v] += dist[v];
            }
            std::int64_t push = kInf;
            for (int v = t; v != s; v = prev_node[static_cast<std::size_t>(v)]) {
                push = std::min(push, adj_[static_cast<std::size_t>(prev_node[static_cast<std::size_t>(v)])]
                                          [static_cast<std::size_t>(prev_edge[static_cast<std::size_t>(v)])].cap);
            }
            for (int v = t; v != s; v = prev_node[static_cast<std::size_t>(v)]) {
                auto& e = adj_[static_cast<std::size_t>(prev_node[static_cast<std::size_t>(v)])]
                              [static_cast<std::size_t>(prev_edge[static_cast<std::size_t>(v)])];
                e.cap -= push;
                adj_[static_cast<std::size_t>(v)][static_cast<std::size_t>(e.rev)].cap += push;
            }
            total += push;
        }
        return total;
    }

private:
    struct E {
        int to;
        std::int64_t cap;
        std::int64_t cost;
        int rev;
    };
    std::vector<std::vector<E>> adj_;
};

Circulation solve_raw(const CirculationNetwork& net) {
    const int s = net.node_count;
    const int t = net.node_count + 1;
    FlowSolver solver(net.node_count + 2);
    std::vector<std::int64_t> excess(static_cast<std::size_t>(net.node_count), 0);
    std::vector<int> handle(net.arcs.size());
    for (std::size_t i = 0; i < net.arcs.size(); ++i) {
        const Arc& a = net.arcs[i];
        handle[i] = solver.add(a.tail, a.head, a.upper - a.lower, a.cost);
        excess[static_cast<std::size_t>(a.head)] += a.lower;
        excess[static_cast<std::size_t>(a.tail)] -= a.lower;
    }
    std::int64_t demand = 0;
    for (int v = 0; v < net.node_count; ++v) {
        const std::int64_t ex = excess[static_cast<std::size_t>(v)];
        if (ex > 0) {
            solver.add(s, v, ex, 0);
            demand += ex;
        } else if (ex < 0) {
            solver.add(v, t, -ex, 0);
        }
    }
    if (solver.run(s, t) != demand) throw InputError("min_cost_circulation: network is infeasible");
    Circulation c;
    c.flow.resize(net.arcs.size());
    for (std::size_t i = 0; i < net.arcs.size(); ++i) {
        c.flow[i] = net.arcs[i].lower + solver.flow_on(net.arcs[i].tail, handle[i]);
        c.cost += c.flow[i] * net.arcs[i].cost;
    }
    return c;
}

// Rebuilds a circulation from back flows capped at one. Every tree arc is
// covered by the fundamental cycle of some back arc, so demands survive and
// the cost can only drop.
Circulation normalize(const CirculationNetwork& net, const Circulation& raw) {
    std::vector<int> parent_arc(static_cast<std::size_t>(net.node_count), -1);
    for (std::size_t i = 0; i < net.arcs.size(); ++i) {
        const Arc& a = net.arcs[i];
        if (a.kind == ArcKind::TreeUpper || a.kind == ArcKind::TreeLower) parent_arc[static_cast<std::size_t>(a.head)] = static_cast<int>(i);
    }
    Circulation c;
    c.flow.assign(net.arcs.size(), 0);
    std::vector<std::int64_t> into(net.in_vertices.size(), 0);
    for (std::size_t i = 0; i < net.arcs.size(); ++i) {
        const Arc& a = net.arcs[i];
        if (a.kind != ArcKind::Back || raw.flow[i] == 0) continue;
        c.flow[i] = 1;
        ++into[static_cast<std::size_t>(a.in_vertex)];
        const int stop = net.in_vertices[static_cast<std::size_t>(a.in_vertex)].node;
        for (int v = a.tail; v != stop;) {
            const int pa = parent_arc[static_cast<std::size_t>(v)];
            GTSP_ENSURE(pa >= 0, "back arc does not close a cycle with the tree");
            ++c.flow[static_cast<std::size_t>(pa)];
            v = net.arcs[static_cast<std::size_t>(pa)].tail;
        }
    }
    for (std::size_t i = 0; i < net.arcs.size(); ++i) {
        const Arc& a = net.arcs[i];
        const std::int64_t f = into[static_cast<std::size_t>(std::max(a.in_vertex, 0))];
        if (a.kind == ArcKind::AggregatorFree) {
            c.flow[i] = std::min<std::int64_t>(f, 1);
        } else if (a.kind == ArcKind::AggregatorPaid) {
            c.flow[i] = std::max<std::int64_t>(f - 1, 0);
            c.cost += c.flow[i];
        }
    }
    return c;
}

CirculationNetwork with_cap(const CirculationNetwork& net, std::int64_t cap) {
    CirculationNetwork out = net;
    for (Arc& a : out.arcs) {
        if (a.upper == net.infinity && a.kind != ArcKind::AggregatorFree) a.upper = cap;
    }
    out.infinity = cap;
    return out;
}

}  // namespace

Circulation min_cost_circulation(const CirculationNetwork& input) {
    CirculationNetwork net = input;
    Circulation raw;
    while (true) {
        raw = solve_raw(net);
        bool saturated = false;
        for (std::size_t i = 0; i < net.arcs.size(); ++i) {
            const Arc& a = net.arcs[i];
            if (a.kind != ArcKind::AggregatorFree && a.upper == net.infinity && raw.flow[i] >= net.infinity) saturated = true;
        }
        if (!saturated) break;
        net = with_cap(net, 2 * net.infinity);
    }
    GTSP_ENSURE(is_feasible(net, raw), "solver returned an infeasible circulation");
    GTSP_ENSURE(!has_negative_residual_cycle(net, raw), "solver result is not optimal");
    Circulation c = normalize(input, raw);
    GTSP_ENSURE(is_feasible(input, c), "normalized circulation is infeasible");
    GTSP_ENSURE(c.cost == raw.cost, "normalization changed the optimal cost");
    GTSP_ENSURE(!has_negative_residual_cycle(input, c), "normalized circulation is not optimal");
    GTSP_ENSURE(circulation_cost_audit(input, c) == c.cost, "audit mismatch");
    return c;
}

std::int64_t circulation_cost_audit(const CirculationNetwork& net, const Circulation& f) {
    std::vector<std::int64_t> into(net.in_vertices.size(), 0);
    std::int64_t arc_cost = 0;
    for (std::size_t i = 0; i < net.arcs.size(); ++i) {
        const Arc& a = net.arcs[i];
        arc_cost += a.cost * f.flow[i];
        if (a.kind == ArcKind::Back) into[static_cast<std::size_t>(a.in_vertex)] += f.flow[i];
    }
    std::int64_t total = 0;
    for (std::int64_t v : into) total += std::max<std::int64_t>(v - 1, 0);
    GTSP_ENSURE(total == arc_cost, "piecewise cost differs from arc cost");
    GTSP_ENSURE(total == f.cost, "piecewise cost differs from recorded cost");
    return total;
}

}  // namespace gtsp
