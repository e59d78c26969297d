#include "gtsp/graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>

namespace gtsp {

Graph::Graph(int vertex_count) {
    if (vertex_count < 0) throw InputError("negative vertex count");
    adjacency_.resize(static_cast<std::size_t>(vertex_count));
}

Graph Graph::from_edges(int vertex_count, std::span<const std::pair<VertexId, VertexId>> edges) {
    Graph g(vertex_count);
    for (auto [a, b] : edges) g.add_edge(a, b);
    return g;
}

EdgeId Graph::add_edge(VertexId a, VertexId b) {
    if (!valid_vertex(a) || !valid_vertex(b)) {
        throw InputError("edge endpoint out of range: " + std::to_string(a) + " " + std::to_string(b));
    }
    if (a == b) throw InputError("self-loop at vertex " + std::to_string(a));
    const Edge e = make_edge(a, b);
    if (index_.contains(e)) {
        throw InputError("duplicate edge " + std::to_string(e.u) + " " + std::to_string(e.v));
    }
    const auto id = static_cast<EdgeId>(edges_.size());
    edges_.push_back(e);
    index_.emplace(e, id);
    adjacency_[static_cast<std::size_t>(a)].push_back(id);
    adjacency_[static_cast<std::size_t>(b)].push_back(id);
    return id;
}

int Graph::max_degree() const {
    int best = 0;
    for (const auto& adj : adjacency_) best = std::max(best, static_cast<int>(adj.size()));
    return best;
}

std::optional<EdgeId> Graph::find_edge(VertexId a, VertexId b) const {
    if (!valid_vertex(a) || !valid_vertex(b) || a == b) return std::nullopt;
    auto it = index_.find(make_edge(a, b));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

Subgraph induced_subgraph(const Graph& g, std::span<const VertexId> vertices) {
    Subgraph sub;
    sub.graph = Graph(static_cast<int>(vertices.size()));
    sub.vertex_to_parent.assign(vertices.begin(), vertices.end());
    std::vector<int> local(static_cast<std::size_t>(g.vertex_count()), -1);
    for (std::size_t i = 0; i < vertices.size(); ++i) local[static_cast<std::size_t>(vertices[i])] = static_cast<int>(i);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const auto [u, v] = g.edge(e);
        const int lu = local[static_cast<std::size_t>(u)];
        const int lv = local[static_cast<std::size_t>(v)];
        if (lu >= 0 && lv >= 0) {
            sub.graph.add_edge(lu, lv);
            sub.edge_to_parent.push_back(e);
        }
    }
    return sub;
}

Subgraph edge_subgraph(const Graph& g, std::span<const EdgeId> edges) {
    Subgraph sub;
    sub.graph = Graph(g.vertex_count());
    sub.vertex_to_parent.resize(static_cast<std::size_t>(g.vertex_count()));
    std::iota(sub.vertex_to_parent.begin(), sub.vertex_to_parent.end(), 0);
    for (EdgeId e : edges) {
        const auto [u, v] = g.edge(e);
        sub.graph.add_edge(u, v);
        sub.edge_to_parent.push_back(e);
    }
    return sub;
}

// ------------------------------------------------------------- Multigraph

void Multigraph::add(VertexId a, VertexId b, int count) {
    if (a < 0 || b < 0 || a >= vertex_count_ || b >= vertex_count_ || a == b) {
        throw InvariantViolation("multigraph edge out of range or loop");
    }
    if (count <= 0) return;
    edges_[make_edge(a, b)] += count;
    size_ += count;
}

void Multigraph::remove(VertexId a, VertexId b, int count) {
    auto it = edges_.find(make_edge(a, b));
    if (it == edges_.end() || it->second < count) {
        throw InvariantViolation("removing more copies than present");
    }
    it->second -= count;
    size_ -= count;
    if (it->second == 0) edges_.erase(it);
}

int Multigraph::multiplicity(VertexId a, VertexId b) const {
    auto it = edges_.find(make_edge(a, b));
    return it == edges_.end() ? 0 : it->second;
}

std::vector<int> Multigraph::degrees() const {
    std::vector<int> deg(static_cast<std::size_t>(vertex_count_), 0);
    for (const auto& [e, k] : edges_) {
        deg[static_cast<std::size_t>(e.u)] += k;
        deg[static_cast<std::size_t>(e.v)] += k;
    }
    return deg;
}

bool Multigraph::spans_connected() const {
    if (vertex_count_ <= 1) return true;
    std::vector<int> parent(static_cast<std::size_t>(vertex_count_));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    int components = vertex_count_;
    for (const auto& [e, k] : edges_) {
        const int a = find(e.u), b = find(e.v);
        if (a != b) {
            parent[static_cast<std::size_t>(a)] = b;
            --components;
        }
    }
    return components == 1;
}

// ---------------------------------------------------------- connectivity

bool is_connected(const Graph& g) {
    const int n = g.vertex_count();
    if (n <= 1) return true;
    const auto dist = bfs_distances(g, 0);
    return std::none_of(dist.begin(), dist.end(), [](int d) { return d < 0; });
}

namespace {

struct Frame {
    VertexId v;
    EdgeId parent_edge;
    std::size_t next;
};

}  // namespace

BlockDecomposition blocks(const Graph& g) {
    if (!is_connected(g)) throw InputError("blocks: graph is disconnected");
    const int n = g.vertex_count();
    BlockDecomposition bd;
    if (n == 0) return bd;
    if (n == 1) {
        bd.blocks.push_back({0});
        bd.block_edges.emplace_back();
        return bd;
    }

    std::vector<int> disc(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0);
    std::vector<EdgeId> edge_stack;
    std::vector<Frame> stack;
    int timer = 0;
    disc[0] = low[0] = timer++;
    stack.push_back({0, -1, 0});
    std::vector<std::vector<EdgeId>> raw;

    while (!stack.empty()) {
        Frame& f = stack.back();
        const auto adj = g.incident(f.v);
        if (f.next < adj.size()) {
            const EdgeId e = adj[f.next++];
            if (e == f.parent_edge) continue;
            const VertexId w = g.other(e, f.v);
            const auto wi = static_cast<std::size_t>(w);
            const auto vi = static_cast<std::size_t>(f.v);
            if (disc[wi] < 0) {
                edge_stack.push_back(e);
                disc[wi] = low[wi] = timer++;
                stack.push_back({w, e, 0});
            } else if (disc[wi] < disc[vi]) {
                edge_stack.push_back(e);
                low[vi] = std::min(low[vi], disc[wi]);
            }
        } else {
            const Frame done = f;
            stack.pop_back();
            if (stack.empty()) break;
            const VertexId p = stack.back().v;
            const auto pi = static_cast<std::size_t>(p);
            const auto di = static_cast<std::size_t>(done.v);
            low[pi] = std::min(low[pi], low[di]);
            if (low[di] >= disc[pi]) {
                std::vector<EdgeId> comp;
                while (true) {
                    const EdgeId e = edge_stack.back();
                    edge_stack.pop_back();
                    comp.push_back(e);
                    if (e == done.parent_edge) break;
                }
                raw.push_back(std::move(comp));
            }
        }
    }

    struct Block {
        std::vector<VertexId> vertices;
        std::vector<EdgeId> edges;
    };
    std::vector<Block> list;
    for (auto& comp : raw) {
        std::set<VertexId> vs;
        for (EdgeId e : comp) {
            vs.insert(g.edge(e).u);
            vs.insert(g.edge(e).v);
        }
        std::sort(comp.begin(), comp.end());
        list.push_back({{vs.begin(), vs.end()}, std::move(comp)});
    }
    std::sort(list.begin(), list.end(), [](const Block& a, const Block& b) { return a.vertices < b.vertices; });

    std::vector<int> membership(static_cast<std::size_t>(n), 0);
    for (auto& b : list) {
        for (VertexId v : b.vertices) ++membership[static_cast<std::size_t>(v)];
        bd.blocks.push_back(std::move(b.vertices));
        bd.block_edges.push_back(std::move(b.edges));
    }
    for (VertexId v = 0; v < n; ++v) {
        if (membership[static_cast<std::size_t>(v)] > 1) bd.cut_vertices.push_back(v);
    }
    for (std::size_t b = 0; b < bd.blocks.size(); ++b) {
        for (VertexId v : bd.blocks[b]) {
            if (membership[static_cast<std::size_t>(v)] > 1) bd.block_cut_tree.emplace_back(static_cast<int>(b), v);
        }
    }
    return bd;
}

bool is_two_vertex_connected(const Graph& g) {
    if (g.vertex_count() < 2 || !is_connected(g)) return false;
    return blocks(g).blocks.size() == 1;
}

std::vector<EdgeId> bridges(const Graph& g) {
    const int n = g.vertex_count();
    std::vector<EdgeId> out;
    std::vector<int> disc(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0);
    int timer = 0;
    for (VertexId root = 0; root < n; ++root) {
        if (disc[static_cast<std::size_t>(root)] >= 0) continue;
        std::vector<Frame> stack;
        disc[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = timer++;
        stack.push_back({root, -1, 0});
        while (!stack.empty()) {
            Frame& f = stack.back();
            const auto adj = g.incident(f.v);
            if (f.next < adj.size()) {
                const EdgeId e = adj[f.next++];
                if (e == f.parent_edge) continue;
                const VertexId w = g.other(e, f.v);
                const auto wi = static_cast<std::size_t>(w);
                if (disc[wi] < 0) {
                    disc[wi] = low[wi] = timer++;
                    stack.push_back({w, e, 0});
                } else {
                    low[static_cast<std::size_t>(f.v)] = std::min(low[static_cast<std::size_t>(f.v)], disc[wi]);
                }
            } else {
                const Frame done = f;
                stack.pop_back();
                if (stack.empty()) break;
                const auto pi = static_cast<std::size_t>(stack.back().v);
                const auto di = static_cast<std::size_t>(done.v);
                low[pi] = std::min(low[pi], low[di]);
                if (low[di] > disc[pi]) out.push_back(done.parent_edge);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool is_two_edge_connected(const Graph& g) {
    return g.vertex_count() >= 2 && is_connected(g) && bridges(g).empty();
}

// ------------------------------------------------------------------ BFS

std::vector<int> bfs_distances(const Graph& g, VertexId s) {
    std::vector<int> dist(static_cast<std::size_t>(g.vertex_count()), -1);
    std::queue<VertexId> q;
    dist[static_cast<std::size_t>(s)] = 0;
    q.push(s);
    while (!q.empty()) {
        const VertexId v = q.front();
        q.pop();
        for (EdgeId e : g.incident(v)) {
            const VertexId w = g.other(e, v);
            if (dist[static_cast<std::size_t>(w)] < 0) {
                dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
                q.push(w);
            }
        }
    }
    return dist;
}

ShortestPath bfs_distance(const Graph& g, VertexId s, VertexId t) {
    if (!g.valid_vertex(s) || !g.valid_vertex(t)) throw InputError("bfs_distance: vertex out of range");
    const auto n = static_cast<std::size_t>(g.vertex_count());
    std::vector<EdgeId> via(n, -1);
    std::vector<char> seen(n, 0);
    std::queue<VertexId> q;
    seen[static_cast<std::size_t>(s)] = 1;
    q.push(s);
    while (!q.empty() && !seen[static_cast<std::size_t>(t)]) {
        const VertexId v = q.front();
        q.pop();
        std::vector<std::pair<VertexId, EdgeId>> next;
        for (EdgeId e : g.incident(v)) next.emplace_back(g.other(e, v), e);
        std::sort(next.begin(), next.end());
        for (auto [w, e] : next) {
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = 1;
                via[static_cast<std::size_t>(w)] = e;
                q.push(w);
            }
        }
    }
    if (!seen[static_cast<std::size_t>(t)]) throw InputError("bfs_distance: target unreachable");
    ShortestPath path;
    VertexId cur = t;
    path.vertices.push_back(t);
    while (cur != s) {
        const EdgeId e = via[static_cast<std::size_t>(cur)];
        path.edges.push_back(e);
        cur = g.other(e, cur);
        path.vertices.push_back(cur);
    }
    std::reverse(path.vertices.begin(), path.vertices.end());
    std::reverse(path.edges.begin(), path.edges.end());
    path.distance = static_cast<int>(path.edges.size());
    return path;
}

// ---------------------------------------------------------------- Euler

std::vector<WalkStep> euler_traversal(const Multigraph& m, VertexId s, VertexId t) {
    const int n = m.vertex_count();
    if (s < 0 || t < 0 || s >= n || t >= n) throw InputError("euler_traversal: endpoint out of range");
    const auto deg = m.degrees();
    for (VertexId v = 0; v < n; ++v) {
        const bool odd = deg[static_cast<std::size_t>(v)] % 2 != 0;
        const bool should_be_odd = s != t && (v == s || v == t);
        if (odd != should_be_odd) {
            throw InputError("euler_traversal: parity violation at vertex " + std::to_string(v));
        }
    }
    if (n >= 2) {
        for (VertexId v = 0; v < n; ++v) {
            if (deg[static_cast<std::size_t>(v)] == 0) throw InputError("euler_traversal: multigraph not spanning");
        }
    }
    if (!m.spans_connected()) throw InputError("euler_traversal: disconnected support");

    // Expand multiplicities into edge instances; adjacency sorted by neighbour.
    std::vector<Edge> inst;
    std::vector<std::vector<std::pair<VertexId, int>>> adj(static_cast<std::size_t>(n));
    for (const auto& [e, k] : m.edges()) {
        for (int c = 0; c < k; ++c) {
            const int id = static_cast<int>(inst.size());
            inst.push_back(e);
            adj[static_cast<std::size_t>(e.u)].emplace_back(e.v, id);
            adj[static_cast<std::size_t>(e.v)].emplace_back(e.u, id);
        }
    }
    for (auto& a : adj) std::sort(a.begin(), a.end());

    std::vector<char> used(inst.size(), 0);
    std::vector<std::size_t> ptr(static_cast<std::size_t>(n), 0);
    std::vector<VertexId> stack{s};
    std::vector<VertexId> circuit;
    while (!stack.empty()) {
        const VertexId v = stack.back();
        auto& p = ptr[static_cast<std::size_t>(v)];
        const auto& a = adj[static_cast<std::size_t>(v)];
        while (p < a.size() && used[static_cast<std::size_t>(a[p].second)]) ++p;
        if (p == a.size()) {
            circuit.push_back(v);
            stack.pop_back();
        } else {
            used[static_cast<std::size_t>(a[p].second)] = 1;
            stack.push_back(a[p].first);
        }
    }
    std::reverse(circuit.begin(), circuit.end());
    std::vector<WalkStep> walk;
    for (std::size_t i = 1; i < circuit.size(); ++i) walk.push_back({circuit[i - 1], circuit[i]});
    GTSP_ENSURE(static_cast<std::int64_t>(walk.size()) == m.size(), "walk does not consume every edge");
    return walk;
}

bool is_euler_walk(const Multigraph& m, std::span<const WalkStep> walk, VertexId s, VertexId t) {
    if (static_cast<std::int64_t>(walk.size()) != m.size()) return false;
    if (walk.empty()) return s == t && m.size() == 0 && m.vertex_count() <= 1;
    if (walk.front().from != s || walk.back().to != t) return false;
    std::map<Edge, int> seen;
    for (std::size_t i = 0; i < walk.size(); ++i) {
        if (i > 0 && walk[i - 1].to != walk[i].from) return false;
        if (walk[i].from == walk[i].to) return false;
        ++seen[make_edge(walk[i].from, walk[i].to)];
    }
    return seen == m.edges();
}

}  // namespace gtsp
