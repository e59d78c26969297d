#include "gtsp/pairing.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

namespace gtsp {

bool RemovablePairing::is_removable(EdgeId e) const { return std::binary_search(removable.begin(), removable.end(), e); }

RemovablePairing extract_pairing(const Graph& g, const CirculationNetwork& net, const Circulation& f) {
    const int n = g.vertex_count();
    GTSP_ENSURE(f.flow.size() == net.arcs.size(), "circulation does not match network");
    std::vector<EdgeId> support = net.tree.tree_edges;
    // Support back arcs per in-vertex as (tail, edge).
    std::vector<std::vector<std::pair<VertexId, EdgeId>>> incoming(net.in_vertices.size());
    for (std::size_t i = 0; i < net.arcs.size(); ++i) {
        const Arc& a = net.arcs[i];
        if (a.kind != ArcKind::Back || f.flow[i] == 0) continue;
        support.push_back(a.edge);
        incoming[static_cast<std::size_t>(a.in_vertex)].emplace_back(a.tail, a.edge);
    }
    std::sort(support.begin(), support.end());
    GTSP_ENSURE(std::adjacent_find(support.begin(), support.end()) == support.end(), "edge used twice in the support");

    RemovablePairing rp;
    Subgraph sub = edge_subgraph(g, support);
    rp.base_graph = std::move(sub.graph);
    rp.base_to_parent = std::move(sub.edge_to_parent);
    auto base_id = [&](EdgeId parent) {
        const auto it = std::lower_bound(rp.base_to_parent.begin(), rp.base_to_parent.end(), parent);
        GTSP_ENSURE(it != rp.base_to_parent.end() && *it == parent, "support edge missing from base");
        return static_cast<EdgeId>(it - rp.base_to_parent.begin());
    };

    int back_total = 0;
    for (std::size_t i = 0; i < incoming.size(); ++i) {
        auto& in = incoming[i];
        back_total += static_cast<int>(in.size());
        if (i == 0) rp.root_back_arcs = static_cast<int>(in.size());
        for (const auto& [tail, e] : in) rp.removable.push_back(base_id(e));
        const bool pairs_here = i == 0 ? in.size() >= 2 : !in.empty();
        if (!pairs_here) continue;
        const auto free_arc = *std::min_element(in.begin(), in.end());
        const EdgeId tree_edge = base_id(net.in_vertices[i].tree_edge);
        rp.pairs.emplace_back(base_id(free_arc.second), tree_edge);
        rp.removable.push_back(tree_edge);
    }
    std::sort(rp.removable.begin(), rp.removable.end());
    GTSP_ENSURE(std::adjacent_find(rp.removable.begin(), rp.removable.end()) == rp.removable.end(), "edge paired twice");

    const int r = static_cast<int>(rp.removable.size());
    const int p = static_cast<int>(rp.pairs.size());
    GTSP_ENSURE(rp.base_graph.edge_count() == (n - 1) + r - p, "base edge count identity fails");
    GTSP_ENSURE(back_total + (n - 1) == rp.base_graph.edge_count(), "support size mismatch");
    GTSP_ENSURE(is_two_vertex_connected(rp.base_graph), "circulation support is not 2-vertex-connected");
    const std::int64_t slack = rp.root_back_arcs >= 2 ? 0 : 1;
    GTSP_ENSURE(r - 2 * p <= f.cost + slack, "|R| - 2|P| exceeds the circulation cost bound");
    for (const auto& [a, b] : rp.pairs) {
        const Edge ea = rp.base_graph.edge(a);
        const Edge eb = rp.base_graph.edge(b);
        VertexId common = -1;
        if (ea.u == eb.u || ea.u == eb.v) common = ea.u;
        if (ea.v == eb.u || ea.v == eb.v) common = ea.v;
        GTSP_ENSURE(common >= 0 && rp.base_graph.degree(common) >= 3, "pair does not meet at a vertex of degree 3 or more");
    }
    return rp;
}

EdgeId add_base_edge(RemovablePairing& rp, VertexId a, VertexId b, EdgeId parent) {
    const EdgeId e = rp.base_graph.add_edge(a, b);
    rp.base_to_parent.push_back(parent);
    return e;
}

namespace {

bool connected_without(const Graph& g, const std::vector<char>& removed) {
    const int n = g.vertex_count();
    if (n <= 1) return true;
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<VertexId> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        const VertexId v = stack.back();
        stack.pop_back();
        for (EdgeId e : g.incident(v)) {
            if (removed[static_cast<std::size_t>(e)]) continue;
            const VertexId w = g.other(e, v);
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = 1;
                ++count;
                stack.push_back(w);
            }
        }
    }
    return count == n;
}

}  // namespace

bool verify_removable_pairing(const RemovablePairing& rp, int max_exhaustive_pairs, int samples, std::uint64_t seed) {
    const Graph& g = rp.base_graph;
    std::vector<char> base(static_cast<std::size_t>(g.edge_count()), 0);
    std::set<EdgeId> paired;
    for (const auto& [a, b] : rp.pairs) {
        if (!paired.insert(a).second || !paired.insert(b).second) return false;
        if (!rp.is_removable(a) || !rp.is_removable(b)) return false;
    }
    for (EdgeId e : rp.removable) {
        if (!paired.count(e)) base[static_cast<std::size_t>(e)] = 1;
    }
    const std::size_t p = rp.pairs.size();
    auto check = [&](std::uint64_t mask) {
        std::vector<char> removed = base;
        for (std::size_t i = 0; i < p; ++i) {
            const auto& pr = rp.pairs[i];
            removed[static_cast<std::size_t>((mask >> i) & 1 ? pr.second : pr.first)] = 1;
        }
        return connected_without(g, removed);
    };
    if (static_cast<int>(p) <= max_exhaustive_pairs) {
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << p); ++mask) {
            if (!check(mask)) return false;
        }
        return true;
    }
    std::mt19937_64 rng(seed);
    for (int i = 0; i < samples; ++i) {
        std::vector<char> removed = base;
        for (const auto& pr : rp.pairs) removed[static_cast<std::size_t>(rng() & 1 ? pr.second : pr.first)] = 1;
        if (!connected_without(g, removed)) return false;
    }
    return true;
}

CubicExpansion cubic_expand(const RemovablePairing& rp) {
    const Graph& base = rp.base_graph;
    const int n = base.vertex_count();
    if (n < 3) throw InputError("cubic_expand: need at least three vertices");

    std::map<EdgeId, EdgeId> partner;
    for (const auto& [a, b] : rp.pairs) {
        partner[a] = b;
        partner[b] = a;
    }

    CubicExpansion exp;
    // attach[e] = expansion endpoints of base edge e, for (u, v) of the edge.
    std::vector<std::pair<VertexId, VertexId>> attach(static_cast<std::size_t>(base.edge_count()), {-1, -1});
    auto set_attach = [&](EdgeId e, VertexId v, VertexId x) {
        auto& slot = attach[static_cast<std::size_t>(e)];
        (base.edge(e).u == v ? slot.first : slot.second) = x;
    };
    std::vector<std::pair<VertexId, VertexId>> gadget_edges;
    int next = 0;
    auto fresh = [&](VertexId origin) {
        exp.vertex_origin.push_back(origin);
        return next++;
    };

    for (VertexId v = 0; v < n; ++v) {
        std::vector<EdgeId> inc(base.incident(v).begin(), base.incident(v).end());
        std::sort(inc.begin(), inc.end());
        const int d = static_cast<int>(inc.size());
        GTSP_ENSURE(d >= 2, "base vertex of degree below two");
        if (d == 2) {
            const int north = fresh(v), west = fresh(v), south = fresh(v), east = fresh(v);
            gadget_edges.insert(gadget_edges.end(), {{north, west}, {west, south}, {south, east}, {east, north}, {west, east}});
            set_attach(inc[0], v, north);
            set_attach(inc[1], v, south);
            continue;
        }
        if (d == 3) {
            const int x = fresh(v);
            for (EdgeId e : inc) set_attach(e, v, x);
            continue;
        }
        // Group edges: pairs meeting at v first, then the rest in id order.
        std::vector<std::vector<EdgeId>> groups;
        std::set<EdgeId> used;
        for (EdgeId e : inc) {
            const auto it = partner.find(e);
            if (it == partner.end() || used.count(e)) continue;
            const EdgeId f = it->second;
            if (!std::binary_search(inc.begin(), inc.end(), f)) continue;
            groups.push_back({e, f});
            used.insert(e);
            used.insert(f);
        }
        std::vector<EdgeId> rest;
        for (EdgeId e : inc) {
            if (!used.count(e)) rest.push_back(e);
        }
        for (std::size_t i = 0; i + 1 < rest.size(); i += 2) groups.push_back({rest[i], rest[i + 1]});
        const int leaves = d / 2;
        GTSP_ENSURE(static_cast<int>(groups.size()) == leaves, "could not pack incident edges into leaves");

        std::vector<int> leaf(static_cast<std::size_t>(leaves));
        for (int i = 0; i < leaves; ++i) {
            leaf[static_cast<std::size_t>(i)] = fresh(v);
            for (EdgeId e : groups[static_cast<std::size_t>(i)]) set_attach(e, v, leaf[static_cast<std::size_t>(i)]);
        }
        // Caterpillar with internal degree 3.
        std::vector<std::pair<int, int>> tree;
        if (leaves == 2) {
            tree.emplace_back(leaf[0], leaf[1]);
        } else {
            std::vector<int> spine(static_cast<std::size_t>(leaves - 2));
            for (auto& c : spine) c = fresh(v);
            for (std::size_t i = 0; i + 1 < spine.size(); ++i) tree.emplace_back(spine[i], spine[i + 1]);
            tree.emplace_back(spine.front(), leaf[0]);
            for (int i = 1; i + 1 < leaves; ++i) tree.emplace_back(spine[static_cast<std::size_t>(i - 1)], leaf[static_cast<std::size_t>(i)]);
            tree.emplace_back(spine.back(), leaf.back());
        }
        if (d % 2 == 1) {
            // Binary root subdivides the tree edge at the last leaf and takes the leftover edge.
            const int root = fresh(v);
            auto& last = tree.back();
            const int other = last.first == leaf.back() ? last.second : last.first;
            last = {other, root};
            tree.emplace_back(root, leaf.back());
            set_attach(rest.back(), v, root);
        }
        gadget_edges.insert(gadget_edges.end(), tree.begin(), tree.end());
    }

    exp.cubic_graph = Graph(next);
    for (EdgeId e = 0; e < base.edge_count(); ++e) {
        const auto [a, b] = attach[static_cast<std::size_t>(e)];
        GTSP_ENSURE(a >= 0 && b >= 0, "base edge left unattached");
        exp.core_image.push_back(exp.cubic_graph.add_edge(a, b));
        exp.core_edge.push_back(e);
    }
    for (const auto& [a, b] : gadget_edges) {
        exp.cubic_graph.add_edge(a, b);
        exp.core_edge.push_back(-1);
    }

    for (VertexId x = 0; x < next; ++x) GTSP_ENSURE(exp.cubic_graph.degree(x) == 3, "expansion is not cubic");
    GTSP_ENSURE(is_connected(exp.cubic_graph) && bridges(exp.cubic_graph).empty(), "expansion is not 2-edge-connected");
    for (const auto& [a, b] : rp.pairs) {
        const Edge ea = exp.cubic_graph.edge(exp.core_image[static_cast<std::size_t>(a)]);
        const Edge eb = exp.cubic_graph.edge(exp.core_image[static_cast<std::size_t>(b)]);
        GTSP_ENSURE(ea.u == eb.u || ea.u == eb.v || ea.v == eb.u || ea.v == eb.v, "pair not co-located in the expansion");
    }
    return exp;
}

std::vector<std::int64_t> assign_weights(const CubicExpansion& exp, const RemovablePairing& rp, std::optional<EdgeId> e_prime, int dist) {
    if (e_prime && (*e_prime < 0 || *e_prime >= rp.base_graph.edge_count())) throw InputError("assign_weights: e' is not a core edge");
    std::vector<std::int64_t> w(exp.core_edge.size(), 0);
    for (std::size_t i = 0; i < exp.core_edge.size(); ++i) {
        const EdgeId e = exp.core_edge[i];
        if (e < 0) continue;
        if (e_prime && e == *e_prime) {
            w[i] = dist;
        } else {
            w[i] = rp.is_removable(e) ? -1 : 1;
        }
    }
    return w;
}

std::vector<Rational> to_rational(const std::vector<std::int64_t>& w) {
    std::vector<Rational> out;
    out.reserve(w.size());
    for (std::int64_t x : w) out.emplace_back(static_cast<long>(x));
    return out;
}

namespace {

// Copies of each base edge after the matching: 0, 1 or 2.
std::vector<int> copies(const RemovablePairing& rp, const CubicExpansion& exp, const PerfectMatching& m) {
    std::vector<int> c(static_cast<std::size_t>(rp.base_graph.edge_count()), 1);
    for (EdgeId x : m.edges) {
        const EdgeId e = exp.core_edge[static_cast<std::size_t>(x)];
        if (e < 0) continue;
        c[static_cast<std::size_t>(e)] = rp.is_removable(e) ? 0 : 2;
    }
    return c;
}

}  // namespace

Multigraph assemble_tour(const RemovablePairing& rp, const CubicExpansion& exp, const PerfectMatching& m) {
    const Graph& base = rp.base_graph;
    GTSP_ENSURE(static_cast<int>(m.edges.size()) * 2 == exp.cubic_graph.vertex_count(), "matching is not perfect");
    const auto c = copies(rp, exp, m);
    Multigraph h(base.vertex_count());
    for (EdgeId e = 0; e < base.edge_count(); ++e) {
        if (c[static_cast<std::size_t>(e)] > 0) h.add(base.edge(e).u, base.edge(e).v, c[static_cast<std::size_t>(e)]);
    }
    std::int64_t weight = 0;
    for (EdgeId e = 0; e < base.edge_count(); ++e) weight += c[static_cast<std::size_t>(e)] - 1;
    for (int deg : h.degrees()) GTSP_ENSURE(deg % 2 == 0, "tour multigraph has an odd vertex");
    GTSP_ENSURE(h.spans_connected(), "tour multigraph is disconnected");
    GTSP_ENSURE(h.size() == base.edge_count() + weight, "edge count differs from |E| + w(M)");
    GTSP_ENSURE(3 * h.size() <= 4 * static_cast<std::int64_t>(base.edge_count()) - 2 * static_cast<std::int64_t>(rp.removable.size()),
                "tour exceeds 4/3|E| - 2/3|R|");
    return h;
}

Multigraph assemble_path(const RemovablePairing& rp, const CubicExpansion& exp, const PerfectMatching& m, EdgeId e_prime,
                         VertexId s, VertexId t, const std::vector<VertexId>& shortest_path) {
    const Graph& base = rp.base_graph;
    GTSP_ENSURE(static_cast<int>(m.edges.size()) * 2 == exp.cubic_graph.vertex_count(), "matching is not perfect");
    GTSP_ENSURE(e_prime >= 0 && e_prime < base.edge_count() && base.edge(e_prime) == make_edge(s, t), "e' is not the {s,t} base edge");
    GTSP_ENSURE(shortest_path.size() >= 2 && shortest_path.front() == s && shortest_path.back() == t, "bad shortest path");
    const std::int64_t dist = static_cast<std::int64_t>(shortest_path.size()) - 1;

    const auto c = copies(rp, exp, m);
    Multigraph h(base.vertex_count());
    for (EdgeId e = 0; e < base.edge_count(); ++e) {
        if (e != e_prime && c[static_cast<std::size_t>(e)] > 0) h.add(base.edge(e).u, base.edge(e).v, c[static_cast<std::size_t>(e)]);
    }
    const int ce = c[static_cast<std::size_t>(e_prime)];
    if (ce != 1) {
        for (std::size_t i = 0; i + 1 < shortest_path.size(); ++i) h.add(shortest_path[i], shortest_path[i + 1]);
    }

    // Affine cost: every other edge as in the tour, e' contributes dist when matched.
    std::int64_t weight = 0;
    std::int64_t removable_rest = 0;
    for (EdgeId e = 0; e < base.edge_count(); ++e) {
        if (e == e_prime) {
            weight += ce == 1 ? 0 : dist;
        } else {
            weight += c[static_cast<std::size_t>(e)] - 1;
            if (rp.is_removable(e)) ++removable_rest;
        }
    }
    const auto deg = h.degrees();
    for (VertexId v = 0; v < base.vertex_count(); ++v) {
        const bool odd = deg[static_cast<std::size_t>(v)] % 2 != 0;
        GTSP_ENSURE(odd == (v == s || v == t), "path multigraph has the wrong odd vertices");
    }
    GTSP_ENSURE(h.spans_connected(), "path multigraph is disconnected");
    const std::int64_t edges = base.edge_count() - 1;
    GTSP_ENSURE(h.size() == edges + weight, "edge count differs from |E| + w(M)");
    GTSP_ENSURE(3 * h.size() <= 4 * edges - 2 * removable_rest + dist, "path exceeds 4/3|E| - 2/3|R| + dist/3");
    return h;
}

}  // namespace gtsp
