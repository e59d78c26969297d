#include "gtsp/pipeline.hpp"

#include <algorithm>
#include <queue>
#include <set>

#include "gtsp/circulation.hpp"
#include "gtsp/held_karp.hpp"
#include "gtsp/matching.hpp"
#include "gtsp/oracle.hpp"
#include "gtsp/pairing.hpp"

namespace gtsp {

Rational max_x_cost_bound(int n, const Rational& olp) {
    const Rational coef = 4 * olp - 6 * n;
    const Rational root2 = sgn(coef) >= 0 ? sqrt2_high() : sqrt2_low();
    return 6 * Rational(n) - 3 * olp + root2 * coef;
}

Rational path_main_bound(int n, int dist, const Rational& olp_prime) {
    const Rational coef = Rational(8, 3) * olp_prime - 4 * n;
    const Rational root2 = sgn(coef) >= 0 ? sqrt2_high() : sqrt2_low();
    return Rational(16, 3) * n + Rational(dist, 3) - 2 * olp_prime - Rational(2, 3) + root2 * coef;
}

Rational path_guarantee(const Rational& olp_prime) { return (3 - sqrt2_low()) * olp_prime - 1; }

namespace {

std::int64_t subcubic_tour_bound(int n) { return (4 * static_cast<std::int64_t>(n) - 2) / 3; }

// Circulation route up to the pairing, on a 2-vertex-connected graph h.
struct Prepared {
    RemovablePairing rp;
    std::int64_t cost = 0;
};

Prepared prepare(const Graph& h, const std::vector<Rational>& x, const SolveOptions& opt) {
    const DfsTree tree = dfs_tree_max_x(h, x, 0);
    const CirculationNetwork net = build_network(h, tree);
    const Circulation f = min_cost_circulation(net);
    Prepared p;
    p.cost = circulation_cost_audit(net, f);
    p.rp = extract_pairing(h, net, f);
    if (opt.verify_pairing) GTSP_ENSURE(verify_removable_pairing(p.rp), "extracted pairing fails the deletion test");
    return p;
}

PerfectMatching match(const CubicExpansion& exp, const std::vector<std::int64_t>& w, const SolveOptions& opt) {
    const auto rw = to_rational(w);
    PerfectMatching m = min_weight_perfect_matching(exp.cubic_graph, rw);
    if (opt.on_matching) opt.on_matching(exp.cubic_graph, w, m);
    GTSP_ENSURE(third_bound_check(exp.cubic_graph, rw, m), "matching heavier than a third of the total weight");
    return m;
}

Multigraph finish_tour(const RemovablePairing& rp, const SolveOptions& opt) {
    const CubicExpansion exp = cubic_expand(rp);
    const auto w = assign_weights(exp, rp);
    return assemble_tour(rp, exp, match(exp, w, opt));
}

void report(const SolveOptions& opt, RouteTrace t) {
    if (opt.on_route) opt.on_route(t);
}

Multigraph finish_path(RemovablePairing rp, VertexId s, VertexId t, const ShortestPath& sp, const SolveOptions& opt) {
    EdgeId e_prime = -1;
    if (auto e = rp.base_graph.find_edge(s, t)) {
        e_prime = *e;
    } else {
        e_prime = add_base_edge(rp, s, t, -1);
    }
    const CubicExpansion exp = cubic_expand(rp);
    const auto w = assign_weights(exp, rp, e_prime, sp.distance);
    return assemble_path(rp, exp, match(exp, w, opt), e_prime, s, t, sp.vertices);
}

std::vector<Rational> restrict_x(const std::vector<Rational>& x, const std::vector<EdgeId>& edge_to_parent) {
    std::vector<Rational> out;
    out.reserve(edge_to_parent.size());
    for (EdgeId e : edge_to_parent) out.push_back(x[static_cast<std::size_t>(e)]);
    return out;
}

std::vector<WalkStep> closed_walk(const Multigraph& m, VertexId from) {
    if (m.size() == 0) return {};
    return euler_traversal(m, from, from);
}

void add_mapped(Multigraph& into, const Multigraph& part, const std::vector<VertexId>& to_parent) {
    for (const auto& [e, c] : part.edges()) {
        into.add(to_parent[static_cast<std::size_t>(e.u)], to_parent[static_cast<std::size_t>(e.v)], c);
    }
}

std::string merge_tag(const std::string& a, const std::string& b) {
    if (a.empty() || a == "trivial") return b;
    if (b.empty() || b == "trivial" || a == b) return a;
    return "mixed";
}

std::vector<VertexId> bfs_parents(const Graph& g, VertexId root) {
    std::vector<VertexId> parent(static_cast<std::size_t>(g.vertex_count()), -2);
    parent[static_cast<std::size_t>(root)] = -1;
    std::queue<VertexId> q;
    q.push(root);
    while (!q.empty()) {
        const VertexId v = q.front();
        q.pop();
        std::vector<VertexId> nb;
        for (EdgeId e : g.incident(v)) nb.push_back(g.other(e, v));
        std::sort(nb.begin(), nb.end());
        for (VertexId w : nb) {
            if (parent[static_cast<std::size_t>(w)] != -2) continue;
            parent[static_cast<std::size_t>(w)] = v;
            q.push(w);
        }
    }
    return parent;
}

}  // namespace

TourSolution christofides(const Graph& g, std::optional<Rational> olp) {
    const int n = g.vertex_count();
    if (!is_connected(g)) throw InputError("christofides: graph is disconnected");
    TourSolution sol;
    sol.multigraph = Multigraph(n);
    sol.certificate.chosen = "christofides";
    sol.certificate.blocks = 1;
    if (olp) sol.certificate.olp = *olp;
    if (n <= 1) return sol;

    const auto parent = bfs_parents(g, 0);
    std::vector<int> deg(static_cast<std::size_t>(n), 0);
    for (VertexId v = 1; v < n; ++v) {
        const VertexId p = parent[static_cast<std::size_t>(v)];
        sol.multigraph.add(v, p);
        ++deg[static_cast<std::size_t>(v)];
        ++deg[static_cast<std::size_t>(p)];
    }
    std::vector<VertexId> odd;
    for (VertexId v = 0; v < n; ++v) {
        if (deg[static_cast<std::size_t>(v)] % 2 != 0) odd.push_back(v);
    }
    const auto k = static_cast<int>(odd.size());
    Graph complete(k);
    std::vector<Rational> w;
    std::vector<std::vector<int>> dist;
    for (VertexId v : odd) dist.push_back(bfs_distances(g, v));
    for (int i = 0; i < k; ++i) {
        for (int j = i + 1; j < k; ++j) {
            complete.add_edge(i, j);
            w.emplace_back(dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(odd[static_cast<std::size_t>(j)])]);
        }
    }
    const PerfectMatching m = min_weight_perfect_matching(complete, w);
    for (EdgeId e : m.edges) {
        const auto [i, j] = complete.edge(e);
        const ShortestPath p = bfs_distance(g, odd[static_cast<std::size_t>(i)], odd[static_cast<std::size_t>(j)]);
        for (std::size_t a = 0; a + 1 < p.vertices.size(); ++a) sol.multigraph.add(p.vertices[a], p.vertices[a + 1]);
    }
    sol.edge_count = sol.multigraph.size();
    GTSP_ENSURE(sol.edge_count == n - 1 + m.weight.get_num().get_si(), "edge count differs from n - 1 + matching weight");
    for (int d : sol.multigraph.degrees()) GTSP_ENSURE(d % 2 == 0, "odd vertex after the matching");
    GTSP_ENSURE(sol.multigraph.spans_connected(), "christofides multigraph is disconnected");
    if (olp) {
        sol.certificate.bound_christofides = Rational(n - 1) + *olp / 2;
        GTSP_ENSURE(sol.edge_count <= sol.certificate.bound_christofides, "christofides exceeds n - 1 + OLP/2");
    }
    sol.certificate.christofides_edges = sol.edge_count;
    sol.walk = closed_walk(sol.multigraph, 0);
    return sol;
}

TourSolution solve_block_tour(const Graph& g, const SolveOptions& opt) {
    const int n = g.vertex_count();
    TourSolution sol;
    sol.multigraph = Multigraph(n);
    sol.certificate.blocks = 1;
    if (n == 1) {
        sol.certificate.chosen = "trivial";
        return sol;
    }
    if (n == 2) {
        if (g.edge_count() != 1) throw InputError("solve_block_tour: two vertices without an edge");
        sol.multigraph.add(0, 1, 2);
        sol.edge_count = 2;
        auto& c = sol.certificate;
        c.chosen = "trivial";
        c.olp = 2;
        c.ms_edges = c.christofides_edges = 2;
        c.bound_lemma4 = 2;
        c.bound_christofides = 2;
        sol.walk = closed_walk(sol.multigraph, 0);
        return sol;
    }
    if (!is_two_vertex_connected(g)) throw InputError("solve_block_tour: block is not 2-vertex-connected");

    const LpSolution lp = solve_held_karp(g);
    GTSP_ENSURE(lp.value >= n, "relaxation value below n on a 2-connected graph");
    const Subgraph sup = support_graph(g, lp, opt.verify_support);

    struct Candidate {
        Multigraph h;
        std::int64_t cost = 0;
        Rational bound4;
        bool subcubic = false;
    };
    std::optional<Candidate> best_ms;
    auto consider = [&](Candidate c) {
        if (!best_ms || c.h.size() < best_ms->h.size()) best_ms = std::move(c);
    };

    if (is_two_vertex_connected(sup.graph)) {
        const Prepared p = prepare(sup.graph, restrict_x(lp.x, sup.edge_to_parent), opt);
        GTSP_ENSURE(p.cost <= max_x_cost_bound(n, lp.value), "circulation cost exceeds the max-x DFS bound");
        Candidate c{finish_tour(p.rp, opt), p.cost, Rational(4 * n + 2 * p.cost - 2, 3), false};
        report(opt, {"max-x", n, lp.value, p.cost, max_x_cost_bound(n, lp.value), c.h.size(), c.bound4, 0});
        GTSP_ENSURE(c.h.size() <= c.bound4, "tour exceeds 4n/3 + 2c/3 - 2/3");
        consider(std::move(c));
    } else {
        // Split the support into its blocks; their relaxation values sum to at most OLP(g).
        const TourSolution rec = tsp_tour(sup.graph, opt);
        consider({rec.multigraph, rec.certificate.circulation_cost, rec.certificate.bound_lemma4, rec.certificate.subcubic_route});
    }
    if (g.max_degree() <= 3) {
        const Prepared p = prepare(g, std::vector<Rational>(static_cast<std::size_t>(g.edge_count()), Rational(1)), opt);
        GTSP_ENSURE(p.cost <= 1, "subcubic circulation cost above one");
        GTSP_ENSURE(p.cost == 0 || p.rp.root_back_arcs >= 2, "subcubic cost one without two back arcs at the root");
        Candidate c{finish_tour(p.rp, opt), p.cost, Rational(4 * n + 2 * p.cost - 2, 3), true};
        report(opt, {"subcubic", n, lp.value, p.cost, std::nullopt, c.h.size(), c.bound4, 0});
        GTSP_ENSURE(c.h.size() <= c.bound4, "tour exceeds 4n/3 + 2c/3 - 2/3");
        GTSP_ENSURE(c.h.size() <= subcubic_tour_bound(n), "subcubic tour exceeds 4n/3 - 2/3");
        consider(std::move(c));
    }

    const TourSolution chr = christofides(g, lp.value);
    report(opt, {"christofides", n, lp.value, 0, std::nullopt, chr.edge_count, chr.certificate.bound_christofides, 0});
    auto& cert = sol.certificate;
    cert.olp = lp.value;
    cert.circulation_cost = best_ms->cost;
    cert.ms_edges = best_ms->h.size();
    cert.christofides_edges = chr.edge_count;
    cert.bound_lemma4 = best_ms->bound4;
    cert.bound_christofides = chr.certificate.bound_christofides;
    cert.subcubic_route = best_ms->subcubic;
    if (cert.ms_edges <= cert.christofides_edges) {
        sol.multigraph = best_ms->h;
        cert.chosen = "algorithm1";
    } else {
        sol.multigraph = chr.multigraph;
        cert.chosen = "christofides";
    }
    sol.edge_count = sol.multigraph.size();
    if (g.max_degree() <= 3) GTSP_ENSURE(sol.edge_count <= subcubic_tour_bound(n), "subcubic tour exceeds 4n/3 - 2/3");
    GTSP_ENSURE(sol.edge_count >= lp.value, "tour shorter than the relaxation value");
    sol.walk = closed_walk(sol.multigraph, 0);
    return sol;
}

TourSolution tsp_tour(const Graph& g, const SolveOptions& opt) {
    const int n = g.vertex_count();
    if (!is_connected(g)) throw InputError("tsp_tour: graph is disconnected");
    if (n <= 2 || is_two_vertex_connected(g)) return solve_block_tour(g, opt);

    const BlockDecomposition bd = blocks(g);
    TourSolution sol;
    sol.multigraph = Multigraph(n);
    auto& cert = sol.certificate;
    bool all_subcubic = true;
    for (const auto& vs : bd.blocks) {
        const Subgraph sub = induced_subgraph(g, vs);
        if (sub.graph.max_degree() > 3) all_subcubic = false;
        const TourSolution part = solve_block_tour(sub.graph, opt);
        add_mapped(sol.multigraph, part.multigraph, sub.vertex_to_parent);
        const auto& pc = part.certificate;
        cert.olp += pc.olp;
        cert.circulation_cost += pc.circulation_cost;
        cert.ms_edges += pc.ms_edges;
        cert.christofides_edges += pc.christofides_edges;
        cert.bound_lemma4 += pc.bound_lemma4;
        cert.bound_christofides += pc.bound_christofides;
        cert.chosen = merge_tag(cert.chosen, pc.chosen);
        cert.blocks += pc.blocks;
        cert.subcubic_route = cert.subcubic_route || pc.subcubic_route;
    }
    if (cert.chosen.empty()) cert.chosen = "trivial";
    sol.edge_count = sol.multigraph.size();
    for (int d : sol.multigraph.degrees()) GTSP_ENSURE(d % 2 == 0, "glued tour has an odd vertex");
    GTSP_ENSURE(sol.multigraph.spans_connected(), "glued tour is disconnected");
    const auto k = static_cast<std::int64_t>(bd.blocks.size());
    if (all_subcubic) GTSP_ENSURE(3 * sol.edge_count <= 4 * static_cast<std::int64_t>(n) + 2 * k - 4, "block bound 4n/3 + 2k/3 - 4/3 fails");
    sol.walk = closed_walk(sol.multigraph, 0);
    return sol;
}

PathSolution doubled_tree_path(const Graph& g, VertexId s, VertexId t) {
    const int n = g.vertex_count();
    if (!g.valid_vertex(s) || !g.valid_vertex(t)) throw InputError("doubled_tree_path: endpoint out of range");
    if (!is_connected(g)) throw InputError("doubled_tree_path: graph is disconnected");
    const auto parent = bfs_parents(g, s);
    std::set<Edge> on_path;
    for (VertexId v = t; v != s; v = parent[static_cast<std::size_t>(v)]) on_path.insert(make_edge(v, parent[static_cast<std::size_t>(v)]));
    PathSolution sol;
    sol.s = s;
    sol.t = t;
    sol.multigraph = Multigraph(n);
    for (VertexId v = 0; v < n; ++v) {
        if (v == s) continue;
        const Edge e = make_edge(v, parent[static_cast<std::size_t>(v)]);
        sol.multigraph.add(e.u, e.v, on_path.count(e) ? 1 : 2);
    }
    const auto dist_t = static_cast<std::int64_t>(on_path.size());
    sol.edge_count = sol.multigraph.size();
    GTSP_ENSURE(sol.edge_count == 2 * static_cast<std::int64_t>(n - 1) - dist_t, "doubled tree count mismatch");
    sol.walk = sol.edge_count == 0 ? std::vector<WalkStep>{} : euler_traversal(sol.multigraph, s, t);
    auto& c = sol.certificate;
    c.baseline_edges = sol.edge_count;
    c.bound_baseline = sol.edge_count;
    c.dist = static_cast<int>(dist_t);
    c.chosen = "doubled-tree";
    c.blocks = 1;
    return sol;
}

namespace {

PathSolution from_tour(TourSolution tour, VertexId s) {
    PathSolution p;
    p.s = p.t = s;
    p.multigraph = std::move(tour.multigraph);
    p.edge_count = tour.edge_count;
    p.walk = closed_walk(p.multigraph, s);
    auto& c = p.certificate;
    c.lower_bound = tour.certificate.olp;
    c.olp_path = tour.certificate.olp;
    c.circulation_cost = tour.certificate.circulation_cost;
    c.ms_edges = tour.certificate.ms_edges;
    c.baseline_edges = tour.certificate.christofides_edges;
    c.bound_baseline = 2 * static_cast<std::int64_t>(p.multigraph.vertex_count() - 1);
    c.bound_main = tour.certificate.bound_lemma4;
    c.chosen = tour.certificate.chosen;
    c.blocks = tour.certificate.blocks;
    return p;
}

}  // namespace

PathSolution solve_block_path(const Graph& g, VertexId s, VertexId t, const SolveOptions& opt) {
    const int n = g.vertex_count();
    if (!g.valid_vertex(s) || !g.valid_vertex(t)) throw InputError("solve_block_path: endpoint out of range");
    if (s == t) return from_tour(solve_block_tour(g, opt), s);

    PathSolution sol;
    sol.s = s;
    sol.t = t;
    auto& cert = sol.certificate;
    cert.blocks = 1;
    cert.constant_c = 2 - sqrt2_low();
    if (n == 2) {
        if (g.edge_count() != 1) throw InputError("solve_block_path: two vertices without an edge");
        sol.multigraph = Multigraph(2);
        sol.multigraph.add(0, 1);
        sol.edge_count = 1;
        sol.walk = euler_traversal(sol.multigraph, s, t);
        cert.lower_bound = 1;
        cert.olp_path = 1;
        cert.olp_prime = 2;
        cert.dist = 1;
        cert.d = Rational(1, 2);
        cert.zeta = Rational(1, 2);
        cert.ms_edges = cert.baseline_edges = cert.bound_baseline = 1;
        cert.bound_main = 1;
        cert.chosen = "trivial";
        return sol;
    }
    if (!is_two_vertex_connected(g)) throw InputError("solve_block_path: block is not 2-vertex-connected");

    const ShortestPath sp = bfs_distance(g, s, t);
    Graph gp = g;
    if (!gp.has_edge(s, t)) gp.add_edge(s, t);
    const LpSolution lp_prime = solve_held_karp(gp);
    const LpSolution lp_path = solve_held_karp_path(g, s, t);
    GTSP_ENSURE(lp_prime.value <= lp_path.value + 1, "OLP(G') exceeds OLP(G,s,t) + 1");
    cert.olp_prime = lp_prime.value;
    cert.olp_path = lp_path.value;
    cert.lower_bound = lp_prime.value - 1;
    cert.dist = sp.distance;
    cert.d = Rational(sp.distance, n);
    cert.zeta = (lp_prime.value - 1) / n;

    const PathSolution base = doubled_tree_path(g, s, t);
    cert.baseline_edges = base.edge_count;
    cert.bound_baseline = base.edge_count;
    GTSP_ENSURE(base.edge_count == 2 * static_cast<std::int64_t>(n - 1) - sp.distance, "BFS tree path is not shortest");
    report(opt, {"doubled-tree", n, lp_prime.value, 0, std::nullopt, base.edge_count,
                 Rational(2 * static_cast<std::int64_t>(n - 1) - sp.distance), sp.distance});

    if (opt.oracle_cutoff > 0 && n < opt.oracle_cutoff) {
        const OracleResult o = oracle_path(g, s, t, std::min(opt.oracle_cutoff, kOracleHardCap));
        sol.multigraph = realize_order(g, o.order, false);
        sol.edge_count = sol.multigraph.size();
        GTSP_ENSURE(sol.edge_count == o.optimum, "oracle walk length mismatch");
        GTSP_ENSURE(sol.edge_count <= base.edge_count, "oracle worse than the doubled tree");
        cert.ms_edges = sol.edge_count;
        cert.bound_main = sol.edge_count;
        cert.chosen = "oracle";
        sol.walk = euler_traversal(sol.multigraph, s, t);
        return sol;
    }

    const bool subcubic = g.max_degree() <= 3;
    Multigraph main;
    bool guaranteed = false;
    if (subcubic) {
        const Prepared p = prepare(g, std::vector<Rational>(static_cast<std::size_t>(g.edge_count()), Rational(1)), opt);
        GTSP_ENSURE(p.cost <= 1, "subcubic circulation cost above one");
        GTSP_ENSURE(p.cost == 0 || p.rp.root_back_arcs >= 2, "subcubic cost one without two back arcs at the root");
        main = finish_path(p.rp, s, t, sp, opt);
        cert.circulation_cost = p.cost;
        cert.bound_main = Rational(4 * n - 2 + sp.distance, 3);
        guaranteed = true;
        report(opt, {"path-subcubic", n, lp_prime.value, p.cost, std::nullopt, main.size(), cert.bound_main, sp.distance});
    } else {
        const Subgraph sup = support_graph(gp, lp_prime, opt.verify_support);
        if (is_two_vertex_connected(sup.graph)) {
            const Prepared p = prepare(sup.graph, restrict_x(lp_prime.x, sup.edge_to_parent), opt);
            GTSP_ENSURE(p.cost <= max_x_cost_bound(n, lp_prime.value), "circulation cost exceeds the max-x DFS bound");
            main = finish_path(p.rp, s, t, sp, opt);
            cert.circulation_cost = p.cost;
            cert.bound_main = path_main_bound(n, sp.distance, lp_prime.value);
            report(opt, {"path-max-x", n, lp_prime.value, p.cost, max_x_cost_bound(n, lp_prime.value), main.size(),
                         cert.bound_main, sp.distance});
            GTSP_ENSURE(main.size() <= cert.bound_main, "path exceeds the main bound");
            guaranteed = true;
        } else {
            // No bounded-support DFS here; run on G' itself with its LP values.
            const Prepared p = prepare(gp, lp_prime.x, opt);
            main = finish_path(p.rp, s, t, sp, opt);
            cert.circulation_cost = p.cost;
            cert.bound_main = Rational(4 * n + 2 * p.cost - 2 + sp.distance, 3);
            report(opt, {"path-fallback", n, lp_prime.value, p.cost, std::nullopt, main.size(), cert.bound_main, sp.distance});
        }
    }
    GTSP_ENSURE(3 * main.size() <= 4 * static_cast<std::int64_t>(n) + 2 * cert.circulation_cost - 2 + sp.distance,
                "path exceeds 4n/3 + 2c/3 - 2/3 + dist/3");
    cert.ms_edges = main.size();
    if (cert.ms_edges <= base.edge_count) {
        sol.multigraph = std::move(main);
        cert.chosen = "algorithm1";
    } else {
        sol.multigraph = base.multigraph;
        cert.chosen = "doubled-tree";
    }
    sol.edge_count = sol.multigraph.size();
    if (guaranteed) GTSP_ENSURE(sol.edge_count <= path_guarantee(lp_prime.value), "path exceeds (3 - sqrt2) OLP(G') - 1");
    if (subcubic) {
        GTSP_ENSURE(6 * sol.edge_count <= 8 * static_cast<std::int64_t>(n) - 4 + std::min(2 * sp.distance, n),
                    "subcubic path exceeds 4n/3 - 2/3 + min(dist, n/2)/3");
    }
    GTSP_ENSURE(sol.edge_count >= cert.lower_bound, "path shorter than its lower bound");
    sol.walk = euler_traversal(sol.multigraph, s, t);
    return sol;
}

namespace {

struct PathParts {
    Multigraph h;
    PathCertificate cert;
};

void accumulate(PathCertificate& into, const PathCertificate& c) {
    into.lower_bound += c.lower_bound;
    into.circulation_cost += c.circulation_cost;
    into.ms_edges += c.ms_edges;
    into.baseline_edges += c.baseline_edges;
    into.bound_main += c.bound_main;
    into.bound_baseline += c.bound_baseline;
    into.chosen = merge_tag(into.chosen, c.chosen);
    into.blocks += c.blocks;
}

PathParts path_rec(const Graph& g, VertexId s, VertexId t, const SolveOptions& opt) {
    const int n = g.vertex_count();
    if (n <= 2 || is_two_vertex_connected(g)) {
        PathSolution p = solve_block_path(g, s, t, opt);
        return {std::move(p.multigraph), std::move(p.certificate)};
    }
    const BlockDecomposition bd = blocks(g);
    const VertexId v = *std::min_element(bd.cut_vertices.begin(), bd.cut_vertices.end());
    // Components of g - v, labelled in order of their smallest vertex.
    std::vector<int> comp(static_cast<std::size_t>(n), -1);
    int count = 0;
    for (VertexId r = 0; r < n; ++r) {
        if (r == v || comp[static_cast<std::size_t>(r)] >= 0) continue;
        std::vector<VertexId> stack{r};
        comp[static_cast<std::size_t>(r)] = count;
        while (!stack.empty()) {
            const VertexId a = stack.back();
            stack.pop_back();
            for (EdgeId e : g.incident(a)) {
                const VertexId b = g.other(e, a);
                if (b == v || comp[static_cast<std::size_t>(b)] >= 0) continue;
                comp[static_cast<std::size_t>(b)] = count;
                stack.push_back(b);
            }
        }
        ++count;
    }
    GTSP_ENSURE(count >= 2, "cut vertex does not separate");
    PathParts out{Multigraph(n), {}};
    for (int i = 0; i < count; ++i) {
        std::vector<VertexId> vs;
        for (VertexId a = 0; a < n; ++a) {
            if (a == v || comp[static_cast<std::size_t>(a)] == i) vs.push_back(a);
        }
        const Subgraph sub = induced_subgraph(g, vs);
        auto local = [&](VertexId a) {
            return static_cast<VertexId>(std::lower_bound(vs.begin(), vs.end(), a) - vs.begin());
        };
        const VertexId si = (s != v && comp[static_cast<std::size_t>(s)] == i) ? s : v;
        const VertexId ti = (t != v && comp[static_cast<std::size_t>(t)] == i) ? t : v;
        PathParts part = path_rec(sub.graph, local(si), local(ti), opt);
        add_mapped(out.h, part.h, sub.vertex_to_parent);
        accumulate(out.cert, part.cert);
    }
    return out;
}

}  // namespace

PathSolution tsp_path(const Graph& g, VertexId s, VertexId t, const SolveOptions& opt) {
    if (!g.valid_vertex(s) || !g.valid_vertex(t)) throw InputError("tsp_path: endpoint out of range");
    if (!is_connected(g)) throw InputError("tsp_path: graph is disconnected");
    if (s == t) return from_tour(tsp_tour(g, opt), s);
    const int n = g.vertex_count();
    if (n <= 2 || is_two_vertex_connected(g)) return solve_block_path(g, s, t, opt);

    PathParts parts = path_rec(g, s, t, opt);
    PathSolution sol;
    sol.s = s;
    sol.t = t;
    sol.multigraph = std::move(parts.h);
    sol.certificate = std::move(parts.cert);
    sol.edge_count = sol.multigraph.size();
    sol.walk = euler_traversal(sol.multigraph, s, t);

    auto& cert = sol.certificate;
    const ShortestPath sp = bfs_distance(g, s, t);
    Graph gp = g;
    if (!gp.has_edge(s, t)) gp.add_edge(s, t);
    cert.olp_prime = solve_held_karp(gp).value;
    cert.olp_path = solve_held_karp_path(g, s, t).value;
    cert.dist = sp.distance;
    cert.d = Rational(sp.distance, n);
    cert.zeta = (cert.olp_prime - 1) / n;
    cert.constant_c = 2 - sqrt2_low();
    GTSP_ENSURE(cert.lower_bound <= cert.olp_path, "block lower bounds exceed OLP(G,s,t)");
    GTSP_ENSURE(sol.edge_count >= cert.lower_bound, "path shorter than its lower bound");
    return sol;
}

}  // namespace gtsp
