#include "gtsp/generators.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace gtsp {

Rng::Rng(std::uint64_t seed) : engine_(seed) {}

std::uint64_t Rng::next() { return engine_(); }

std::uint64_t Rng::below(std::uint64_t bound) {
    if (bound == 0) throw InputError("Rng::below: empty range");
    // Rejection keeps the draw exactly uniform.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x = 0;
    do {
        x = next();
    } while (x >= limit);
    return x % bound;
}

int Rng::between(int lo, int hi) {
    if (hi < lo) throw InputError("Rng::between: empty range");
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

namespace {

using EdgeList = std::vector<std::pair<VertexId, VertexId>>;

Graph finish(int n, EdgeList edges, Rng* relabel) {
    if (relabel) {
        std::vector<VertexId> perm(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
        relabel->shuffle(perm);
        for (auto& [a, b] : edges) {
            a = perm[static_cast<std::size_t>(a)];
            b = perm[static_cast<std::size_t>(b)];
        }
    }
    for (auto& [a, b] : edges) {
        if (a > b) std::swap(a, b);
    }
    std::sort(edges.begin(), edges.end());
    return Graph::from_edges(n, edges);
}

}  // namespace

Graph gen_gap_tour(int k) {
    if (k < 1) throw InputError("gen_gap_tour: k must be at least 1");
    const int len = k + 1;
    const int n = 3 * len;
    EdgeList edges;
    for (int p = 0; p < 3; ++p) {
        for (int j = 0; j < k; ++j) edges.emplace_back(p * len + j, p * len + j + 1);
    }
    for (int p = 0; p < 3; ++p) {
        for (int q = p + 1; q < 3; ++q) {
            edges.emplace_back(p * len, q * len);
            edges.emplace_back(p * len + k, q * len + k);
        }
    }
    return finish(n, std::move(edges), nullptr);
}

PathInstance gen_gap_path(int k) {
    PathInstance inst;
    inst.graph = gen_gap_tour(k);
    inst.s = k / 2;
    inst.t = (k + 1) + (k + 1) / 2;
    if (inst.s == inst.t) inst.t = k + 1;
    return inst;
}

Graph gen_random_2vc(int n, int m, std::uint64_t seed) {
    if (n == 2 && m == 1) return Graph::from_edges(2, EdgeList{{0, 1}});
    if (n < 3) throw InputError("gen_random_2vc: need n >= 3");
    const std::int64_t max_m = static_cast<std::int64_t>(n) * (n - 1) / 2;
    if (m < n || m > max_m) throw InputError("gen_random_2vc: need n <= m <= n(n-1)/2");
    Rng rng(seed);
    const int ears = m - n;
    const int c = ears == 0 ? n : rng.between(3, n);
    std::vector<int> internal(static_cast<std::size_t>(ears), 0);
    for (int i = 0; i < n - c; ++i) ++internal[static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(ears)))];

    EdgeList edges;
    std::set<std::pair<VertexId, VertexId>> present;
    auto add = [&](VertexId a, VertexId b) {
        edges.emplace_back(a, b);
        present.insert({std::min(a, b), std::max(a, b)});
    };
    for (int i = 0; i < c; ++i) add(i, (i + 1) % c);
    int next = c;
    // Ears carrying new vertices first, chords once every vertex exists.
    for (int len : internal) {
        if (len == 0) continue;
        const auto a = static_cast<VertexId>(rng.below(static_cast<std::uint64_t>(next)));
        auto b = static_cast<VertexId>(rng.below(static_cast<std::uint64_t>(next - 1)));
        if (b >= a) ++b;
        VertexId prev = a;
        for (int j = 0; j < len; ++j) {
            add(prev, next);
            prev = next++;
        }
        add(prev, b);
    }
    for (int len : internal) {
        if (len != 0) continue;
        std::vector<std::pair<VertexId, VertexId>> free;
        for (VertexId a = 0; a < n; ++a) {
            for (VertexId b = a + 1; b < n; ++b) {
                if (!present.count({a, b})) free.emplace_back(a, b);
            }
        }
        const auto pick = free[static_cast<std::size_t>(rng.below(free.size()))];
        add(pick.first, pick.second);
    }
    Graph g = finish(n, std::move(edges), &rng);
    GTSP_ENSURE(g.edge_count() == m && is_two_vertex_connected(g), "ear decomposition went wrong");
    return g;
}

Graph gen_random_cubic(int n, std::uint64_t seed) {
    if (n < 4 || n % 2 != 0) throw InputError("gen_random_cubic: n must be even and at least 4");
    Rng rng(seed);
    for (int attempt = 0; attempt < 100000; ++attempt) {
        std::vector<VertexId> points;
        for (VertexId v = 0; v < n; ++v) points.insert(points.end(), {v, v, v});
        rng.shuffle(points);
        EdgeList edges;
        std::set<std::pair<VertexId, VertexId>> seen;
        bool ok = true;
        for (std::size_t i = 0; i < points.size() && ok; i += 2) {
            const VertexId a = std::min(points[i], points[i + 1]);
            const VertexId b = std::max(points[i], points[i + 1]);
            if (a == b || !seen.insert({a, b}).second) ok = false;
            edges.emplace_back(a, b);
        }
        if (!ok) continue;
        Graph g = finish(n, std::move(edges), nullptr);
        if (is_two_vertex_connected(g)) return g;
    }
    throw InputError("gen_random_cubic: no simple 2-connected sample found");
}

Graph gen_random_subcubic(int n, std::uint64_t seed) {
    if (n < 3) throw InputError("gen_random_subcubic: need n >= 3");
    Rng rng(seed);
    if (n < 4) return gen_cycle(n);
    // 0 picks a plain cycle, otherwise half the size of the cubic core.
    const int half = rng.between(1, n / 2);
    if (half == 1) return finish(n, [&] {
        EdgeList e;
        for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
        return e;
    }(), &rng);
    const int core = 2 * half;
    const Graph cubic = gen_random_cubic(core, rng.next());
    EdgeList edges(cubic.edges().size());
    for (std::size_t i = 0; i < edges.size(); ++i) edges[i] = {cubic.edges()[i].u, cubic.edges()[i].v};
    int next = core;
    for (int i = core; i < n; ++i) {
        const auto pick = static_cast<std::size_t>(rng.below(edges.size()));
        const auto [a, b] = edges[pick];
        edges[pick] = {a, next};
        edges.emplace_back(next, b);
        ++next;
    }
    Graph g = finish(n, std::move(edges), &rng);
    GTSP_ENSURE(g.max_degree() <= 3 && is_two_vertex_connected(g), "subdivision broke the family contract");
    return g;
}

Graph gen_random_blocky(int k, int max_block, bool subcubic, std::uint64_t seed) {
    if (k < 1 || max_block < 2) throw InputError("gen_random_blocky: need k >= 1 and max_block >= 2");
    Rng rng(seed);
    EdgeList edges;
    int n = 0;
    for (int i = 0; i < k; ++i) {
        const int size = rng.between(2, max_block);
        Graph block;
        if (size == 2) {
            block = gen_path_graph(2);
        } else if (subcubic) {
            block = gen_random_subcubic(size, rng.next());
        } else {
            const int hi = std::min(2 * size, size * (size - 1) / 2);
            block = gen_random_2vc(size, rng.between(size, hi), rng.next());
        }
        std::vector<VertexId> map(static_cast<std::size_t>(size));
        int start = 0;
        if (n > 0) {
            map[0] = static_cast<VertexId>(rng.below(static_cast<std::uint64_t>(n)));
            start = 1;
        }
        for (int v = start; v < size; ++v) map[static_cast<std::size_t>(v)] = n++;
        for (const Edge& e : block.edges()) edges.emplace_back(map[static_cast<std::size_t>(e.u)], map[static_cast<std::size_t>(e.v)]);
    }
    return finish(n, std::move(edges), &rng);
}

Graph gen_grid(int a, int b) {
    if (a < 1 || b < 1) throw InputError("gen_grid: sides must be positive");
    EdgeList edges;
    for (int r = 0; r < a; ++r) {
        for (int c = 0; c < b; ++c) {
            if (c + 1 < b) edges.emplace_back(r * b + c, r * b + c + 1);
            if (r + 1 < a) edges.emplace_back(r * b + c, (r + 1) * b + c);
        }
    }
    return finish(a * b, std::move(edges), nullptr);
}

Graph gen_cycle(int n) {
    if (n < 3) throw InputError("gen_cycle: need n >= 3");
    EdgeList edges;
    for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
    return finish(n, std::move(edges), nullptr);
}

Graph gen_path_graph(int n) {
    if (n < 1) throw InputError("gen_path_graph: need n >= 1");
    EdgeList edges;
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return finish(n, std::move(edges), nullptr);
}

Graph gen_complete(int n) {
    if (n < 1) throw InputError("gen_complete: need n >= 1");
    EdgeList edges;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    }
    return finish(n, std::move(edges), nullptr);
}

Graph gen_petersen() {
    EdgeList edges;
    for (int i = 0; i < 5; ++i) {
        edges.emplace_back(i, (i + 1) % 5);
        edges.emplace_back(i, i + 5);
        edges.emplace_back(i + 5, (i + 2) % 5 + 5);
    }
    return finish(10, std::move(edges), nullptr);
}

InstanceSpec parse_instance_spec(const std::string& line) {
    InstanceSpec spec;
    spec.text = line;
    std::istringstream ss(line);
    ss >> spec.family;
    std::replace(spec.family.begin(), spec.family.end(), '-', '_');
    std::string arg;
    while (ss >> arg) spec.args.push_back(arg);
    if (spec.family.empty()) throw InputError("empty instance spec");
    return spec;
}

namespace {

std::int64_t to_int(const std::string& s) {
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw InputError("not an integer: '" + s + "'");
    return v;
}

int small_int(const std::string& s) {
    const std::int64_t v = to_int(s);
    if (v < 0 || v > (1 << 20)) throw InputError("argument out of range: " + s);
    return static_cast<int>(v);
}

void arity(const InstanceSpec& spec, std::size_t lo, std::size_t hi) {
    if (spec.args.size() < lo || spec.args.size() > hi) {
        throw InputError("wrong number of arguments for family '" + spec.family + "'");
    }
}

}  // namespace

Graph generate(const InstanceSpec& spec) {
    const auto& a = spec.args;
    const std::string& f = spec.family;
    if (f == "gap_tour") {
        arity(spec, 1, 1);
        return gen_gap_tour(small_int(a[0]));
    }
    if (f == "gap_path") {
        arity(spec, 1, 1);
        return gen_gap_path(small_int(a[0])).graph;
    }
    if (f == "random_2vc") {
        arity(spec, 3, 3);
        return gen_random_2vc(small_int(a[0]), small_int(a[1]), static_cast<std::uint64_t>(to_int(a[2])));
    }
    if (f == "random_cubic") {
        arity(spec, 2, 2);
        return gen_random_cubic(small_int(a[0]), static_cast<std::uint64_t>(to_int(a[1])));
    }
    if (f == "random_subcubic") {
        arity(spec, 2, 2);
        return gen_random_subcubic(small_int(a[0]), static_cast<std::uint64_t>(to_int(a[1])));
    }
    if (f == "blocky") {
        arity(spec, 3, 4);
        const bool sub = a.size() == 4 && to_int(a[3]) != 0;
        return gen_random_blocky(small_int(a[0]), small_int(a[1]), sub, static_cast<std::uint64_t>(to_int(a[2])));
    }
    if (f == "grid") {
        arity(spec, 2, 2);
        return gen_grid(small_int(a[0]), small_int(a[1]));
    }
    if (f == "cycle") {
        arity(spec, 1, 1);
        return gen_cycle(small_int(a[0]));
    }
    if (f == "path") {
        arity(spec, 1, 1);
        return gen_path_graph(small_int(a[0]));
    }
    if (f == "complete") {
        arity(spec, 1, 1);
        return gen_complete(small_int(a[0]));
    }
    if (f == "petersen") {
        arity(spec, 0, 0);
        return gen_petersen();
    }
    if (f == "file") {
        arity(spec, 1, 1);
        std::ifstream in(a[0]);
        if (!in) throw InputError("cannot open '" + a[0] + "'");
        return parse_graph(in);
    }
    throw InputError("unknown family '" + spec.family + "'");
}

}  // namespace gtsp
