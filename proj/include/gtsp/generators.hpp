#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "gtsp/graph.hpp"

namespace gtsp {

/// mt19937_64 (whose output sequence is fixed by the standard) with bounded
/// draws that avoid the implementation-defined distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed);
    std::uint64_t next();
    /// Uniform in [0, bound).
    std::uint64_t below(std::uint64_t bound);
    /// Uniform in [lo, hi].
    int between(int lo, int hi);
    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[static_cast<std::size_t>(below(i))]);
    }

private:
    std::mt19937_64 engine_;
};

struct PathInstance {
    Graph graph;
    VertexId s = 0;
    VertexId t = 0;
};

/// Three paths of k edges whose first and last vertices form two
/// triangles. n = 3(k+1), m = 3k + 6.
Graph gen_gap_tour(int k);

/// The gap_tour graph with s and t at the middle of the first two paths.
PathInstance gen_gap_path(int k);

/// Random ear decomposition with exactly n vertices and m edges.
Graph gen_random_2vc(int n, int m, std::uint64_t seed);

/// Configuration model, resampled until simple and 2-vertex-connected.
Graph gen_random_cubic(int n, std::uint64_t seed);

/// 2-vertex-connected, max degree 3: a random cubic graph with subdivided
/// edges (or a cycle).
Graph gen_random_subcubic(int n, std::uint64_t seed);

/// Blocks joined at cut vertices: `k` blocks, each a random 2-connected
/// graph on 2..max_block vertices (2 means a bridge). With `subcubic` every
/// block has maximum degree 3.
Graph gen_random_blocky(int k, int max_block, bool subcubic, std::uint64_t seed);

Graph gen_grid(int a, int b);
Graph gen_cycle(int n);
Graph gen_path_graph(int n);
Graph gen_complete(int n);
Graph gen_petersen();

/// One instance named by a spec line such as "gap_tour 5",
/// "random_2vc 10 14 3", "grid 3 4" or "file graph.txt".
struct InstanceSpec {
    std::string text;
    std::string family;
    std::vector<std::string> args;
};

InstanceSpec parse_instance_spec(const std::string& line);

/// Builds the graph; throws InputError for unknown families or bad
/// arguments.
Graph generate(const InstanceSpec& spec);

}  // namespace gtsp
