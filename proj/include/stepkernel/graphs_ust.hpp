#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "stepkernel/ball.hpp"
#include "stepkernel/graph.hpp"
#include "stepkernel/kernel.hpp"
#include "stepkernel/rng.hpp"
#include "stepkernel/tree.hpp"

namespace stepkernel {

struct SampledGraph {
    Graph graph;
    std::vector<int> types;  // type of each vertex
};

// Sparse random graph: vertex types iid from mu, edge {i,j} present with
// probability min(1, w(t_i,t_j)/n). Implemented with geometric skipping over
// the pair sequence plus thinning, so the cost is O(n + edges).
SampledGraph sample_sparse_graph(const StepAkernel& A, int n, Rng& rng);

// Dense random graph: edge probability min(1, w(t_i,t_j)). Entries above 1
// are clipped; cw/ust commands warn about that on input.
SampledGraph sample_dense_graph(const StepAkernel& A, int n, Rng& rng);

// Uniform spanning tree of a connected graph via loop-erased random walks.
// Returns the n-1 tree edges.
std::vector<std::pair<int, int>> wilson_ust(const Graph& G, Rng& rng);

// Induced ball of radius r around `root` as a rooted tree; nullopt when the
// ball contains a cycle (then it is not isomorphic to any tree).
std::optional<RootedTree> graph_ball(const Graph& G, int root, int radius);

// Empirical distribution of radius-r balls around uniform roots of uniform
// spanning trees of dense W-random graphs.
struct UstConfig {
    std::uint64_t seed = 0;
    long long graphs = 0;
    int roots_per_graph = 1;
    int threads = 1;
};
struct UstReport {
    BallDistribution distribution;
    long long graphs = 0;
    long long resampled_disconnected = 0;  // disconnected draws, redrawn from the same stream
    bool correlated_roots = false;         // true when roots_per_graph > 1
};
UstReport ust_ball_distribution(const StepKernel& K, int n, int radius, const UstConfig& cfg);

}  // namespace stepkernel
