#pragma once

#include <utility>
#include <vector>

#include "stepkernel/rational.hpp"

namespace stepkernel {

// Simple undirected graph. Edges are stored as (u, v) with u < v; adjacency
// lists are sorted. Loops and duplicate edges are rejected at construction.
struct Graph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::vector<int>> adj;
};

Graph graph_from_edges(int n, std::vector<std::pair<int, int>> edges);

bool graph_connected(const Graph& G);
std::vector<std::vector<int>> graph_components(const Graph& G);  // vertex sets, ascending
Graph induced_subgraph(const Graph& G, const std::vector<int>& vertices);

}  // namespace stepkernel
