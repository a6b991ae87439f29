#include "stepkernel/graph.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

namespace stepkernel {

Graph graph_from_edges(int n, std::vector<std::pair<int, int>> edges) {
    if (n < 1) throw std::invalid_argument("graph needs at least one vertex");
    Graph g;
    g.n = n;
    g.adj.resize(n);
    std::set<std::pair<int, int>> seen;
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw std::invalid_argument("edge endpoint out of range");
        if (u == v) throw std::invalid_argument("loop at vertex " + std::to_string(u));
        if (u > v) std::swap(u, v);
        if (!seen.insert({u, v}).second)
            throw std::invalid_argument("duplicate edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
    }
    g.edges.assign(seen.begin(), seen.end());
    for (auto [u, v] : g.edges) {
        g.adj[u].push_back(v);
        g.adj[v].push_back(u);
    }
    for (auto& a : g.adj) std::sort(a.begin(), a.end());
    return g;
}

std::vector<std::vector<int>> graph_components(const Graph& G) {
    std::vector<int> comp(G.n, -1);
    std::vector<std::vector<int>> out;
    for (int start = 0; start < G.n; ++start) {
        if (comp[start] != -1) continue;
        int id = static_cast<int>(out.size());
        std::vector<int> stack{start}, members;
        comp[start] = id;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            members.push_back(u);
            for (int v : G.adj[u])
                if (comp[v] == -1) {
                    comp[v] = id;
                    stack.push_back(v);
                }
        }
        std::sort(members.begin(), members.end());
        out.push_back(std::move(members));
    }
    return out;
}

bool graph_connected(const Graph& G) { return graph_components(G).size() == 1; }

Graph induced_subgraph(const Graph& G, const std::vector<int>& vertices) {
    std::vector<int> index(G.n, -1);
    for (std::size_t a = 0; a < vertices.size(); ++a) index[vertices[a]] = static_cast<int>(a);
    std::vector<std::pair<int, int>> edges;
    for (auto [u, v] : G.edges)
        if (index[u] >= 0 && index[v] >= 0) edges.push_back({index[u], index[v]});
    return graph_from_edges(static_cast<int>(vertices.size()), std::move(edges));
}

}  // namespace stepkernel
