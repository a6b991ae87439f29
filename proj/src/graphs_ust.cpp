#include "stepkernel/graphs_ust.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <queue>
#include <stdexcept>
#include <thread>

namespace stepkernel {

namespace {

std::vector<double> mu_cdf_of(const StepAkernel& A) {
    std::vector<double> cdf(A.n());
    double acc = 0.0;
    for (int i = 0; i < A.n(); ++i) {
        acc += rat_to_double(A.mu[i]);
        cdf[i] = acc;
    }
    cdf.back() = std::max(cdf.back(), 1.0);
    return cdf;
}

int draw_cdf(const std::vector<double>& cdf, double u) {
    auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it;
    return static_cast<int>(it - cdf.begin());
}

std::vector<int> draw_types(const StepAkernel& A, int n, Rng& rng) {
    std::vector<double> cdf = mu_cdf_of(A);
    std::vector<int> types(n);
    for (int v = 0; v < n; ++v) types[v] = draw_cdf(cdf, rng.next_unit());
    return types;
}

}  // namespace

SampledGraph sample_sparse_graph(const StepAkernel& A, int n, Rng& rng) {
    if (n < 1) throw std::invalid_argument("graph size must be positive");
    std::vector<int> types = draw_types(A, n, rng);

    const int m = A.n();
    std::vector<std::vector<double>> p(m, std::vector<double>(m));
    double p_max = 0.0;
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            p[a][b] = std::min(1.0, rat_to_double(A.w[a][b]) / n);
            p_max = std::max(p_max, p[a][b]);
        }

    // Enumerate candidate pairs (u < v) in lexicographic order, skipping ahead
    // by Geometric(p_max) steps and keeping a candidate with probability
    // p(t_u,t_v)/p_max. Equivalent to independent Bernoulli(p(t_u,t_v)) per pair.
    std::vector<std::pair<int, int>> edges;
    if (p_max > 0.0) {
        const double log1mp = std::log1p(-p_max);
        long long total = static_cast<long long>(n) * (n - 1) / 2;
        long long idx = -1;
        while (true) {
            double u = rng.next_unit();
            long long skip;
            if (p_max >= 1.0) {
                skip = 1;
            } else {
                double s = std::floor(std::log1p(-u) / log1mp) + 1.0;
                if (!(s < 9.0e18)) break;
                skip = static_cast<long long>(s);
            }
            idx += skip;
            if (idx >= total) break;
            // Recover (a,b) with a < b from the flat index.
            long long rem = idx;
            int a = 0;
            while (rem >= n - 1 - a) {
                rem -= n - 1 - a;
                ++a;
            }
            int b = a + 1 + static_cast<int>(rem);
            double pe = p[types[a]][types[b]];
            if (pe >= p_max || rng.next_unit() * p_max < pe) edges.emplace_back(a, b);
        }
    }
    return {graph_from_edges(n, edges), std::move(types)};
}

SampledGraph sample_dense_graph(const StepAkernel& A, int n, Rng& rng) {
    if (n < 1) throw std::invalid_argument("graph size must be positive");
    std::vector<int> types = draw_types(A, n, rng);

    const int m = A.n();
    std::vector<std::vector<double>> p(m, std::vector<double>(m));
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) p[a][b] = std::min(1.0, rat_to_double(A.w[a][b]));

    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            double pe = p[types[u]][types[v]];
            if (pe >= 1.0 || rng.next_unit() < pe) edges.emplace_back(u, v);
        }
    return {graph_from_edges(n, edges), std::move(types)};
}

std::vector<std::pair<int, int>> wilson_ust(const Graph& G, Rng& rng) {
    if (G.n < 1) throw std::invalid_argument("empty graph");
    if (!graph_connected(G)) throw std::invalid_argument("graph is not connected");

    // Loop-erased random walks from each vertex into the growing tree, rooted
    // at vertex 0. next[v] records the successor along the current walk; the
    // walk is committed once it hits the tree.
    std::vector<bool> in_tree(G.n, false);
    std::vector<int> next(G.n, -1);
    in_tree[0] = true;
    for (int start = 1; start < G.n; ++start) {
        if (in_tree[start]) continue;
        int v = start;
        while (!in_tree[v]) {
            const auto& nb = G.adj[v];
            next[v] = nb[rng.next_below(static_cast<std::uint64_t>(nb.size()))];
            v = next[v];
        }
        v = start;
        while (!in_tree[v]) {
            in_tree[v] = true;
            v = next[v];
        }
    }
    std::vector<std::pair<int, int>> edges;
    edges.reserve(G.n - 1);
    for (int v = 1; v < G.n; ++v) edges.emplace_back(v, next[v]);
    return edges;
}

std::optional<RootedTree> graph_ball(const Graph& G, int root, int radius) {
    if (root < 0 || root >= G.n) throw std::invalid_argument("root out of range");
    if (radius < 0) throw std::invalid_argument("radius must be nonnegative");

    // BFS to the given radius. A cross or back edge inside the ball means the
    // ball is not a tree.
    std::vector<int> dist(G.n, -1), parent(G.n, -1);
    std::vector<std::vector<int>> children(G.n);
    dist[root] = 0;
    std::queue<int> q;
    q.push(root);
    std::vector<int> order = {root};
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        if (dist[v] == radius) continue;
        for (int u : G.adj[v]) {
            if (u == parent[v]) continue;
            if (dist[u] != -1) return std::nullopt;  // cycle inside the ball
            dist[u] = dist[v] + 1;
            parent[u] = v;
            children[v].push_back(u);
            order.push_back(u);
            q.push(u);
        }
    }
    // Vertices at distance exactly `radius` may still be joined by edges among
    // themselves; those edges lie inside the closed ball as well.
    for (int v : order)
        if (dist[v] == radius)
            for (int u : G.adj[v])
                if (u != parent[v] && dist[u] == radius) return std::nullopt;

    // Assemble bottom-up (reverse BFS order is child-before-parent).
    std::vector<std::optional<RootedTree>> built(G.n);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        std::vector<RootedTree> kids;
        for (int c : children[*it]) kids.push_back(*built[c]);
        built[*it] = RootedTree::from_children(std::move(kids));
    }
    return built[root];
}

UstReport ust_ball_distribution(const StepKernel& K, int n, int radius, const UstConfig& cfg) {
    if (cfg.graphs < 1) throw std::invalid_argument("need at least one graph");
    if (cfg.roots_per_graph < 1) throw std::invalid_argument("roots_per_graph must be positive");
    if (cfg.threads < 1) throw std::invalid_argument("threads must be positive");

    const long long G = cfg.graphs;
    const long long roots_total = G * cfg.roots_per_graph;

    struct Local {
        std::map<std::string, long long> tally;
        long long non_tree = 0;  // balls containing a cycle
        long long draws = 0;
        long long resampled = 0;
    };
    std::vector<Local> locals(cfg.threads);
    std::atomic<bool> too_disconnected{false};

    auto worker = [&](int t) {
        Local& L = locals[t];
        for (long long g = t; g < G; g += cfg.threads) {
            if (too_disconnected.load(std::memory_order_relaxed)) return;
            // One stream per graph index: results are independent of the
            // thread count.
            Rng rng(cfg.seed, static_cast<std::uint64_t>(g));
            SampledGraph sg = sample_dense_graph(K, n, rng);
            ++L.draws;
            while (!graph_connected(sg.graph)) {
                ++L.resampled;
                ++L.draws;
                // Persistent disconnection means the kernel does not produce
                // connected dense graphs at this size; give up rather than spin.
                if (L.draws >= 20 && L.resampled * 2 > L.draws) {
                    too_disconnected.store(true, std::memory_order_relaxed);
                    return;
                }
                sg = sample_dense_graph(K, n, rng);
            }
            auto tree_edges = wilson_ust(sg.graph, rng);
            Graph tree = graph_from_edges(sg.graph.n, tree_edges);
            for (int r = 0; r < cfg.roots_per_graph; ++r) {
                int root = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(tree.n)));
                auto ball = graph_ball(tree, root, radius);
                if (ball)
                    ++L.tally[ball->code()];
                else
                    ++L.non_tree;
            }
        }
    };

    if (cfg.threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(cfg.threads);
        for (int t = 0; t < cfg.threads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }
    if (too_disconnected.load())
        throw std::runtime_error(
            "more than half of the sampled graphs were disconnected; "
            "increase n or check the kernel");

    UstReport rep;
    rep.graphs = G;
    rep.correlated_roots = cfg.roots_per_graph > 1;
    std::map<std::string, long long> tally;
    long long non_tree = 0;
    for (const auto& L : locals) {
        for (const auto& [code, c] : L.tally) tally[code] += c;
        non_tree += L.non_tree;
        rep.resampled_disconnected += L.resampled;
    }
    rep.distribution.depth = radius;
    for (const auto& [code, c] : tally)
        rep.distribution.entries[code] = static_cast<double>(c) / static_cast<double>(roots_total);
    rep.distribution.residual = static_cast<double>(non_tree) / static_cast<double>(roots_total);
    return rep;
}

}  // namespace stepkernel
