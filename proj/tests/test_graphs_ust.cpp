#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "doctest.h"
#include "stepkernel/graphs_ust.hpp"

using namespace stepkernel;

namespace {

Rat q(const char* s) { return rat_from_string(s); }

StepKernel uniform_one() { return StepKernel({q("1")}, {{q("1")}}); }

}  // namespace

TEST_CASE("graph construction and components") {
    Graph G = graph_from_edges(5, {{0, 1}, {1, 2}, {3, 4}});
    CHECK(G.adj[1] == std::vector<int>{0, 2});
    auto comps = graph_components(G);
    REQUIRE(comps.size() == 2);
    CHECK(comps[0] == std::vector<int>{0, 1, 2});
    CHECK_FALSE(graph_connected(G));
    Graph H = induced_subgraph(G, {3, 4});
    CHECK(H.n == 2);
    CHECK(H.edges.size() == 1);

    CHECK_THROWS_AS(graph_from_edges(3, {{0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(graph_from_edges(3, {{0, 1}, {1, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(graph_from_edges(3, {{0, 3}}), std::invalid_argument);
}

TEST_CASE("dense sampling follows the kernel intensities") {
    // constant kernel 1 gives the complete graph
    Rng rng(1, 0);
    SampledGraph sg = sample_dense_graph(uniform_one(), 20, rng);
    CHECK(static_cast<int>(sg.graph.edges.size()) == 20 * 19 / 2);

    // half intensity: edge count near Binomial(n(n-1)/2, 1/2)
    StepKernel Half({q("1")}, {{q("1/2")}});
    Rng rng2(2, 0);
    SampledGraph sh = sample_dense_graph(Half, 40, rng2);
    double pairs = 40 * 39 / 2;
    double sd = std::sqrt(pairs * 0.25);
    CHECK(std::abs(static_cast<double>(sh.graph.edges.size()) - pairs / 2) < 5 * sd);
}

TEST_CASE("sparse sampling thins to intensity over n") {
    const int n = 2000;
    Rng rng(3, 0);
    SampledGraph sg = sample_sparse_graph(uniform_one(), n, rng);
    // mean edge count ~ (n-1)/2 * n * (1/n) = (n-1)/2
    double mean = (n - 1) / 2.0;
    double sd = std::sqrt(mean);
    CHECK(std::abs(static_cast<double>(sg.graph.edges.size()) - mean) < 5 * sd);

    // two-type kernel: type frequencies follow the masses
    StepKernel K({q("1/4"), q("3/4")}, {{q("1"), q("1")}, {q("1"), q("1")}});
    Rng rng2(4, 1);
    SampledGraph st = sample_sparse_graph(K, n, rng2);
    long long c0 = std::count(st.types.begin(), st.types.end(), 0);
    CHECK(std::abs(static_cast<double>(c0) - n / 4.0) < 5 * std::sqrt(n * 0.25 * 0.75));
}

TEST_CASE("spanning trees are spanning trees") {
    StepKernel Half({q("1")}, {{q("1/2")}});
    Rng rng(5, 2);
    SampledGraph sg = sample_dense_graph(Half, 30, rng);
    while (!graph_connected(sg.graph)) sg = sample_dense_graph(Half, 30, rng);
    auto edges = wilson_ust(sg.graph, rng);
    CHECK(edges.size() == 29);
    Graph T = graph_from_edges(30, edges);
    CHECK(graph_connected(T));
    // every tree edge is a graph edge
    std::set<std::pair<int, int>> have(sg.graph.edges.begin(), sg.graph.edges.end());
    for (auto [u, v] : edges) CHECK(have.count({std::min(u, v), std::max(u, v)}));
}

TEST_CASE("spanning tree of the complete graph on four vertices is uniform") {
    // K4 has 16 spanning trees (Cayley); chi-square against uniform with 15
    // degrees of freedom, 1% critical value 30.58
    Graph k4 = graph_from_edges(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    std::map<std::vector<std::pair<int, int>>, long long> counts;
    Rng rng(6, 0);
    const long long N = 16000;
    for (long long i = 0; i < N; ++i) {
        auto edges = wilson_ust(k4, rng);
        for (auto& [u, v] : edges)
            if (u > v) std::swap(u, v);
        std::sort(edges.begin(), edges.end());
        counts[edges]++;
    }
    CHECK(counts.size() == 16);
    double chi2 = 0.0;
    double expect = static_cast<double>(N) / 16.0;
    for (const auto& [tree, c] : counts) {
        double d = static_cast<double>(c) - expect;
        chi2 += d * d / expect;
    }
    CHECK(chi2 < 30.58);
}

TEST_CASE("graph balls") {
    // path 0-1-2-3: radius-1 ball around 1 is a two-leaf star
    Graph P = graph_from_edges(4, {{0, 1}, {1, 2}, {2, 3}});
    auto b = graph_ball(P, 1, 1);
    REQUIRE(b.has_value());
    CHECK(b->code() == "(()())");
    CHECK(graph_ball(P, 0, 2)->code() == "((()))");
    CHECK(graph_ball(P, 0, 0)->code() == "()");

    // a cycle inside the ball radius makes it non-tree
    Graph C5 = graph_from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
    CHECK(graph_ball(C5, 0, 1)->code() == "(()())");
    CHECK_FALSE(graph_ball(C5, 0, 2).has_value());
    CHECK_FALSE(graph_ball(C5, 0, 3).has_value());

    // triangle: even radius 1 sees the closing edge between the two neighbors
    Graph C3 = graph_from_edges(3, {{0, 1}, {1, 2}, {0, 2}});
    CHECK_FALSE(graph_ball(C3, 0, 1).has_value());
}

TEST_CASE("spanning-tree ball statistics are reproducible across thread counts") {
    UstConfig a;
    a.seed = 7;
    a.graphs = 120;
    a.threads = 1;
    UstConfig b = a;
    b.threads = 3;
    UstReport ra = ust_ball_distribution(uniform_one(), 25, 1, a);
    UstReport rb = ust_ball_distribution(uniform_one(), 25, 1, b);
    CHECK(ra.distribution.entries == rb.distribution.entries);
    CHECK(ra.distribution.residual == rb.distribution.residual);
    CHECK(ra.resampled_disconnected == rb.resampled_disconnected);
    // complete graphs are never disconnected, and tree balls have no cycles
    CHECK(ra.resampled_disconnected == 0);
    CHECK(ra.distribution.residual == 0.0);
    CHECK_FALSE(ra.correlated_roots);
}
