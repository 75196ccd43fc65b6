#include <gtest/gtest.h>

#include "kvc/connectivity.hpp"
#include "kvc/corpus.hpp"
#include "oracles.hpp"

using namespace kvc;

TEST(Components, CountsAndMasks)
{
    Graph g(5);
    g.add_edge(0, 1);
    g.add_edge(3, 4);
    EXPECT_EQ(components(g).count, 3);
    EXPECT_FALSE(is_connected(g));
    const VertexMask m = mask_of(5, VertexSet{3, 4});
    EXPECT_TRUE(is_connected(g, &m));
    EXPECT_FALSE(is_connected(Graph(0)));
}

TEST(InducedSubgraph, KeepsOnlyInnerEdges)
{
    const auto sub = induced_subgraph(Graph::cycle(5), VertexSet{0, 1, 3});
    EXPECT_EQ(sub.graph.order(), 3);
    EXPECT_EQ(sub.graph.size(), 1u);
    EXPECT_EQ(sub.from_original[2], -1);
    EXPECT_EQ(sub.to_original[2], 3);
}

TEST(Connectivity, CompleteAndCycleValues)
{
    for (int n = 2; n <= 7; ++n) EXPECT_EQ(vertex_connectivity(Graph::complete(n)), n - 1);
    for (int n = 4; n <= 8; ++n) EXPECT_EQ(vertex_connectivity(Graph::cycle(n)), 2);
    EXPECT_EQ(vertex_connectivity(Graph::complete_bipartite(3, 4)), 3);
    EXPECT_EQ(vertex_connectivity(Graph::star(4)), 1);
    EXPECT_THROW(vertex_connectivity(Graph(1)), precondition_error);
}

TEST(Connectivity, KConnectedConventions)
{
    EXPECT_TRUE(is_k_connected(Graph(1), 1));
    EXPECT_FALSE(is_k_connected(Graph::complete(2), 2));
    EXPECT_TRUE(is_k_connected(Graph::complete(3), 2));
    EXPECT_TRUE(is_k_connected(Graph::complete(4), 3));
    EXPECT_FALSE(is_k_connected(Graph::complete(3), 3));
    EXPECT_THROW(is_k_connected(Graph::complete(3), 0), precondition_error);
}

TEST(Connectivity, AgreesWithDefinitionOnRandomGraphs)
{
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 400; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 7);
        const Graph g = corpus::random_connected_graph(n, static_cast<double>(rng() % 100) / 100.0, rng);
        const oracle::Bits all = (oracle::Bits{1} << n) - 1;
        const oracle::Bits sub = static_cast<oracle::Bits>(rng()) & all;
        VertexMask mask(static_cast<std::size_t>(n), 0);
        for (int v = 0; v < n; ++v) mask[static_cast<std::size_t>(v)] = sub >> v & 1u;
        for (int k = 1; k <= 4; ++k) {
            EXPECT_EQ(is_k_connected(g, &mask, k), sub != 0 && oracle::k_connected_bits(g, sub, k))
                << "trial " << trial << " k " << k;
        }
    }
}

TEST(Connectivity, MengerPathsAndSeparator)
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const Graph g = corpus::random_connected_graph(8, 0.35, rng);
        for (Vertex s = 0; s < g.order(); ++s)
            for (Vertex t = s + 1; t < g.order(); ++t) {
                if (g.adjacent(s, t)) continue;
                const auto lc = local_connectivity(g, s, t);
                ASSERT_EQ(static_cast<int>(lc.paths.size()), lc.value);
                ASSERT_EQ(static_cast<int>(lc.separator.size()), lc.value);
                std::vector<int> used(static_cast<std::size_t>(g.order()), 0);
                for (const auto& p : lc.paths) {
                    ASSERT_EQ(p.front(), s);
                    ASSERT_EQ(p.back(), t);
                    for (std::size_t i = 0; i + 1 < p.size(); ++i) ASSERT_TRUE(g.adjacent(p[i], p[i + 1]));
                    for (std::size_t i = 1; i + 1 < p.size(); ++i) ++used[static_cast<std::size_t>(p[i])];
                }
                for (int u : used) ASSERT_LE(u, 1);
                VertexMask rest = full_mask(g.order());
                for (Vertex v : lc.separator) rest[static_cast<std::size_t>(v)] = 0;
                const auto c = components(g, &rest);
                EXPECT_NE(c.id[static_cast<std::size_t>(s)], c.id[static_cast<std::size_t>(t)]);
            }
    }
    EXPECT_THROW(local_connectivity(Graph::path(3), 0, 1), precondition_error);
}

TEST(Blocks, EveryTwoConnectedSubsetLiesInOneBlock)
{
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 150; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 5);
        const Graph g = corpus::random_connected_graph(n, 0.3, rng);
        const auto bs = blocks(g);
        // Blocks with >= 3 vertices are exactly the maximal 2-connected vertex sets.
        std::vector<oracle::Bits> maximal;
        const oracle::Bits all = (oracle::Bits{1} << n) - 1;
        for (oracle::Bits s = 1; s <= all; ++s) {
            if (!oracle::k_connected_bits(g, s, 2)) continue;
            bool is_max = true;
            for (oracle::Bits t = all; is_max && t != s; t = (t - 1) & all)
                if ((t & s) == s && oracle::k_connected_bits(g, t, 2)) is_max = false;
            if (is_max) maximal.push_back(s);
        }
        std::vector<oracle::Bits> big;
        for (const auto& b : bs)
            if (b.size() >= 3) big.push_back(oracle::bits_of(b));
        std::sort(maximal.begin(), maximal.end());
        std::sort(big.begin(), big.end());
        EXPECT_EQ(big, maximal) << "trial " << trial;
    }
}

TEST(Blocks, BridgesAndIsolatedVertices)
{
    Graph g(6);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(2, 0);
    g.add_edge(2, 3);
    g.add_edge(3, 4);
    const auto bs = blocks(g);
    EXPECT_EQ(bs, (std::vector<VertexSet>{VertexSet{0, 1, 2}, VertexSet{2, 3}, VertexSet{3, 4}, VertexSet{5}}));
}

TEST(KCore, PeelsLowDegree)
{
    Graph g = Graph::complete(4);
    Graph h(6);
    for (auto [u, v] : g.edges()) h.add_edge(u, v);
    h.add_edge(3, 4);
    h.add_edge(4, 5);
    EXPECT_EQ(k_core(h, 3), (VertexSet{0, 1, 2, 3}));
    EXPECT_EQ(k_core(h, 4), VertexSet{});
    EXPECT_EQ(k_core(Graph::cycle(5), 2), VertexSet::range(5));
}

TEST(Twins, OpenAndClosedClasses)
{
    const Graph k23 = Graph::complete_bipartite(2, 3);
    EXPECT_EQ(twin_classes(k23, TwinMode::open), (std::vector<VertexSet>{VertexSet{0, 1}, VertexSet{2, 3, 4}}));
    EXPECT_EQ(twin_classes(Graph::complete(3), TwinMode::closed), (std::vector<VertexSet>{VertexSet{0, 1, 2}}));
    // Every swap inside a symmetry class must be an automorphism.
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 200; ++trial) {
        const Graph g = corpus::random_connected_graph(7, 0.5, rng);
        for (const auto& cls : symmetry_classes(g))
            for (std::size_t i = 0; i + 1 < cls.size(); ++i) {
                const Vertex a = cls[i], b = cls[i + 1];
                auto swap = [&](Vertex v) { return v == a ? b : v == b ? a : v; };
                for (auto [u, v] : g.edges()) ASSERT_TRUE(g.adjacent(swap(u), swap(v)));
            }
    }
}
