#include <gtest/gtest.h>

#include <map>
#include <set>

#include "kvc/corpus.hpp"
#include "kvc/io.hpp"

using namespace kvc;

TEST(VertexSet, NormalizesAndOrdersLexicographically)
{
    const VertexSet s{3, 1, 3, 2};
    EXPECT_EQ(s.members(), (std::vector<Vertex>{1, 2, 3}));
    EXPECT_TRUE(VertexSet({1, 2}) < VertexSet({1, 3}));
    EXPECT_TRUE(VertexSet({1, 2}) < VertexSet({1, 2, 0 + 5}));
    EXPECT_TRUE(VertexSet({0, 9}) < VertexSet({1}));
    EXPECT_EQ(set_union(VertexSet{1, 4}, VertexSet{2, 4}), (VertexSet{1, 2, 4}));
    EXPECT_EQ(set_intersection(VertexSet{1, 4}, VertexSet{2, 4}), (VertexSet{4}));
    EXPECT_EQ(set_difference(VertexSet{1, 4}, VertexSet{2, 4}), (VertexSet{1}));
    EXPECT_TRUE(VertexSet({2}).subset_of(VertexSet{1, 2}));
    VertexSet t;
    t.insert(5);
    t.insert(1);
    t.erase(5);
    EXPECT_EQ(t, VertexSet{1});
}

TEST(Graph, RejectsLoopsDuplicatesAndRange)
{
    Graph g(3);
    g.add_edge(0, 1);
    EXPECT_THROW(g.add_edge(1, 0), input_error);
    EXPECT_THROW(g.add_edge(2, 2), input_error);
    EXPECT_THROW(g.add_edge(0, 3), input_error);
    EXPECT_THROW(Graph(-1), precondition_error);
    EXPECT_EQ(g.size(), 1u);
    EXPECT_TRUE(g.adjacent(1, 0));
    EXPECT_FALSE(g.valid(VertexSet{0, 3}));
}

TEST(Graph, Families)
{
    EXPECT_EQ(Graph::complete(5).size(), 10u);
    EXPECT_EQ(Graph::cycle(6).size(), 6u);
    EXPECT_EQ(Graph::path(4).size(), 3u);
    EXPECT_EQ(Graph::star(3).degree(0), 3);
    EXPECT_EQ(Graph::complete_bipartite(2, 3).size(), 6u);
}

TEST(GraphIo, JsonRoundTrip)
{
    Graph g = Graph::cycle(5);
    g.set_labels({"a", "b", "c", "d", "e"});
    const std::string text = io::dump(io::graph_to_json(g));
    EXPECT_EQ(io::parse_graph_json(text), g);
    EXPECT_EQ(io::dump(io::graph_to_json(io::parse_graph_json(text))), text);
}

TEST(GraphIo, DimacsRoundTrip)
{
    const Graph g = Graph::complete_bipartite(2, 2);
    EXPECT_EQ(io::parse_graph_dimacs(io::graph_to_dimacs(g)), g);
    EXPECT_EQ(io::parse_graph_dimacs("c hi\np edge 3 2\ne 1 2\ne 2 3\n"), Graph::path(3));
}

TEST(GraphIo, DiagnosticsNameTheLine)
{
    try {
        io::parse_graph_json("{\n \"n\": 3,\n \"edges\": [\n  [0, 1],\n  [1, 1]\n ]\n}\n", "g.json");
        FAIL();
    } catch (const input_error& e) {
        EXPECT_NE(std::string(e.what()).find("g.json:5"), std::string::npos) << e.what();
        EXPECT_NE(std::string(e.what()).find("self-loop"), std::string::npos);
    }
    try {
        io::parse_graph_dimacs("p edge 3 2\ne 1 2\ne 1 2\n", "g.col");
        FAIL();
    } catch (const input_error& e) {
        EXPECT_NE(std::string(e.what()).find("g.col:3"), std::string::npos) << e.what();
    }
    try {
        io::parse_graph_json("{\"n\": 2,\n \"edges\": [[0, 1]\n", "bad");
        FAIL();
    } catch (const input_error& e) {
        EXPECT_NE(std::string(e.what()).find("malformed JSON"), std::string::npos);
    }
    EXPECT_THROW(io::parse_graph_dimacs("e 1 2\n"), input_error);
    EXPECT_THROW(io::parse_graph_dimacs("p edge 2 1\ne 1 3\n"), input_error);
    EXPECT_THROW(io::parse_graph_dimacs("p edge 2 2\ne 1 2\n"), input_error);
    EXPECT_THROW(io::parse_vertex_list("1,x"), input_error);
    EXPECT_EQ(io::parse_vertex_list("3, 0,7"), (VertexSet{0, 3, 7}));
}

// Orbit count over every labelled graph, canonicalised by trying every permutation.
static std::size_t brute_isomorphism_classes(int n, bool connected_only)
{
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    std::set<std::uint64_t> classes;
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << pairs.size()); ++code) {
        Graph g(n);
        for (std::size_t b = 0; b < pairs.size(); ++b)
            if (code >> b & 1u) g.add_edge(pairs[b].first, pairs[b].second);
        if (connected_only && !is_connected(g)) continue;
        std::vector<int> perm(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
        std::uint64_t best = ~std::uint64_t{0};
        do {
            std::uint64_t c = 0;
            int bit = 0;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j, ++bit)
                    if (g.adjacent(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)])) c |= std::uint64_t{1} << bit;
            best = std::min(best, c);
        } while (std::next_permutation(perm.begin(), perm.end()));
        classes.insert(best);
    }
    return classes.size();
}

TEST(Corpus, IsomorphismClassCountsMatchBruteForce)
{
    for (int n = 1; n <= 5; ++n) {
        EXPECT_EQ(corpus::all_graphs(n).size(), brute_isomorphism_classes(n, false)) << n;
        std::size_t connected = 0;
        for (const Graph& g : corpus::all_graphs(n)) connected += is_connected(g);
        EXPECT_EQ(connected, brute_isomorphism_classes(n, true)) << n;
    }
}

TEST(Corpus, CanonicalCodeIsInvariantUnderRelabelling)
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const Graph g = corpus::random_connected_graph(7, 0.4, rng);
        std::vector<int> perm{0, 1, 2, 3, 4, 5, 6};
        std::shuffle(perm.begin(), perm.end(), rng);
        Graph h(7);
        for (auto [u, v] : g.edges()) h.add_edge(perm[static_cast<std::size_t>(u)], perm[static_cast<std::size_t>(v)]);
        EXPECT_EQ(corpus::canonical_code(g), corpus::canonical_code(h));
    }
}

TEST(Corpus, RandomGraphsAreSeededAndConnected)
{
    const auto a = corpus::random_connected_graphs(50, 2, 9, 11);
    const auto b = corpus::random_connected_graphs(50, 2, 9, 11);
    ASSERT_EQ(a.size(), 50u);
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i], b[i]);
        EXPECT_TRUE(is_connected(a[i]));
        EXPECT_GE(a[i].order(), 2);
        EXPECT_LE(a[i].order(), 9);
    }
}
