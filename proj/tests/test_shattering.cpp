#include <gtest/gtest.h>

#include "kvc/corpus.hpp"
#include "kvc/shattering.hpp"
#include "oracles.hpp"

using namespace kvc;

TEST(FamilyMember, Examples)
{
    EXPECT_TRUE(family_member(Graph::complete(4), VertexSet{}, 2));
    EXPECT_TRUE(family_member(Graph::complete(4), VertexSet{0, 2, 3}, 2));
    EXPECT_FALSE(family_member(Graph::cycle(5), VertexSet{0, 1, 2}, 2));
    EXPECT_TRUE(family_member(Graph::cycle(5), VertexSet{3}, 1));
    EXPECT_FALSE(family_member(Graph::cycle(5), VertexSet{0, 2}, 1));
    EXPECT_THROW(family_member(Graph::cycle(5), VertexSet{7}, 1), precondition_error);
}

TEST(Realizable, Examples)
{
    VertexSet w;
    EXPECT_TRUE(realizable(Graph::complete(4), VertexSet{0, 1}, VertexSet{0}, 2, &w));
    EXPECT_EQ(w, (VertexSet{0, 2, 3}));
    EXPECT_TRUE(realizable(Graph::cycle(5), VertexSet{0}, VertexSet{0}, 2, &w));
    EXPECT_EQ(w, VertexSet::range(5));
    EXPECT_TRUE(realizable(Graph::cycle(5), VertexSet{0, 1}, VertexSet{}, 3, &w));
    EXPECT_TRUE(w.empty());
    EXPECT_THROW(realizable(Graph::cycle(5), VertexSet{0}, VertexSet{1}, 2), precondition_error);
}

TEST(Realizable, AgreesWithExhaustiveSubsetSearch)
{
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 7);
        const Graph g = corpus::random_connected_graph(n, static_cast<double>(rng() % 90) / 100.0, rng);
        std::vector<Vertex> a, w;
        for (Vertex v = 0; v < n; ++v)
            if (rng() % 3 == 0) {
                a.push_back(v);
                if (rng() & 1u) w.push_back(v);
            }
        const VertexSet as(a), ws(w);
        for (int k = 1; k <= 4; ++k) {
            VertexSet witness;
            const bool got = realizable(g, as, ws, k, &witness);
            ASSERT_EQ(got, oracle::realizable(g, as, ws, k)) << "trial " << trial << " k " << k;
            if (got && !ws.empty()) {
                EXPECT_EQ(set_intersection(witness, as), ws);
                EXPECT_TRUE(oracle::k_connected_bits(g, oracle::bits_of(witness), k));
            }
        }
    }
}

TEST(Realizable, GeneralSearchAgreesWithBlocksForKTwo)
{
    // Exercise the separator-recursion search at k = 2 by calling it directly.
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 300; ++trial) {
        const Graph g = corpus::random_connected_graph(9, 0.3, rng);
        VertexMask alive = full_mask(9);
        std::vector<Vertex> w;
        for (Vertex v = 0; v < 9; ++v) {
            const auto r = rng() % 4;
            if (r == 0) alive[static_cast<std::size_t>(v)] = 0;
            else if (r == 1 && w.size() < 3) w.push_back(v);
        }
        if (w.empty()) continue;
        const VertexSet ws(w);
        const auto via_blocks = detail::realize_in(g, alive, ws, 2, {});
        const auto via_search = detail::KConnectedFinder(g, 2, ws, {}).find(alive);
        ASSERT_EQ(via_blocks.has_value(), via_search.has_value()) << trial;
        if (via_search) {
            EXPECT_TRUE(family_member(g, *via_search, 2));
        }
    }
}

TEST(Shattered, PolyExamples)
{
    EXPECT_TRUE(is_shattered_poly(Graph::complete(4), VertexSet{0, 1}, 2));
    EXPECT_FALSE(is_shattered_poly(Graph::cycle(5), VertexSet{0, 2}, 2));
    EXPECT_TRUE(is_shattered_poly(Graph::cycle(5), VertexSet{}, 2));
    const auto c = check_shattered_poly(Graph::cycle(5), VertexSet{0, 2}, 2);
    ASSERT_TRUE(c.failing_trace);
    EXPECT_EQ(c.failing_trace->size(), 1u);
}

TEST(Shattered, BruteForceExamples)
{
    EXPECT_TRUE(is_shattered_bruteforce(Graph::complete(5), VertexSet{0, 1, 2}, 2));
    EXPECT_FALSE(is_shattered_bruteforce(Graph::complete(5), VertexSet{0, 1, 2, 3}, 2));
    EXPECT_TRUE(is_shattered_bruteforce(Graph::star(3), VertexSet{1, 2, 3}, 1));
    const Graph big = Graph::path(25);
    try {
        is_shattered_bruteforce(big, VertexSet::range(21), 1);
        FAIL();
    } catch (const scale_error& e) {
        EXPECT_NE(std::string(e.what()).find("oracle scale exceeded"), std::string::npos);
    }
}

TEST(Shattered, PolyMatchesBruteForceAndDefinition)
{
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 150; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 6);
        const Graph g = corpus::random_connected_graph(n, static_cast<double>(rng() % 100) / 100.0, rng);
        for (int k = 1; k <= 3; ++k) {
            const BruteForceOracle bf(g, k);
            for (int rep = 0; rep < 6; ++rep) {
                std::vector<Vertex> a;
                for (Vertex v = 0; v < n; ++v)
                    if (rng() & 1u) a.push_back(v);
                const VertexSet as(a);
                const bool poly = is_shattered_poly(g, as, k);
                ASSERT_EQ(poly, bf.shattered(as)) << trial;
                ASSERT_EQ(poly, oracle::shattered(g, as, k)) << trial;
            }
        }
    }
}

TEST(Shattered, Hereditary)
{
    std::mt19937_64 rng(43);
    int checked = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const Graph g = corpus::random_connected_graph(8, 0.6, rng);
        const int k = 1 + static_cast<int>(rng() % 3);
        std::vector<Vertex> a;
        for (Vertex v = 0; v < 8; ++v)
            if (rng() % 3 == 0) a.push_back(v);
        if (!is_shattered_poly(g, VertexSet(a), k)) continue;
        ++checked;
        std::vector<Vertex> sub;
        for (Vertex v : a)
            if (rng() & 1u) sub.push_back(v);
        EXPECT_TRUE(is_shattered_poly(g, VertexSet(sub), k));
    }
    EXPECT_GT(checked, 20);
}

TEST(Certificate, EntriesRevalidate)
{
    ShatterOptions so;
    so.certificate = true;
    const auto c = check_shattered_poly(Graph::complete(5), VertexSet{0, 1, 2}, 2, so);
    ASSERT_TRUE(c.certificate);
    const auto check = validate_certificate(Graph::complete(5), *c.certificate);
    EXPECT_TRUE(check.valid);
    EXPECT_TRUE(check.complete);
    EXPECT_EQ(c.certificate->entries.size(), 8u);

    auto broken = *c.certificate;
    broken.entries[1].witness = VertexSet{0, 1};
    EXPECT_FALSE(validate_certificate(Graph::complete(5), broken).valid);
    broken = *c.certificate;
    broken.entries.pop_back();
    EXPECT_FALSE(validate_certificate(Graph::complete(5), broken).complete);
    broken = *c.certificate;
    broken.entries[2].witness = VertexSet{};
    EXPECT_FALSE(validate_certificate(Graph::complete(5), broken).valid);
}

TEST(Certificate, TwinCompressionAgreesWithFullCheck)
{
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 200; ++trial) {
        const Graph g = corpus::random_connected_graph(8, 0.5, rng);
        const int k = 1 + static_cast<int>(rng() % 3);
        std::vector<Vertex> a;
        for (Vertex v = 0; v < 8; ++v)
            if (rng() & 1u) a.push_back(v);
        ShatterOptions so;
        so.twin_compression = true;
        EXPECT_EQ(check_shattered_poly(g, VertexSet(a), k, so).shattered, is_shattered_poly(g, VertexSet(a), k));
    }
}

TEST(VcDimension, Examples)
{
    for (int n = 3; n <= 8; ++n) EXPECT_EQ(vc_dimension(Graph::cycle(n), 2).dimension, 1) << n;
    EXPECT_EQ(vc_dimension(Graph::complete(4), 2).dimension, 2);
    const auto k5 = vc_dimension(Graph::complete(5), 2);
    EXPECT_EQ(k5.dimension, 3);
    EXPECT_EQ(k5.witness, (VertexSet{0, 1, 2}));
    EXPECT_TRUE(validate_certificate(Graph::complete(5), k5.certificate).valid);
    for (int k = 2; k <= 5; ++k) EXPECT_EQ(vc_dimension(Graph::complete(k + 1), k).dimension, 1);
    EXPECT_EQ(vc_dimension(Graph(1), 1).dimension, 1);
    EXPECT_EQ(vc_dimension(Graph::complete(2), 2).dimension, 0);
}

TEST(VcDimension, MatchesDefinitionAndIsStableUnderOptions)
{
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 6);
        const Graph g = corpus::random_connected_graph(n, static_cast<double>(rng() % 100) / 100.0, rng);
        for (int k = 1; k <= 3; ++k) {
            const auto base = vc_dimension(g, k);
            EXPECT_EQ(base.dimension, oracle::vc_dimension(g, k)) << trial << " k " << k;
            EXPECT_EQ(BruteForceOracle(g, k).vc_dimension(), std::make_pair(base.dimension, base.witness));
            for (int mask = 1; mask < 8; ++mask) {
                SearchOptions o;
                o.twin_pruning = mask & 1;
                o.leaf_bound = mask & 2;
                o.incremental = mask & 4;
                const auto r = vc_dimension(g, k, o);
                EXPECT_EQ(r.dimension, base.dimension);
                EXPECT_EQ(r.witness, base.witness);
            }
        }
    }
}

TEST(VcDimension, ConnectedSandwich)
{
    std::mt19937_64 rng(59);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 8);
        const Graph g = corpus::random_connected_graph(n, static_cast<double>(rng() % 80) / 100.0, rng);
        const int ell = oracle::max_leaves(g);
        SearchOptions o;
        o.leaf_bound = false;
        const int vc = vc_dimension(g, 1, o).dimension;
        EXPECT_LE(ell, vc);
        EXPECT_LE(vc, ell + 1);
    }
}

TEST(VcAtLeast, DecisionAgreesWithDimension)
{
    EXPECT_TRUE(vc_at_least(Graph::complete(5), 2, 3).holds);
    EXPECT_FALSE(vc_at_least(Graph::complete(5), 2, 4).holds);
    EXPECT_TRUE(vc_at_least(Graph::cycle(6), 2, 1).holds);
    EXPECT_THROW(vc_at_least(Graph::cycle(6), 2, 0), precondition_error);
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 80; ++trial) {
        const Graph g = corpus::random_connected_graph(7, 0.5, rng);
        const int k = 1 + static_cast<int>(rng() % 3);
        const int d = vc_dimension(g, k).dimension;
        for (int s = 1; s <= 8; ++s) {
            const auto r = vc_at_least(g, k, s);
            ASSERT_EQ(r.holds, d >= s);
            if (r.holds) {
                EXPECT_TRUE(is_shattered_poly(g, *r.witness, k));
            }
        }
    }
}

TEST(VcDimension, BudgetRaisesScaleError)
{
    SearchOptions o;
    o.node_budget = 3;
    EXPECT_THROW(vc_dimension(Graph::complete(6), 1, o), scale_error);
    SearchOptions calls;
    calls.call_budget = 10;
    EXPECT_THROW(vc_dimension(Graph::complete(6), 1, calls), scale_error);
}
