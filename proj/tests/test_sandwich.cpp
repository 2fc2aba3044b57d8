#include <dichro/sandwich.hpp>

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace dichro;

namespace
{
    auto cycle(int n) -> SimpleGraph
    {
        SimpleGraph g(n);
        for (int i = 0; i < n; ++i)
            g.add_edge(i, (i + 1) % n);
        return g;
    }

    auto complete(int n) -> SimpleGraph
    {
        SimpleGraph g(n);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                g.add_edge(u, v);
        return g;
    }

    auto k3_adjacency() { return StarMatrix{ "011", "101", "110" }; }
}

TEST(ToCsp, Examples)
{
    SimpleGraph p3(3, { { 0, 1 }, { 1, 2 } });
    auto exact = to_csp_instance({ 3, p3, p3, std::nullopt }, 2);
    EXPECT_EQ(exact.graph, nu(p3));

    auto loose = to_csp_instance({ 3, SimpleGraph(3), complete(3), std::nullopt }, 2);
    EXPECT_EQ(loose.graph, TwoEdgeColouredGraph(3));

    auto mixed = to_csp_instance({ 3, SimpleGraph(3, { { 0, 1 } }), p3, std::nullopt }, 2);
    EXPECT_EQ(edges_of(mixed.graph, Colour::Blue), (vector<pair<int, int>>{ { 0, 1 } }));
    EXPECT_EQ(edges_of(mixed.graph, Colour::Red), (vector<pair<int, int>>{ { 0, 2 } }));
}

TEST(ToCsp, Rejections)
{
    EXPECT_THROW(to_csp_instance({ 2, SimpleGraph(2, { { 0, 1 } }), SimpleGraph(2), std::nullopt }, 2), Error);
    EXPECT_THROW(to_csp_instance({ 1, SimpleGraph(1, { { 0, 0 } }), SimpleGraph(1, { { 0, 0 } }), std::nullopt }, 2), Error);
    EXPECT_THROW(to_csp_instance({ 2, SimpleGraph(3), SimpleGraph(2), std::nullopt }, 2), Error);
}

TEST(Sandwich, SplitRecognition)
{
    SimpleGraph split(4, { { 0, 1 }, { 0, 2 }, { 1, 2 }, { 2, 3 } });
    auto s = solve_sandwich(split_matrix(), { 4, split, split, std::nullopt }, false);
    ASSERT_TRUE(s);
    EXPECT_EQ(s->edges, split);
}

TEST(Sandwich, FourCycleGetsAChord)
{
    SandwichInstance inst{ 4, cycle(4), complete(4), std::nullopt };
    auto s = solve_sandwich(split_matrix(), inst, false);
    ASSERT_TRUE(s);
    EXPECT_TRUE(verify_sandwich(split_matrix(), inst, *s));
    EXPECT_GT(s->edges.edges().size(), 4u);
    EXPECT_TRUE(oracle::brute_sandwich(split_matrix(), inst));
}

TEST(Sandwich, FiveCycleNotBipartite)
{
    EXPECT_FALSE(solve_sandwich(bipartite_matrix(), { 5, cycle(5), cycle(5), std::nullopt }, false));
}

TEST(Sandwich, NeedsOracleOnHardMatrix)
{
    SandwichInstance inst{ 3, SimpleGraph(3), complete(3), std::nullopt };
    EXPECT_THROW(solve_sandwich(k3_adjacency(), inst, false), RequiresOracle);
    auto s = solve_sandwich(k3_adjacency(), inst, true);
    ASSERT_TRUE(s);
    EXPECT_TRUE(verify_sandwich(k3_adjacency(), inst, *s));
}

TEST(Sandwich, EmptyInstance)
{
    SandwichInstance inst{ 0, SimpleGraph(0), SimpleGraph(0), std::nullopt };
    EXPECT_TRUE(solve_sandwich(split_matrix(), inst, false));
    auto b = brute_force_sandwich(split_matrix(), inst);
    ASSERT_TRUE(b);
    EXPECT_TRUE(b->edges.edges().empty());
}

TEST(Sandwich, BruteForceGuard)
{
    SandwichInstance inst{ 8, SimpleGraph(8), complete(8), std::nullopt };
    EXPECT_THROW(brute_force_sandwich(split_matrix(), inst), Error);
}

TEST(Sandwich, ExactInstancesArePartitionRecognition)
{
    oracle::Gen gen(71);
    for (int round = 0; round < 200; ++round) {
        auto g = gen.simple_graph(1 + gen.below(6));
        SandwichInstance inst{ g.size(), g, g, std::nullopt };
        for (auto & m : { split_matrix(), bipartite_matrix() }) {
            auto b = brute_force_sandwich(m, inst);
            ASSERT_EQ(bool(b), bool(find_hom(nu(g), from_matrix(m))));
            if (b)
                ASSERT_EQ(b->edges, g);
        }
    }
}

TEST(ListSandwich, Examples)
{
    SandwichInstance inst{ 4, cycle(4), complete(4), std::nullopt };
    auto full = inst;
    full.lists = vector<vector<int>>(4, { 0, 1 });
    EXPECT_EQ(bool(solve_list_sandwich(split_matrix(), full, false)), bool(solve_sandwich(split_matrix(), inst, false)));
    full.lists->at(2).clear();
    EXPECT_FALSE(solve_list_sandwich(split_matrix(), full, false));
}

TEST(ListSandwich, StubbornMatrix)
{
    auto m = stubborn_matrix();
    oracle::Gen gen(72);
    int answered = 0;
    for (int round = 0; round < 200; ++round) {
        auto inst = gen.sandwich(5);
        inst.lists = gen.lists(5, 4);
        auto brute = oracle::brute_sandwich(m, inst);
        optional<SandwichSolution> s;
        try {
            s = solve_list_sandwich(m, inst, false);
        }
        catch (const OpenListRegime &) {
            s = solve_list_sandwich(m, inst, true);
        }
        ASSERT_EQ(bool(s), brute);
        if (s)
            ASSERT_TRUE(verify_sandwich(m, inst, *s));
        ++answered;
    }
    EXPECT_EQ(answered, 200);
}

TEST(Sandwich, AgreesWithBruteForce)
{
    oracle::Gen gen(73);
    for (auto & m : { split_matrix(), bipartite_matrix(), stubborn_matrix(), k3_adjacency() }) {
        bool oracle_path = ! recognize_tractable(from_matrix(m));
        for (int round = 0; round < 150; ++round) {
            auto inst = gen.sandwich(1 + gen.below(5));
            auto s = solve_sandwich(m, inst, oracle_path);
            auto b = brute_force_sandwich(m, inst);
            ASSERT_EQ(bool(s), oracle::brute_sandwich(m, inst));
            ASSERT_EQ(bool(b), bool(s));
            if (s)
                ASSERT_TRUE(verify_sandwich(m, inst, *s));
            if (b)
                ASSERT_TRUE(verify_sandwich(m, inst, *b));
        }
    }
}

TEST(Sandwich, VerifyRejectsBadSolutions)
{
    SandwichInstance inst{ 3, SimpleGraph(3, { { 0, 1 } }), complete(3), std::nullopt };
    SandwichSolution s{ SimpleGraph(3), { 0, 0, 0 } };
    EXPECT_FALSE(verify_sandwich(split_matrix(), inst, s));
    s.edges = SimpleGraph(3, { { 0, 1 } });
    EXPECT_FALSE(verify_sandwich(split_matrix(), inst, s));
    s.partition = { 1, 1, 0 };
    EXPECT_TRUE(verify_sandwich(split_matrix(), inst, s));
    s.partition = { 1, 1, 7 };
    EXPECT_FALSE(verify_sandwich(split_matrix(), inst, s));
}
