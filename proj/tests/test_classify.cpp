#include <dichro/classify.hpp>
#include <dichro/json_io.hpp>

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace dichro;

namespace
{
    auto example_a() -> TwoEdgeColouredGraph
    {
        TwoEdgeColouredGraph a(3);
        a.add_red(0, 0); a.add_blue(1, 1); a.add_blue(2, 2);
        a.add_blue(0, 1); a.add_blue(0, 2); a.add_red(1, 2);
        return a;
    }

    auto k_bipartite(int a, int b) -> SimpleGraph
    {
        SimpleGraph g(a + b);
        for (int i = 0; i < a; ++i)
            for (int j = 0; j < b; ++j)
                g.add_edge(i, a + j);
        return g;
    }

    const SimpleGraph k1k2(3, { { 1, 2 } });
}

TEST(Classify, NamedTemplates)
{
    EXPECT_EQ(classify_matrix(StarMatrix{ "0*", "*1" }).verdict, Verdict::PolynomialTime);
    EXPECT_EQ(classify(example_a()).verdict, Verdict::NPComplete);
    EXPECT_EQ(classify(star_encode(SimpleGraph(3, { { 0, 1 }, { 0, 2 }, { 1, 2 } }))).verdict, Verdict::NPComplete);
    EXPECT_EQ(classify_matrix(StarMatrix{ "0*", "*0" }).verdict, Verdict::PolynomialTime);
    EXPECT_EQ(classify_matrix(adjacency_matrix(SimpleGraph(3, { { 0, 1 }, { 0, 2 }, { 1, 2 } }))).verdict, Verdict::NPComplete);
    EXPECT_EQ(classify_matrix(StarMatrix{ "*" }).verdict, Verdict::PolynomialTime);
}

TEST(Classify, ExampleACertificate)
{
    auto c = classify(example_a());
    ASSERT_TRUE(c.certificate);
    EXPECT_TRUE(std::holds_alternative<PpOddCycle>(*c.certificate));
    EXPECT_TRUE(verify_certificate(example_a(), *c.certificate));
    ASSERT_TRUE(c.rejection);
}

TEST(Classify, CertificatesCanBeSkipped)
{
    auto c = classify(example_a(), { false });
    ASSERT_TRUE(c.certificate);
    EXPECT_TRUE(std::holds_alternative<RecognizerReject>(*c.certificate));
    EXPECT_TRUE(verify_certificate(example_a(), *c.certificate));
}

TEST(Classify, SplitMatrixDecomposition)
{
    auto c = classify_matrix(StarMatrix{ "0*", "*1" });
    ASSERT_TRUE(c.tractable);
    EXPECT_FALSE(c.certificate);
    EXPECT_EQ(c.tractable->decomposition.blocks[0].kind, BlockKind::BichromaticStarEdge);
}

TEST(Classify, StarLoopMeansPolynomial)
{
    oracle::Gen gen(61);
    for (int round = 0; round < 100; ++round) {
        auto h = gen.template_graph(1 + gen.below(6));
        h.set_code(0, 0, 3);
        EXPECT_EQ(classify(h).verdict, Verdict::PolynomialTime);
    }
}

// Up to three vertices every rejected template holds a verified certificate.
TEST(Classify, RejectionsCertifiedUpToThree)
{
    int hard = 0, uncertified = 0;
    for (int n = 1; n <= 3; ++n)
        for (auto & h : enumerate_reflexive_complete(n, false)) {
            auto c = classify(h);
            if (c.verdict == Verdict::PolynomialTime)
                continue;
            ++hard;
            ASSERT_TRUE(c.certificate);
            EXPECT_TRUE(verify_certificate(h, *c.certificate));
            uncertified += std::holds_alternative<RecognizerReject>(*c.certificate);
        }
    EXPECT_EQ(hard, 26);
    EXPECT_EQ(uncertified, 0);
}

TEST(Classify, JsonShape)
{
    auto j = to_json(classify(example_a()));
    EXPECT_EQ(j["verdict"], "NP-complete");
    EXPECT_TRUE(j["decomposition"].is_null());
    EXPECT_EQ(j["certificate"]["type"], "pp-odd-cycle");
    auto p = to_json(classify_matrix(StarMatrix{ "0*", "*1" }));
    EXPECT_EQ(p["verdict"], "P");
    EXPECT_EQ(p["decomposition"]["blocks"][0]["kind"], "bichromatic-star-edge");
}

TEST(PointDetermining, Examples)
{
    auto k23 = point_determining_core(k_bipartite(2, 3));
    EXPECT_EQ(k23.graph.size(), 2);
    EXPECT_EQ(k23.graph.edges(), (vector<pair<int, int>>{ { 0, 1 } }));
    EXPECT_EQ(k23.map, (vector<int>{ 0, 0, 1, 1, 1 }));

    auto same = point_determining_core(k1k2);
    EXPECT_EQ(same.graph, k1k2);

    SimpleGraph blown(4, { { 2, 3 } });
    auto c = point_determining_core(blown);
    EXPECT_EQ(c.graph, k1k2);
}

TEST(PointDetermining, ContractionIsAFullHomomorphism)
{
    oracle::Gen gen(62);
    for (int round = 0; round < 300; ++round) {
        auto g = gen.simple_graph(1 + gen.below(7));
        for (int v = 0; v < g.size(); ++v)
            if (gen.coin(1, 4))
                g.add_edge(v, v);
        auto c = point_determining_core(g);
        ASSERT_TRUE(is_full_hom(g, c.graph, c.map));
        // no two vertices left are twins
        auto all = all_vertices(c.graph.size());
        for (int u = 0; u < c.graph.size(); ++u)
            for (int v = u + 1; v < c.graph.size(); ++v)
                ASSERT_FALSE(are_twins(c.graph, all, u, v));
    }
}

TEST(Freeness, Examples)
{
    SimpleGraph c5(5, { { 0, 1 }, { 1, 2 }, { 2, 3 }, { 3, 4 }, { 4, 0 } });
    auto r = is_k3_2k2_p4_free(c5);
    EXPECT_FALSE(r.free);
    EXPECT_EQ(r.obstruction, "P4");
    EXPECT_TRUE(is_k3_2k2_p4_free(k_bipartite(3, 3)).free);
    auto two = is_k3_2k2_p4_free(SimpleGraph(4, { { 0, 1 }, { 2, 3 } }));
    EXPECT_FALSE(two.free);
    EXPECT_EQ(two.obstruction, "2K2");
    EXPECT_THROW(is_k3_2k2_p4_free(SimpleGraph(1, { { 0, 0 } })), Error);
}

TEST(Freeness, MatchesFullHomIntoK1PlusK2)
{
    oracle::Gen gen(63);
    for (int round = 0; round < 500; ++round) {
        auto g = gen.simple_graph(1 + gen.below(7), 1 + gen.below(3), 4);
        ASSERT_EQ(is_k3_2k2_p4_free(g).free, oracle::brute_full_hom(g, k1k2));
    }
}

TEST(FullHomSandwich, Examples)
{
    EXPECT_EQ(classify_fullhom_sandwich(k1k2).verdict, Verdict::PolynomialTime);
    SimpleGraph p4(4, { { 0, 1 }, { 1, 2 }, { 2, 3 } });
    auto r = classify_fullhom_sandwich(p4);
    EXPECT_EQ(r.verdict, Verdict::NPComplete);
    ASSERT_TRUE(r.loopless_check);
    EXPECT_FALSE(r.loopless_check->free);

    // K2 plus a looped vertex adjacent to everything
    SimpleGraph dominant(3, { { 0, 1 }, { 2, 2 }, { 2, 0 }, { 2, 1 } });
    auto d = classify_fullhom_sandwich(dominant);
    EXPECT_EQ(d.verdict, Verdict::PolynomialTime);
    EXPECT_EQ(d.peeled, vector<int>{ 2 });
}

TEST(FullHomSandwich, LooplessAgreesWithForbiddenSubgraphs)
{
    oracle::Gen gen(64);
    for (int round = 0; round < 300; ++round) {
        auto g = gen.simple_graph(1 + gen.below(7));
        auto r = classify_fullhom_sandwich(g);
        ASSERT_EQ(r.verdict == Verdict::PolynomialTime, oracle::brute_full_hom(g, k1k2));
    }
}

// Removing a different removable vertex first never changes the verdict.
TEST(FullHomSandwich, PeelingOrderIndependent)
{
    oracle::Gen gen(66);
    int peeled_somewhere = 0;
    for (int round = 0; round < 400; ++round) {
        auto h = gen.simple_graph(1 + gen.below(7));
        for (int v = 0; v < h.size(); ++v)
            if (gen.coin(1, 3))
                h.add_edge(v, v);
        auto c = classify_fullhom_sandwich(h);
        peeled_somewhere += ! c.peeled.empty();
        auto & g = c.core.graph;
        for (int trial = 0; trial < 10; ++trial) {
            auto alive = all_vertices(g.size());
            while (! residue_is_base(g, alive)) {
                vector<int> options;
                for (int v : alive)
                    if (removable(g, alive, v))
                        options.push_back(v);
                if (options.empty())
                    break;
                int v = options[gen.below(int(options.size()))];
                alive.erase(std::find(alive.begin(), alive.end(), v));
            }
            ASSERT_EQ(residue_is_base(g, alive), c.verdict == Verdict::PolynomialTime);
        }
    }
    EXPECT_GT(peeled_somewhere, 50);
}

TEST(ShrinkLists, Examples)
{
    auto h = star_encode(k1k2);
    auto inst = with_full_lists(TwoEdgeColouredGraph(2), 3);
    inst.lists[1] = { 2 };
    EXPECT_EQ(shrink_lists_via_fullhom(h, h, { 0, 1, 2 }, inst).lists, inst.lists);

    TwoEdgeColouredGraph star(1);
    star.add_star(0, 0);
    TwoEdgeColouredGraph stars(3);
    for (int u = 0; u < 3; ++u)
        for (int v = u; v < 3; ++v)
            stars.add_star(u, v);
    auto collapsed = shrink_lists_via_fullhom(stars, star, { 0, 0, 0 }, with_full_lists(TwoEdgeColouredGraph(2), 3));
    EXPECT_EQ(collapsed.lists, (vector<vector<int>>{ { 0 }, { 0 } }));

    EXPECT_THROW(shrink_lists_via_fullhom(h, h, { 0, 0, 2 }, inst), Error);
}

// A blow-up of (K1+K2)* solved through the contraction matches solving directly.
TEST(ShrinkLists, BlowUpSolvesOverThreeVertices)
{
    SimpleGraph big(5, { { 1, 2 }, { 1, 4 }, { 2, 3 }, { 3, 4 } });
    auto g = star_encode(big);
    auto small = star_encode(k1k2);
    auto pd = point_determining_core(big);
    ASSERT_EQ(pd.graph, k1k2);
    oracle::Gen gen(65);
    for (int round = 0; round < 100; ++round) {
        int n = 1 + gen.below(5);
        ListCspInstance inst{ gen.instance_graph(n, 0), gen.lists(n, 5) };
        auto shrunk = shrink_lists_via_fullhom(g, small, pd.map, inst);
        ASSERT_EQ(bool(oracle::brute_hom(inst.graph, g, inst.lists)), bool(solve_list_csp(small, shrunk)));
    }
}
