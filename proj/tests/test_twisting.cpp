#include <kgraph/twisting.hpp>

#include <gtest/gtest.h>

using namespace kgraph;

namespace {

bool normalized_hochschild(const SignedGraph& g) {
    for (int k = 0; k < g.typeII_count; ++k)
        if (g.in_degree(g.typeII_vertex(k)) == 0) return false;
    return true;
}

std::vector<SignedGraph> graphs_sample() {
    std::vector<SignedGraph> r;
    for (int n = 1; n <= 3; ++n)
        for (int k = 0; k <= 2; ++k)
            for (auto& g : enumerate_graphs({GraphKind::GRA, n, 0, k, 4})) r.push_back(g);
    return r;
}

std::vector<SignedGraph> graphs1_sample(int max_edges) {
    std::vector<SignedGraph> r;
    for (int m = 0; m <= 1; ++m)
        for (int k = 0; k <= 2; ++k)
            for (auto& g : enumerate_graphs({GraphKind::GRA1, m, 0, k, max_edges})) r.push_back(g);
    return r;
}

} // namespace

TEST(Enumerate, EdgeGraphsAndZeros) {
    EXPECT_EQ(enumerate_graphs({GraphKind::GRA, 2, 0, 0, 4}).size(), 2u);
    // a triangle on one external and two internals is odd under the swap of the internals
    for (const auto& g : enumerate_graphs({GraphKind::GRA, 1, 0, 2, 3}))
        EXPECT_NE(to_string(g), "gra{n=1;i=2;e=[(1,w1),(1,w2),(w1,w2)]}");
}

TEST(GraphsDifferential, EdgeGraph) {
    auto e = parse_graph("gra{n=2;e=[(1,2)]}");
    EXPECT_EQ(split_raw_count(e), 4u);
    EXPECT_TRUE(graphs_differential(e).empty());
    auto two = parse_graph("gra{n=2;e=[]}");
    EXPECT_TRUE(graphs_differential(two).empty());
}

TEST(GraphsDifferential, SquareZeroDegreeLoopOrderMembership) {
    auto sample = graphs_sample();
    ASSERT_EQ(sample.size(), 295u);
    int members = 0;
    for (const auto& g : sample) {
        auto d = graphs_differential(g);
        EXPECT_TRUE(graphs_differential(d).empty()) << to_string(g);
        bool in = graphs_membership(g, GraphFamily::GRAPHS);
        members += in;
        for (const auto& [h, c] : d) {
            EXPECT_EQ(h.degree(), g.degree() + 1);
            EXPECT_EQ(loop_order(h), loop_order(g));
            if (in) EXPECT_TRUE(graphs_membership(h, GraphFamily::GRAPHS)) << to_string(g) << " -> " << to_string(h);
        }
    }
    EXPECT_EQ(members, 15);
}

TEST(Graphs1Differential, SquareZeroAndMembership) {
    for (const auto& g : graphs1_sample(4)) {
        auto d = graphs1_differential(g);
        EXPECT_TRUE(graphs1_differential(d).empty()) << to_string(g);
        if (!graphs_membership(g, GraphFamily::GRAPHS1)) continue;
        for (const auto& [h, c] : d) {
            EXPECT_EQ(h.degree(), g.degree() + 1);
            EXPECT_TRUE(graphs_membership(h, GraphFamily::GRAPHS1)) << to_string(g) << " -> " << to_string(h);
        }
    }
}

TEST(Graphs1Differential, OtherSignChoicesFail) {
    auto sample = graphs1_sample(3);
    for (Graphs1Signs s : {Graphs1Signs{1, 1}, Graphs1Signs{1, -1}, Graphs1Signs{-1, 1}}) {
        int bad = 0;
        for (const auto& g : sample) bad += !graphs1_differential(graphs1_differential(g, s), s).empty();
        EXPECT_GT(bad, 0);
    }
}

TEST(Graphs1Differential, OutInEdgeIsClosed) {
    EXPECT_TRUE(graphs1_differential(parse_graph("gra1{m=0;e=[(out>in)]}")).empty());
    EXPECT_FALSE(graphs1_differential(parse_graph("gra1{m=1;e=[(out>1)]}")).empty());
}

TEST(SGraphsDifferential, WedgeSquareZeroAndNormalizedSubcomplex) {
    auto w = WeightSystem::wedge();
    int checked = 0;
    for (int m = 0; m <= 1; ++m)
        for (int n = 0; n <= 2; ++n)
            for (int k = 0; k <= 1; ++k) {
                if (m + n == 0) continue;
                for (const auto& g : enumerate_graphs({GraphKind::SGRA, m, n, k, 3})) {
                    ++checked;
                    auto d = sgraphs_differential(g, w);
                    EXPECT_TRUE(sgraphs_differential(d, w).empty()) << to_string(g);
                    for (const auto& [h, c] : d) {
                        EXPECT_EQ(h.degree() + h.typeII_count, g.degree() + g.typeII_count + 1);
                        if (normalized_hochschild(g)) EXPECT_TRUE(normalized_hochschild(h));
                    }
                }
            }
    EXPECT_EQ(checked, 76);
}

TEST(SGraphsDifferential, HochschildOfVectorFieldVanishes) {
    // a single edge into one type II vertex is a derivation
    EXPECT_TRUE(hochschild_differential(parse_graph("sgra{m=1,n=1;e=[(1>b1)]}")).empty());
    EXPECT_FALSE(hochschild_differential(parse_graph("sgra{m=1,n=1;e=[]}")).empty());
}

TEST(WeightSystem, JsonRoundTrip) {
    auto w = WeightSystem::moyal(3);
    auto back = weight_system_from_json(to_json(w));
    EXPECT_EQ(back.weights, w.weights);
    EXPECT_EQ(back.truncation_order, 3);
    EXPECT_THROW(weight_system_from_json("{\"order\":1,"), ParseError);
    EXPECT_THROW(weight_system_from_json("{\"order\":7,\"weights\":[]}"), ValidationError);
}

TEST(WeightSystem, MoyalConstantResidualVanishes) {
    auto r = mc_residual(WeightSystem::moyal(3));
    ASSERT_EQ(r.size(), 4u);
    for (const auto& x : r) EXPECT_TRUE(constant_coefficient_part(x).empty()) << to_string(x);
    EXPECT_TRUE(r[0].empty());
    EXPECT_TRUE(r[1].empty());
}

TEST(WeightSystem, CorruptedMoyalFails) {
    auto w = WeightSystem::moyal(3);
    for (auto& [g, c] : w.weights)
        if (g.internal_count == 2) c *= 3;
    auto r = mc_residual(w);
    EXPECT_FALSE(constant_coefficient_part(r[2]).empty());
}
