#include <kgraph/signed_graph.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

using namespace kgraph;

TEST(GraphCore, DoubleEdgeIsZero) {
    SignedGraph g;
    g.kind = GraphKind::GRA;
    g.external_count = 2;
    g.edges = {{0, 1}, {0, 1}};
    EXPECT_FALSE(canonical_form(g).has_value());
}

TEST(GraphCore, CanonicalIsFixedPoint) {
    auto g = parse_graph("gra{n=3; e=[(1,2),(2,3)]}");
    auto c = canonical_form(g);
    ASSERT_TRUE(c);
    EXPECT_EQ(c->sign, 1);
    EXPECT_EQ(c->graph, g);
}

TEST(GraphCore, EdgeSwapGivesMinusSign) {
    auto g = parse_graph("gra{n=3; e=[(2,3),(1,2)]}");
    auto c = canonical_form(g);
    ASSERT_TRUE(c);
    EXPECT_EQ(c->sign, -1);
    EXPECT_EQ(to_string(c->graph), "gra{n=3;e=[(1,2),(2,3)]}");
    // swapped copy plus original cancels
    auto x = lincomb_combine(make_lincomb(g), 1, make_lincomb(parse_graph("gra{n=3;e=[(1,2),(2,3)]}")));
    EXPECT_TRUE(x.empty());
}

TEST(GraphCore, LincombCombine) {
    auto a = make_lincomb(parse_graph("gra{n=2;e=[(1,2)]}"));
    EXPECT_EQ(lincomb_combine(a, 0, a), a);
    EXPECT_TRUE(lincomb_combine(a, -1, a).empty());
    auto b = make_lincomb(parse_graph("dgra{n=2;e=[(1>2)]}"));
    EXPECT_THROW(lincomb_combine(a, 1, b), ValidationError);
}

TEST(GraphCore, Validation) {
    EXPECT_THROW(parse_graph("gra{n=2;e=[(1,1)]}"), ParseError);
    EXPECT_THROW(parse_graph("gra1{m=1;e=[(1>out)]}"), ParseError);
    EXPECT_THROW(parse_graph("gra1{m=1;e=[(in>1)]}"), ParseError);
    EXPECT_THROW(parse_graph("sgra{m=1,n=1;e=[(b1>1)]}"), ParseError);
    SignedGraph g;
    g.kind = GraphKind::DGRA;
    g.external_count = 1;
    g.edges = {{0, 0}};
    EXPECT_THROW(validate(g), ValidationError);
    try {
        parse_graph("gra{n=2;e=[(1,7)]}");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.position, 14u);
    }
}

TEST(GraphCore, RoundTripAllKinds) {
    for (const char* s : {"gra{n=3;e=[(1,2),(2,3)]}", "dgra{n=2;e=[(1>2)]}", "gra1{m=2;e=[(out>1),(1>in)]}",
                          "sgra{m=1,n=2;e=[(1>b1),(1>b2)]}", "sgra1{m=1,n=1;e=[(out>b1),(1>b0)]}",
                          "gra{n=2;i=1;e=[(1,w1),(2,w1)]}"}) {
        EXPECT_EQ(to_string(parse_graph(s)), s);
    }
    EXPECT_EQ(to_string(parse_graph(" gra { n = 2 ; e = [ ( 2 , 1 ) ] } ")), "gra{n=2;e=[(1,2)]}");
}

TEST(GraphCore, JsonRoundTrip) {
    GraphLinComb x;
    add_graph(x, parse_graph("gra{n=2;e=[(1,2)]}"), Rational(-1, 2));
    add_graph(x, parse_graph("gra{n=2;e=[]}"), 3);
    auto j = to_json(x);
    EXPECT_EQ(lincomb_from_json(j), x);
}

TEST(GraphCore, TriangleOddSymmetry) {
    // internal triangle with the rotation acting evenly, reflection oddly -> zero
    auto g = parse_graph("gra{n=0;i=3;e=[(w1,w2),(w2,w3),(w1,w3)]}");
    EXPECT_FALSE(canonical_form(g).has_value());
    // tetrahedron (wheel with 3 spokes) survives
    auto t = parse_graph("gra{n=0;i=4;e=[(w1,w2),(w1,w3),(w1,w4),(w2,w3),(w3,w4),(w2,w4)]}");
    EXPECT_TRUE(canonical_form(t).has_value());
}

namespace {

SignedGraph random_graph(std::mt19937& rng, GraphKind kind) {
    SignedGraph g;
    g.kind = kind;
    g.external_count = rng() % 3;
    g.internal_count = rng() % 5;
    if (kind == GraphKind::SGRA) g.typeII_count = 1 + rng() % 2;
    int n = g.vertex_count();
    if (n < 2) return g;
    int e = rng() % 7;
    for (int k = 0; k < e; ++k) {
        int a = rng() % n, b = rng() % n;
        if (a == b || g.is_typeII(a)) continue;
        if (kind == GraphKind::GRA && a > b) std::swap(a, b);
        if (std::find(g.edges.begin(), g.edges.end(), std::make_pair(a, b)) != g.edges.end()) continue;
        g.edges.emplace_back(a, b);
    }
    return g;
}

SignedGraph relabel_internal(const SignedGraph& g, const std::vector<int>& perm) {
    SignedGraph h = g;
    int f = g.first_internal();
    for (auto& [a, b] : h.edges) {
        if (a >= f) a = f + perm[a - f];
        if (b >= f) b = f + perm[b - f];
        if (!h.directed() && a > b) std::swap(a, b);
    }
    return h;
}

} // namespace

TEST(GraphCoreProperty, RelabelingInvariance) {
    std::mt19937 rng(11);
    for (GraphKind kind : {GraphKind::GRA, GraphKind::DGRA, GraphKind::SGRA}) {
        for (int trial = 0; trial < 300; ++trial) {
            auto g = random_graph(rng, kind);
            auto c = canonical_form(g);
            std::vector<int> perm(g.internal_count);
            std::iota(perm.begin(), perm.end(), 0);
            std::shuffle(perm.begin(), perm.end(), rng);
            auto h = relabel_internal(g, perm);
            std::vector<int> eperm(h.edges.size());
            std::iota(eperm.begin(), eperm.end(), 0);
            std::shuffle(eperm.begin(), eperm.end(), rng);
            SignedGraph h2 = h;
            for (std::size_t i = 0; i < eperm.size(); ++i) h2.edges[i] = h.edges[eperm[i]];
            int parity = 0;
            for (std::size_t i = 0; i < eperm.size(); ++i)
                for (std::size_t j = i + 1; j < eperm.size(); ++j) parity ^= eperm[i] > eperm[j];
            auto c2 = canonical_form(h2);
            ASSERT_EQ(c.has_value(), c2.has_value()) << to_string(g);
            if (!c) continue;
            EXPECT_EQ(c->graph, c2->graph);
            EXPECT_EQ(c->sign * (parity ? -1 : 1), c2->sign);
            // idempotent, degree preserved
            auto cc = canonical_form(c->graph);
            ASSERT_TRUE(cc);
            EXPECT_EQ(cc->sign, 1);
            EXPECT_EQ(cc->graph, c->graph);
            EXPECT_EQ(c->graph.degree(), g.degree());
        }
    }
}
