#include <kgraph/graph_operads.hpp>

#include <gtest/gtest.h>

#include <set>

using namespace kgraph;

namespace {
SignedGraph G(const char* s) { return parse_graph(s); }
} // namespace

TEST(GraCompose, PathIntoEdgeGivesFourGraphs) {
    auto r = gra_compose(G("gra{n=3;e=[(1,2),(2,3)]}"), 2, G("gra{n=2;e=[(1,2)]}"));
    ASSERT_EQ(r.size(), 4u);
    std::set<std::set<std::pair<int, int>>> got;
    for (const auto& [g, c] : r) {
        EXPECT_EQ(abs(c), 1);
        got.insert(std::set<std::pair<int, int>>(g.edges.begin(), g.edges.end()));
    }
    std::set<std::set<std::pair<int, int>>> want = {
        {{1, 2}, {0, 1}, {1, 3}}, {{1, 2}, {0, 1}, {2, 3}}, {{1, 2}, {0, 2}, {1, 3}}, {{1, 2}, {0, 2}, {2, 3}}};
    EXPECT_EQ(got, want);
}

TEST(GraCompose, UnitAndRawCount) {
    auto g = G("gra{n=3;e=[(1,2),(2,3),(1,3)]}");
    EXPECT_EQ(gra_compose(g, 2, unit_graph(GraphKind::GRA)), make_lincomb(g));
    auto h = G("gra{n=3;i=1;e=[(1,w1),(2,w1)]}");
    for (int j = 1; j <= 3; ++j) {
        std::size_t val = 0;
        for (const auto& [a, b] : g.edges) val += (a == j - 1) + (b == j - 1);
        std::size_t expect = 1;
        for (std::size_t k = 0; k < val; ++k) expect *= h.vertex_count();
        EXPECT_EQ(gra_compose_raw(g, j, h).size(), expect);
    }
}

TEST(GraCompose, KindMismatchAndSlot) {
    EXPECT_THROW(gra_compose(G("gra{n=2;e=[(1,2)]}"), 1, G("dgra{n=1;e=[]}")), ValidationError);
    EXPECT_THROW(gra_compose(G("gra{n=2;e=[(1,2)]}"), 3, G("gra{n=1;e=[]}")), ValidationError);
}

TEST(Gra1Compose, DoubleEdgeTermCancels) {
    auto g1 = G("gra1{m=1;e=[(1>in)]}");
    auto g2 = G("gra1{m=1;e=[(out>1)]}");
    EXPECT_EQ(gra1_compose_raw(g1, g2).size(), 4u);
    auto r = gra1_compose(g1, g2);
    EXPECT_EQ(r.size(), 3u);
    for (const auto& [g, c] : r) EXPECT_EQ(g.edges.size(), 2u);
}

TEST(Gra1Compose, UnitAndBB) {
    auto g = G("gra1{m=2;e=[(out>1),(1>in),(2>in)]}");
    EXPECT_EQ(gra1_compose(g, unit_graph(GraphKind::GRA1)), make_lincomb(g));
    EXPECT_EQ(gra1_compose(unit_graph(GraphKind::GRA1), g), make_lincomb(g));
    auto B = G("gra1{m=0;e=[(out>in)]}");
    EXPECT_TRUE(gra1_compose(B, B).empty());
}

TEST(DirectedExpansion, Examples) {
    auto one = directed_expansion(G("gra{n=2;e=[(1,2)]}"));
    EXPECT_EQ(one.size(), 2u);
    EXPECT_EQ(one.coef(G("dgra{n=2;e=[(1>2)]}")), 1);
    EXPECT_EQ(one.coef(G("dgra{n=2;e=[(2>1)]}")), 1);
    EXPECT_EQ(directed_expansion(G("gra{n=2;e=[]}")), make_lincomb(G("dgra{n=2;e=[]}")));
    EXPECT_EQ(directed_expansion(G("gra{n=3;e=[(1,2),(2,3)]}")).size(), 4u);
}

TEST(SymAction, Examples) {
    auto e = G("gra{n=2;e=[(1,2)]}");
    auto r = sym_action(e, {2, 1});
    ASSERT_TRUE(r);
    EXPECT_EQ(r->graph, e);
    EXPECT_EQ(r->sign, 1);
    auto two = G("gra{n=3;e=[(1,2),(1,3)]}");
    auto s = sym_action(two, {1, 3, 2});
    ASSERT_TRUE(s);
    EXPECT_EQ(s->graph, two);
    EXPECT_EQ(s->sign, -1);
    auto id = sym_action(two, {1, 2, 3});
    EXPECT_EQ(id->graph, two);
    EXPECT_EQ(id->sign, 1);
    EXPECT_THROW(sym_action(two, {1, 2}), ValidationError);
}

TEST(Sgra1Cyclic, Rotations) {
    auto g = G("sgra1{m=1,n=2;e=[(1>b1),(out>b2),(1>b0),(out>b1)]}");
    auto id = sgra1_cyclic(g, 0);
    auto c = canonical_form(g);
    EXPECT_EQ(id->graph, c->graph);
    EXPECT_EQ(sgra1_cyclic(g, 3)->graph, c->graph);
    auto r1 = sgra1_cyclic(g, 1);
    auto r11 = sgra1_cyclic(r1->graph, 1);
    auto r2 = sgra1_cyclic(g, 2);
    EXPECT_EQ(r11->graph, r2->graph);
    EXPECT_EQ(r1->sign * r11->sign, r2->sign);
}

TEST(SgraInsert, IntoTypeII) {
    // wedge inserted into b1 of (1>b1): edge reconnects to either new type II vertex
    auto g = G("sgra{m=1,n=1;e=[(1>b1)]}");
    auto wedge = G("sgra{m=0,n=2;e=[]}");
    auto r = sgra_insert_typeII(g, 0, wedge);
    EXPECT_EQ(r.size(), 2u);
    EXPECT_EQ(r.coef(G("sgra{m=1,n=2;e=[(1>b1)]}")), 1);
    EXPECT_EQ(r.coef(G("sgra{m=1,n=2;e=[(1>b2)]}")), 1);
}

namespace {
std::vector<SignedGraph> gra_sample(GraphKind kind) {
    std::vector<SignedGraph> s;
    const char* arrow = kind == GraphKind::GRA ? "," : ">";
    std::string k = kind_name(kind);
    auto add = [&](const std::string& body) { s.push_back(parse_graph(k + body)); };
    add("{n=1;e=[]}");
    add("{n=2;e=[]}");
    add(std::string("{n=2;e=[(1") + arrow + "2)]}");
    add(std::string("{n=3;e=[(1") + arrow + "2),(2" + arrow + "3)]}");
    add(std::string("{n=2;i=1;e=[(1") + arrow + "w1),(2" + arrow + "w1)]}");
    if (kind == GraphKind::DGRA) add("{n=2;e=[(2>1)]}");
    return s;
}
} // namespace

TEST(OperadAxioms, GraPasses) {
    auto rep = operad_axiom_report(gra_sample(GraphKind::GRA), GraphKind::GRA);
    EXPECT_TRUE(rep.pass) << rep.counterexample;
    EXPECT_GT(rep.checks, 100);
}

TEST(OperadAxioms, DGraPasses) {
    auto rep = operad_axiom_report(gra_sample(GraphKind::DGRA), GraphKind::DGRA);
    EXPECT_TRUE(rep.pass) << rep.counterexample;
}

TEST(OperadAxioms, Gra1Passes) {
    std::vector<SignedGraph> s = {G("gra1{m=0;e=[(out>in)]}"), G("gra1{m=1;e=[(1>in)]}"), G("gra1{m=1;e=[(out>1)]}"),
                                  G("gra1{m=1;e=[]}"), G("dgra{n=1;e=[]}"), G("dgra{n=2;e=[(1>2)]}")};
    auto rep = operad_axiom_report(s, GraphKind::GRA1);
    EXPECT_TRUE(rep.pass) << rep.counterexample;
}

TEST(OperadAxioms, CorruptedSignFails) {
    ComposeFn bad = [](const SignedGraph& a, int j, const SignedGraph& b) {
        auto r = gra_compose(a, j, b);
        if (b.edges.size() == 1) r *= -1;
        return r;
    };
    auto rep = operad_axiom_report(gra_sample(GraphKind::GRA), GraphKind::GRA, bad);
    EXPECT_FALSE(rep.pass);
    EXPECT_FALSE(rep.counterexample.empty());
}

TEST(DirectedExpansion, IsOperadMorphism) {
    auto s = gra_sample(GraphKind::GRA);
    for (const auto& a : s)
        for (const auto& b : s)
            for (int j = 1; j <= a.external_count; ++j)
                EXPECT_EQ(directed_expansion(gra_compose(a, j, b)),
                          gra_compose(directed_expansion(a), j, directed_expansion(b)));
}
