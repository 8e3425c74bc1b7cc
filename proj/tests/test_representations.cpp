#include <kgraph/errors.hpp>
#include <kgraph/graph_operads.hpp>
#include <kgraph/representations.hpp>
#include <kgraph/twisting.hpp>

#include <gtest/gtest.h>

using namespace kgraph;

namespace kgraph {
void PrintTo(const SuperPoly& a, std::ostream* os) { *os << to_string(a); }
void PrintTo(const PolyOperator& a, std::ostream* os) { *os << to_string(a); }
} // namespace kgraph

namespace {

int sgn(int k) { return k % 2 ? -1 : 1; }

PolyVector P(const char* s, int d = 3) { return parse_polyvector(s, d); }

PolyOperator random_operator(int d, int arity, std::mt19937_64& rng) {
    PolyOperator op{d, arity, {}};
    std::uniform_int_distribution<int> coef(-2, 2), bit(0, 1);
    for (int t = 0; t < 2; ++t) {
        OpTerm term;
        term.coef.exps.assign(d, 0);
        for (int k = 0; k < d; ++k) term.coef.exps[k] = bit(rng);
        term.derivs.assign(arity, std::vector<int>(d, 0));
        for (auto& a : term.derivs) {
            for (int k = 0; k < d; ++k) a[k] = bit(rng);
            a[rng() % d] += 1;
        }
        op.add(term, coef(rng));
    }
    return op;
}

} // namespace

TEST(Polynomials, ParseRoundTripAndErrors) {
    for (const char* s : {"x1^2*xi1 + 3/2*x2", "-xi1*xi2", "0", "x1*x2*x3^3 - 7/3"}) {
        auto a = P(s);
        EXPECT_EQ(P(to_string(a).c_str()), a) << s;
    }
    EXPECT_EQ(to_string(P("xi2*xi1")), "-xi1*xi2");
    EXPECT_TRUE(P("xi1*xi1").empty());
    auto w = parse_form("x1*dx2^dx1 + dx3", 3);
    EXPECT_EQ(form_to_string(w), "dx3 - x1*dx1^dx2");
    EXPECT_EQ(parse_form(form_to_string(w), 3), w);
    try {
        P("x1 + y2");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.position, 5u);
    }
    EXPECT_THROW(P("x4"), ParseError);
    EXPECT_THROW(P("x1 x2"), ParseError);
    EXPECT_THROW(P(""), ParseError);
    EXPECT_THROW(parse_form("xi1", 2), ParseError);
}

TEST(Polyvectors, SchoutenExamples) {
    auto f = P("x1^3*x2 + x3");
    EXPECT_EQ(schouten_bracket(P("xi1"), f), d_x(f, 0));
    EXPECT_EQ(schouten_bracket(P("x2*xi1"), P("xi2")), P("-xi1"));
    EXPECT_EQ(act_dgra(parse_graph("dgra{n=2;e=[(1>2)]}"), {P("xi1"), P("x1^2")}), P("2*x1"));
    auto a = P("x1*xi2 + xi3"), b = P("x2^2*xi1*xi3");
    EXPECT_EQ(act_dgra(parse_graph("dgra{n=2;e=[]}"), {a, b}), a * b);
    EXPECT_THROW(act_dgra(parse_graph("dgra{n=2;e=[]}"), {a}), ValidationError);
    EXPECT_THROW(act_dgra(parse_graph("dgra{n=2;e=[]}"), {a, parse_polyvector("x1", 2)}), ValidationError);
}

TEST(Polyvectors, OneEdgeGraphIsSchouten) {
    auto one = directed_expansion(parse_graph("gra{n=2;e=[(1,2)]}"));
    std::mt19937_64 rng(101);
    for (int t = 0; t < 50; ++t) {
        int d = 1 + t % 3;
        auto a = random_polyvector(d, 3, t % (d + 1), 3, rng);
        auto b = random_polyvector(d, 3, (t / 3) % (d + 1), 3, rng);
        EXPECT_EQ(act_dgra(one, {a, b}), schouten_bracket(a, b)) << to_string(a) << " , " << to_string(b);
    }
}

TEST(Polyvectors, E2Relations) {
    std::mt19937_64 rng(102);
    auto wedge = parse_graph("dgra{n=2;e=[]}");
    for (int t = 0; t < 27; ++t) {
        int pa = t % 3, pb = t / 3 % 3, pc = t / 9;
        auto a = random_polyvector(3, 2, pa, 2, rng), b = random_polyvector(3, 2, pb, 2, rng),
             c = random_polyvector(3, 2, pc, 2, rng);
        // graded commutative, associative product
        EXPECT_EQ(act_dgra(wedge, {a, b}), sgn(pa * pb) * act_dgra(wedge, {b, a}));
        EXPECT_EQ((a * b) * c, a * (b * c));
        // Jacobi and Leibniz for the bracket of degree -1
        EXPECT_EQ(sn_bracket(a, b), -sgn((pa - 1) * (pb - 1)) * sn_bracket(b, a));
        EXPECT_EQ(sn_bracket(a, sn_bracket(b, c)),
                  sn_bracket(sn_bracket(a, b), c) + sgn((pa - 1) * (pb - 1)) * sn_bracket(b, sn_bracket(a, c)));
        EXPECT_EQ(sn_bracket(a, b * c), sn_bracket(a, b) * c + sgn((pa - 1) * pb) * (b * sn_bracket(a, c)));
    }
}

TEST(Polyvectors, ActionIsOperadAlgebraMap) {
    std::mt19937_64 rng(103);
    std::vector<SignedGraph> two, three;
    for (auto& g : enumerate_graphs({GraphKind::DGRA, 2, 0, 0, 2})) two.push_back(g);
    for (auto& g : enumerate_graphs({GraphKind::DGRA, 3, 0, 0, 2})) three.push_back(g);
    int checks = 0;
    for (const auto& g1 : two)
        for (const auto& g2 : two)
            for (int j = 1; j <= 2; ++j) {
                std::vector<PolyVector> in;
                std::vector<int> deg;
                for (int s = 0; s < 3; ++s) {
                    deg.push_back(static_cast<int>(rng() % 3));
                    in.push_back(random_polyvector(3, 2, deg.back(), 2, rng));
                }
                auto lhs = act_dgra(gra_compose(g1, j, g2), in);
                std::vector<PolyVector> inner(in.begin() + (j - 1), in.begin() + (j + 1));
                std::vector<PolyVector> outer;
                for (int s = 0; s < j - 1; ++s) outer.push_back(in[s]);
                outer.push_back(act_dgra(g2, inner));
                for (int s = j + 1; s < 3; ++s) outer.push_back(in[s]);
                int before = 0;
                for (int s = 0; s < j - 1; ++s) before += deg[s];
                int e2 = static_cast<int>(g2.edges.size());
                EXPECT_EQ(lhs, sgn(e2 * before) * act_dgra(g1, outer)) << to_string(g1) << " o_" << j << " " << to_string(g2);
                ++checks;
            }
    EXPECT_GT(checks, 30);
    EXPECT_FALSE(three.empty());
}

TEST(Operators, DGammaExamples) {
    auto op = act_sgra(parse_graph("sgra{m=1,n=2;e=[(1>b1),(1>b2)]}"), {P("xi1*xi2 + 2*x3*xi2*xi3")});
    EXPECT_EQ(to_string(op), "(1)*d2a1*d1a2 + (-1)*d1a1*d2a2 + (2*x3)*d3a1*d2a2 + (-2*x3)*d2a1*d3a2");
    EXPECT_TRUE(op.normalized());
    auto mult = act_sgra(parse_graph("sgra{m=0,n=3;e=[]}"), {}, 2);
    EXPECT_EQ(mult, multiplication_operator(2, 3));
    EXPECT_FALSE(mult.normalized());
}

TEST(Operators, DGammaDefiningIdentity) {
    std::mt19937_64 rng(104);
    std::vector<SignedGraph> pool;
    for (int m = 1; m <= 2; ++m)
        for (int n = 1; n <= 2; ++n)
            for (auto& g : enumerate_graphs({GraphKind::SGRA, m, n, 0, 3}))
                if (!g.edges.empty()) pool.push_back(g);
    for (int t = 0; t < 20; ++t) {
        const auto& g = pool[rng() % pool.size()];
        std::vector<PolyVector> gamma, all;
        for (int s = 0; s < g.external_count; ++s) gamma.push_back(random_polyvector(2, 3, static_cast<int>(rng() % 3), 3, rng));
        std::vector<SuperPoly> fns;
        for (int s = 0; s < g.typeII_count; ++s) fns.push_back(random_polyvector(2, 3, 0, 3, rng));
        all = gamma;
        all.insert(all.end(), fns.begin(), fns.end());
        SignedGraph flat = g;
        flat.kind = GraphKind::DGRA;
        flat.external_count = g.external_count + g.typeII_count;
        flat.typeII_count = 0;
        EXPECT_EQ(act_sgra(g, gamma).apply(fns), act_dgra(flat, all)) << to_string(g);
    }
}

TEST(Operators, BracesExamples) {
    auto m = multiplication_operator(2, 2);
    EXPECT_EQ(braces(m, {}), m);
    // |m| = 2: m{m}(a,b,c) = m(m(a,b),c) - m(a,m(b,c)), zero for a commutative product
    EXPECT_TRUE(braces(m, {m}).empty());
    auto id = act_sgra(parse_graph("sgra{m=1,n=1;e=[(1>b1)]}"), {parse_polyvector("xi1", 2)});
    auto mm = braces(m, {id});
    std::vector<SuperPoly> ab{parse_polyvector("x1^2", 2), parse_polyvector("x1*x2", 2)};
    // D{...} at slots 1 and 2 with sign (-1)^(2*0) and (-1)^(2*1)
    EXPECT_EQ(mm.apply(ab), parse_polyvector("2*x1*x1*x2 + x1^2*x2", 2));
}

TEST(Operators, BraceRelationsAndBracket) {
    std::mt19937_64 rng(105);
    for (int t = 0; t < 24; ++t) {
        int p = 1 + t % 3, q = 1 + t / 3 % 2, r = 1 + t / 6 % 2;
        auto a = random_operator(2, p, rng), b = random_operator(2, q, rng), c = random_operator(2, r, rng);
        auto lhs = braces(braces(a, {b}), {c});
        auto rhs = braces(a, {braces(b, {c})});
        auto bc = braces(a, {b, c});
        bc *= sgn((q - 1) * (r - 1));
        rhs += bc;
        rhs += braces(a, {c, b});
        EXPECT_EQ(lhs, rhs);
        auto ab = hochschild_bracket(a, b), ba = hochschild_bracket(b, a);
        ba *= -sgn((p - 1) * (q - 1));
        EXPECT_EQ(ab, ba);
        auto j1 = hochschild_bracket(a, hochschild_bracket(b, c));
        auto j2 = hochschild_bracket(hochschild_bracket(a, b), c);
        auto j3 = hochschild_bracket(b, hochschild_bracket(a, c));
        j3 *= sgn((p - 1) * (q - 1));
        j2 += j3;
        EXPECT_EQ(j1, j2);
    }
}

TEST(Forms, DeRhamAndContractionGraphs) {
    std::mt19937_64 rng(106);
    auto B = parse_graph("gra1{m=0;e=[(out>in)]}");
    auto I = parse_graph("gra1{m=1;e=[]}");
    auto BI = gra1_compose(B, I), IB = gra1_compose(I, B);
    for (int t = 0; t < 48; ++t) {
        int p = t % 3, q = t / 3 % 4;
        auto g = random_polyvector(3, 2, p, 2, rng);
        auto w = random_form(3, 3, q, 3, rng);
        EXPECT_TRUE(de_rham(de_rham(w)).empty());
        EXPECT_EQ(act_gra1(B, {}, w), Rational(-1) * de_rham(w));
        EXPECT_EQ(act_gra1(I, {g}, w), sgn(p * (q - p)) * contraction(g, w));
        EXPECT_EQ(act_gra1(BI, {g}, w) - act_gra1(IB, {g}, w), sgn(p + 1 + p * (q - p)) * lie_derivative(g, w));
    }
}

TEST(Forms, DefiningIdentityHoldsForAllTestPolyvectors) {
    std::mt19937_64 rng(107);
    std::vector<SignedGraph> pool;
    for (int m = 0; m <= 1; ++m)
        for (auto& g : enumerate_graphs({GraphKind::GRA1, m, 0, 0, 2})) pool.push_back(g);
    for (int t = 0; t < 30; ++t) {
        const auto& g = pool[rng() % pool.size()];
        std::vector<PolyVector> gamma;
        for (int s = 0; s < g.external_count; ++s) gamma.push_back(random_polyvector(3, 2, static_cast<int>(rng() % 3), 2, rng));
        Monomial m0{{static_cast<int>(rng() % 3), static_cast<int>(rng() % 2), 0}, static_cast<unsigned>(rng() % 8)};
        PolyForm w(3), w0(3);
        w.add(m0, 1);
        w0.add(Monomial{{0, 0, 0}, m0.odd}, 1);
        SuperPoly f(3);
        f.add(Monomial{m0.exps, 0}, 1);
        auto eta = act_gra1(g, gamma, w);
        auto test = random_polyvector(3, 1, static_cast<int>(rng() % 4), 2, rng);
        int r = test.empty() ? 0 : test.odd_degree();
        SignedGraph flat;
        flat.kind = GraphKind::DGRA;
        flat.external_count = g.external_count + 2;
        flat.edges = g.edges;
        auto inputs = gamma;
        inputs.push_back(test);
        inputs.push_back(f);
        auto rhs = sgn(static_cast<int>(g.edges.size()) * r) * contraction(act_dgra(flat, inputs), w0);
        // the identity pairs eta with test polyvectors down to functions
        auto functions = [](const SuperPoly& a) {
            SuperPoly r0(a.dim);
            for (const auto& [m, c] : a.terms)
                if (!m.odd) r0.add(m, c);
            return r0;
        };
        EXPECT_EQ(functions(contraction(test, eta)), functions(rhs)) << to_string(g);
    }
}

TEST(Forms, CalcAxioms) {
    std::mt19937_64 rng(108);
    for (int t = 0; t < 36; ++t) {
        int p = t % 3, q = t / 3 % 3, r = t / 9;
        auto a = random_polyvector(3, 2, p, 2, rng), b = random_polyvector(3, 2, q, 2, rng);
        auto w = random_form(3, 2, r, 3, rng);
        EXPECT_EQ(contraction(a, contraction(b, w)), contraction(a * b, w));
        auto lhs = contraction(a, lie_derivative(b, w)) - sgn(p * (q + 1)) * lie_derivative(b, contraction(a, w));
        EXPECT_EQ(lhs, contraction(sn_bracket(a, b), w));
        // Cartan: [d, L_b] = 0
        EXPECT_EQ(de_rham(lie_derivative(b, w)), sgn(q + 1) * lie_derivative(b, de_rham(w)));
    }
}

TEST(Star, MoyalExamples) {
    auto pi = parse_polyvector("xi1*xi2", 2);
    auto x = parse_polyvector("x1", 2), y = parse_polyvector("x2", 2);
    auto xy = moyal_star(x, y, pi, 3), yx = moyal_star(y, x, pi, 3);
    EXPECT_EQ(xy[1] - yx[1], constant(2, 1));
    EXPECT_TRUE((xy[0] - yx[0]).empty());
    auto f = parse_polyvector("x1^3*x2 - 2*x2^2", 2);
    auto one = moyal_star(f, constant(2, 1), pi, 3);
    EXPECT_EQ(one[0], f);
    for (int n = 1; n <= 3; ++n) EXPECT_TRUE(one[n].empty());
    EXPECT_THROW(moyal_star(f, f, parse_polyvector("x1*xi1*xi2", 2), 2), ValidationError);
}

TEST(Star, MoyalAssociativeThroughThirdOrder) {
    std::mt19937_64 rng(109);
    for (int t = 0; t < 5; ++t) {
        int d = 2 + t % 2;
        auto pi = d == 2 ? parse_polyvector("xi1*xi2", 2) : parse_polyvector("xi1*xi2 - 2*xi2*xi3 + 1/3*xi1*xi3", 3);
        auto f = random_polyvector(d, 3, 0, 3, rng), g = random_polyvector(d, 3, 0, 3, rng),
             h = random_polyvector(d, 3, 0, 3, rng);
        auto l = moyal_star(moyal_star(f, g, pi, 3), EpsSeries{h}, pi, 3);
        auto r = moyal_star(EpsSeries{f}, moyal_star(g, h, pi, 3), pi, 3);
        for (int n = 0; n <= 3; ++n) EXPECT_EQ(l[n], r[n]) << n;
    }
}

TEST(Star, WeightSystemStar) {
    std::mt19937_64 rng(110);
    auto w = WeightSystem::moyal(3);
    auto corrupted = w;
    for (auto& [g, c] : corrupted.weights)
        if (g.internal_count == 2) c *= 3;
    auto pi = parse_polyvector("xi1*xi2", 2);
    int corrupted_failures = 0;
    for (int t = 0; t < 5; ++t) {
        auto f = random_polyvector(2, 3, 0, 3, rng), g = random_polyvector(2, 3, 0, 3, rng),
             h = random_polyvector(2, 3, 0, 3, rng);
        // edge order makes the graphs act with the opposite bivector
        auto ws = weight_star(w, f, g, pi), ms = moyal_star(f, g, Rational(-1) * pi, 3);
        for (int n = 0; n <= 3; ++n) EXPECT_EQ(ws[n], ms[n]);
        for (const auto& r : star_associativity_residual(w, f, g, h, pi)) EXPECT_TRUE(r.empty());
        for (const auto& r : star_associativity_residual(corrupted, f, g, h, pi)) corrupted_failures += !r.empty();
    }
    EXPECT_GT(corrupted_failures, 0);
}
