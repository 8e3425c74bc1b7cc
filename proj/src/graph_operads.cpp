#include <kgraph/graph_operads.hpp>

#include <algorithm>
#include <numeric>

namespace kgraph {

namespace {

void check_slot(const SignedGraph& g, int j) {
    if (j < 1 || j > g.external_count) throw ValidationError("slot " + std::to_string(j) + " out of range");
}

// enumerate all maps from `ends` free ends to `targets`, calling f(assignment)
template <typename F>
void for_each_assignment(std::size_t ends, const std::vector<int>& targets, F&& f) {
    std::vector<std::size_t> idx(ends, 0);
    if (targets.empty() && ends > 0) return;
    std::vector<int> choice(ends);
    for (;;) {
        for (std::size_t k = 0; k < ends; ++k) choice[k] = targets[idx[k]];
        f(choice);
        std::size_t k = 0;
        while (k < ends && ++idx[k] == targets.size()) idx[k++] = 0;
        if (k == ends) return;
    }
}

} // namespace

std::vector<SignedGraph> gra_compose_raw(const SignedGraph& g1, int j, const SignedGraph& g2) {
    check_slot(g1, j);
    if (g1.kind == GraphKind::GRA) {
        if (g2.kind != GraphKind::GRA) throw ValidationError("gra o " + kind_name(g2.kind) + " not defined");
    } else if (g2.kind != GraphKind::DGRA) {
        throw ValidationError(kind_name(g1.kind) + " o " + kind_name(g2.kind) + " not defined");
    }
    int m1 = g1.external_count, m2 = g2.external_count;
    SignedGraph r;
    r.kind = g1.kind;
    r.external_count = m1 - 1 + m2;
    r.typeII_count = g1.typeII_count;
    r.internal_count = g1.internal_count + g2.internal_count;
    int f1 = g1.first_internal(), rf = r.first_internal();
    const int slot = j - 1;
    auto map1 = [&](int v) {
        if (v < slot) return v;
        if (v < m1) return v - 1 + m2;
        if (v < f1) return r.external_count + (v - m1);
        return rf + (v - f1);
    };
    auto map2 = [&](int u) { return u < m2 ? slot + u : rf + g1.internal_count + (u - m2); };

    std::vector<SignedGraph::Edge> base;
    for (const auto& e : g1.edges) base.push_back(e);
    std::vector<std::pair<std::size_t, int>> ends;  // (edge, which end)
    for (std::size_t k = 0; k < base.size(); ++k) {
        if (base[k].first == slot) ends.emplace_back(k, 0);
        if (base[k].second == slot) ends.emplace_back(k, 1);
        if (base[k].first != slot) base[k].first = map1(base[k].first);
        if (base[k].second != slot) base[k].second = map1(base[k].second);
    }
    for (const auto& [a, b] : g2.edges) base.emplace_back(map2(a), map2(b));
    std::vector<int> targets(g2.vertex_count());
    for (int u = 0; u < g2.vertex_count(); ++u) targets[u] = map2(u);

    std::vector<SignedGraph> out;
    for_each_assignment(ends.size(), targets, [&](const std::vector<int>& choice) {
        SignedGraph t = r;
        t.edges = base;
        for (std::size_t k = 0; k < ends.size(); ++k) {
            auto& e = t.edges[ends[k].first];
            (ends[k].second == 0 ? e.first : e.second) = choice[k];
        }
        if (!t.directed())
            for (auto& e : t.edges)
                if (e.first > e.second) std::swap(e.first, e.second);
        out.push_back(std::move(t));
    });
    return out;
}

GraphLinComb gra_compose(const SignedGraph& g1, int j, const SignedGraph& g2) {
    GraphLinComb out;
    for (const auto& t : gra_compose_raw(g1, j, g2)) add_graph(out, t);
    return out;
}

GraphLinComb gra_compose(const GraphLinComb& a, int j, const GraphLinComb& b) {
    GraphLinComb out;
    for (const auto& [g1, c1] : a)
        for (const auto& [g2, c2] : b) out.add(gra_compose(g1, j, g2), c1 * c2);
    return out;
}

std::vector<SignedGraph> gra1_compose_raw(const SignedGraph& g1, const SignedGraph& g2) {
    if (g1.kind != GraphKind::GRA1 || g2.kind != GraphKind::GRA1) throw ValidationError("gra1_compose needs two gra1 graphs");
    int m1 = g1.external_count, m2 = g2.external_count;
    SignedGraph r;
    r.kind = GraphKind::GRA1;
    r.external_count = m1 + m2;
    r.internal_count = g1.internal_count + g2.internal_count;
    int rf = r.first_internal();
    int in1 = g1.in_vertex(), out2 = g2.out_vertex();
    auto map1 = [&](int v) {
        if (v < m1) return v;
        if (v == g1.out_vertex()) return r.out_vertex();
        return rf + (v - g1.first_internal());
    };
    auto map2 = [&](int u) {
        if (u < m2) return m1 + u;
        if (u == g2.in_vertex()) return r.in_vertex();
        return rf + g1.internal_count + (u - g2.first_internal());
    };
    std::vector<SignedGraph::Edge> base;
    std::vector<std::size_t> open1, open2;  // g1 edges into in1, g2 edges out of out2
    for (const auto& [a, b] : g1.edges) {
        if (b == in1) open1.push_back(base.size());
        base.emplace_back(map1(a), b == in1 ? -1 : map1(b));
    }
    for (const auto& [a, b] : g2.edges) {
        if (a == out2) open2.push_back(base.size());
        base.emplace_back(a == out2 ? -1 : map2(a), map2(b));
    }
    std::vector<int> into2, from1;
    for (int u = 0; u < g2.vertex_count(); ++u)
        if (u != out2) into2.push_back(map2(u));
    for (int v = 0; v < g1.vertex_count(); ++v)
        if (v != in1) from1.push_back(map1(v));

    std::vector<SignedGraph> out;
    for_each_assignment(open1.size(), into2, [&](const std::vector<int>& c1) {
        for_each_assignment(open2.size(), from1, [&](const std::vector<int>& c2) {
            SignedGraph t = r;
            t.edges = base;
            for (std::size_t k = 0; k < open1.size(); ++k) t.edges[open1[k]].second = c1[k];
            for (std::size_t k = 0; k < open2.size(); ++k) t.edges[open2[k]].first = c2[k];
            out.push_back(std::move(t));
        });
    });
    return out;
}

GraphLinComb gra1_compose(const SignedGraph& g1, const SignedGraph& g2) {
    GraphLinComb out;
    for (const auto& t : gra1_compose_raw(g1, g2)) add_graph(out, t);
    return out;
}

GraphLinComb gra1_compose(const GraphLinComb& a, const GraphLinComb& b) {
    GraphLinComb out;
    for (const auto& [g1, c1] : a)
        for (const auto& [g2, c2] : b) out.add(gra1_compose(g1, g2), c1 * c2);
    return out;
}

GraphLinComb sgra_insert_typeII(const SignedGraph& g1, int k, const SignedGraph& g2) {
    if ((g1.kind != GraphKind::SGRA && g1.kind != GraphKind::SGRA1) || g2.kind != GraphKind::SGRA)
        throw ValidationError("type II insertion needs sgra/sgra1 o sgra");
    if (k < 0 || k >= g1.typeII_count) throw ValidationError("type II slot out of range");
    SignedGraph r;
    r.kind = g1.kind;
    r.external_count = g1.external_count + g2.external_count;
    r.typeII_count = g1.typeII_count - 1 + g2.typeII_count;
    r.internal_count = g1.internal_count + g2.internal_count;
    int rf = r.first_internal();
    int slot = g1.typeII_vertex(k);
    auto map1 = [&](int v) {
        if (g1.is_external(v)) return v;
        if (g1.is_internal(v)) return rf + (v - g1.first_internal());
        int t = g1.typeII_index(v);
        if (t < 0) return r.out_vertex();
        return r.typeII_vertex(t < k ? t : t - 1 + g2.typeII_count);
    };
    auto map2 = [&](int u) {
        if (g2.is_external(u)) return g1.external_count + u;
        if (g2.is_internal(u)) return rf + g1.internal_count + (u - g2.first_internal());
        return r.typeII_vertex(k + g2.typeII_index(u));
    };
    std::vector<SignedGraph::Edge> base;
    std::vector<std::size_t> open;
    for (const auto& [a, b] : g1.edges) {
        if (b == slot) open.push_back(base.size());
        base.emplace_back(map1(a), b == slot ? -1 : map1(b));
    }
    for (const auto& [a, b] : g2.edges) base.emplace_back(map2(a), map2(b));
    std::vector<int> targets;
    for (int u = 0; u < g2.vertex_count(); ++u) targets.push_back(map2(u));
    GraphLinComb out;
    for_each_assignment(open.size(), targets, [&](const std::vector<int>& c) {
        SignedGraph t = r;
        t.edges = base;
        for (std::size_t q = 0; q < open.size(); ++q) t.edges[open[q]].second = c[q];
        add_graph(out, t);
    });
    return out;
}

GraphLinComb directed_expansion(const SignedGraph& g) {
    if (g.kind != GraphKind::GRA) throw ValidationError("directed_expansion needs a gra graph");
    GraphLinComb out;
    std::size_t k = g.edges.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
        SignedGraph d = g;
        d.kind = GraphKind::DGRA;
        for (std::size_t i = 0; i < k; ++i)
            if (mask >> i & 1) std::swap(d.edges[i].first, d.edges[i].second);
        add_graph(out, d);
    }
    return out;
}

GraphLinComb directed_expansion(const GraphLinComb& x) {
    GraphLinComb out;
    for (const auto& [g, c] : x) out.add(directed_expansion(g), c);
    return out;
}

std::optional<CanonicalGraph> sym_action(const SignedGraph& g, const std::vector<int>& sigma) {
    if (static_cast<int>(sigma.size()) != g.external_count) throw ValidationError("permutation has wrong size");
    std::vector<int> seen(sigma.size(), 0);
    for (int s : sigma) {
        if (s < 1 || s > g.external_count || seen[s - 1]++) throw ValidationError("not a permutation");
    }
    SignedGraph h = g;
    for (auto& [a, b] : h.edges) {
        if (g.is_external(a)) a = sigma[a] - 1;
        if (g.is_external(b)) b = sigma[b] - 1;
    }
    return canonical_form(h);
}

GraphLinComb sym_action(const GraphLinComb& x, const std::vector<int>& sigma) {
    GraphLinComb out;
    for (const auto& [g, c] : x) {
        auto r = sym_action(g, sigma);
        if (r) out.add(r->graph, c * r->sign);
    }
    return out;
}

std::optional<CanonicalGraph> sgra1_cyclic(const SignedGraph& g, int k) {
    if (g.kind != GraphKind::SGRA1 && g.kind != GraphKind::SGRA) throw ValidationError("cyclic action needs type II vertices");
    int n = g.typeII_count;
    if (n == 0) throw ValidationError("no type II vertices");
    k = ((k % n) + n) % n;
    SignedGraph h = g;
    for (auto& [a, b] : h.edges) {
        for (int* v : {&a, &b}) {
            int t = g.typeII_index(*v);
            if (t >= 0) *v = g.typeII_vertex((t + k) % n);
        }
    }
    return canonical_form(h);
}

SignedGraph unit_graph(GraphKind kind) {
    SignedGraph g;
    g.kind = kind;
    g.external_count = kind == GraphKind::GRA1 ? 0 : 1;
    return g;
}

SignedGraph edgeless(GraphKind kind, int n) {
    SignedGraph g;
    g.kind = kind;
    g.external_count = n;
    return g;
}

namespace {

std::string show(const GraphLinComb& x) { return to_string(x); }

struct Checker {
    AxiomReport rep;
    bool expect(const GraphLinComb& a, const GraphLinComb& b, const std::string& what) {
        ++rep.checks;
        if (a == b) return true;
        if (rep.pass) {
            rep.pass = false;
            rep.counterexample = what + ": " + show(a) + "  !=  " + show(b);
        }
        return false;
    }
};

std::vector<std::vector<int>> all_perms(int n) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 1);
    std::vector<std::vector<int>> out;
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

int edge_count(const SignedGraph& g) { return static_cast<int>(g.edges.size()); }

} // namespace

AxiomReport operad_axiom_report(const std::vector<SignedGraph>& sample, GraphKind kind, ComposeFn compose) {
    Checker ck;
    if (!compose) compose = [](const SignedGraph& a, int j, const SignedGraph& b) { return gra_compose(a, j, b); };
    auto lin = [&](const GraphLinComb& a, int j, const GraphLinComb& b) {
        GraphLinComb out;
        for (const auto& [g1, c1] : a)
            for (const auto& [g2, c2] : b) out.add(compose(g1, j, g2), c1 * c2);
        return out;
    };

    if (kind == GraphKind::GRA || kind == GraphKind::DGRA) {
        std::vector<SignedGraph> gs;
        for (const auto& g : sample)
            if (g.kind == kind) gs.push_back(g);
        SignedGraph one = unit_graph(kind);
        for (const auto& g : gs) {
            std::string tag = to_string(g);
            ck.expect(compose(one, 1, g), make_lincomb(g), "left unit on " + tag);
            for (int j = 1; j <= g.external_count; ++j)
                ck.expect(compose(g, j, one), make_lincomb(g), "right unit at " + std::to_string(j) + " on " + tag);
        }
        for (const auto& g1 : gs)
            for (const auto& g2 : gs)
                for (const auto& g3 : gs) {
                    int m1 = g1.external_count, m2 = g2.external_count, m3 = g3.external_count;
                    std::string tag = to_string(g1) + ", " + to_string(g2) + ", " + to_string(g3);
                    // sequential
                    for (int i = 1; i <= m1; ++i)
                        for (int k = 1; k <= m2; ++k)
                            ck.expect(lin(compose(g1, i, g2), i + k - 1, make_lincomb(g3)),
                                      lin(make_lincomb(g1), i, compose(g2, k, g3)),
                                      "sequential associativity (" + std::to_string(i) + "," + std::to_string(k) + ") " + tag);
                    // parallel
                    for (int i = 1; i <= m1; ++i)
                        for (int j = i + 1; j <= m1; ++j) {
                            Rational s = (edge_count(g2) * edge_count(g3)) % 2 ? -1 : 1;
                            ck.expect(lin(compose(g1, i, g2), j + m2 - 1, make_lincomb(g3)),
                                      s * lin(compose(g1, j, g3), i, make_lincomb(g2)),
                                      "parallel associativity (" + std::to_string(i) + "," + std::to_string(j) + ") " + tag);
                        }
                    (void)m3;
                }
        for (const auto& g1 : gs)
            for (const auto& g2 : gs) {
                int m1 = g1.external_count, m2 = g2.external_count;
                std::string tag = to_string(g1) + ", " + to_string(g2);
                for (int j = 1; j <= m1; ++j) {
                    auto base = compose(g1, j, g2);
                    for (const auto& sigma : all_perms(m1)) {
                        auto pos = [&](int i, int jj) { return i < jj ? i : i + m2 - 1; };
                        std::vector<int> big(m1 - 1 + m2);
                        for (int i = 1; i <= m1; ++i) {
                            if (i == j) continue;
                            big[pos(i, j) - 1] = pos(sigma[i - 1], sigma[j - 1]);
                        }
                        for (int t = 0; t < m2; ++t) big[j - 1 + t] = sigma[j - 1] + t;
                        auto sg1 = sym_action(g1, sigma);
                        GraphLinComb lhs;
                        if (sg1) lhs = Rational(sg1->sign) * compose(sg1->graph, sigma[j - 1], g2);
                        ck.expect(lhs, sym_action(base, big), "equivariance in the outer graph, " + tag);
                    }
                    for (const auto& tau : all_perms(m2)) {
                        std::vector<int> big(m1 - 1 + m2);
                        std::iota(big.begin(), big.end(), 1);
                        for (int t = 0; t < m2; ++t) big[j - 1 + t] = j - 1 + tau[t];
                        auto sg2 = sym_action(g2, tau);
                        GraphLinComb lhs;
                        if (sg2) lhs = Rational(sg2->sign) * compose(g1, j, sg2->graph);
                        ck.expect(lhs, sym_action(base, big), "equivariance in the inner graph, " + tag);
                    }
                }
            }
        return ck.rep;
    }

    if (kind == GraphKind::GRA1) {
        std::vector<SignedGraph> ms, ds;
        for (const auto& g : sample) {
            if (g.kind == GraphKind::GRA1) ms.push_back(g);
            if (g.kind == GraphKind::DGRA) ds.push_back(g);
        }
        SignedGraph one = unit_graph(GraphKind::GRA1);
        for (const auto& g : ms) {
            ck.expect(gra1_compose(one, g), make_lincomb(g), "left moperad unit on " + to_string(g));
            ck.expect(gra1_compose(g, one), make_lincomb(g), "right moperad unit on " + to_string(g));
            for (int j = 1; j <= g.external_count; ++j)
                ck.expect(gra_compose(g, j, unit_graph(GraphKind::DGRA)), make_lincomb(g), "dgra unit on " + to_string(g));
        }
        for (const auto& a : ms)
            for (const auto& b : ms) {
                for (const auto& c : ms)
                    ck.expect(gra1_compose(gra1_compose(a, b), make_lincomb(c)),
                              gra1_compose(make_lincomb(a), gra1_compose(b, c)),
                              "moperad associativity " + to_string(a) + ", " + to_string(b) + ", " + to_string(c));
                for (const auto& h : ds) {
                    int ma = a.external_count, mb = b.external_count;
                    std::string tag = to_string(a) + ", " + to_string(b) + ", " + to_string(h);
                    for (int j = 1; j <= ma + mb; ++j) {
                        auto lhs = gra_compose(gra1_compose(a, b), j, make_lincomb(h));
                        if (j <= ma) {
                            Rational s = (edge_count(b) * edge_count(h)) % 2 ? -1 : 1;
                            ck.expect(lhs, s * gra1_compose(gra_compose(a, j, h), make_lincomb(b)),
                                      "right action on the outer factor, slot " + std::to_string(j) + " " + tag);
                        } else {
                            ck.expect(lhs, gra1_compose(make_lincomb(a), gra_compose(b, j - ma, h)),
                                      "right action on the inner factor, slot " + std::to_string(j) + " " + tag);
                        }
                    }
                }
            }
        return ck.rep;
    }
    throw ValidationError("operad_axiom_report supports gra, dgra and gra1");
}

} // namespace kgraph
