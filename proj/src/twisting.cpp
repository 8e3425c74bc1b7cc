#include <kgraph/graph_operads.hpp>
#include <kgraph/twisting.hpp>

#include <json.hpp>

#include <functional>
#include <set>

namespace kgraph {

namespace {

using Edge = SignedGraph::Edge;

Edge normalized(const SignedGraph& g, Edge e) {
    if (g.kind == GraphKind::GRA && e.first > e.second) std::swap(e.first, e.second);
    return e;
}

bool edge_allowed(const SignedGraph& g, const Edge& e) {
    if (g.kind == GraphKind::GRA1 || g.kind == GraphKind::SGRA1) {
        if (e.second == g.out_vertex() || e.first == g.in_vertex()) return false;
    }
    return !g.is_typeII(e.first);
}

// h = g plus an internal vertex w; the edges of v selected by mask move to w
void for_each_redistribution(const SignedGraph& g, int v, const std::function<void(SignedGraph&, int)>& f) {
    std::vector<std::size_t> inc;
    for (std::size_t i = 0; i < g.edges.size(); ++i)
        if (g.edges[i].first == v || g.edges[i].second == v) inc.push_back(i);
    int w = g.vertex_count();
    for (std::size_t mask = 0; mask < (std::size_t{1} << inc.size()); ++mask) {
        SignedGraph h = g;
        h.internal_count += 1;
        for (std::size_t q = 0; q < inc.size(); ++q) {
            if (!(mask >> q & 1)) continue;
            Edge& e = h.edges[inc[q]];
            if (e.first == v) e.first = w;
            else e.second = w;
            e = normalized(h, e);
        }
        f(h, w);
    }
}

std::vector<Edge> new_edges(const SignedGraph& g, int v, int w) {
    std::vector<Edge> r;
    if (g.kind == GraphKind::GRA) {
        r.push_back(normalized(g, {v, w}));
        return r;
    }
    SignedGraph probe = g;
    probe.internal_count += 1;
    for (Edge e : {Edge{v, w}, Edge{w, v}})
        if (edge_allowed(probe, e)) r.push_back(e);
    return r;
}

void add_with_front_edge(GraphLinComb& out, SignedGraph h, Edge e, const Rational& c) {
    h.edges.insert(h.edges.begin(), e);
    if (h.marked_edge >= 0) ++h.marked_edge;
    add_graph(out, h, c);
}

GraphLinComb leaf_terms(const SignedGraph& g, int v) {
    GraphLinComb out;
    SignedGraph h = g;
    h.internal_count += 1;
    int w = g.vertex_count();
    for (Edge e : new_edges(g, v, w)) add_with_front_edge(out, h, e, 1);
    return out;
}

GraphLinComb one_graph(const SignedGraph& g) {
    GraphLinComb r;
    add_graph(r, g);
    return r;
}

int pow_sign(int k) { return k % 2 ? -1 : 1; }

} // namespace

bool graphs_membership(const SignedGraph& g, GraphFamily f) {
    auto internal_only_component = [&](bool drop_in_out) {
        int n = g.vertex_count();
        std::vector<int> parent(n);
        for (int i = 0; i < n; ++i) parent[i] = i;
        std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
        auto dropped = [&](int v) {
            return drop_in_out && (v == g.out_vertex() || v == g.in_vertex());
        };
        for (auto [a, b] : g.edges)
            if (!dropped(a) && !dropped(b)) parent[find(a)] = find(b);
        std::vector<char> has_ext(n, 0), has_int(n, 0);
        for (int v = 0; v < n; ++v) {
            if (dropped(v)) continue;
            if (g.is_internal(v)) has_int[find(v)] = 1;
            else has_ext[find(v)] = 1;
        }
        for (int v = 0; v < n; ++v)
            if (has_int[v] && !has_ext[v]) return true;
        return false;
    };
    auto forbidden_low_valence = [&] {
        for (int v = g.first_internal(); v < g.vertex_count(); ++v) {
            int in = g.in_degree(v), out = g.out_degree(v);
            if (in + out == 0) return true;
            if (in == 0 && out == 1) return true;
            if (in == 1 && out == 1) return true;
        }
        return false;
    };
    switch (f) {
    case GraphFamily::GRAPHS:
        if (g.kind != GraphKind::GRA && g.kind != GraphKind::DGRA) return false;
        for (int v = g.first_internal(); v < g.vertex_count(); ++v)
            if (g.valence(v) < 3) return false;
        return !internal_only_component(false);
    case GraphFamily::GRAPHS1:
        if (g.kind != GraphKind::GRA1) return false;
        for (int v = g.first_internal(); v < g.vertex_count(); ++v) {
            if (g.valence(v) < 2) return false;
            if (g.in_degree(v) == 1 && g.out_degree(v) == 1) return false;
        }
        return !internal_only_component(true);
    case GraphFamily::SGRAPHS:
        if (g.kind != GraphKind::SGRA) return false;
        if (g.external_count + g.typeII_count == 0) return false;
        for (int k = 0; k < g.typeII_count; ++k)
            if (g.in_degree(g.typeII_vertex(k)) == 0) return false;
        return !forbidden_low_valence();
    case GraphFamily::SGRAPHS1:
        if (g.kind != GraphKind::SGRA1) return false;
        return !forbidden_low_valence();
    }
    return false;
}

std::vector<SignedGraph> enumerate_graphs(const GraphShape& shape) {
    SignedGraph base;
    base.kind = shape.kind;
    base.external_count = shape.externals;
    base.typeII_count = shape.typeII;
    base.internal_count = shape.internals;
    std::vector<Edge> slots;
    for (int a = 0; a < base.vertex_count(); ++a)
        for (int b = 0; b < base.vertex_count(); ++b) {
            if (a == b || (!base.directed() && a > b)) continue;
            if (edge_allowed(base, {a, b})) slots.push_back({a, b});
        }
    std::set<SignedGraph> seen;
    std::vector<Edge> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t from) {
        SignedGraph g = base;
        g.edges = cur;
        if (auto cf = canonical_form(g)) seen.insert(cf->graph);
        if (static_cast<int>(cur.size()) == shape.max_edges) return;
        for (std::size_t i = from; i < slots.size(); ++i) {
            cur.push_back(slots[i]);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return {seen.begin(), seen.end()};
}

GraphLinComb split_vertex(const SignedGraph& g, int v) {
    if (g.is_typeII(v)) throw ValidationError("split_vertex: type II vertices are split by the Hochschild part");
    Rational c = g.is_internal(v) ? Rational(1, 2) : Rational(1);
    GraphLinComb out;
    for_each_redistribution(g, v, [&](SignedGraph& h, int w) {
        for (Edge e : new_edges(g, v, w)) add_with_front_edge(out, h, e, c);
    });
    return out;
}

std::size_t split_raw_count(const SignedGraph& g) {
    std::size_t n = 0;
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (g.is_typeII(v)) continue;
        if ((g.kind == GraphKind::GRA1 || g.kind == GraphKind::SGRA1) && (v == g.out_vertex() || v == g.in_vertex()))
            continue;
        n += (std::size_t{1} << g.valence(v)) * new_edges(g, v, g.vertex_count()).size();
    }
    return n;
}

GraphLinComb graphs_differential(const SignedGraph& g) {
    if (g.kind != GraphKind::GRA && g.kind != GraphKind::DGRA)
        throw ValidationError("graphs_differential needs a gra/dgra graph");
    validate(g);
    GraphLinComb out;
    for (int v = 0; v < g.vertex_count(); ++v) {
        out += split_vertex(g, v);
        out -= leaf_terms(g, v);
    }
    return out;
}

GraphLinComb graphs_differential(const GraphLinComb& x) {
    return linear_map<SignedGraph>(x, [](const SignedGraph& g) { return graphs_differential(g); });
}

Graphs1Signs default_graphs1_signs() { return {-1, -1}; }

GraphLinComb graphs1_differential(const SignedGraph& g, Graphs1Signs s) {
    if (g.kind != GraphKind::GRA1) throw ValidationError("graphs1_differential needs a gra1 graph");
    validate(g);
    GraphLinComb out;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (v != g.out_vertex() && v != g.in_vertex()) out += split_vertex(g, v);
    // composition with the moperad Maurer-Cartan element on either side
    for (int side : {0, 1}) {
        int v = side == 0 ? g.in_vertex() : g.out_vertex();
        out += split_vertex(g, v);
        Rational c = side == 0 ? s.in_side : s.out_side;
        for_each_redistribution(g, v, [&](SignedGraph& h, int w) {
            for (int x = 0; x < h.vertex_count(); ++x) {
                if (x == w || x == v) continue;
                Edge e = side == 0 ? Edge{x, w} : Edge{w, x};
                if (!edge_allowed(h, e)) continue;
                add_with_front_edge(out, h, e, c);
            }
        });
    }
    return out;
}

GraphLinComb graphs1_differential(const GraphLinComb& x, Graphs1Signs s) {
    return linear_map<SignedGraph>(x, [&](const SignedGraph& g) { return graphs1_differential(g, s); });
}

void WeightSystem::set(const SignedGraph& g, const Rational& c) {
    if (g.kind != GraphKind::SGRA || g.external_count != 0)
        throw ValidationError("weight system graphs are sgra graphs without type I externals");
    auto cf = canonical_form(g);
    if (!cf) throw ValidationError("weight system graph is zero");
    if (c == 0) weights.erase(cf->graph);
    else weights[cf->graph] = c * cf->sign;
}

GraphLinComb WeightSystem::part(int order) const {
    GraphLinComb r;
    for (const auto& [g, c] : weights)
        if (g.internal_count == order) r.add(g, c);
    return r;
}

GraphLinComb WeightSystem::element() const {
    GraphLinComb r;
    for (int k = 0; k <= truncation_order; ++k) r += part(k);
    return r;
}

WeightSystem WeightSystem::wedge() { return moyal(0); }

WeightSystem WeightSystem::moyal(int order) {
    if (order < 0 || order > 3) throw ValidationError("truncation order must be in 0..3");
    WeightSystem w;
    w.truncation_order = order;
    Rational c = 1;
    for (int n = 0; n <= order; ++n) {
        if (n) c /= 2 * n;
        SignedGraph g;
        g.kind = GraphKind::SGRA;
        g.typeII_count = 2;
        g.internal_count = n;
        for (int i = 0; i < n; ++i) {
            g.edges.emplace_back(2 + i, 0);
            g.edges.emplace_back(2 + i, 1);
        }
        w.set(g, c);
    }
    return w;
}

std::string to_json(const WeightSystem& w) {
    nlohmann::ordered_json j;
    j["order"] = w.truncation_order;
    j["weights"] = nlohmann::ordered_json::array();
    for (const auto& [g, c] : w.weights) j["weights"].push_back({{"graph", to_string(g)}, {"coef", to_string(c)}});
    return j.dump();
}

WeightSystem weight_system_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("weight system json: ") + e.what(), e.byte);
    }
    WeightSystem w;
    try {
        w.truncation_order = j.at("order").get<int>();
        if (w.truncation_order < 0 || w.truncation_order > 3) throw ValidationError("truncation order must be in 0..3");
        for (const auto& e : j.at("weights"))
            w.set(parse_graph(e.at("graph").get<std::string>()), parse_rational(e.at("coef").get<std::string>()));
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("weight system json: ") + e.what());
    }
    return w;
}

int shifted_degree(const SignedGraph& g) { return g.typeII_count - 1; }

GraphLinComb pre_lie(const GraphLinComb& f, const GraphLinComb& g) {
    GraphLinComb out;
    for (const auto& [a, ca] : f)
        for (const auto& [b, cb] : g)
            for (int i = 0; i < a.typeII_count; ++i)
                out.add(sgra_insert_typeII(a, i, b), ca * cb * pow_sign(i * (b.typeII_count - 1)));
    return out;
}

GraphLinComb gerstenhaber_bracket(const GraphLinComb& f, const GraphLinComb& g) {
    GraphLinComb out = pre_lie(f, g);
    for (const auto& [a, ca] : f)
        for (const auto& [b, cb] : g)
            out.add(pre_lie(one_graph(b), one_graph(a)),
                    -ca * cb * pow_sign(shifted_degree(a) * shifted_degree(b) + a.edges.size() * b.edges.size()));
    return out;
}

GraphLinComb hochschild_differential(const SignedGraph& g) {
    if (g.kind != GraphKind::SGRA) throw ValidationError("hochschild_differential needs an sgra graph");
    return pow_sign(static_cast<int>(g.edges.size())) * gerstenhaber_bracket(WeightSystem::wedge().element(), one_graph(g));
}

GraphLinComb sgraphs_differential(const SignedGraph& g, const WeightSystem& w) {
    if (g.kind != GraphKind::SGRA) throw ValidationError("sgraphs_differential needs an sgra graph");
    validate(g);
    GraphLinComb out;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (!g.is_typeII(v)) out += split_vertex(g, v);
    out.add(gerstenhaber_bracket(w.element(), one_graph(g)), pow_sign(static_cast<int>(g.edges.size())));
    return out;
}

GraphLinComb sgraphs_differential(const GraphLinComb& x, const WeightSystem& w) {
    return linear_map<SignedGraph>(x, [&](const SignedGraph& g) { return sgraphs_differential(g, w); });
}

std::vector<GraphLinComb> mc_residual(const WeightSystem& w) {
    std::vector<GraphLinComb> res(w.truncation_order + 1);
    for (int k = 0; k <= w.truncation_order; ++k) {
        if (k >= 1)
            for (const auto& [g, c] : w.part(k - 1))
                for (int v = g.first_internal(); v < g.vertex_count(); ++v) res[k].add(split_vertex(g, v), c);
        for (int i = 0; i <= k; ++i) res[k].add(gerstenhaber_bracket(w.part(i), w.part(k - i)), Rational(1, 2));
    }
    return res;
}

GraphLinComb constant_coefficient_part(const GraphLinComb& x) {
    GraphLinComb r;
    for (const auto& [g, c] : x) {
        bool keep = true;
        for (auto [a, b] : g.edges) keep &= !g.is_internal(b);
        if (keep) r.add(g, c);
    }
    return r;
}

} // namespace kgraph
