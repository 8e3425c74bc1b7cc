#include <kgraph/homology.hpp>

#include <kgraph/twisting.hpp>

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>

namespace kgraph {

namespace {

using Edge = SignedGraph::Edge;
using EdgeList = std::vector<Edge>;

bool is_graphs1(ComplexFamily f) { return f == ComplexFamily::GRAPHS1 || f == ComplexFamily::PDU_GRAPHS1; }

GraphFamily member_family(ComplexFamily f) { return is_graphs1(f) ? GraphFamily::GRAPHS1 : GraphFamily::GRAPHS; }

std::vector<int> colour_classes(const SignedGraph& g) {
    int n = g.vertex_count(), f = g.first_internal();
    std::vector<std::vector<std::pair<int, int>>> adj(n);
    for (const auto& [a, b] : g.edges) {
        adj[a].emplace_back(0, b);
        adj[b].emplace_back(g.directed() ? 1 : 0, a);
    }
    std::vector<int> colour(n, 0);
    int classes = 1;
    for (;;) {
        std::vector<std::pair<int, std::vector<std::pair<int, int>>>> sig(n);
        for (int v = f; v < n; ++v) {
            sig[v].first = colour[v];
            for (auto [dir, u] : adj[v]) sig[v].second.emplace_back(dir, u < f ? u : n + colour[u]);
            std::sort(sig[v].second.begin(), sig[v].second.end());
        }
        std::vector<decltype(sig)::value_type> distinct(sig.begin() + f, sig.end());
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        for (int v = f; v < n; ++v)
            colour[v] = static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), sig[v]) - distinct.begin());
        int now = static_cast<int>(distinct.size());
        if (now == classes) break;
        classes = now;
    }
    return colour;
}

// isomorphism class key ignoring edge order and sign
EdgeList unsigned_key(const SignedGraph& g) {
    int n = g.vertex_count(), f = g.first_internal();
    std::vector<int> colour = colour_classes(g);
    std::vector<int> valence(n, 0);
    for (auto [a, b] : g.edges) ++valence[a], ++valence[b];
    std::map<int, std::vector<int>> cells;
    for (int v = f; v < n; ++v) cells[colour[v]].push_back(v);

    std::vector<int> label(n);
    std::iota(label.begin(), label.begin() + f, 0);
    std::vector<std::vector<int>> free_cells;  // vertices whose order matters
    std::vector<int> free_pos;
    int pos = f;
    for (auto& [c, vs] : cells) {
        bool isolated = valence[vs.front()] == 0;  // all vertices of a cell share the valence
        if (isolated || vs.size() == 1) {
            for (int v : vs) label[v] = pos++;
        } else {
            free_cells.push_back(vs);
            free_pos.push_back(pos);
            pos += static_cast<int>(vs.size());
        }
    }

    EdgeList best, cand(g.edges.size());
    bool have = false;
    auto evaluate = [&] {
        for (std::size_t i = 0; i < g.edges.size(); ++i) {
            int a = label[g.edges[i].first], b = label[g.edges[i].second];
            if (!g.directed() && a > b) std::swap(a, b);
            cand[i] = {a, b};
        }
        std::sort(cand.begin(), cand.end());
        if (!have || cand < best) best = cand, have = true;
    };
    std::function<void(std::size_t)> rec = [&](std::size_t c) {
        if (c == free_cells.size()) return evaluate();
        std::vector<int> order(free_cells[c].size());
        std::iota(order.begin(), order.end(), 0);
        do {
            for (std::size_t i = 0; i < order.size(); ++i) label[free_cells[c][i]] = free_pos[c] + order[i];
            rec(c + 1);
        } while (std::next_permutation(order.begin(), order.end()));
    };
    rec(0);
    return best;
}

// lower bound on the edges still needed before every internal vertex is admissible
int valence_deficit(const SignedGraph& g, bool graphs1) {
    int d = 0;
    for (int v = g.first_internal(); v < g.vertex_count(); ++v) {
        int in = g.in_degree(v), out = g.out_degree(v);
        if (graphs1)
            d += std::max(0, 2 - in - out) + (in == 1 && out == 1 ? 1 : 0);
        else
            d += std::max(0, 3 - g.valence(v));
    }
    return d;
}

SignedGraph base_graph(ComplexFamily f, int n, int k) {
    SignedGraph g;
    g.kind = is_graphs1(f) ? GraphKind::GRA1 : GraphKind::GRA;
    g.external_count = n;
    g.internal_count = k;
    return g;
}

std::vector<Edge> edge_slots(const SignedGraph& g) {
    std::vector<Edge> r;
    int n = g.vertex_count();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (a == b) continue;
            if (!g.directed() && a > b) continue;
            if (g.kind == GraphKind::GRA1 && (b == g.out_vertex() || a == g.in_vertex())) continue;
            r.emplace_back(a, b);
        }
    return r;
}

/*
 * Orderly growth one edge at a time, deduplicated by unsigned isomorphism
 * class. Returns canonical nonzero members with between min_edges and
 * max_edges edges. Loop order never decreases when an edge is added, which
 * prunes Graphs slices.
 */
std::vector<SignedGraph> grow_members(ComplexFamily f, int n, int k, int min_edges, int max_edges, int loop) {
    bool g1 = is_graphs1(f);
    SignedGraph start = base_graph(f, n, k);
    std::vector<Edge> slots = edge_slots(start);
    std::map<EdgeList, SignedGraph> level{{EdgeList{}, start}};
    std::set<SignedGraph> found;
    auto harvest = [&](const SignedGraph& g) {
        if (loop >= 0 && loop_order(g) != loop) return;
        if (!graphs_membership(g, member_family(f))) return;
        if (auto cf = canonical_form(g)) found.insert(cf->graph);
    };
    for (int e = 0;; ++e) {
        if (e >= min_edges)
            for (auto& [key, g] : level) harvest(g);
        if (e == max_edges) break;
        std::map<EdgeList, SignedGraph> next;
        int remaining = max_edges - e - 1;
        for (auto& [key, g] : level)
            for (const Edge& s : slots) {
                if (std::find(g.edges.begin(), g.edges.end(), s) != g.edges.end()) continue;
                SignedGraph h = g;
                h.edges.push_back(s);
                if (loop >= 0 && loop_order(h) > loop) continue;
                if (valence_deficit(h, g1) > 2 * remaining) continue;
                EdgeList hk = unsigned_key(h);
                if (!next.count(hk)) next.emplace(std::move(hk), std::move(h));
            }
        level = std::move(next);
    }
    return {found.begin(), found.end()};
}

void check_limits(ComplexFamily f, int n, int grading, int max_internal) {
    if (n < 0 || n > kMaxSliceArity)
        throw ValidationError("arity must be in 0.." + std::to_string(kMaxSliceArity));
    if (grading < 0) throw ValidationError("slice grading must be nonnegative");
    if (!is_graphs1(f) && grading > kMaxSliceLoopOrder)
        throw ValidationError("loop order must be at most " + std::to_string(kMaxSliceLoopOrder));
    if (is_graphs1(f) && grading > 4) throw ValidationError("excess must be at most 4");
    if (max_internal > kMaxSliceInternal)
        throw ValidationError("slice needs " + std::to_string(max_internal) + " internal vertices, limit is " +
                              std::to_string(kMaxSliceInternal));
}

// any Graphs component with internal vertices has k_i <= 2 l_i + n_i - 2 since internals are trivalent
int graphs_internal_bound(int n, int loop) { return n == 0 ? 0 : std::max(0, 2 * loop + n - 2); }

SignedGraph remove_vertex(SignedGraph h, int drop) {
    for (auto& [a, b] : h.edges) {
        if (a > drop) --a;
        if (b > drop) --b;
        if (!h.directed() && a > b) std::swap(a, b);
    }
    h.internal_count -= 1;
    return h;
}

bool gra1_valid(const SignedGraph& h) {
    if (h.kind != GraphKind::GRA1) return true;
    for (auto [a, b] : h.edges)
        if (a == b || b == h.out_vertex() || a == h.in_vertex()) return false;
    return true;
}

// delete edge i (sign from moving it to the front) and identify drop with keep
void add_merge(GraphLinComb& out, const SignedGraph& g, std::size_t i, int keep, int drop, const Rational& c) {
    SignedGraph h = g;
    h.edges.erase(h.edges.begin() + static_cast<long>(i));
    h.marked_edge = -1;
    for (auto& [a, b] : h.edges) {
        if (a == drop) a = keep;
        if (b == drop) b = keep;
    }
    if (!gra1_valid(h)) return;
    for (auto [a, b] : h.edges)
        if (a == b) return;
    add_graph(out, remove_vertex(h, drop), i % 2 ? -c : c);
}

} // namespace

std::string family_name(ComplexFamily f) {
    switch (f) {
    case ComplexFamily::GRAPHS: return "graphs";
    case ComplexFamily::GRAPHS1: return "graphs1";
    case ComplexFamily::PDU_GRAPHS: return "pdu_graphs";
    case ComplexFamily::PDU_GRAPHS1: return "pdu_graphs1";
    }
    return "?";
}

ComplexFamily parse_family(const std::string& name) {
    for (auto f : {ComplexFamily::GRAPHS, ComplexFamily::GRAPHS1, ComplexFamily::PDU_GRAPHS, ComplexFamily::PDU_GRAPHS1})
        if (family_name(f) == name) return f;
    throw ValidationError("unknown complex family '" + name + "'");
}

std::size_t ComplexSlice::size() const {
    std::size_t s = 0;
    for (const auto& [d, b] : basis) s += b.size();
    return s;
}

std::vector<SignedGraph> enumerate_members(ComplexFamily family, int n, int k, int e) {
    if (k < 0 || k > kMaxSliceInternal) throw ValidationError("internal vertex count out of range");
    if (n < 0 || n > kMaxSliceArity) throw ValidationError("arity out of range");
    return grow_members(family, n, k, e, e, -1);
}

GraphLinComb pdu_differential(const SignedGraph& g) {
    if (g.kind != GraphKind::GRA && g.kind != GraphKind::GRA1)
        throw ValidationError("pdu_differential needs a gra or gra1 graph");
    validate(g);
    GraphLinComb out;
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        auto [a, b] = g.edges[i];
        if (!g.is_internal(a) && !g.is_internal(b)) continue;
        int keep = g.is_internal(a) ? (g.is_internal(b) ? std::min(a, b) : b) : a;
        add_merge(out, g, i, keep, keep == a ? b : a, 1);
    }
    if (g.kind == GraphKind::GRA1) {
        for (int w = g.first_internal(); w < g.vertex_count(); ++w) {
            bool sink = g.out_degree(w) == 0, source = g.in_degree(w) == 0;
            for (std::size_t i = 0; i < g.edges.size(); ++i) {
                if (sink && g.edges[i].second == w) add_merge(out, g, i, g.in_vertex(), w, -1);
                if (source && g.edges[i].first == w) add_merge(out, g, i, g.out_vertex(), w, -1);
            }
        }
    }
    return out;
}

ComplexSlice enumerate_slice(ComplexFamily family, int n, int grading, int max_internal) {
    ComplexSlice s;
    s.family = family;
    s.arity = n;
    bool g1 = is_graphs1(family);
    if (g1) {
        s.excess = grading;
        s.max_internal = max_internal < 0 ? 3 : max_internal;
    } else {
        s.loop_order = grading;
        int bound = graphs_internal_bound(n, grading);
        if (max_internal >= 0 && max_internal < bound)
            throw ValidationError("a Graphs slice cut below " + std::to_string(bound) + " internal vertices is incomplete");
        s.max_internal = bound;
    }
    check_limits(family, n, grading, s.max_internal);

    for (int k = 0; k <= s.max_internal; ++k) {
        std::vector<SignedGraph> gs;
        if (g1)
            gs = grow_members(family, n, k, grading + k, grading + k, -1);
        else
            gs = grow_members(family, n, k, grading + k, grading + n + k - 1, grading);
        for (auto& g : gs) s.basis[g.degree()].push_back(std::move(g));
    }
    for (auto& [d, b] : s.basis) std::sort(b.begin(), b.end());

    if (g1) {
        s.complete_min = -grading;
        s.complete_max = s.max_internal - grading - 1;
    } else if (!s.basis.empty()) {
        s.complete_min = s.basis.begin()->first;
        s.complete_max = s.basis.rbegin()->first;
    }

    int step = s.boundary_step();
    for (const auto& [d, src] : s.basis) {
        auto tgt_it = s.basis.find(d + step);
        std::map<SignedGraph, std::size_t> index;
        if (tgt_it != s.basis.end())
            for (std::size_t r = 0; r < tgt_it->second.size(); ++r) index[tgt_it->second[r]] = r;
        SparseMatrix m(index.size(), src.size());
        for (std::size_t c = 0; c < src.size(); ++c) {
            GraphLinComb img;
            if (s.predual())
                img = pdu_differential(src[c]);
            else
                img = g1 ? graphs1_differential(src[c]) : graphs_differential(src[c]);
            for (const auto& [h, v] : img.terms()) {
                auto it = index.find(h);
                if (it != index.end()) {
                    m.add(it->second, c, v);
                    continue;
                }
                bool member = graphs_membership(h, member_family(family));
                if (!member && s.predual()) continue;  // quotient by non-members
                if (h.internal_count > s.max_internal) continue;  // truncation
                throw std::logic_error("differential leaves the slice at " + to_string(h));
            }
        }
        s.boundary.emplace(d, std::move(m));
    }
    return s;
}

bool boundary_squares_to_zero(const ComplexSlice& s) {
    int step = s.boundary_step();
    for (const auto& [d, m] : s.boundary) {
        auto next = s.boundary.find(d + step);
        if (next == s.boundary.end() || m.rows() == 0) continue;
        // graphs beyond the cut are missing, so only check where both steps stay inside the slice
        if (s.excess >= 0) {
            int k = d + s.excess;
            if (!s.predual() && k + 2 > s.max_internal) continue;
        }
        if (!next->second.multiply(m).is_zero()) return false;
    }
    return true;
}

std::map<int, int> betti(const ComplexSlice& s) {
    std::map<int, std::size_t> out_rank;
    for (const auto& [d, m] : s.boundary) out_rank[d] = rank(m);
    int step = s.boundary_step();
    std::map<int, int> r;
    for (const auto& [d, b] : s.basis) {
        if (d < s.complete_min || d > s.complete_max) continue;
        std::size_t in = out_rank.count(d - step) ? out_rank[d - step] : 0;
        int v = static_cast<int>(b.size() - out_rank[d] - in);
        if (v) r[d] = v;
    }
    return r;
}

std::map<int, int> betti_sum(ComplexFamily family, int n, int max_grading, int max_internal) {
    std::map<int, int> total;
    for (int l = 0; l <= max_grading; ++l)
        for (auto [d, v] : betti(enumerate_slice(family, n, l, max_internal))) total[d] += v;
    return total;
}

std::vector<SignedGraph> pdu_basis(int n) {
    if (n < 0 || n > 5) throw ValidationError("pdu_basis supports n <= 5");
    std::vector<SignedGraph> r;
    SignedGraph g = base_graph(ComplexFamily::GRAPHS, n, 0);
    std::function<void(int)> rec = [&](int j) {
        if (j >= n) {
            r.push_back(canonical_form(g)->graph);
            return;
        }
        rec(j + 1);
        for (int i = 0; i < j; ++i) {
            g.edges.emplace_back(i, j);
            rec(j + 1);
            g.edges.pop_back();
        }
    };
    rec(0);
    std::sort(r.begin(), r.end());
    return r;
}

namespace {

// set partitions of {0..n-1}, blocks listed by their minimum
void for_each_partition(int n, const std::function<void(const std::vector<std::vector<int>>&)>& f) {
    std::vector<std::vector<int>> blocks;
    std::function<void(int)> rec = [&](int v) {
        if (v == n) return f(blocks);
        for (std::size_t i = 0; i < blocks.size(); ++i) {
            blocks[i].push_back(v);
            rec(v + 1);
            blocks[i].pop_back();
        }
        blocks.push_back({v});
        rec(v + 1);
        blocks.pop_back();
    };
    rec(0);
}

// orderings of a block with its minimum first (strings) or last (Lie words)
std::vector<std::vector<int>> anchored_orders(const std::vector<int>& block, bool min_first) {
    std::vector<int> rest(block.begin() + 1, block.end());
    std::vector<std::vector<int>> r;
    do {
        std::vector<int> o;
        if (min_first) o.push_back(block.front());
        o.insert(o.end(), rest.begin(), rest.end());
        if (!min_first) o.push_back(block.front());
        r.push_back(o);
    } while (std::next_permutation(rest.begin(), rest.end()));
    return r;
}

template <typename F>
void for_each_choice(const std::vector<std::vector<std::vector<int>>>& options, F f) {
    std::vector<std::size_t> idx(options.size(), 0);
    for (;;) {
        std::vector<std::vector<int>> pick;
        for (std::size_t i = 0; i < options.size(); ++i) pick.push_back(options[i][idx[i]]);
        f(pick);
        std::size_t i = 0;
        while (i < options.size() && ++idx[i] == options[i].size()) idx[i++] = 0;
        if (i == options.size()) return;
    }
}

} // namespace

std::vector<SignedGraph> string_basis(int n) {
    if (n < 0 || n > 5) throw ValidationError("string_basis supports n <= 5");
    std::vector<SignedGraph> r;
    for_each_partition(n, [&](const std::vector<std::vector<int>>& blocks) {
        std::vector<std::vector<std::vector<int>>> options;
        for (const auto& b : blocks) options.push_back(anchored_orders(b, true));
        for_each_choice(options, [&](const std::vector<std::vector<int>>& paths) {
            SignedGraph g = base_graph(ComplexFamily::GRAPHS, n, 0);
            for (const auto& p : paths)
                for (std::size_t i = 1; i < p.size(); ++i) g.edges.emplace_back(std::min(p[i - 1], p[i]), std::max(p[i - 1], p[i]));
            r.push_back(canonical_form(g)->graph);
        });
    });
    std::sort(r.begin(), r.end());
    return r;
}

std::vector<GraphLinComb> e2_monomial_images(int n) {
    if (n < 0 || n > 5) throw ValidationError("e2 monomials supported for n <= 5");
    std::vector<GraphLinComb> r;
    // [X_a, Y] attaches an edge from a to each vertex of Y (Leibniz), the new edge first
    std::function<std::vector<EdgeList>(const std::vector<int>&, std::size_t)> word =
        [&](const std::vector<int>& w, std::size_t from) -> std::vector<EdgeList> {
        if (from + 1 == w.size()) return {EdgeList{}};
        std::vector<EdgeList> inner = word(w, from + 1), out;
        for (const auto& t : inner)
            for (std::size_t v = from + 1; v < w.size(); ++v) {
                EdgeList e{{std::min(w[from], w[v]), std::max(w[from], w[v])}};
                e.insert(e.end(), t.begin(), t.end());
                out.push_back(e);
            }
        return out;
    };
    for_each_partition(n, [&](const std::vector<std::vector<int>>& blocks) {
        std::vector<std::vector<std::vector<int>>> options;
        for (const auto& b : blocks) options.push_back(anchored_orders(b, false));
        for_each_choice(options, [&](const std::vector<std::vector<int>>& words) {
            std::vector<EdgeList> terms{EdgeList{}};
            for (const auto& w : words) {
                std::vector<EdgeList> next;
                for (const auto& t : terms)
                    for (const auto& u : word(w, 0)) {
                        EdgeList e = t;
                        e.insert(e.end(), u.begin(), u.end());
                        next.push_back(e);
                    }
                terms = std::move(next);
            }
            GraphLinComb img;
            for (const auto& t : terms) {
                SignedGraph g = base_graph(ComplexFamily::GRAPHS, n, 0);
                g.edges = t;
                add_graph(img, g);
            }
            r.push_back(img);
        });
    });
    return r;
}

SparseMatrix string_pairing(int n) {
    std::vector<SignedGraph> rows = string_basis(n);
    std::vector<GraphLinComb> cols = e2_monomial_images(n);
    SparseMatrix m(rows.size(), cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (std::size_t r = 0; r < rows.size(); ++r) m.add(r, c, cols[c].coef(rows[r]));
    return m;
}

std::string betti_json(ComplexFamily family, int n, const std::map<int, int>& b) {
    nlohmann::ordered_json j;
    j["family"] = family_name(family);
    j["n"] = n;
    j["betti"] = nlohmann::ordered_json::object();
    for (auto it = b.rbegin(); it != b.rend(); ++it) j["betti"][std::to_string(it->first)] = it->second;
    return j.dump();
}

} // namespace kgraph
