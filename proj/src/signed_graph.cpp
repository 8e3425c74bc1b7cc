#include <kgraph/signed_graph.hpp>

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace kgraph {

std::string kind_name(GraphKind k) {
    switch (k) {
    case GraphKind::GRA: return "gra";
    case GraphKind::DGRA: return "dgra";
    case GraphKind::GRA1: return "gra1";
    case GraphKind::SGRA: return "sgra";
    case GraphKind::SGRA1: return "sgra1";
    }
    return "?";
}

int SignedGraph::special_count() const {
    switch (kind) {
    case GraphKind::GRA1: return 2;
    case GraphKind::SGRA: return typeII_count;
    case GraphKind::SGRA1: return 1 + typeII_count;
    default: return 0;
    }
}

int SignedGraph::out_vertex() const {
    if (kind != GraphKind::GRA1 && kind != GraphKind::SGRA1) throw ValidationError("graph has no out vertex");
    return external_count;
}

int SignedGraph::in_vertex() const {
    if (kind != GraphKind::GRA1 && kind != GraphKind::SGRA1) throw ValidationError("graph has no in vertex");
    return external_count + 1;
}

int SignedGraph::typeII_vertex(int k) const {
    if (k < 0 || k >= typeII_count) throw ValidationError("type II index out of range");
    if (kind == GraphKind::SGRA) return external_count + k;
    if (kind == GraphKind::SGRA1) return external_count + 1 + k;
    throw ValidationError("graph has no type II vertices");
}

int SignedGraph::typeII_index(int v) const {
    int base;
    if (kind == GraphKind::SGRA) base = external_count;
    else if (kind == GraphKind::SGRA1) base = external_count + 1;
    else return -1;
    return (v >= base && v < base + typeII_count) ? v - base : -1;
}

int SignedGraph::in_degree(int v) const {
    int d = 0;
    for (const auto& [a, b] : edges) d += (b == v) || (!directed() && a == v);
    return d;
}

int SignedGraph::out_degree(int v) const {
    int d = 0;
    for (const auto& [a, b] : edges) d += (a == v) || (!directed() && b == v);
    return d;
}

int SignedGraph::valence(int v) const {
    int d = 0;
    for (const auto& [a, b] : edges) d += (a == v) + (b == v);
    return d;
}

void validate(const SignedGraph& g) {
    if (g.external_count < 0 || g.internal_count < 0 || g.typeII_count < 0)
        throw ValidationError("negative vertex count");
    if (g.typeII_count > 0 && g.kind != GraphKind::SGRA && g.kind != GraphKind::SGRA1)
        throw ValidationError("type II vertices only exist in sgra/sgra1");
    if (g.kind == GraphKind::SGRA1 && g.typeII_count < 1)
        throw ValidationError("sgra1 needs the type II vertex b0");
    int n = g.vertex_count();
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        auto [a, b] = g.edges[i];
        std::string tag = "edge " + std::to_string(i + 1);
        if (a < 0 || a >= n || b < 0 || b >= n) throw ValidationError(tag + ": endpoint out of range");
        if (a == b) throw ValidationError(tag + ": tadpole");
        if (g.kind == GraphKind::GRA && a > b) throw ValidationError(tag + ": undirected edge not normalized");
        if (g.kind == GraphKind::GRA1 || g.kind == GraphKind::SGRA1) {
            if (b == g.out_vertex()) throw ValidationError(tag + ": incoming edge at out");
            if (a == g.in_vertex()) throw ValidationError(tag + ": outgoing edge at in");
        }
        if (g.is_typeII(a)) throw ValidationError(tag + ": outgoing edge at a type II vertex");
    }
    if (g.marked_edge < -1 || g.marked_edge >= static_cast<int>(g.edges.size()))
        throw ValidationError("marked edge index out of range");
}

namespace {

int permutation_parity(const std::vector<int>& p) {
    int inv = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j) inv += p[i] > p[j];
    return inv & 1;
}

// Isomorphism invariant colouring of internal vertices; fixed vertices act as distinct anchors.
std::vector<int> refine_colours(const SignedGraph& g) {
    int n = g.vertex_count(), f = g.first_internal();
    std::vector<std::vector<std::pair<int, int>>> adj(n);  // (direction, neighbour)
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

} // namespace

std::optional<CanonicalGraph> canonical_form(const SignedGraph& g0) {
    SignedGraph g = g0;
    if (!g.directed())
        for (auto& e : g.edges)
            if (e.first > e.second) std::swap(e.first, e.second);
    validate(g);
    if (g.internal_count > 8) throw ValidationError("canonical_form supports at most 8 internal vertices");

    int n = g.vertex_count(), f = g.first_internal();
    std::vector<int> colour = refine_colours(g);
    std::map<int, std::vector<int>> cells;
    for (int v = f; v < n; ++v) cells[colour[v]].push_back(v);
    std::vector<std::vector<int>> cell_list;
    for (auto& [c, vs] : cells) cell_list.push_back(vs);

    std::vector<int> label(n);
    std::iota(label.begin(), label.begin() + f, 0);

    bool have = false, zero = false;
    std::vector<SignedGraph::Edge> best;
    int best_mark = -1, best_sign = 1;

    std::size_t k = g.edges.size();
    std::vector<std::pair<SignedGraph::Edge, int>> tagged(k);
    std::vector<int> order(k);
    std::vector<SignedGraph::Edge> cand(k);

    auto evaluate = [&]() {
        for (std::size_t i = 0; i < k; ++i) {
            int a = label[g.edges[i].first], b = label[g.edges[i].second];
            if (!g.directed() && a > b) std::swap(a, b);
            tagged[i] = {{a, b}, static_cast<int>(i)};
        }
        std::sort(tagged.begin(), tagged.end());
        int mark = -1;
        for (std::size_t i = 0; i < k; ++i) {
            cand[i] = tagged[i].first;
            order[i] = tagged[i].second;
            if (tagged[i].second == g.marked_edge) mark = static_cast<int>(i);
        }
        for (std::size_t i = 1; i < k; ++i)
            if (cand[i] == cand[i - 1]) {
                zero = true;
                return;
            }
        int sign = permutation_parity(order) ? -1 : 1;
        if (!have || std::tie(cand, mark) < std::tie(best, best_mark)) {
            have = true;
            best = cand;
            best_mark = mark;
            best_sign = sign;
        } else if (cand == best && mark == best_mark && sign != best_sign) {
            zero = true;
        }
    };

    // enumerate relabelings cell by cell
    std::vector<std::vector<int>> perms(cell_list.size());
    std::vector<int> base(cell_list.size());
    int next = f;
    for (std::size_t c = 0; c < cell_list.size(); ++c) {
        base[c] = next;
        next += static_cast<int>(cell_list[c].size());
        perms[c].resize(cell_list[c].size());
        std::iota(perms[c].begin(), perms[c].end(), 0);
    }
    auto recurse = [&](auto&& self, std::size_t c) -> void {
        if (zero) return;
        if (c == cell_list.size()) {
            evaluate();
            return;
        }
        auto& p = perms[c];
        std::sort(p.begin(), p.end());
        do {
            for (std::size_t i = 0; i < p.size(); ++i) label[cell_list[c][i]] = base[c] + p[i];
            self(self, c + 1);
            if (zero) return;
        } while (std::next_permutation(p.begin(), p.end()));
    };
    recurse(recurse, 0);
    if (zero) return std::nullopt;

    CanonicalGraph out;
    out.graph = g;
    out.graph.edges = best;
    out.graph.marked_edge = best_mark;
    out.sign = best_sign;
    return out;
}

void add_graph(GraphLinComb& acc, const SignedGraph& g, const Rational& c) {
    if (c == 0) return;
    auto cf = canonical_form(g);
    if (cf) acc.add(cf->graph, cf->sign * c);
}

GraphLinComb make_lincomb(const SignedGraph& g, const Rational& c) {
    GraphLinComb x;
    add_graph(x, g, c);
    return x;
}

namespace {
auto signature(const SignedGraph& g) {
    return std::make_tuple(g.kind, g.external_count, g.typeII_count);
}
} // namespace

GraphLinComb lincomb_combine(const GraphLinComb& a, const Rational& c, const GraphLinComb& b) {
    if (!a.empty() && !b.empty() && signature(a.begin()->first) != signature(b.begin()->first))
        throw ValidationError("lincomb_combine: kind or arity mismatch");
    GraphLinComb out = a;
    for (const auto& [g, v] : b) add_graph(out, g, c * v);
    return out;
}

int component_count(const SignedGraph& g) {
    int n = g.vertex_count();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    int comps = n;
    for (const auto& [a, b] : g.edges) {
        int ra = find(a), rb = find(b);
        if (ra != rb) {
            parent[ra] = rb;
            --comps;
        }
    }
    return comps;
}

int loop_order(const SignedGraph& g) {
    return static_cast<int>(g.edges.size()) - g.vertex_count() + component_count(g);
}

std::string vertex_name(const SignedGraph& g, int v) {
    if (g.is_external(v)) return std::to_string(v + 1);
    if (g.is_internal(v)) return "w" + std::to_string(v - g.first_internal() + 1);
    if (g.kind == GraphKind::GRA1) return v == g.out_vertex() ? "out" : "in";
    if (g.kind == GraphKind::SGRA1 && v == g.out_vertex()) return "out";
    int t = g.typeII_index(v);
    if (t >= 0) return "b" + std::to_string(g.kind == GraphKind::SGRA ? t + 1 : t);
    return "?";
}

std::string to_string(const SignedGraph& g) {
    std::ostringstream os;
    os << kind_name(g.kind) << '{';
    switch (g.kind) {
    case GraphKind::GRA:
    case GraphKind::DGRA: os << "n=" << g.external_count; break;
    case GraphKind::GRA1: os << "m=" << g.external_count; break;
    case GraphKind::SGRA: os << "m=" << g.external_count << ",n=" << g.typeII_count; break;
    case GraphKind::SGRA1: os << "m=" << g.external_count << ",n=" << g.typeII_count - 1; break;
    }
    if (g.internal_count) os << ";i=" << g.internal_count;
    if (g.marked_edge >= 0) os << ";mk=" << g.marked_edge + 1;
    os << ";e=[";
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        if (i) os << ',';
        os << '(' << vertex_name(g, g.edges[i].first) << (g.directed() ? '>' : ',')
           << vertex_name(g, g.edges[i].second) << ')';
    }
    os << "]}";
    return os.str();
}

namespace {

class GraphParser {
public:
    explicit GraphParser(std::string_view s) : s_(s) {}

    SignedGraph parse() {
        SignedGraph g;
        std::string kw = word();
        if (kw == "gra") g.kind = GraphKind::GRA;
        else if (kw == "dgra") g.kind = GraphKind::DGRA;
        else if (kw == "gra1") g.kind = GraphKind::GRA1;
        else if (kw == "sgra") g.kind = GraphKind::SGRA;
        else if (kw == "sgra1") g.kind = GraphKind::SGRA1;
        else fail("unknown graph kind '" + kw + "'");
        expect('{');
        bool have_m = false, have_n = false;
        int n_param = 0, mark = 0;
        std::vector<std::pair<std::string, std::size_t>> ends;  // raw vertex refs with positions
        bool have_edges = false;
        for (;;) {
            std::size_t at = pos();
            std::string key = word();
            expect('=');
            if (key == "e") {
                have_edges = true;
                expect('[');
                if (!accept(']')) {
                    do {
                        expect('(');
                        ends.push_back(vref());
                        if (g.directed()) expect('>');
                        else expect(',');
                        ends.push_back(vref());
                        expect(')');
                    } while (accept(','));
                    expect(']');
                }
            } else {
                int v = number();
                if (key == "m") {
                    g.external_count = v;
                    have_m = true;
                } else if (key == "n") {
                    n_param = v;
                    have_n = true;
                } else if (key == "i") {
                    g.internal_count = v;
                } else if (key == "mk") {
                    mark = v;
                } else {
                    fail("unknown field '" + key + "'", at);
                }
            }
            if (accept('}')) break;
            if (!accept(';') && !accept(',')) fail("expected ';' or '}'");
        }
        skip();
        if (i_ != s_.size()) fail("trailing characters");
        switch (g.kind) {
        case GraphKind::GRA:
        case GraphKind::DGRA:
            if (!have_n || have_m) fail("expected n=<count>", 0);
            g.external_count = n_param;
            break;
        case GraphKind::GRA1:
            if (!have_m || have_n) fail("expected m=<count>", 0);
            break;
        case GraphKind::SGRA:
        case GraphKind::SGRA1:
            if (!have_m || !have_n) fail("expected m=<count>,n=<count>", 0);
            g.typeII_count = g.kind == GraphKind::SGRA ? n_param : n_param + 1;
            break;
        }
        if (!have_edges) fail("missing e=[...]", 0);
        for (std::size_t k = 0; k < ends.size(); k += 2)
            g.edges.emplace_back(resolve(g, ends[k]), resolve(g, ends[k + 1]));
        if (mark) g.marked_edge = mark - 1;
        if (!g.directed())
            for (auto& e : g.edges)
                if (e.first > e.second) std::swap(e.first, e.second);
        try {
            validate(g);
        } catch (const ValidationError& e) {
            fail(e.what(), 0);
        }
        return g;
    }

private:
    [[noreturn]] void fail(const std::string& msg, std::size_t at) const { throw ParseError(msg, at); }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, i_); }

    std::size_t pos() { skip(); return i_; }
    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool accept(char c) {
        skip();
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }
    std::string word() {
        skip();
        std::size_t b = i_;
        while (i_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[i_]))) ++i_;
        if (b == i_) fail("expected identifier");
        return std::string(s_.substr(b, i_ - b));
    }
    int number() {
        skip();
        std::size_t b = i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        if (b == i_ || i_ - b > 6) fail("expected a count", b);
        return std::stoi(std::string(s_.substr(b, i_ - b)));
    }
    std::pair<std::string, std::size_t> vref() {
        std::size_t at = pos();
        return {word(), at};
    }
    int resolve(const SignedGraph& g, const std::pair<std::string, std::size_t>& ref) const {
        const std::string& w = ref.first;
        std::size_t at = ref.second;
        auto num = [&](std::size_t from) {
            if (from >= w.size()) fail("bad vertex '" + w + "'", at);
            for (std::size_t k = from; k < w.size(); ++k)
                if (!std::isdigit(static_cast<unsigned char>(w[k]))) fail("bad vertex '" + w + "'", at);
            if (w.size() - from > 6) fail("bad vertex '" + w + "'", at);
            return std::stoi(w.substr(from));
        };
        if (std::isdigit(static_cast<unsigned char>(w[0]))) {
            int k = num(0);
            if (k < 1 || k > g.external_count) fail("external vertex " + w + " out of range", at);
            return k - 1;
        }
        if (w == "out" || w == "in") {
            if (g.kind != GraphKind::GRA1 && g.kind != GraphKind::SGRA1) fail("no " + w + " vertex in this kind", at);
            return w == "out" ? g.out_vertex() : g.in_vertex();
        }
        if (w[0] == 'w') {
            int k = num(1);
            if (k < 1 || k > g.internal_count) fail("internal vertex " + w + " out of range", at);
            return g.first_internal() + k - 1;
        }
        if (w[0] == 'b') {
            int k = num(1);
            int idx = g.kind == GraphKind::SGRA ? k - 1 : k;
            if (g.typeII_count == 0 || idx < 0 || idx >= g.typeII_count) fail("type II vertex " + w + " out of range", at);
            return g.typeII_vertex(idx);
        }
        fail("bad vertex '" + w + "'", at);
    }

    std::string_view s_;
    std::size_t i_ = 0;
};

} // namespace

SignedGraph parse_graph(std::string_view text) {
    return GraphParser(text).parse();
}

std::string to_string(const GraphLinComb& x) {
    if (x.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [g, c] : x) {
        if (!first) os << (c > 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        first = false;
        Rational a = abs(c);
        if (a != 1) os << a.get_str() << "*";
        os << to_string(g);
    }
    return os.str();
}

std::string to_json(const GraphLinComb& x) {
    nlohmann::ordered_json j;
    j["kind"] = x.empty() ? std::string("gra") : kind_name(x.begin()->first.kind);
    j["terms"] = nlohmann::ordered_json::array();
    for (const auto& [g, c] : x) {
        nlohmann::ordered_json t;
        t["coef"] = c.get_str();
        t["graph"] = to_string(g);
        j["terms"].push_back(t);
    }
    return j.dump();
}

GraphLinComb lincomb_from_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(e.what(), e.byte);
    }
    GraphLinComb out;
    if (!j.contains("terms") || !j["terms"].is_array()) throw ParseError("missing terms array", 0);
    for (const auto& t : j["terms"]) {
        if (!t.contains("coef") || !t.contains("graph")) throw ParseError("term needs coef and graph", 0);
        add_graph(out, parse_graph(t["graph"].get<std::string>()), parse_rational(t["coef"].get<std::string>()));
    }
    return out;
}

} // namespace kgraph
