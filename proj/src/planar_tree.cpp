#include <kgraph/planar_tree.hpp>

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <sstream>

namespace kgraph {

namespace {
const std::string kUnit = "\xF0\x9D\x9F\x99";  // U+1D7D9
}

std::string tree_kind_name(TreeKind k) {
    switch (k) {
    case TreeKind::PT: return "pt";
    case TreeKind::BR: return "br";
    case TreeKind::PT1: return "pt1";
    case TreeKind::KS1: return "ks1";
    case TreeKind::BINF: return "binf";
    case TreeKind::BBR: return "bbr";
    }
    return "?";
}

std::optional<TreeKind> tree_kind_from_name(std::string_view s) {
    for (TreeKind k : {TreeKind::PT, TreeKind::BR, TreeKind::PT1, TreeKind::KS1, TreeKind::BINF, TreeKind::BBR})
        if (tree_kind_name(k) == s) return k;
    return std::nullopt;
}

namespace {

template <typename Node, typename F>
void visit_odd(Node& v, F&& f) {
    if (v.has_marker()) f(v.mtag);
    if (!v.deco.empty()) visit_odd(v.deco[0], f);
    for (std::size_t i = 0; i < v.children.size(); ++i) {
        if (!(v.kind == NodeKind::Out && i == 0)) f(v.children[i].tag);
        visit_odd(v.children[i], f);
    }
}

template <typename Node, typename F>
void visit_nodes(Node& v, F&& f) {
    f(v);
    if (!v.deco.empty()) visit_nodes(v.deco[0], f);
    for (auto& c : v.children) visit_nodes(c, f);
}

void print(std::ostream& os, const TNode& v) {
    auto kids = [&](bool lead_sep) {
        for (std::size_t i = 0; i < v.children.size(); ++i) {
            if (i || lead_sep) os << (i ? "," : ";");
            print(os, v.children[i]);
        }
    };
    switch (v.kind) {
    case NodeKind::External:
        if (v.children.empty()) {
            os << v.label;
        } else {
            os << "E(" << v.label;
            kids(true);
            os << ')';
        }
        break;
    case NodeKind::Internal:
        os << "I(";
        kids(false);
        os << ')';
        break;
    case NodeKind::Blue:
    case NodeKind::Red:
        os << (v.kind == NodeKind::Blue ? "B(" : "R(");
        print(os, v.deco.at(0));
        kids(true);
        os << ')';
        break;
    case NodeKind::Unit: os << kUnit; break;
    case NodeKind::In: os << "in"; break;
    case NodeKind::Out:
        if (v.deco.empty()) {
            os << "K(";
            kids(false);
        } else {
            os << "K_B(";
            print(os, v.deco[0]);
            kids(true);
        }
        os << ')';
        break;
    }
}

} // namespace

std::string to_string(const TNode& v) {
    std::ostringstream os;
    print(os, v);
    return os.str();
}

std::string to_string(const PlanarTree& t) { return t.expr.empty() ? to_string(t.root) : t.expr; }

std::string to_string(const TreeLinComb& x) {
    if (x.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [t, c] : x) {
        if (!first) os << (c > 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        first = false;
        Rational a = abs(c);
        if (a != 1) os << a.get_str() << "*";
        os << to_string(t);
    }
    return os.str();
}

int finalize(PlanarTree& t) {
    std::vector<int> seq;
    visit_odd(t.root, [&](int& tag) { seq.push_back(tag); });
    int inv = 0;
    for (std::size_t i = 0; i < seq.size(); ++i)
        for (std::size_t j = i + 1; j < seq.size(); ++j) {
            if (seq[i] == seq[j]) throw std::logic_error("finalize: duplicate odd tag");
            inv += seq[i] > seq[j];
        }
    int k = 0;
    visit_odd(t.root, [&](int& tag) { tag = k++; });
    t.expr = to_string(t.root);
    return inv % 2 ? -1 : 1;
}

void assign_canonical_tags(PlanarTree& t) {
    int k = 0;
    visit_odd(t.root, [&](int& tag) { tag = k++; });
    t.expr = to_string(t.root);
}

void add_tree(TreeLinComb& acc, PlanarTree t, const Rational& c) {
    if (c == 0) return;
    int s = finalize(t);
    acc.add(t, s * c);
}

int odd_count(const PlanarTree& t) {
    int k = 0;
    visit_odd(t.root, [&](const int&) { ++k; });
    return k;
}

int internal_count(const PlanarTree& t) {
    int k = 0;
    visit_nodes(t.root, [&](const TNode& v) { k += v.kind == NodeKind::Internal; });
    return k;
}

int vertex_count(const PlanarTree& t) {
    int k = 0;
    visit_nodes(t.root, [&](const TNode&) { ++k; });
    return k;
}

int external_count(const PlanarTree& t) {
    int k = 0;
    visit_nodes(t.root, [&](const TNode& v) { k += v.kind == NodeKind::External; });
    return k;
}

int tree_degree(const PlanarTree& t) {
    return 2 * internal_count(t) - odd_count(t) - (t.kind == TreeKind::BBR ? 1 : 0);
}

PlanarTree relabel(const PlanarTree& t, const std::vector<int>& perm) {
    PlanarTree r = t;
    int n = static_cast<int>(perm.size());
    visit_nodes(r.root, [&](TNode& v) {
        if (v.kind != NodeKind::External) return;
        if (v.label < 1 || v.label > n) throw ValidationError("relabel: permutation too short");
        v.label = perm[v.label - 1];
    });
    r.expr = to_string(r.root);
    return r;
}

PlanarTree generator_T(int n) {
    PlanarTree t;
    t.kind = TreeKind::BR;
    t.root.kind = NodeKind::External;
    t.root.label = 1;
    for (int i = 2; i <= n + 1; ++i) {
        TNode c;
        c.label = i;
        t.root.children.push_back(c);
    }
    assign_canonical_tags(t);
    return t;
}

PlanarTree generator_Tprime(int n) {
    PlanarTree t;
    t.kind = n >= 2 ? TreeKind::BR : TreeKind::PT;
    t.root.kind = NodeKind::Internal;
    for (int i = 1; i <= n; ++i) {
        TNode c;
        c.label = i;
        t.root.children.push_back(c);
    }
    assign_canonical_tags(t);
    return t;
}

PlanarTree single_vertex() {
    PlanarTree t;
    t.kind = TreeKind::BR;
    t.root.label = 1;
    assign_canonical_tags(t);
    return t;
}

namespace {

class TreeParser {
public:
    explicit TreeParser(std::string_view s) : s_(s) {}

    TNode parse() {
        skip();
        TNode root;
        if (peek_word() == "K" || peek_word() == "K_B") root = parse_k();
        else root = parse_term();
        skip();
        if (i_ != s_.size()) fail("trailing characters");
        return root;
    }

    bool saw_red = false, saw_blue = false, saw_unit = false, saw_k = false;
    std::vector<std::pair<int, std::size_t>> labels;

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, i_); }
    [[noreturn]] void fail(const std::string& msg, std::size_t at) const { throw ParseError(msg, at); }

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
    std::string peek_word() {
        skip();
        std::size_t j = i_;
        while (j < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_')) ++j;
        return std::string(s_.substr(i_, j - i_));
    }
    bool at_unit() {
        skip();
        return s_.substr(i_, kUnit.size()) == kUnit;
    }
    int parse_label() {
        skip();
        std::size_t b = i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        if (b == i_) fail("expected a vertex number");
        if (i_ - b > 6 || s_[b] == '0') fail("bad vertex number", b);
        int v = std::stoi(std::string(s_.substr(b, i_ - b)));
        labels.emplace_back(v, b);
        return v;
    }
    void no_children(const char* what) {
        skip();
        if (i_ < s_.size() && s_[i_] == '(') fail(std::string(what) + " vertex cannot have children");
    }

    // children after an opening "(" or ";" until ")"
    void parse_children(TNode& v, bool allow_empty) {
        skip();
        if (i_ < s_.size() && s_[i_] == ')') {
            if (!allow_empty) fail("expected a subtree");
            ++i_;
            return;
        }
        do v.children.push_back(parse_term());
        while (accept(','));
        expect(')');
    }

    TNode parse_term() {
        skip();
        std::size_t at = i_;
        if (at_unit()) {
            if (k_depth_ == 0) fail("unit vertex outside K(...)");
            i_ += kUnit.size();
            no_children("unit");
            saw_unit = true;
            TNode u;
            u.kind = NodeKind::Unit;
            return u;
        }
        if (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
            TNode v;
            v.kind = NodeKind::External;
            v.label = parse_label();
            return v;
        }
        std::string w = peek_word();
        if (w.empty()) fail("expected a subtree");
        i_ += w.size();
        if (w == "in") {
            if (k_depth_ == 0) fail("'in' outside K(...)", at);
            if (in_seen_.back()) fail("second 'in' in the same K(...)", at);
            in_seen_.back() = true;
            no_children("in");
            TNode v;
            v.kind = NodeKind::In;
            return v;
        }
        if (w == "U") {
            if (k_depth_ == 0) fail("unit vertex outside K(...)", at);
            no_children("unit");
            saw_unit = true;
            TNode u;
            u.kind = NodeKind::Unit;
            return u;
        }
        if (w == "K" || w == "K_B") fail("K(...) may only appear at the top or as a K_B decoration", at);
        TNode v;
        if (w == "I") {
            v.kind = NodeKind::Internal;
            expect('(');
            parse_children(v, true);
            return v;
        }
        if (w == "E") {
            v.kind = NodeKind::External;
            expect('(');
            v.label = parse_label();
            if (accept(';')) parse_children(v, false);
            else expect(')');
            return v;
        }
        if (w == "B" || w == "R") {
            v.kind = w == "B" ? NodeKind::Blue : NodeKind::Red;
            (w == "B" ? saw_blue : saw_red) = true;
            expect('(');
            v.deco.push_back(parse_term());
            if (accept(';')) parse_children(v, false);
            else expect(')');
            return v;
        }
        fail("unknown symbol '" + w + "'", at);
    }

    TNode parse_k() {
        std::string w = peek_word();
        std::size_t at = i_;
        i_ += w.size();
        saw_k = true;
        TNode v;
        v.kind = NodeKind::Out;
        expect('(');
        if (w == "K_B") {
            skip();
            std::string inner = peek_word();
            if (inner != "K" && inner != "K_B") fail("K_B decoration must be a K(...) expression");
            v.deco.push_back(parse_k());
            expect(';');
        }
        ++k_depth_;
        in_seen_.push_back(false);
        parse_children(v, false);
        if (!in_seen_.back()) fail("K(...) without 'in'", at);
        in_seen_.pop_back();
        --k_depth_;
        return v;
    }

    std::string_view s_;
    std::size_t i_ = 0;
    int k_depth_ = 0;
    std::vector<bool> in_seen_;
};

bool any_internal_below_two(const TNode& v) {
    bool bad = false;
    visit_nodes(v, [&](const TNode& x) { bad |= x.kind == NodeKind::Internal && x.children.size() < 2; });
    return bad;
}

} // namespace

PlanarTree parse_tree(std::string_view text, std::optional<TreeKind> kind) {
    TreeParser p(text);
    PlanarTree t;
    t.root = p.parse();
    std::set<int> seen;
    int maxl = 0;
    for (auto [l, at] : p.labels) {
        if (!seen.insert(l).second) throw ParseError("vertex " + std::to_string(l) + " repeated", at);
        maxl = std::max(maxl, l);
    }
    if (static_cast<int>(seen.size()) != maxl)
        for (int l = 1; l <= maxl; ++l)
            if (!seen.count(l)) throw ParseError("vertex " + std::to_string(l) + " missing", text.size());
    if (kind) {
        t.kind = *kind;
    } else if (p.saw_k) {
        t.kind = (p.saw_unit || internal_count(PlanarTree{TreeKind::KS1, t.root, ""}) > 0) ? TreeKind::KS1 : TreeKind::PT1;
    } else if (p.saw_red || p.saw_blue) {
        t.kind = TreeKind::BINF;
    } else {
        t.kind = any_internal_below_two(t.root) ? TreeKind::PT : TreeKind::BR;
    }
    assign_canonical_tags(t);
    try {
        validate_tree(t);
    } catch (const ValidationError& e) {
        throw ParseError(e.what(), 0);
    }
    return t;
}

TreeLinComb parse_tree_lincomb(std::string_view text, std::optional<TreeKind> kind) {
    // terms separated by top level '+' / '-', optional "c*" prefix
    TreeLinComb out;
    std::size_t i = 0, n = text.size();
    auto skip = [&] {
        while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip();
    if (text.substr(i) == "0") return out;
    while (i < n) {
        skip();
        Rational sign = 1;
        if (i < n && (text[i] == '+' || text[i] == '-')) {
            if (text[i] == '-') sign = -1;
            ++i;
            skip();
        }
        std::size_t b = i;
        int depth = 0;
        for (; i < n; ++i) {
            if (text[i] == '(') ++depth;
            else if (text[i] == ')') --depth;
            else if (depth == 0 && i > b && (text[i] == '+' || text[i] == '-')) break;
        }
        std::string_view term = text.substr(b, i - b);
        Rational c = 1;
        auto star = term.find('*');
        if (star != std::string_view::npos && term.find('(') > star) {
            try {
                c = parse_rational(term.substr(0, star));
            } catch (const std::invalid_argument&) {
                throw ParseError("bad coefficient", b);
            }
            term = term.substr(star + 1);
        }
        PlanarTree t;
        try {
            t = parse_tree(term, kind);
        } catch (const ParseError& e) {
            throw ParseError(std::string(e.what()).substr(std::string(e.what()).find(':') + 2), b + e.position);
        }
        out.add(t, sign * c);
    }
    return out;
}

void validate_tree(const PlanarTree& t) {
    auto bad = [](const std::string& m) { throw ValidationError(m); };
    bool ks = t.kind == TreeKind::PT1 || t.kind == TreeKind::KS1;
    visit_nodes(t.root, [&](const TNode& v) {
        switch (v.kind) {
        case NodeKind::Unit:
            if (!v.children.empty()) bad("unit vertex with children");
            if (!ks) bad("unit vertex outside pt1/ks1");
            break;
        case NodeKind::In:
            if (!v.children.empty()) bad("in vertex with children");
            break;
        case NodeKind::Internal:
            if (t.kind == TreeKind::PT1) bad("internal vertex in a pt1 tree");
            if ((t.kind == TreeKind::BR || t.kind == TreeKind::BINF || t.kind == TreeKind::BBR || t.kind == TreeKind::KS1) &&
                v.children.size() < 2)
                bad("internal vertex with fewer than two children");
            break;
        case NodeKind::Blue:
        case NodeKind::Red:
            if (t.kind != TreeKind::BINF && t.kind != TreeKind::BBR) bad("decorated vertex outside binf/bbr");
            if (t.kind == TreeKind::BBR && v.kind == NodeKind::Red) bad("red vertex in a bbr tree");
            if (v.deco.at(0).children.empty() && v.deco[0].deco.empty()) bad("decoration is a single vertex");
            break;
        case NodeKind::Out:
            if (!ks) bad("out vertex outside pt1/ks1");
            if (v.children.empty()) bad("out vertex without children");
            break;
        case NodeKind::External: break;
        }
    });
    if (ks && t.root.kind != NodeKind::Out) bad("pt1/ks1 tree must be rooted at out");
    if (!ks && t.root.kind == NodeKind::Out) bad("K(...) tree needs kind pt1/ks1");
    if ((t.kind == TreeKind::BINF || t.kind == TreeKind::BBR) && t.root.children.empty() && t.root.deco.empty() &&
        t.root.kind != NodeKind::External)
        bad("tree is a single vertex");
    if ((t.kind == TreeKind::BINF || t.kind == TreeKind::BBR) && t.root.children.empty() && !t.root.deco.empty())
        bad("tree is a single decorated vertex");
}

} // namespace kgraph
