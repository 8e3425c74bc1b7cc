#include <kgraph/errors.hpp>
#include <kgraph/representations.hpp>

#include <bit>
#include <cctype>
#include <functional>
#include <sstream>

namespace kgraph {

namespace {

int popcount(unsigned m) { return std::popcount(m); }

// sign of sorting the concatenation a.odd ++ b.odd; 0 if they overlap
int merge_sign(unsigned a, unsigned b) {
    if (a & b) return 0;
    int inv = 0;
    for (unsigned r = b; r; r &= r - 1) {
        int j = std::countr_zero(r);
        inv += popcount(a >> (j + 1));
    }
    return inv % 2 ? -1 : 1;
}

bool multiply(const Monomial& a, const Monomial& b, Monomial& out, int& sign) {
    sign = merge_sign(a.odd, b.odd);
    if (!sign) return false;
    out.exps.resize(a.exps.size());
    for (std::size_t k = 0; k < a.exps.size(); ++k) out.exps[k] = a.exps[k] + b.exps[k];
    out.odd = a.odd | b.odd;
    return true;
}

void check_dim(int d) {
    if (d < 1 || d > kMaxDimension) throw ValidationError("dimension must be in 1.." + std::to_string(kMaxDimension));
}

void check_same_dim(const SuperPoly& a, const SuperPoly& b) {
    if (a.dim != b.dim) throw ValidationError("dimension mismatch");
}

Monomial unit_monomial(int d) { return Monomial{std::vector<int>(d, 0), 0}; }

/*
 * Multilinear evaluation of a directed graph on a tensor of monomials. Formal
 * slots stand for arbitrary functions and record derivative orders in exps.
 */
using Tensor = std::map<std::vector<Monomial>, Rational>;

Tensor expand_tensor(const std::vector<SuperPoly>& inputs, const std::vector<char>& formal, int d) {
    Tensor t;
    t[{}] = 1;
    for (std::size_t s = 0; s < formal.size(); ++s) {
        Tensor next;
        if (formal[s]) {
            for (auto& [fs, c] : t) {
                auto g = fs;
                g.push_back(unit_monomial(d));
                next[g] += c;
            }
        } else {
            for (auto& [fs, c] : t)
                for (const auto& [m, cm] : inputs[s].terms) {
                    auto g = fs;
                    g.push_back(m);
                    next[g] += c * cm;
                }
        }
        t = std::move(next);
    }
    return t;
}

void apply_edge(Tensor& t, int i, int j, int d, const std::vector<char>& formal) {
    Tensor next;
    if (formal[i]) {
        t.clear();
        return;
    }
    for (const auto& [fs, c] : t) {
        int before = 0;
        for (int l = 0; l < i; ++l) before += popcount(fs[l].odd);
        for (int k = 0; k < d; ++k) {
            if (!(fs[i].odd >> k & 1)) continue;
            int sgn = (before + popcount(fs[i].odd & ((1u << k) - 1))) % 2 ? -1 : 1;
            auto g = fs;
            g[i].odd &= ~(1u << k);
            Rational cc = c * sgn;
            if (formal[j]) {
                g[j].exps[k] += 1;
            } else {
                if (g[j].exps[k] == 0) continue;
                cc *= g[j].exps[k];
                g[j].exps[k] -= 1;
            }
            next[g] += cc;
        }
    }
    t.clear();
    for (auto& [k, v] : next)
        if (v != 0) t.emplace(k, v);
}

Tensor evaluate(const SignedGraph& g, const std::vector<SuperPoly>& inputs, const std::vector<char>& formal, int d) {
    Tensor t = expand_tensor(inputs, formal, d);
    for (auto it = g.edges.rbegin(); it != g.edges.rend() && !t.empty(); ++it) apply_edge(t, it->first, it->second, d, formal);
    return t;
}

int common_dim(const std::vector<PolyVector>& v) {
    if (v.empty()) throw ValidationError("no inputs to infer the dimension from");
    for (const auto& a : v) check_same_dim(a, v[0]);
    check_dim(v[0].dim);
    return v[0].dim;
}

Integer factorial(int n) {
    Integer r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

// all ways to split alpha into parts summands, with multinomial weights
void leibniz_splits(const std::vector<int>& alpha, int parts,
                    const std::function<void(const std::vector<std::vector<int>>&, const Integer&)>& f) {
    int d = static_cast<int>(alpha.size());
    std::vector<std::vector<int>> cur(parts, std::vector<int>(d, 0));
    std::function<void(int, int, int, Integer)> rec = [&](int k, int p, int left, Integer w) {
        if (k == d) {
            f(cur, w);
            return;
        }
        if (p == parts - 1) {
            cur[p][k] = left;
            rec(k + 1, 0, k + 1 < d ? alpha[k + 1] : 0, w / factorial(left));
            cur[p][k] = 0;
            return;
        }
        for (int a = 0; a <= left; ++a) {
            cur[p][k] = a;
            rec(k, p + 1, left - a, w / factorial(a));
        }
        cur[p][k] = 0;
    };
    Integer total = 1;
    for (int a : alpha) total *= factorial(a);
    if (d == 0) {
        f(cur, 1);
        return;
    }
    rec(0, 0, alpha[0], total);
}

SuperPoly derivative(SuperPoly f, const std::vector<int>& alpha) {
    for (std::size_t k = 0; k < alpha.size(); ++k)
        for (int r = 0; r < alpha[k]; ++r) f = d_x(f, static_cast<int>(k));
    return f;
}

// --- literal parsing ---

class Lexer {
public:
    Lexer(std::string_view s, int d, bool form) : s_(s), d_(d), form_(form) {}

    SuperPoly parse() {
        check_dim(d_);
        SuperPoly r(d_);
        skip();
        if (pos_ == s_.size()) throw ParseError("empty polynomial", pos_);
        bool first = true;
        while (pos_ < s_.size()) {
            int sgn = 1;
            if (peek() == '+' || peek() == '-') {
                sgn = peek() == '-' ? -1 : 1;
                ++pos_;
                skip();
            } else if (!first) {
                throw ParseError("expected '+' or '-'", pos_);
            }
            first = false;
            r += Rational(sgn) * term();
            skip();
        }
        return r;
    }

private:
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    int number() {
        std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (start == pos_) throw ParseError("expected a number", pos_);
        if (pos_ - start > 6) throw ParseError("number too large", start);
        return std::stoi(std::string(s_.substr(start, pos_ - start)));
    }
    SuperPoly term() {
        SuperPoly r = constant(d_, 1);
        r = r * factor();
        skip();
        while (peek() == '*' || (form_ && peek() == '^')) {
            ++pos_;
            skip();
            r = r * factor();
            skip();
        }
        return r;
    }
    SuperPoly factor() {
        std::size_t start = pos_;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            std::size_t a = pos_;
            while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
            if (peek() == '/') {
                ++pos_;
                if (!std::isdigit(static_cast<unsigned char>(peek()))) throw ParseError("expected a denominator", pos_);
                while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
            }
            Rational q;
            try {
                q = parse_rational(s_.substr(a, pos_ - a));
            } catch (const ParseError& e) {
                throw ParseError("bad rational", a + e.position);
            }
            return constant(d_, q);
        }
        std::string name;
        while (std::isalpha(static_cast<unsigned char>(peek()))) name += s_[pos_++];
        if (name.empty()) throw ParseError("expected a factor", start);
        bool odd;
        if (name == "x") odd = false;
        else if ((name == "xi" && !form_) || (name == "dx" && form_)) odd = true;
        else throw ParseError("unknown variable '" + name + "'", start);
        std::size_t ipos = pos_;
        int k = number();
        if (k < 1 || k > d_) throw ParseError("variable index out of range 1.." + std::to_string(d_), ipos);
        if (odd) return odd_var(d_, k);
        SuperPoly v = x_var(d_, k);
        if (peek() == '^' && std::isdigit(static_cast<unsigned char>(pos_ + 1 < s_.size() ? s_[pos_ + 1] : '\0'))) {
            ++pos_;
            int e = number();
            if (e > 12) throw ParseError("exponent too large", pos_);
            SuperPoly p = constant(d_, 1);
            for (int r = 0; r < e; ++r) p = p * v;
            return p;
        }
        return v;
    }

    std::string_view s_;
    int d_;
    bool form_;
    std::size_t pos_ = 0;
};

std::string poly_string(const SuperPoly& a, const char* odd_name, const char* odd_sep) {
    if (a.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : a.terms) {
        std::vector<std::string> fs;
        for (std::size_t k = 0; k < m.exps.size(); ++k) {
            if (!m.exps[k]) continue;
            std::string f = "x" + std::to_string(k + 1);
            if (m.exps[k] > 1) f += "^" + std::to_string(m.exps[k]);
            fs.push_back(f);
        }
        std::string odd;
        for (int k = 0; k < static_cast<int>(m.exps.size()); ++k)
            if (m.odd >> k & 1) odd += (odd.empty() ? "" : odd_sep) + std::string(odd_name) + std::to_string(k + 1);
        if (!odd.empty()) fs.push_back(odd);
        Rational ac = abs(c);
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        if (fs.empty()) {
            os << to_string(ac);
            continue;
        }
        if (ac != 1) os << to_string(ac) << "*";
        for (std::size_t i = 0; i < fs.size(); ++i) os << (i ? "*" : "") << fs[i];
    }
    return os.str();
}

SuperPoly random_super(int d, int max_x_degree, int odd_deg, int terms, std::mt19937_64& rng) {
    check_dim(d);
    SuperPoly r(d);
    std::vector<unsigned> masks;
    for (unsigned m = 0; m < (1u << d); ++m)
        if (popcount(m) == odd_deg) masks.push_back(m);
    if (masks.empty()) return r;
    std::uniform_int_distribution<int> coef(-3, 3), deg(0, max_x_degree), var(0, d - 1);
    std::uniform_int_distribution<std::size_t> pick(0, masks.size() - 1);
    for (int t = 0; t < terms; ++t) {
        Monomial m = unit_monomial(d);
        int n = deg(rng);
        for (int r2 = 0; r2 < n; ++r2) ++m.exps[var(rng)];
        m.odd = masks[pick(rng)];
        int c = coef(rng);
        if (c) r.add(m, c);
    }
    return r;
}

} // namespace

int odd_degree(const Monomial& m) { return popcount(m.odd); }

SuperPoly::SuperPoly(int d) : dim(d) {}

void SuperPoly::add(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms.erase(it);
    }
}

int SuperPoly::odd_degree() const {
    int r = -1;
    for (const auto& [m, c] : terms) {
        int k = popcount(m.odd);
        if (r >= 0 && k != r) return -1;
        r = k;
    }
    return r;
}

bool SuperPoly::is_function() const {
    for (const auto& [m, c] : terms)
        if (m.odd) return false;
    return true;
}

SuperPoly& SuperPoly::operator+=(const SuperPoly& o) {
    check_same_dim(*this, o);
    for (const auto& [m, c] : o.terms) add(m, c);
    return *this;
}

SuperPoly& SuperPoly::operator-=(const SuperPoly& o) {
    check_same_dim(*this, o);
    for (const auto& [m, c] : o.terms) add(m, -c);
    return *this;
}

SuperPoly& SuperPoly::operator*=(const Rational& c) {
    if (c == 0) terms.clear();
    for (auto& [m, v] : terms) v *= c;
    return *this;
}

SuperPoly operator*(const SuperPoly& a, const SuperPoly& b) {
    check_same_dim(a, b);
    SuperPoly r(a.dim);
    Monomial m;
    int s;
    for (const auto& [ma, ca] : a.terms)
        for (const auto& [mb, cb] : b.terms)
            if (multiply(ma, mb, m, s)) r.add(m, ca * cb * s);
    return r;
}

SuperPoly constant(int d, const Rational& c) {
    SuperPoly r(d);
    r.add(unit_monomial(d), c);
    return r;
}

SuperPoly x_var(int d, int k) {
    SuperPoly r(d);
    Monomial m = unit_monomial(d);
    m.exps.at(k - 1) = 1;
    r.add(m, 1);
    return r;
}

SuperPoly odd_var(int d, int k) {
    SuperPoly r(d);
    Monomial m = unit_monomial(d);
    if (k < 1 || k > d) throw ValidationError("odd variable index out of range");
    m.odd = 1u << (k - 1);
    r.add(m, 1);
    return r;
}

SuperPoly d_x(const SuperPoly& a, int k) {
    SuperPoly r(a.dim);
    for (const auto& [m, c] : a.terms) {
        if (!m.exps[k]) continue;
        Monomial n = m;
        n.exps[k] -= 1;
        r.add(n, c * m.exps[k]);
    }
    return r;
}

SuperPoly d_odd(const SuperPoly& a, int k) {
    SuperPoly r(a.dim);
    for (const auto& [m, c] : a.terms) {
        if (!(m.odd >> k & 1)) continue;
        Monomial n = m;
        n.odd &= ~(1u << k);
        r.add(n, popcount(m.odd & ((1u << k) - 1)) % 2 ? -c : c);
    }
    return r;
}

std::string to_string(const PolyVector& a) { return poly_string(a, "xi", "*"); }
std::string form_to_string(const PolyForm& w) { return poly_string(w, "dx", "^"); }

PolyVector parse_polyvector(std::string_view text, int d) { return Lexer(text, d, false).parse(); }
PolyForm parse_form(std::string_view text, int d) { return Lexer(text, d, true).parse(); }

PolyVector random_polyvector(int d, int max_x_degree, int odd_deg, int terms, std::mt19937_64& rng) {
    return random_super(d, max_x_degree, odd_deg, terms, rng);
}

PolyForm random_form(int d, int max_x_degree, int form_deg, int terms, std::mt19937_64& rng) {
    return random_super(d, max_x_degree, form_deg, terms, rng);
}

PolyVector act_dgra(const SignedGraph& g, const std::vector<PolyVector>& gamma) {
    if (g.kind != GraphKind::DGRA) throw ValidationError("act_dgra needs a dgra graph");
    if (g.internal_count) throw ValidationError("act_dgra: internal vertices carry no input");
    validate(g);
    if (static_cast<int>(gamma.size()) != g.external_count)
        throw ValidationError("act_dgra: expected " + std::to_string(g.external_count) + " inputs");
    int d = common_dim(gamma);
    std::vector<char> formal(gamma.size(), 0);
    SuperPoly r(d);
    for (const auto& [fs, c] : evaluate(g, gamma, formal, d)) {
        SuperPoly p = constant(d, c);
        for (const auto& m : fs) {
            SuperPoly f(d);
            f.add(m, 1);
            p = p * f;
        }
        r += p;
    }
    return r;
}

PolyVector act_dgra(const GraphLinComb& x, const std::vector<PolyVector>& gamma) {
    int d = common_dim(gamma);
    SuperPoly r(d);
    for (const auto& [g, c] : x) r += c * act_dgra(g, gamma);
    return r;
}

PolyVector schouten_bracket(const PolyVector& a, const PolyVector& b) {
    check_same_dim(a, b);
    check_dim(a.dim);
    SuperPoly r(a.dim);
    for (const auto& [m, c] : a.terms) {
        SuperPoly am(a.dim);
        am.add(m, c);
        int sa = popcount(m.odd) % 2 ? -1 : 1;
        for (int k = 0; k < a.dim; ++k) {
            r += d_odd(am, k) * d_x(b, k);
            r += Rational(sa) * (d_x(am, k) * d_odd(b, k));
        }
    }
    return r;
}

PolyVector sn_bracket(const PolyVector& a, const PolyVector& b) {
    SuperPoly r(a.dim);
    for (const auto& [m, c] : a.terms) {
        SuperPoly am(a.dim);
        am.add(m, c);
        r += Rational(popcount(m.odd) % 2 ? 1 : -1) * schouten_bracket(am, b);
    }
    return r;
}

void PolyOperator::add(const OpTerm& t, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms.emplace(t, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms.erase(it);
    }
}

bool PolyOperator::normalized() const {
    for (const auto& [t, c] : terms)
        for (const auto& a : t.derivs) {
            bool any = false;
            for (int e : a) any |= e > 0;
            if (!any) return false;
        }
    return true;
}

PolyOperator& PolyOperator::operator+=(const PolyOperator& o) {
    if (o.dim != dim || o.arity != arity) throw ValidationError("operator dimension or arity mismatch");
    for (const auto& [t, c] : o.terms) add(t, c);
    return *this;
}

PolyOperator& PolyOperator::operator-=(const PolyOperator& o) {
    if (o.dim != dim || o.arity != arity) throw ValidationError("operator dimension or arity mismatch");
    for (const auto& [t, c] : o.terms) add(t, -c);
    return *this;
}

PolyOperator& PolyOperator::operator*=(const Rational& c) {
    if (c == 0) terms.clear();
    for (auto& [t, v] : terms) v *= c;
    return *this;
}

SuperPoly PolyOperator::apply(const std::vector<SuperPoly>& fns) const {
    if (static_cast<int>(fns.size()) != arity) throw ValidationError("operator applied to the wrong number of inputs");
    for (const auto& f : fns) {
        if (f.dim != dim) throw ValidationError("dimension mismatch");
        if (!f.is_function()) throw ValidationError("operators act on functions");
    }
    SuperPoly r(dim);
    for (const auto& [t, c] : terms) {
        SuperPoly p(dim);
        p.add(t.coef, c);
        for (int j = 0; j < arity && !p.empty(); ++j) p = p * derivative(fns[j], t.derivs[j]);
        r += p;
    }
    return r;
}

std::string to_string(const PolyOperator& op) {
    if (op.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [t, c] : op.terms) {
        SuperPoly p(op.dim);
        p.add(t.coef, c);
        os << (first ? "" : " + ") << "(" << to_string(p) << ")";
        first = false;
        for (int j = 0; j < op.arity; ++j) {
            os << "*";
            for (std::size_t k = 0; k < t.derivs[j].size(); ++k)
                for (int r = 0; r < t.derivs[j][k]; ++r) os << "d" << k + 1;
            os << "a" << j + 1;
        }
    }
    return os.str();
}

PolyOperator multiplication_operator(int d, int arity) {
    check_dim(d);
    PolyOperator op{d, arity, {}};
    op.add(OpTerm{unit_monomial(d), std::vector<std::vector<int>>(arity, std::vector<int>(d, 0))}, 1);
    return op;
}

PolyOperator coefficient_operator(const SuperPoly& f) {
    PolyOperator op{f.dim, 0, {}};
    for (const auto& [m, c] : f.terms) op.add(OpTerm{m, {}}, c);
    return op;
}

PolyOperator act_sgra(const SignedGraph& g, const std::vector<PolyVector>& gamma, int dim) {
    if (g.kind != GraphKind::SGRA) throw ValidationError("act_sgra needs an sgra graph");
    if (g.internal_count) throw ValidationError("act_sgra: internal vertices carry no input");
    validate(g);
    if (static_cast<int>(gamma.size()) != g.external_count)
        throw ValidationError("act_sgra: expected " + std::to_string(g.external_count) + " inputs");
    int d = dim;
    if (!gamma.empty()) {
        d = common_dim(gamma);
        if (dim && dim != d) throw ValidationError("dimension mismatch");
    }
    check_dim(d);
    int n = g.typeII_count;
    std::vector<SuperPoly> inputs = gamma;
    inputs.resize(gamma.size() + n, SuperPoly(d));
    std::vector<char> formal(gamma.size(), 0);
    formal.resize(gamma.size() + n, 1);
    PolyOperator op{d, n, {}};
    for (const auto& [fs, c] : evaluate(g, inputs, formal, d)) {
        Monomial m = unit_monomial(d);
        int sign = 1;
        for (std::size_t s = 0; s < gamma.size(); ++s) {
            Monomial out;
            int sg;
            if (!multiply(m, fs[s], out, sg)) {
                sign = 0;
                break;
            }
            sign *= sg;
            m = out;
        }
        if (!sign) continue;
        OpTerm t{m, {}};
        for (int j = 0; j < n; ++j) t.derivs.push_back(fs[gamma.size() + j].exps);
        op.add(t, c * sign);
    }
    return op;
}

PolyOperator braces(const PolyOperator& a0, const std::vector<PolyOperator>& args) {
    int k = static_cast<int>(args.size());
    if (k == 0) return a0;
    for (const auto& a : args)
        if (a.dim != a0.dim) throw ValidationError("dimension mismatch");
    auto all_functions = [](const PolyOperator& op) {
        for (const auto& [t, c] : op.terms)
            if (t.coef.odd) return false;
        return true;
    };
    if (!all_functions(a0)) throw ValidationError("braces need function coefficients");
    for (const auto& a : args)
        if (!all_functions(a)) throw ValidationError("braces need function coefficients");
    int arity = a0.arity;
    for (const auto& a : args) arity += a.arity;
    arity -= k;
    PolyOperator out{a0.dim, arity, {}};
    if (k > a0.arity) return out;
    int d = a0.dim;

    std::vector<int> slots(k);
    std::function<void(int, int)> choose = [&](int i, int from) {
        if (i == k) {
            int sexp = 0;
            for (int r = 0; r < k; ++r) sexp += (args[r].arity + 1) * slots[r];
            int sign = sexp % 2 ? -1 : 1;
            for (const auto& [t0, c0] : a0.terms) {
                // expand the insertions one at a time; state = (coef, derivs, coefficient)
                struct State {
                    Monomial coef;
                    std::vector<std::vector<int>> derivs;
                    Rational c;
                };
                std::vector<State> states{{t0.coef, {}, c0 * sign}};
                int next_slot = 0;
                for (int r = 0; r <= k; ++r) {
                    int stop = r < k ? slots[r] : a0.arity;
                    for (auto& s : states)
                        for (int q = next_slot; q < stop; ++q) s.derivs.push_back(t0.derivs[q]);
                    if (r == k) break;
                    const auto& alpha = t0.derivs[slots[r]];
                    std::vector<State> grown;
                    for (const auto& s : states)
                        for (const auto& [t1, c1] : args[r].terms) {
                            int parts = 1 + args[r].arity;
                            leibniz_splits(alpha, parts, [&](const std::vector<std::vector<int>>& sp, const Integer& w) {
                                SuperPoly cpoly(d);
                                cpoly.add(t1.coef, 1);
                                cpoly = derivative(cpoly, sp[0]);
                                if (cpoly.empty()) return;
                                const auto& [cm, cc] = *cpoly.terms.begin();
                                State ns = s;
                                for (std::size_t x = 0; x < cm.exps.size(); ++x) ns.coef.exps[x] += cm.exps[x];
                                ns.c *= c1 * cc * Rational(w);
                                for (int q = 0; q < args[r].arity; ++q) {
                                    auto dv = t1.derivs[q];
                                    for (int x = 0; x < d; ++x) dv[x] += sp[q + 1][x];
                                    ns.derivs.push_back(dv);
                                }
                                grown.push_back(std::move(ns));
                            });
                        }
                    states = std::move(grown);
                    next_slot = slots[r] + 1;
                }
                for (auto& s : states) out.add(OpTerm{s.coef, s.derivs}, s.c);
            }
            return;
        }
        for (int j = from; j < a0.arity; ++j) {
            slots[i] = j;
            choose(i + 1, j + 1);
        }
    };
    choose(0, 0);
    return out;
}

PolyOperator hochschild_bracket(const PolyOperator& a, const PolyOperator& b) {
    PolyOperator r = braces(a, {b});
    PolyOperator s = braces(b, {a});
    if ((a.arity - 1) * (b.arity - 1) % 2) r += s;
    else r -= s;
    return r;
}

PolyForm contraction(const PolyVector& gamma, const PolyForm& w) {
    check_same_dim(gamma, w);
    SuperPoly r(w.dim);
    for (const auto& [mg, cg] : gamma.terms) {
        SuperPoly cur(w.dim);
        for (const auto& [mw, cw] : w.terms) {
            Monomial m = mw;
            for (std::size_t k = 0; k < m.exps.size(); ++k) m.exps[k] += mg.exps[k];
            cur.add(m, cg * cw);
        }
        for (int k = w.dim - 1; k >= 0 && !cur.empty(); --k)
            if (mg.odd >> k & 1) cur = d_odd(cur, k);
        r += cur;
    }
    return r;
}

PolyForm de_rham(const PolyForm& w) {
    SuperPoly r(w.dim);
    for (int k = 0; k < w.dim; ++k) r += odd_var(w.dim, k + 1) * d_x(w, k);
    return r;
}

PolyForm lie_derivative(const PolyVector& gamma, const PolyForm& w) {
    if (gamma.empty()) return SuperPoly(w.dim);
    int p = gamma.odd_degree();
    if (p < 0) throw ValidationError("lie_derivative needs a homogeneous polyvector");
    PolyForm r = de_rham(contraction(gamma, w));
    PolyForm s = contraction(gamma, de_rham(w));
    return p % 2 ? r + s : r - s;
}

PolyForm act_gra1(const SignedGraph& g, const std::vector<PolyVector>& gamma, const PolyForm& w) {
    if (g.kind != GraphKind::GRA1) throw ValidationError("act_gra1 needs a gra1 graph");
    if (g.internal_count) throw ValidationError("act_gra1: internal vertices carry no input");
    validate(g);
    if (static_cast<int>(gamma.size()) != g.external_count)
        throw ValidationError("act_gra1: expected " + std::to_string(g.external_count) + " inputs");
    for (const auto& a : gamma) check_same_dim(a, w);
    check_dim(w.dim);
    int d = w.dim;
    SignedGraph flat;
    flat.kind = GraphKind::DGRA;
    flat.external_count = g.external_count + 2;
    flat.edges = g.edges;
    int e = static_cast<int>(g.edges.size());
    SuperPoly r(d);
    for (const auto& [mw, cw] : w.terms) {
        SuperPoly f(d), w0(d);
        f.add(Monomial{mw.exps, 0}, cw);
        w0.add(Monomial{std::vector<int>(d, 0), mw.odd}, 1);
        for (unsigned J = 0; J < (1u << d); ++J) {
            SuperPoly xiJ(d), dxJ(d);
            xiJ.add(Monomial{std::vector<int>(d, 0), J}, 1);
            dxJ.add(Monomial{std::vector<int>(d, 0), J}, 1);
            auto inputs = gamma;
            inputs.push_back(xiJ);
            inputs.push_back(f);
            SuperPoly val = contraction(act_dgra(flat, inputs), w0);
            Rational norm = contraction(xiJ, dxJ).terms.begin()->second;
            int sign = (e * popcount(J)) % 2 ? -1 : 1;
            for (const auto& [m, c] : val.terms)
                if (!m.odd) r.add(Monomial{m.exps, J}, c * sign / norm);
        }
    }
    return r;
}

PolyForm act_gra1(const GraphLinComb& x, const std::vector<PolyVector>& gamma, const PolyForm& w) {
    SuperPoly r(w.dim);
    for (const auto& [g, c] : x) r += c * act_gra1(g, gamma, w);
    return r;
}

namespace {

std::vector<std::vector<Rational>> bivector_matrix(const PolyVector& pi) {
    int d = pi.dim;
    check_dim(d);
    std::vector<std::vector<Rational>> P(d, std::vector<Rational>(d, 0));
    for (const auto& [m, c] : pi.terms) {
        for (int e : m.exps)
            if (e) throw ValidationError("moyal_star needs a constant bivector");
        if (popcount(m.odd) != 2) throw ValidationError("moyal_star needs a bivector");
        int i = std::countr_zero(m.odd), j = 31 - std::countl_zero(m.odd);
        P[i][j] += c;
        P[j][i] -= c;
    }
    return P;
}

EpsSeries truncate_series(EpsSeries s, int order, int d) {
    s.resize(order + 1, SuperPoly(d));
    return s;
}

} // namespace

EpsSeries moyal_star(const SuperPoly& f, const SuperPoly& g, const PolyVector& pi, int order) {
    check_same_dim(f, g);
    check_same_dim(f, pi);
    if (order < 0 || order > 3) throw ValidationError("star order must be in 0..3");
    auto P = bivector_matrix(pi);
    int d = pi.dim;
    EpsSeries out(order + 1, SuperPoly(d));
    std::vector<std::pair<SuperPoly, SuperPoly>> cur{{f, g}};
    Rational w = 1;
    for (int n = 0; n <= order; ++n) {
        if (n) w /= 2 * n;
        for (const auto& [a, b] : cur) out[n] += w * (a * b);
        if (n == order) break;
        std::vector<std::pair<SuperPoly, SuperPoly>> next;
        for (const auto& [a, b] : cur)
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) {
                    if (P[i][j] == 0) continue;
                    auto da = d_x(a, i), db = d_x(b, j);
                    if (da.empty() || db.empty()) continue;
                    next.emplace_back(P[i][j] * da, db);
                }
        cur = std::move(next);
    }
    return out;
}

EpsSeries moyal_star(const EpsSeries& f, const EpsSeries& g, const PolyVector& pi, int order) {
    int d = pi.dim;
    EpsSeries out(order + 1, SuperPoly(d));
    for (int a = 0; a < static_cast<int>(f.size()) && a <= order; ++a)
        for (int b = 0; b < static_cast<int>(g.size()) && a + b <= order; ++b) {
            auto s = moyal_star(f[a], g[b], pi, order - a - b);
            for (int n = 0; n < static_cast<int>(s.size()); ++n) out[a + b + n] += s[n];
        }
    return out;
}

EpsSeries weight_star(const WeightSystem& w, const SuperPoly& f, const SuperPoly& g, const PolyVector& pi) {
    check_same_dim(f, g);
    check_same_dim(f, pi);
    int d = pi.dim;
    EpsSeries out(w.truncation_order + 1, SuperPoly(d));
    for (const auto& [gr, c] : w.weights) {
        int n = gr.internal_count;
        if (n > w.truncation_order) continue;
        if (gr.typeII_count != 2) throw ValidationError("weight_star needs graphs with two type II vertices");
        // internal vertices become type I vertices carrying pi
        SignedGraph h;
        h.kind = GraphKind::SGRA;
        h.external_count = n;
        h.typeII_count = 2;
        auto relabel = [&](int v) { return v >= 2 ? v - 2 : v + n; };
        for (auto [a, b] : gr.edges) h.edges.emplace_back(relabel(a), relabel(b));
        if (n == 0) {
            out[0] += c * (f * g);
            continue;
        }
        PolyOperator op = act_sgra(h, std::vector<PolyVector>(n, pi));
        out[n] += c * op.apply({f, g});
    }
    return out;
}

EpsSeries weight_star(const WeightSystem& w, const EpsSeries& f, const EpsSeries& g, const PolyVector& pi) {
    int order = w.truncation_order, d = pi.dim;
    EpsSeries out(order + 1, SuperPoly(d));
    for (int a = 0; a < static_cast<int>(f.size()) && a <= order; ++a)
        for (int b = 0; b < static_cast<int>(g.size()) && a + b <= order; ++b) {
            auto s = weight_star(w, f[a], g[b], pi);
            for (int n = 0; a + b + n <= order; ++n) out[a + b + n] += s[n];
        }
    return out;
}

EpsSeries star_associativity_residual(const WeightSystem& w, const SuperPoly& f, const SuperPoly& g,
                                      const SuperPoly& h, const PolyVector& pi) {
    int d = pi.dim, order = w.truncation_order;
    EpsSeries F = truncate_series({f}, order, d), G = truncate_series({g}, order, d), H = truncate_series({h}, order, d);
    EpsSeries left = weight_star(w, weight_star(w, F, G, pi), H, pi);
    EpsSeries right = weight_star(w, F, weight_star(w, G, H, pi), pi);
    for (int n = 0; n <= order; ++n) left[n] -= right[n];
    return left;
}

} // namespace kgraph
