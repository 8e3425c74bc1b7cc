#include <kgraph/tree_operads.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace kgraph {

namespace {

constexpr int kNewTag = -1000000;

using Path = std::vector<int>;

TNode& at(TNode& root, const Path& p) {
    TNode* v = &root;
    for (int s : p) v = s < 0 ? &v->deco.at(0) : &v->children.at(s);
    return *v;
}

struct Corner {
    Path path;
    int pos;
};

bool takes_corners(const TNode& v) { return v.kind != NodeKind::Unit && v.kind != NodeKind::In; }

// boundary walk of one component (decorations are separate components)
void walk_corners(const TNode& v, Path& path, std::vector<Corner>& out, std::size_t* in_at) {
    if (v.kind == NodeKind::In && in_at) *in_at = out.size();
    bool ok = takes_corners(v);
    bool out_root = v.kind == NodeKind::Out;
    if (ok && !out_root) out.push_back({path, 0});
    for (std::size_t i = 0; i < v.children.size(); ++i) {
        path.push_back(static_cast<int>(i));
        walk_corners(v.children[i], path, out, in_at);
        path.pop_back();
        if (ok) out.push_back({path, static_cast<int>(i) + 1});
    }
}

std::vector<Corner> corners_of(const TNode& root, Path base = {}, std::size_t* in_at = nullptr) {
    std::vector<Corner> out;
    walk_corners(root, base, out, in_at);
    return out;
}

// nondecreasing sequences of length k in [0, c)
void for_each_multiset(int k, int c, const std::function<void(const std::vector<int>&)>& f) {
    std::vector<int> a(k, 0);
    if (k == 0) {
        f(a);
        return;
    }
    if (c == 0) return;
    std::function<void(int, int)> rec = [&](int i, int lo) {
        if (i == k) {
            f(a);
            return;
        }
        for (int x = lo; x < c; ++x) {
            a[i] = x;
            rec(i + 1, x);
        }
    };
    rec(0, 0);
}

// place kids[i] into corners[assign[i]] of root; corners hold paths relative to root
void distribute(TNode& root, const std::vector<Corner>& corners, const std::vector<int>& assign,
                const std::vector<TNode>& kids) {
    std::map<int, std::vector<TNode>> groups;
    for (std::size_t i = 0; i < kids.size(); ++i) groups[assign[i]].push_back(kids[i]);
    for (auto it = groups.rbegin(); it != groups.rend(); ++it) {
        const Corner& c = corners[it->first];
        TNode& v = at(root, c.path);
        v.children.insert(v.children.begin() + c.pos, it->second.begin(), it->second.end());
    }
}

template <typename F>
void each_node(TNode& v, Path& path, F&& f) {
    f(v, path);
    if (!v.deco.empty()) {
        path.push_back(-1);
        each_node(v.deco[0], path, f);
        path.pop_back();
    }
    for (std::size_t i = 0; i < v.children.size(); ++i) {
        path.push_back(static_cast<int>(i));
        each_node(v.children[i], path, f);
        path.pop_back();
    }
}

std::vector<Path> node_paths(const TNode& root, bool into_decorations) {
    std::vector<Path> out;
    std::function<void(const TNode&, Path&)> rec = [&](const TNode& v, Path& p) {
        out.push_back(p);
        if (into_decorations && !v.deco.empty()) {
            p.push_back(-1);
            rec(v.deco[0], p);
            p.pop_back();
        }
        for (std::size_t i = 0; i < v.children.size(); ++i) {
            p.push_back(static_cast<int>(i));
            rec(v.children[i], p);
            p.pop_back();
        }
    };
    Path p;
    rec(root, p);
    return out;
}

std::vector<Path> component_roots(const TNode& root) {
    std::vector<Path> out;
    for (auto& p : node_paths(root, true)) {
        if (p.empty() || p.back() == -1) out.push_back(p);
    }
    return out;
}

PlanarTree tagged(const PlanarTree& t) {
    PlanarTree c = t;
    assign_canonical_tags(c);
    return c;
}

void shift(TNode& v, int label_from, int label_by, int tag_by) {
    Path p;
    each_node(v, p, [&](TNode& x, const Path&) {
        if (x.kind == NodeKind::External && x.label >= label_from) x.label += label_by;
        if (x.tag >= 0) x.tag += tag_by;
        if (x.mtag >= 0) x.mtag += tag_by;
    });
}

bool is_br_like(TreeKind k) { return k == TreeKind::PT || k == TreeKind::BR; }

void ds_component(const PlanarTree& base, const Path& croot, TreeLinComb& out) {
    const TNode& R = at(const_cast<TNode&>(base.root), croot);
    // new root above
    {
        PlanarTree t = base;
        TNode& r = at(t.root, croot);
        TNode w;
        w.kind = NodeKind::Internal;
        w.tag = r.tag;
        TNode moved = r;
        moved.tag = kNewTag;
        w.children.push_back(std::move(moved));
        r = std::move(w);
        add_tree(out, std::move(t), 1);
    }
    // new leaf at every corner
    for (const Corner& c : corners_of(R, croot)) {
        PlanarTree t = base;
        TNode& v = at(t.root, c.path);
        TNode w;
        w.kind = NodeKind::Internal;
        w.tag = kNewTag;
        v.children.insert(v.children.begin() + c.pos, w);
        add_tree(out, std::move(t), 1);
    }
    // splittings
    std::vector<Path> paths;
    {
        Path p = croot;
        std::function<void(const TNode&)> rec = [&](const TNode& v) {
            paths.push_back(p);
            for (std::size_t i = 0; i < v.children.size(); ++i) {
                p.push_back(static_cast<int>(i));
                rec(v.children[i]);
                p.pop_back();
            }
        };
        rec(R);
    }
    for (const Path& p : paths) {
        const TNode& v0 = at(const_cast<TNode&>(base.root), p);
        if (v0.kind == NodeKind::Unit || v0.kind == NodeKind::In || v0.kind == NodeKind::Out) continue;
        int k = static_cast<int>(v0.children.size());
        for (int i = 0; i <= k; ++i)
            for (int j = i; j <= k; ++j) {
                {
                    PlanarTree t = base;
                    TNode& v = at(t.root, p);
                    TNode w;
                    w.kind = NodeKind::Internal;
                    w.tag = kNewTag;
                    w.children.assign(v.children.begin() + i, v.children.begin() + j);
                    v.children.erase(v.children.begin() + i, v.children.begin() + j);
                    v.children.insert(v.children.begin() + i, std::move(w));
                    add_tree(out, std::move(t), -1);
                }
                if (v0.kind != NodeKind::Internal) {
                    PlanarTree t = base;
                    TNode& v = at(t.root, p);
                    TNode w;
                    w.kind = NodeKind::Internal;
                    w.tag = v.tag;
                    TNode inner = v;
                    inner.tag = kNewTag;
                    inner.children.assign(v.children.begin() + i, v.children.begin() + j);
                    w.children.assign(v.children.begin(), v.children.begin() + i);
                    w.children.push_back(std::move(inner));
                    w.children.insert(w.children.end(), v.children.begin() + j, v.children.end());
                    v = std::move(w);
                    add_tree(out, std::move(t), -1);
                }
            }
    }
}

} // namespace

std::size_t pt_compose_raw_count(const PlanarTree& t1, int j, const PlanarTree& t2) {
    std::size_t c = corners_of(t2.root).size();
    std::size_t k = 0;
    Path p;
    PlanarTree a = t1;
    each_node(a.root, p, [&](TNode& v, const Path&) {
        if (v.kind == NodeKind::External && v.label == j) k = v.children.size();
    });
    // C(c + k - 1, k)
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (c + k - i) / i;
    return r;
}

TreeLinComb pt_compose(const PlanarTree& t1, int j, const PlanarTree& t2) {
    if (!is_br_like(t1.kind) || !is_br_like(t2.kind))
        throw ValidationError("pt_compose: needs pt/br trees, got " + tree_kind_name(t1.kind) + ", " + tree_kind_name(t2.kind));
    int n1 = external_count(t1), n2 = external_count(t2);
    if (j < 1 || j > n1) throw ValidationError("pt_compose: slot " + std::to_string(j) + " out of range");
    PlanarTree a = tagged(t1), b = tagged(t2);
    int k1 = odd_count(a);
    Path pj;
    bool found = false;
    {
        Path p;
        each_node(a.root, p, [&](TNode& v, const Path& q) {
            if (v.kind == NodeKind::External && v.label == j) {
                pj = q;
                found = true;
            }
        });
    }
    if (!found) throw ValidationError("pt_compose: vertex not found");
    TNode& jn = at(a.root, pj);
    std::vector<TNode> kids = jn.children;
    int jtag = jn.tag;
    shift(a.root, j + 1, n2 - 1, 0);
    // jn's children were shifted too, keep the shifted copies
    kids = at(a.root, pj).children;
    shift(b.root, 1, j - 1, k1);
    TNode X = b.root;
    X.tag = jtag;
    auto corners = corners_of(X);
    TreeKind kind = (t1.kind == TreeKind::BR && t2.kind == TreeKind::BR) ? TreeKind::BR : TreeKind::PT;
    TreeLinComb out;
    for_each_multiset(static_cast<int>(kids.size()), static_cast<int>(corners.size()), [&](const std::vector<int>& as) {
        TNode Y = X;
        distribute(Y, corners, as, kids);
        PlanarTree t = a;
        t.kind = kind;
        at(t.root, pj) = std::move(Y);
        add_tree(out, std::move(t), 1);
    });
    return out;
}

TreeLinComb pt_compose(const TreeLinComb& a, int j, const TreeLinComb& b) {
    TreeLinComb out;
    for (const auto& [x, cx] : a)
        for (const auto& [y, cy] : b) out.add(pt_compose(x, j, y), cx * cy);
    return out;
}

TreeLinComb br_differential(const PlanarTree& t) {
    if (!is_br_like(t.kind)) throw ValidationError("br_differential: needs a pt/br tree");
    TreeLinComb out;
    ds_component(tagged(t), {}, out);
    return out;
}

TreeLinComb br_differential(const TreeLinComb& x) {
    return linear_map<PlanarTree>(x, [](const PlanarTree& t) { return br_differential(t); });
}

BrinfSigns default_brinf_signs() { return {1, 1, true}; }

TreeLinComb split_part(const PlanarTree& t) {
    PlanarTree base = tagged(t);
    TreeLinComb out;
    for (const Path& c : component_roots(base.root)) ds_component(base, c, out);
    return out;
}

TreeLinComb recolour_part(const PlanarTree& t, bool marker_sign) {
    TreeLinComb out;
    if (t.kind != TreeKind::BINF) return out;
    PlanarTree base = tagged(t);
    for (const Path& p : node_paths(base.root, true)) {
        const TNode& v = at(base.root, p);
        if (v.kind != NodeKind::Blue) continue;
        int pos = v.mtag;
        PlanarTree r = base;
        TNode& w = at(r.root, p);
        w.kind = NodeKind::Red;
        w.mtag = -1;
        add_tree(out, std::move(r), marker_sign && pos % 2 ? -1 : 1);
    }
    return out;
}

TreeLinComb insert_part(const PlanarTree& t, bool marker_sign) {
    TreeLinComb out;
    PlanarTree base = tagged(t);
    for (const Path& p : node_paths(base.root, true)) {
        const TNode& v = at(base.root, p);
        if (v.kind != NodeKind::Blue) continue;
        int pos = v.mtag;
        TNode X = v.deco[0];
        X.tag = v.tag;
        std::vector<TNode> kids = v.children;
        auto corners = corners_of(X);
        for_each_multiset(static_cast<int>(kids.size()), static_cast<int>(corners.size()), [&](const std::vector<int>& as) {
            TNode Y = X;
            distribute(Y, corners, as, kids);
            PlanarTree r = base;
            at(r.root, p) = std::move(Y);
            add_tree(out, std::move(r), marker_sign && pos % 2 ? -1 : 1);
        });
    }
    return out;
}

TreeLinComb brinf_differential(const PlanarTree& t, BrinfSigns s) {
    if (t.kind != TreeKind::BINF && t.kind != TreeKind::BBR && !is_br_like(t.kind))
        throw ValidationError("brinf_differential: needs a binf/bbr tree");
    TreeLinComb out = split_part(t);
    out.add(insert_part(t, s.marker_sign), Rational(s.bi));
    if (t.kind == TreeKind::BINF) out.add(recolour_part(t, s.marker_sign), Rational(s.br));
    return out;
}

TreeLinComb brinf_differential(const TreeLinComb& x, BrinfSigns s) {
    return linear_map<PlanarTree>(x, [&](const PlanarTree& t) { return brinf_differential(t, s); });
}

PlanarTree ks1_unit(TreeKind kind) {
    PlanarTree t;
    t.kind = kind;
    t.root.kind = NodeKind::Out;
    TNode in;
    in.kind = NodeKind::In;
    t.root.children.push_back(in);
    assign_canonical_tags(t);
    return t;
}

namespace {

bool is_ks(TreeKind k) { return k == TreeKind::PT1 || k == TreeKind::KS1; }

// one rewriting step; returns false when no redex; sets zero when the tree dies
bool ks1_step(PlanarTree& t, int& sign, bool& zero, bool last_first) {
    assign_canonical_tags(t);
    std::vector<Path> paths = node_paths(t.root, true);
    if (last_first) std::reverse(paths.begin(), paths.end());
    for (const Path& p : paths) {
        TNode& v = at(t.root, p);
        for (std::size_t i = 0; i < v.children.size(); ++i) {
            if (v.children[i].kind != NodeKind::Unit) continue;
            switch (v.kind) {
            case NodeKind::External: zero = true; return true;
            case NodeKind::Out:
                if (i != 0) {
                    zero = true;
                    return true;
                }
                continue;
            case NodeKind::Internal: {
                if (v.children.size() >= 3) {
                    zero = true;
                    return true;
                }
                if (v.children.size() != 2) continue;
                TNode c = v.children[1 - i];
                // move both child edges to the front in planar order, then drop them
                int p0 = v.children[0].tag, p1 = v.children[1].tag;
                if ((p0 + p1 - 1) % 2) sign = -sign;
                c.tag = v.tag;
                v = std::move(c);
                return true;
            }
            default: continue;
            }
        }
    }
    return false;
}

} // namespace

TreeLinComb ks1_normalize(const PlanarTree& t, bool last_first) {
    if (!is_ks(t.kind)) throw ValidationError("ks1_normalize: needs a pt1/ks1 tree");
    PlanarTree r = t;
    int sign = 1;
    bool zero = false;
    while (ks1_step(r, sign, zero, last_first))
        if (zero) return {};
    TreeLinComb out;
    add_tree(out, std::move(r), sign);
    return out;
}

TreeLinComb ks1_normalize(const TreeLinComb& x) {
    return linear_map<PlanarTree>(x, [](const PlanarTree& t) { return ks1_normalize(t); });
}

TreeLinComb ks1_compose(const PlanarTree& t1, const PlanarTree& t2, bool normalize) {
    if (!is_ks(t1.kind) || !is_ks(t2.kind)) throw ValidationError("ks1_compose: needs pt1/ks1 trees");
    if (t1.root.deco.size() || t2.root.deco.size()) throw ValidationError("ks1_compose: K_B trees are not composable");
    PlanarTree a = tagged(t1), b = tagged(t2);
    int k1 = odd_count(a), n1 = external_count(a);
    shift(b.root, 1, n1, k1);
    Path pin;
    {
        Path p;
        each_node(a.root, p, [&](TNode& v, const Path& q) {
            if (v.kind == NodeKind::In) pin = q;
        });
    }
    TNode M = b.root.children.at(0);
    M.tag = at(a.root, pin).tag;
    std::vector<TNode> kids(b.root.children.begin() + 1, b.root.children.end());
    std::size_t q = 0;
    auto corners = corners_of(a.root, {}, &q);
    // rotate the walk to start just after in
    TreeKind kind = (t1.kind == TreeKind::KS1 || t2.kind == TreeKind::KS1) ? TreeKind::KS1 : TreeKind::PT1;
    TreeLinComb out;
    for_each_multiset(static_cast<int>(kids.size()), static_cast<int>(corners.size()), [&](const std::vector<int>& as) {
        PlanarTree t = a;
        t.kind = kind;
        at(t.root, pin) = M;
        // group by original corner, in order of appearance in kids
        std::map<std::size_t, std::vector<TNode>> groups;
        for (std::size_t i = 0; i < kids.size(); ++i) {
            std::size_t orig = (as[i] + q) % corners.size();
            groups[orig].push_back(kids[i]);
        }
        for (auto it = groups.rbegin(); it != groups.rend(); ++it) {
            const Corner& c = corners[it->first];
            TNode& v = at(t.root, c.path);
            v.children.insert(v.children.begin() + c.pos, it->second.begin(), it->second.end());
        }
        if (kind == TreeKind::KS1 && normalize) {
            int s = finalize(t);
            out.add(ks1_normalize(t), Rational(s));
        } else {
            add_tree(out, std::move(t), 1);
        }
    });
    return out;
}

TreeLinComb ks1_compose(const TreeLinComb& a, const TreeLinComb& b, bool normalize) {
    TreeLinComb out;
    for (const auto& [x, cx] : a)
        for (const auto& [y, cy] : b) out.add(ks1_compose(x, y, normalize), cx * cy);
    return out;
}

namespace {

int perm_parity(const std::vector<int>& a, const std::vector<int>& b) {
    // parity of the permutation taking sequence a to sequence b (same elements)
    std::vector<int> idx;
    for (int x : b) idx.push_back(static_cast<int>(std::find(a.begin(), a.end(), x) - a.begin()));
    int inv = 0;
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = i + 1; j < idx.size(); ++j) inv += idx[i] > idx[j];
    return inv % 2 ? -1 : 1;
}

std::vector<int> child_labels(const TNode& v) {
    std::vector<int> r;
    for (const auto& c : v.children) r.push_back(c.label);
    return r;
}

} // namespace

TreeLinComb planar_leibniz_residual(int m, int n, bool primed) {
    if (m < 0 || n < 0) throw ValidationError("planar_leibniz_residual: negative arity");
    PlanarTree Tm = generator_T(m);
    PlanarTree Tn = primed ? generator_Tprime(n) : generator_T(n);
    Tm.kind = TreeKind::PT;
    Tn.kind = TreeKind::PT;
    TreeLinComb res = pt_compose(Tm, 1, Tn);
    // LHS labels: T_n part occupies 1..n2, T_m's children follow
    int n2 = external_count(Tn);
    int first_tn_child = primed ? 1 : 2;
    std::vector<int> js(n, 0);
    std::function<void(int, int)> rec = [&](int k, int used) {
        if (k == n) {
            int N = n + m - used;
            // choose positions i_1 < ... < i_n among the N root children
            std::vector<int> pos;
            std::function<void(int, int)> pick = [&](int start, int cnt) {
                if (cnt == n) {
                    PlanarTree base = primed ? generator_Tprime(N) : generator_T(N);
                    base.kind = TreeKind::PT;
                    Rational coef = 1;
                    for (int r = 0; r < n; ++r) {
                        int slot = base.root.children.at(pos[r]).label;
                        PlanarTree g = js[r] == 0 ? single_vertex() : generator_T(js[r]);
                        g.kind = TreeKind::PT;
                        TreeLinComb c = pt_compose(base, slot, g);
                        if (c.size() != 1) throw std::logic_error("planar_leibniz_residual: leaf insertion not unique");
                        auto it = c.begin();
                        base = it->first;
                        coef *= it->second;
                    }
                    // relabel to the LHS labelling; T_m's children follow the boundary walk
                    std::vector<int> perm(external_count(base), 0);
                    std::vector<int> lhs_m, lhs_n;
                    TNode& root = base.root;
                    if (!primed) perm[root.label - 1] = 1;
                    int sp = 0;
                    for (int ci = 0; ci < static_cast<int>(root.children.size()); ++ci)
                        if (sp < n && pos[sp] == ci) perm[root.children[ci].label - 1] = first_tn_child + sp++;
                    int next_m = n2 + 1;
                    sp = 0;
                    for (int ci = 0; ci < static_cast<int>(root.children.size()); ++ci) {
                        TNode& c = root.children[ci];
                        if (sp < n && pos[sp] == ci) {
                            for (auto& g : c.children) perm[g.label - 1] = next_m++;
                            ++sp;
                        } else {
                            perm[c.label - 1] = next_m++;
                        }
                    }
                    PlanarTree rl = relabel(base, perm);
                    TNode& rr = rl.root;
                    for (int x = 1; x <= m; ++x) lhs_m.push_back(n2 + x);
                    for (int x = 0; x < n; ++x) lhs_n.push_back(first_tn_child + x);
                    std::vector<int> lhs = lhs_m;
                    lhs.insert(lhs.end(), lhs_n.begin(), lhs_n.end());
                    std::vector<int> rhs = child_labels(rr);
                    sp = 0;
                    for (int ci = 0; ci < static_cast<int>(rr.children.size()); ++ci)
                        if (sp < n && pos[sp] == ci) {
                            auto cl = child_labels(rr.children[ci]);
                            rhs.insert(rhs.end(), cl.begin(), cl.end());
                            ++sp;
                        }
                    add_tree(res, rl, -coef * perm_parity(lhs, rhs));
                    return;
                }
                for (int x = start; x < N; ++x) {
                    pos.push_back(x);
                    pick(x + 1, cnt + 1);
                    pos.pop_back();
                }
            };
            pick(0, 0);
            return;
        }
        for (int j = 0; used + j <= m; ++j) {
            js[k] = j;
            rec(k + 1, used + j);
        }
    };
    rec(0, 0);
    return res;
}

bool is_a_infinity_tree(const PlanarTree& t) {
    bool ok = true;
    Path p;
    PlanarTree c = t;
    each_node(c.root, p, [&](TNode& v, const Path&) {
        if (v.kind == NodeKind::External && !v.children.empty()) ok = false;
        if (v.kind != NodeKind::External && v.kind != NodeKind::Internal) ok = false;
    });
    return ok;
}

namespace {

struct TreeEnum {
    bool decorations;
    bool reds;
    std::map<int, std::vector<TNode>> trees;
    std::map<std::pair<int, int>, std::vector<std::vector<TNode>>> forests;

    const std::vector<std::vector<TNode>>& forest(int s, int min_len) {
        auto key = std::make_pair(s, min_len);
        auto it = forests.find(key);
        if (it != forests.end()) return it->second;
        std::vector<std::vector<TNode>> out;
        if (s == 0 && min_len <= 0) out.push_back({});
        for (int first = 1; first <= s; ++first) {
            const auto& heads = tree(first);
            const auto& tails = forest(s - first, std::max(0, min_len - 1));
            for (const auto& h : heads)
                for (const auto& tl : tails) {
                    std::vector<TNode> f{h};
                    f.insert(f.end(), tl.begin(), tl.end());
                    out.push_back(std::move(f));
                }
        }
        return forests[key] = std::move(out);
    }

    const std::vector<TNode>& tree(int s) {
        auto it = trees.find(s);
        if (it != trees.end()) return it->second;
        std::vector<TNode> out;
        if (s >= 1) {
            for (const auto& f : forest(s - 1, 0)) {
                TNode v;
                v.kind = NodeKind::External;
                v.children = f;
                out.push_back(v);
            }
            for (const auto& f : forest(s - 1, 2)) {
                TNode v;
                v.kind = NodeKind::Internal;
                v.children = f;
                out.push_back(v);
            }
            if (decorations)
                for (int ds = 2; ds <= s - 1; ++ds) {
                    std::vector<TNode> decos = tree(ds);
                    for (const auto& d : decos) {
                        if (d.children.empty()) continue;
                        for (const auto& f : forest(s - 1 - ds, 0))
                            for (NodeKind k : {NodeKind::Blue, NodeKind::Red}) {
                                if (k == NodeKind::Red && !reds) continue;
                                TNode v;
                                v.kind = k;
                                v.deco = {d};
                                v.children = f;
                                out.push_back(v);
                            }
                    }
                }
        }
        return trees[s] = std::move(out);
    }
};

PlanarTree label_dfs(TNode root, TreeKind kind) {
    PlanarTree t;
    t.kind = kind;
    t.root = std::move(root);
    int k = 1;
    Path p;
    each_node(t.root, p, [&](TNode& v, const Path&) {
        if (v.kind == NodeKind::External) v.label = k++;
    });
    assign_canonical_tags(t);
    return t;
}

} // namespace

std::vector<PlanarTree> enumerate_br_trees(int max_vertices) {
    TreeEnum e{false, false, {}, {}};
    std::vector<PlanarTree> out;
    for (int s = 1; s <= max_vertices; ++s)
        for (const auto& v : e.tree(s)) out.push_back(label_dfs(v, TreeKind::BR));
    return out;
}

std::vector<PlanarTree> enumerate_binf_trees(int max_vertices, TreeKind kind) {
    TreeEnum e{true, kind == TreeKind::BINF, {}, {}};
    std::vector<PlanarTree> out;
    for (int s = 2; s <= max_vertices; ++s)
        for (const auto& v : e.tree(s)) {
            if (v.children.empty()) continue;
            out.push_back(label_dfs(v, kind));
        }
    return out;
}

std::vector<PlanarTree> enumerate_ks1_trees(int max_plain_vertices, bool with_units) {
    // forests under out with exactly one in leaf; units and in never have children
    std::vector<PlanarTree> out;
    // tr(s, need_in): trees with s plain vertices (externals, internals, units), containing in iff need_in
    std::map<std::pair<int, bool>, std::vector<TNode>> memo_t;
    std::map<std::tuple<int, bool, int>, std::vector<std::vector<TNode>>> memo_f;
    std::function<const std::vector<TNode>&(int, bool)> tr;
    std::function<const std::vector<std::vector<TNode>>&(int, bool, int)> fo;
    tr = [&](int s, bool need_in) -> const std::vector<TNode>& {
        auto key = std::make_pair(s, need_in);
        if (auto it = memo_t.find(key); it != memo_t.end()) return it->second;
        std::vector<TNode> r;
        if (need_in && s == 0) {
            TNode v;
            v.kind = NodeKind::In;
            r.push_back(v);
        }
        if (!need_in && s == 1 && with_units) {
            TNode v;
            v.kind = NodeKind::Unit;
            r.push_back(v);
        }
        if (s >= 1) {
            for (const auto& f : fo(s - 1, need_in, 0)) {
                TNode v;
                v.kind = NodeKind::External;
                v.children = f;
                r.push_back(v);
            }
            for (const auto& f : fo(s - 1, need_in, 2)) {
                TNode v;
                v.kind = NodeKind::Internal;
                v.children = f;
                r.push_back(v);
            }
        }
        return memo_t[key] = std::move(r);
    };
    fo = [&](int s, bool need_in, int min_len) -> const std::vector<std::vector<TNode>>& {
        auto key = std::make_tuple(s, need_in, min_len);
        if (auto it = memo_f.find(key); it != memo_f.end()) return it->second;
        std::vector<std::vector<TNode>> r;
        if (s == 0 && !need_in && min_len <= 0) r.push_back({});
        for (int first = 0; first <= s; ++first)
            for (bool head_in : {false, true}) {
                if (head_in && !need_in) continue;
                const auto& heads = tr(first, head_in);
                if (heads.empty()) continue;
                const auto& tails = fo(s - first, need_in && !head_in, std::max(0, min_len - 1));
                for (const auto& h : heads)
                    for (const auto& tl : tails) {
                        std::vector<TNode> f{h};
                        f.insert(f.end(), tl.begin(), tl.end());
                        r.push_back(std::move(f));
                    }
            }
        return memo_f[key] = std::move(r);
    };
    for (int s = 0; s <= max_plain_vertices; ++s)
        for (const auto& f : fo(s, true, 1)) {
            TNode root;
            root.kind = NodeKind::Out;
            root.children = f;
            PlanarTree t = label_dfs(root, TreeKind::KS1);
            bool has_unit = false, has_int = false;
            Path p;
            each_node(t.root, p, [&](TNode& v, const Path&) {
                has_unit |= v.kind == NodeKind::Unit;
                has_int |= v.kind == NodeKind::Internal;
            });
            t.kind = (has_unit || has_int) ? TreeKind::KS1 : TreeKind::PT1;
            assign_canonical_tags(t);
            out.push_back(t);
        }
    return out;
}

} // namespace kgraph
