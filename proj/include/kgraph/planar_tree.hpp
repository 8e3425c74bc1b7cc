#ifndef KGRAPH_PLANAR_TREE_HPP
#define KGRAPH_PLANAR_TREE_HPP

#include <kgraph/errors.hpp>
#include <kgraph/lincomb.hpp>
#include <kgraph/rational.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace kgraph {

enum class NodeKind { External, Internal, Blue, Red, Unit, In, Out };
enum class TreeKind { PT, BR, PT1, KS1, BINF, BBR };

std::string tree_kind_name(TreeKind k);
std::optional<TreeKind> tree_kind_from_name(std::string_view s);

/*
 * Value-semantics tree node. Blue/red nodes (and a decorated out, K_B) keep
 * their decoration in deco[0]. The odd objects are the parent edges of all
 * non-root nodes except the marked first child of out, and the markers of
 * blue nodes. Their canonical order is depth first:
 *   at v: blue marker, decoration, then for each child: its edge, its subtree.
 * `tag` / `mtag` hold positions in some raw order while an operation builds a
 * term; finalize() turns that into a sign.
 */
struct TNode {
    NodeKind kind = NodeKind::External;
    int label = 0;
    std::vector<TNode> children;
    std::vector<TNode> deco;
    int tag = -1;
    int mtag = -1;

    bool has_marker() const { return kind == NodeKind::Blue || (kind == NodeKind::Out && !deco.empty()); }
};

struct PlanarTree {
    TreeKind kind = TreeKind::BR;
    TNode root;
    std::string expr;  // canonical text, set by finalize()

    friend bool operator<(const PlanarTree& a, const PlanarTree& b) {
        return std::tie(a.kind, a.expr) < std::tie(b.kind, b.expr);
    }
    friend bool operator==(const PlanarTree& a, const PlanarTree& b) {
        return a.kind == b.kind && a.expr == b.expr;
    }
};

using TreeLinComb = LinComb<PlanarTree>;

// Sign of the raw tag order relative to the canonical order; resets tags and expr.
int finalize(PlanarTree& t);
void add_tree(TreeLinComb& acc, PlanarTree t, const Rational& c = 1);
void assign_canonical_tags(PlanarTree& t);

std::string to_string(const TNode& v);
std::string to_string(const PlanarTree& t);
std::string to_string(const TreeLinComb& x);

// Parse the functional notation. Kind is inferred unless given.
PlanarTree parse_tree(std::string_view text, std::optional<TreeKind> kind = {});
TreeLinComb parse_tree_lincomb(std::string_view text, std::optional<TreeKind> kind = {});

// Throws ValidationError for a violated kind invariant.
void validate_tree(const PlanarTree& t);

int tree_degree(const PlanarTree& t);
int odd_count(const PlanarTree& t);
int external_count(const PlanarTree& t);
int vertex_count(const PlanarTree& t);  // all vertices including decorations and specials
int internal_count(const PlanarTree& t);

// perm[i-1] = new label of external vertex i; no sign (vertices are even)
PlanarTree relabel(const PlanarTree& t, const std::vector<int>& perm);

PlanarTree generator_T(int n);        // E(1;2,...,n+1)
PlanarTree generator_Tprime(int n);   // I(1,...,n)
PlanarTree single_vertex();           // operadic unit "1"

} // namespace kgraph

#endif // KGRAPH_PLANAR_TREE_HPP
