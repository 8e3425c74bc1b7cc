#ifndef KGRAPH_SIGNED_GRAPH_HPP
#define KGRAPH_SIGNED_GRAPH_HPP

#include <kgraph/errors.hpp>
#include <kgraph/lincomb.hpp>
#include <kgraph/rational.hpp>

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace kgraph {

enum class GraphKind { GRA, DGRA, GRA1, SGRA, SGRA1 };

std::string kind_name(GraphKind k);

/*
 * Vertex numbering (0-based, contiguous):
 *   GRA, DGRA : externals 1..m, internals
 *   GRA1      : externals 1..m, out, in, internals
 *   SGRA      : externals 1..m (type I), b1..bn (type II), internals (type I)
 *   SGRA1     : externals 1..m, out, b0 = in, b1..bn, internals
 * For SGRA1 typeII_count counts b0 as well.
 * Edges are odd; their order carries the sign. Undirected edges are stored (min, max).
 */
struct SignedGraph {
    using Edge = std::pair<int, int>;

    GraphKind kind = GraphKind::GRA;
    int external_count = 0;
    int internal_count = 0;
    int typeII_count = 0;
    std::vector<Edge> edges;
    int marked_edge = -1;

    bool directed() const { return kind != GraphKind::GRA; }
    int special_count() const;
    int first_internal() const { return external_count + special_count(); }
    int vertex_count() const { return first_internal() + internal_count; }

    bool is_external(int v) const { return v >= 0 && v < external_count; }
    bool is_internal(int v) const { return v >= first_internal() && v < vertex_count(); }
    int out_vertex() const;  // GRA1, SGRA1
    int in_vertex() const;   // GRA1, SGRA1 (b0)
    int typeII_vertex(int k) const;  // k-th type II vertex, 0-based in storage order
    int typeII_index(int v) const;   // inverse, -1 if v is not type II
    bool is_typeII(int v) const { return typeII_index(v) >= 0; }

    int degree() const { return 2 * internal_count - static_cast<int>(edges.size()); }
    int in_degree(int v) const;
    int out_degree(int v) const;
    int valence(int v) const;

    auto operator<=>(const SignedGraph&) const = default;
};

using GraphLinComb = LinComb<SignedGraph>;

// Throws ValidationError naming the violated invariant.
void validate(const SignedGraph& g);

struct CanonicalGraph {
    SignedGraph graph;
    int sign = 1;
};

/*
 * Canonical representative under internal relabelings and edge reorderings.
 * g = sign * graph. Returns nullopt when g is zero in the coinvariants: a
 * repeated edge, or a symmetry acting by an odd edge permutation.
 */
std::optional<CanonicalGraph> canonical_form(const SignedGraph& g);

// canonicalize g and add c*sign to acc
void add_graph(GraphLinComb& acc, const SignedGraph& g, const Rational& c = 1);
GraphLinComb make_lincomb(const SignedGraph& g, const Rational& c = 1);

// a + c*b; throws ValidationError on kind or arity mismatch
GraphLinComb lincomb_combine(const GraphLinComb& a, const Rational& c, const GraphLinComb& b);

// number of connected components of the underlying undirected graph
int component_count(const SignedGraph& g);
int loop_order(const SignedGraph& g);

std::string vertex_name(const SignedGraph& g, int v);
std::string to_string(const SignedGraph& g);
SignedGraph parse_graph(std::string_view text);

std::string to_string(const GraphLinComb& x);
std::string to_json(const GraphLinComb& x);
GraphLinComb lincomb_from_json(std::string_view text);

} // namespace kgraph

#endif // KGRAPH_SIGNED_GRAPH_HPP
