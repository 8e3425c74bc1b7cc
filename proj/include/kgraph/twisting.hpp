#ifndef KGRAPH_TWISTING_HPP
#define KGRAPH_TWISTING_HPP

#include <kgraph/signed_graph.hpp>

#include <map>
#include <string>
#include <vector>

namespace kgraph {

enum class GraphFamily { GRAPHS, GRAPHS1, SGRAPHS, SGRAPHS1 };

bool graphs_membership(const SignedGraph& g, GraphFamily f);

struct GraphShape {
    GraphKind kind = GraphKind::GRA;
    int externals = 0;
    int typeII = 0;  // for SGRA1 includes b0
    int internals = 0;
    int max_edges = 0;
};

// canonical nonzero graphs with exactly the given vertices and at most max_edges edges
std::vector<SignedGraph> enumerate_graphs(const GraphShape& shape);

/*
 * Splitting of vertex v into v and a new internal vertex w joined by a new
 * edge (placed first). Directed kinds sum over both orientations where the
 * kind allows them. Internal vertices carry the factor 1/2.
 */
GraphLinComb split_vertex(const SignedGraph& g, int v);
std::size_t split_raw_count(const SignedGraph& g);  // terms of the vertex splittings before cancellation

// twisted differential on fGraphs: splittings of all vertices minus the new-leaf term
GraphLinComb graphs_differential(const SignedGraph& g);
GraphLinComb graphs_differential(const GraphLinComb& x);

struct Graphs1Signs {
    int in_side = -1;   // in splits off w, w receives an edge from any other vertex
    int out_side = -1;  // out splits off w, w sends an edge to any other vertex
};
Graphs1Signs default_graphs1_signs();

GraphLinComb graphs1_differential(const SignedGraph& g, Graphs1Signs s = default_graphs1_signs());
GraphLinComb graphs1_differential(const GraphLinComb& x, Graphs1Signs s = default_graphs1_signs());

/*
 * Weights on sgra graphs without external type I vertices, keyed by canonical
 * graph. Order of a graph = number of internal vertices.
 */
struct WeightSystem {
    std::map<SignedGraph, Rational> weights;
    int truncation_order = 0;

    void set(const SignedGraph& g, const Rational& c);  // canonicalizes, sign folded into c
    GraphLinComb part(int order) const;
    GraphLinComb element() const;  // all orders up to truncation

    static WeightSystem wedge();
    static WeightSystem moyal(int order);  // n internal vertices, each with edges to b1 and b2, 1/(2^n n!)
};

std::string to_json(const WeightSystem& w);
WeightSystem weight_system_from_json(const std::string& text);

// f o g = sum_i (-1)^(i (n_g - 1)) f o_i g, n_g = number of type II vertices of g
GraphLinComb pre_lie(const GraphLinComb& f, const GraphLinComb& g);
// [f, g] = f o g - (-1)^(|f|'|g|' + e_f e_g) g o f, |.|' = type II count - 1, e = edge count.
// The Hochschild and edge gradings are kept apart; the differential carries (-1)^e.
GraphLinComb gerstenhaber_bracket(const GraphLinComb& f, const GraphLinComb& g);
int shifted_degree(const SignedGraph& g);

GraphLinComb hochschild_differential(const SignedGraph& g);  // [wedge, g]

// splittings + [m, g] with m the weight system element
GraphLinComb sgraphs_differential(const SignedGraph& g, const WeightSystem& w);
GraphLinComb sgraphs_differential(const GraphLinComb& x, const WeightSystem& w);

// per order k: internal splitting of m_{k-1} + 1/2 sum_{i+j=k} [m_i, m_j]
std::vector<GraphLinComb> mc_residual(const WeightSystem& w);
// drop graphs with an edge into an internal vertex (they vanish for a constant bivector)
GraphLinComb constant_coefficient_part(const GraphLinComb& x);

} // namespace kgraph

#endif // KGRAPH_TWISTING_HPP
