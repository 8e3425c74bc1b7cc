#ifndef KGRAPH_GRAPH_OPERADS_HPP
#define KGRAPH_GRAPH_OPERADS_HPP

#include <kgraph/signed_graph.hpp>

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace kgraph {

/*
 * Insert g2 into external vertex j (1-based) of g1, reconnecting every edge end
 * at j to every vertex of g2. Allowed: GRA o GRA, and DGRA/GRA1/SGRA/SGRA1 o DGRA
 * (type I slots). New externals: g1's 1..j-1, g2's, g1's j+1..; internals g1's
 * then g2's; edges g1's then g2's.
 */
GraphLinComb gra_compose(const SignedGraph& g1, int j, const SignedGraph& g2);
std::vector<SignedGraph> gra_compose_raw(const SignedGraph& g1, int j, const SignedGraph& g2);
GraphLinComb gra_compose(const GraphLinComb& a, int j, const GraphLinComb& b);

// Moperadic composition in Gra1: delete in of g1 and out of g2, reconnect freely.
GraphLinComb gra1_compose(const SignedGraph& g1, const SignedGraph& g2);
std::vector<SignedGraph> gra1_compose_raw(const SignedGraph& g1, const SignedGraph& g2);
GraphLinComb gra1_compose(const GraphLinComb& a, const GraphLinComb& b);

/*
 * Insert the SGRA graph g2 into type II vertex k (0-based storage index) of g1
 * (SGRA or SGRA1). Edges into that vertex reconnect to vertices of g2 only.
 * Type II order: g1's before k, g2's, g1's after k. Externals g1's then g2's.
 */
GraphLinComb sgra_insert_typeII(const SignedGraph& g1, int k, const SignedGraph& g2);

GraphLinComb directed_expansion(const SignedGraph& g);
GraphLinComb directed_expansion(const GraphLinComb& x);

// sigma[i-1] = new label of external vertex i
std::optional<CanonicalGraph> sym_action(const SignedGraph& g, const std::vector<int>& sigma);
GraphLinComb sym_action(const GraphLinComb& x, const std::vector<int>& sigma);

// rotate type II vertices b_t -> b_{t+k mod N}; k taken modulo N
std::optional<CanonicalGraph> sgra1_cyclic(const SignedGraph& g, int k);

SignedGraph unit_graph(GraphKind kind);  // single vertex (operads) or bare out, in (Gra1)
SignedGraph edgeless(GraphKind kind, int n);

using ComposeFn = std::function<GraphLinComb(const SignedGraph&, int, const SignedGraph&)>;

struct AxiomReport {
    bool pass = true;
    int checks = 0;
    std::string counterexample;
};

/*
 * Exhaustive unit / associativity / equivariance check on a sample.
 * kind GRA or DGRA: operad axioms for `compose` (defaults to gra_compose).
 * kind GRA1: moperad axioms for gra1_compose; DGRA members of the sample are
 * used for the right dGra action.
 */
AxiomReport operad_axiom_report(const std::vector<SignedGraph>& sample, GraphKind kind, ComposeFn compose = {});

} // namespace kgraph

#endif // KGRAPH_GRAPH_OPERADS_HPP
