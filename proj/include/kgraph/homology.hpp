#ifndef KGRAPH_HOMOLOGY_HPP
#define KGRAPH_HOMOLOGY_HPP

#include <kgraph/signed_graph.hpp>
#include <kgraph/sparse_matrix.hpp>

#include <map>
#include <string>
#include <vector>

namespace kgraph {

enum class ComplexFamily { GRAPHS, GRAPHS1, PDU_GRAPHS, PDU_GRAPHS1 };

std::string family_name(ComplexFamily f);
ComplexFamily parse_family(const std::string& name);

constexpr int kMaxSliceArity = 4;
constexpr int kMaxSliceLoopOrder = 2;
constexpr int kMaxSliceInternal = 6;

/*
 * Finite slice of Graphs(n) (fixed loop order) or Graphs1(m) (fixed excess
 * E - k, which every term of its differential preserves). Graphs slices are
 * finite and complete. Graphs1 slices contain chains of bivalent vertices of
 * any length, so they are cut at max_internal and Betti numbers are exact
 * only for degrees in [complete_min, complete_max].
 */
struct ComplexSlice {
    ComplexFamily family = ComplexFamily::GRAPHS;
    int arity = 0;
    int loop_order = -1;  // Graphs slices
    int excess = -1;      // Graphs1 slices
    int max_internal = 0;
    std::map<int, std::vector<SignedGraph>> basis;  // degree -> canonical graphs
    // source degree -> matrix with rows indexed by basis[target], columns by basis[source]
    std::map<int, SparseMatrix> boundary;
    int complete_min = 0;
    int complete_max = 0;

    bool predual() const { return family == ComplexFamily::PDU_GRAPHS || family == ComplexFamily::PDU_GRAPHS1; }
    int boundary_step() const { return predual() ? -1 : 1; }
    std::size_t size() const;
};

// Graphs families take the loop order, Graphs1 families the excess. max_internal < 0 picks the default.
ComplexSlice enumerate_slice(ComplexFamily family, int n, int grading, int max_internal = -1);

// member graphs with exactly k internal vertices and e edges
std::vector<SignedGraph> enumerate_members(ComplexFamily family, int n, int k, int e);

// edge contraction; for Graphs1 also merging of sink (source) internal vertices into in (out)
GraphLinComb pdu_differential(const SignedGraph& g);

bool boundary_squares_to_zero(const ComplexSlice& s);
// exact Betti numbers for degrees in the complete range; zero entries are omitted
std::map<int, int> betti(const ComplexSlice& s);
std::map<int, int> betti_sum(ComplexFamily family, int n, int max_grading, int max_internal = -1);

std::vector<SignedGraph> pdu_basis(int n);
std::vector<SignedGraph> string_basis(int n);

// products of Lie words [X_a1,[X_a2,...,[X_a(r-1),X_ar]]] with a_r the smallest in its block, mapped into Graphs
std::vector<GraphLinComb> e2_monomial_images(int n);
SparseMatrix string_pairing(int n);  // rows: string basis, columns: e2 monomials

std::string betti_json(ComplexFamily family, int n, const std::map<int, int>& b);

} // namespace kgraph

#endif // KGRAPH_HOMOLOGY_HPP
