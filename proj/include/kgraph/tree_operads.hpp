#ifndef KGRAPH_TREE_OPERADS_HPP
#define KGRAPH_TREE_OPERADS_HPP

#include <kgraph/planar_tree.hpp>

#include <vector>

namespace kgraph {

/*
 * Insert t2 into external vertex j of t1 (PT / Tw PT / Br). The parent edge of
 * j attaches to the root of t2; the children of j are distributed over the
 * corners of t2 in boundary-walk order, keeping their order. Edges of t2 come
 * after those of t1.
 */
TreeLinComb pt_compose(const PlanarTree& t1, int j, const PlanarTree& t2);
TreeLinComb pt_compose(const TreeLinComb& a, int j, const TreeLinComb& b);
std::size_t pt_compose_raw_count(const PlanarTree& t1, int j, const PlanarTree& t2);

// Twisted PT differential: attach a new internal vertex minus vertex splittings, new edge first.
TreeLinComb br_differential(const PlanarTree& t);
TreeLinComb br_differential(const TreeLinComb& x);

struct BrinfSigns {
    int br = 1;  // relative sign of recolouring blue -> red
    int bi = 1;  // relative sign of inserting a decoration
    bool marker_sign = true;  // (-1)^(position of the marker); off only for negative controls
};
BrinfSigns default_brinf_signs();

// d_s + d_br + d_bi (d_br omitted for bbr trees)
TreeLinComb brinf_differential(const PlanarTree& t, BrinfSigns s = default_brinf_signs());
TreeLinComb brinf_differential(const TreeLinComb& x, BrinfSigns s = default_brinf_signs());
TreeLinComb split_part(const PlanarTree& t);     // d_s alone
TreeLinComb recolour_part(const PlanarTree& t, bool marker_sign = true);  // d_br alone
TreeLinComb insert_part(const PlanarTree& t, bool marker_sign = true);    // d_bi alone

// PT1 / KS1 moperadic composition; KS1 results are normalized unless told otherwise
TreeLinComb ks1_compose(const PlanarTree& t1, const PlanarTree& t2, bool normalize = true);
TreeLinComb ks1_compose(const TreeLinComb& a, const TreeLinComb& b, bool normalize = true);
PlanarTree ks1_unit(TreeKind kind = TreeKind::KS1);  // K(in)

// Reduce by the four unit relations. last_first picks the rightmost redex first.
TreeLinComb ks1_normalize(const PlanarTree& t, bool last_first = false);
TreeLinComb ks1_normalize(const TreeLinComb& x);

// LHS - RHS of the planar Leibniz rule for T_m o_1 T_n (primed: T_n')
TreeLinComb planar_leibniz_residual(int m, int n, bool primed = false);

bool is_a_infinity_tree(const PlanarTree& t);  // every external vertex is a leaf

// Enumerators used by the property suites; externals labelled in depth-first order.
std::vector<PlanarTree> enumerate_br_trees(int max_vertices);
std::vector<PlanarTree> enumerate_binf_trees(int max_vertices, TreeKind kind = TreeKind::BINF);
std::vector<PlanarTree> enumerate_ks1_trees(int max_plain_vertices, bool with_units = true);

} // namespace kgraph

#endif // KGRAPH_TREE_OPERADS_HPP
