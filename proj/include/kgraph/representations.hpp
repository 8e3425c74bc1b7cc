#ifndef KGRAPH_REPRESENTATIONS_HPP
#define KGRAPH_REPRESENTATIONS_HPP

#include <kgraph/rational.hpp>
#include <kgraph/signed_graph.hpp>
#include <kgraph/twisting.hpp>

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace kgraph {

constexpr int kMaxDimension = 3;

// x^exps times the ordered product of the odd variables in mask (increasing index)
struct Monomial {
    std::vector<int> exps;
    unsigned odd = 0;
    auto operator<=>(const Monomial&) const = default;
};

int odd_degree(const Monomial& m);

/*
 * Polynomial in x_1..x_d and odd variables. The odd variables are xi_k for
 * polyvector fields (T_poly = C(T*[1]R^d)) and dx_k for forms.
 */
struct SuperPoly {
    int dim = 0;
    std::map<Monomial, Rational> terms;

    SuperPoly() = default;
    explicit SuperPoly(int d);

    void add(const Monomial& m, const Rational& c);
    bool empty() const { return terms.empty(); }
    // -1 when the odd degree is not homogeneous or the polynomial is zero
    int odd_degree() const;
    bool is_function() const;
    bool operator==(const SuperPoly&) const = default;

    SuperPoly& operator+=(const SuperPoly& o);
    SuperPoly& operator-=(const SuperPoly& o);
    SuperPoly& operator*=(const Rational& c);
    friend SuperPoly operator+(SuperPoly a, const SuperPoly& b) { return a += b; }
    friend SuperPoly operator-(SuperPoly a, const SuperPoly& b) { return a -= b; }
    friend SuperPoly operator*(const Rational& c, SuperPoly a) { return a *= c; }
    friend SuperPoly operator*(const SuperPoly& a, const SuperPoly& b);
};

using PolyVector = SuperPoly;  // odd variables xi_k
using PolyForm = SuperPoly;    // odd variables dx_k

SuperPoly constant(int d, const Rational& c);
SuperPoly x_var(int d, int k);    // k 1-based
SuperPoly odd_var(int d, int k);  // xi_k or dx_k

SuperPoly d_x(const SuperPoly& a, int k);    // k 0-based
SuperPoly d_odd(const SuperPoly& a, int k);  // left derivative, k 0-based

std::string to_string(const PolyVector& a);
std::string form_to_string(const PolyForm& w);
// "x1^2*xi1 + 3/2*x2"; forms "x1*dx1^dx2"
PolyVector parse_polyvector(std::string_view text, int d);
PolyForm parse_form(std::string_view text, int d);

PolyVector random_polyvector(int d, int max_x_degree, int odd_deg, int terms, std::mt19937_64& rng);
PolyForm random_form(int d, int max_x_degree, int form_deg, int terms, std::mt19937_64& rng);

// Example action of dGra on polyvector fields; edges act in their stored order
PolyVector act_dgra(const SignedGraph& g, const std::vector<PolyVector>& gamma);
PolyVector act_dgra(const GraphLinComb& x, const std::vector<PolyVector>& gamma);

/*
 * Odd Poisson bracket normalized to agree with the action of the directed
 * one-edge graphs: sum_k (d a/d xi_k)(d b/d x_k) + (-1)^|a| (d a/d x_k)(d b/d xi_k).
 * It differs from the symmetric Schouten convention by (-1)^(|a|-1).
 */
PolyVector schouten_bracket(const PolyVector& a, const PolyVector& b);
// (-1)^(|a|-1) schouten_bracket(a, b): the odd Poisson bracket with the standard graded Jacobi identity
PolyVector sn_bracket(const PolyVector& a, const PolyVector& b);

// polydifferential operator: sum of coef * prod_j d^{derivs[j]} a_j
struct OpTerm {
    Monomial coef;
    std::vector<std::vector<int>> derivs;
    auto operator<=>(const OpTerm&) const = default;
};

struct PolyOperator {
    int dim = 0;
    int arity = 0;
    std::map<OpTerm, Rational> terms;

    void add(const OpTerm& t, const Rational& c);
    bool empty() const { return terms.empty(); }
    bool normalized() const;  // every term differentiates every slot
    int degree() const { return arity; }
    bool operator==(const PolyOperator&) const = default;
    PolyOperator& operator+=(const PolyOperator& o);
    PolyOperator& operator-=(const PolyOperator& o);
    PolyOperator& operator*=(const Rational& c);

    SuperPoly apply(const std::vector<SuperPoly>& fns) const;
};

std::string to_string(const PolyOperator& op);

PolyOperator multiplication_operator(int d, int arity);
PolyOperator coefficient_operator(const SuperPoly& f);  // arity 0

// D_Gamma(gamma): type II slots become operator slots; dim is needed only without inputs
PolyOperator act_sgra(const SignedGraph& g, const std::vector<PolyVector>& gamma, int dim = 0);

/*
 * a0{a1,...,ak} = sum over slots j1 < ... < jk of a0 of
 * (-1)^(sum_i (|a_i| + 1)(j_i - 1)) a0 o_{j1..jk} (a1, ..., ak), |a| = arity.
 */
PolyOperator braces(const PolyOperator& a0, const std::vector<PolyOperator>& args);
// [a, b] = a{b} - (-1)^((|a|-1)(|b|-1)) b{a}
PolyOperator hochschild_bracket(const PolyOperator& a, const PolyOperator& b);

// iota_gamma: substitute xi_k -> d/d(dx_k), the rightmost factor acting first
PolyForm contraction(const PolyVector& gamma, const PolyForm& w);
PolyForm de_rham(const PolyForm& w);
// [d, iota_gamma] for homogeneous gamma
PolyForm lie_derivative(const PolyVector& gamma, const PolyForm& w);

// Gra1 action determined by iota_g Gamma(gamma; f w0) = (-1)^(|Gamma||g|) iota_{Gamma'(gamma, g, f)} w0
PolyForm act_gra1(const SignedGraph& g, const std::vector<PolyVector>& gamma, const PolyForm& w);
PolyForm act_gra1(const GraphLinComb& x, const std::vector<PolyVector>& gamma, const PolyForm& w);

// coefficient of eps^n at index n
using EpsSeries = std::vector<SuperPoly>;

// sum_n eps^n/(2^n n!) P^{i1 j1}..P^{in jn} d_I f d_J g with pi = sum_{i<j} P^{ij} xi_i xi_j
EpsSeries moyal_star(const SuperPoly& f, const SuperPoly& g, const PolyVector& pi, int order);
EpsSeries moyal_star(const EpsSeries& f, const EpsSeries& g, const PolyVector& pi, int order);

// star product of a weight system: internal vertices carry pi, order n weighted by eps^n
EpsSeries weight_star(const WeightSystem& w, const SuperPoly& f, const SuperPoly& g, const PolyVector& pi);
EpsSeries weight_star(const WeightSystem& w, const EpsSeries& f, const EpsSeries& g, const PolyVector& pi);

// (f*g)*h - f*(g*h) through eps^order
EpsSeries star_associativity_residual(const WeightSystem& w, const SuperPoly& f, const SuperPoly& g,
                                      const SuperPoly& h, const PolyVector& pi);

} // namespace kgraph

#endif // KGRAPH_REPRESENTATIONS_HPP
