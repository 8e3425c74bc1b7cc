#ifndef KGRAPH_SPARSE_MATRIX_HPP
#define KGRAPH_SPARSE_MATRIX_HPP

#include <kgraph/rational.hpp>

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

namespace kgraph {

using SparseVector = std::map<std::size_t, Rational>;

class SparseMatrix {
public:
    SparseMatrix() = default;
    SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    // accumulates; an entry that sums to zero is erased
    void add(std::size_t r, std::size_t c, const Rational& v);
    Rational at(std::size_t r, std::size_t c) const;

    const std::map<std::pair<std::size_t, std::size_t>, Rational>& entries() const { return entries_; }
    std::size_t nonzeros() const { return entries_.size(); }

    SparseMatrix transpose() const;
    std::vector<SparseVector> row_vectors() const;
    SparseVector apply(const SparseVector& v) const;
    SparseMatrix multiply(const SparseMatrix& rhs) const;
    bool is_zero() const { return entries_.empty(); }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::map<std::pair<std::size_t, std::size_t>, Rational> entries_;
};

/*
 * Rank over Q.
 *
 * Rows are scaled to primitive integer vectors and eliminated fraction free:
 * r <- p*r - r[c]*pivot, then divided by its content. When two rows compete
 * for the same leading column the one with the smaller leading entry becomes
 * the pivot. No division by the previous pivot (Bareiss proper) is needed
 * because the content division already keeps entries small.
 */
std::size_t rank(const SparseMatrix& m);

// Basis of {v : m v = 0}, one vector per free column of the reduced row echelon form.
std::vector<SparseVector> kernel_basis(const SparseMatrix& m);

} // namespace kgraph

#endif // KGRAPH_SPARSE_MATRIX_HPP
