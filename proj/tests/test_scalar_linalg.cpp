#include <kgraph/sparse_matrix.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace kgraph;

namespace {

SparseMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, double density) {
    SparseMatrix m(r, c);
    std::uniform_real_distribution<double> u(0, 1);
    std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            if (u(rng) < density) m.add(i, j, Rational(num(rng), den(rng)));
    return m;
}

} // namespace

TEST(Rational, ParseAndReduce) {
    EXPECT_EQ(parse_rational("4/6"), Rational(2, 3));
    EXPECT_EQ(parse_rational("-1/2"), Rational(-1, 2));
    EXPECT_EQ(to_string(parse_rational("+10")), "10");
    EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
    EXPECT_THROW(parse_rational("x"), std::invalid_argument);
    EXPECT_THROW(parse_rational("1/-2"), std::invalid_argument);
}

TEST(SparseMatrix, NoExplicitZeros) {
    SparseMatrix m(2, 2);
    m.add(0, 0, 1);
    m.add(0, 0, -1);
    m.add(1, 1, 0);
    EXPECT_EQ(m.nonzeros(), 0u);
}

TEST(Rank, Trivial) {
    SparseMatrix id(2, 2);
    id.add(0, 0, 1);
    id.add(1, 1, 1);
    EXPECT_EQ(rank(id), 2u);
    EXPECT_TRUE(kernel_basis(id).empty());
    EXPECT_EQ(rank(SparseMatrix(3, 4)), 0u);
    EXPECT_EQ(kernel_basis(SparseMatrix(3, 4)).size(), 4u);
}

TEST(Kernel, OneByTwo) {
    SparseMatrix m(1, 2);
    m.add(0, 0, 1);
    m.add(0, 1, -1);
    auto k = kernel_basis(m);
    ASSERT_EQ(k.size(), 1u);
    EXPECT_EQ(k[0].at(0), k[0].at(1));
}

TEST(Rank, DependentRows) {
    SparseMatrix m(3, 3);
    int vals[3][3] = {{1, 2, 3}, {4, 5, 6}, {7, 8, 9}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m.add(i, j, vals[i][j]);
    EXPECT_EQ(rank(m), 2u);
}

TEST(Rank, LargeEntriesStayExact) {
    // Hilbert matrix is nonsingular
    SparseMatrix h(8, 8);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) h.add(i, j, Rational(1, i + j + 1));
    EXPECT_EQ(rank(h), 8u);
}

TEST(RankProperty, RankPlusNullityAndTranspose) {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t r = 1 + rng() % 9, c = 1 + rng() % 9;
        auto m = random_matrix(rng, r, c, trial % 2 ? 0.3 : 0.7);
        // force some dependency
        if (r >= 3) {
            auto rows = m.row_vectors();
            for (const auto& [j, v] : rows[0]) m.add(r - 1, j, 2 * v);
            for (const auto& [j, v] : rows[1]) m.add(r - 1, j, -v);
        }
        std::size_t rk = rank(m);
        auto ker = kernel_basis(m);
        EXPECT_EQ(rk + ker.size(), c);
        EXPECT_EQ(rk, rank(m.transpose()));
        for (const auto& v : ker) EXPECT_TRUE(m.apply(v).empty());
        // independence: kernel vectors stacked have full rank
        SparseMatrix kmat(ker.size(), c);
        for (std::size_t i = 0; i < ker.size(); ++i)
            for (const auto& [j, x] : ker[i]) kmat.add(i, j, x);
        EXPECT_EQ(rank(kmat), ker.size());
    }
}
