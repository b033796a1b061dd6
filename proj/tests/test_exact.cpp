#include <gtest/gtest.h>

#include "support.hpp"

using namespace levi;
using levi::testing::Gen;

namespace {

Matrix random_matrix(Gen& g, std::size_t r, std::size_t c) {
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      if (g.coin(0.4)) continue;
      m(i, j) = Scalar(g.uniform(-3, 3), g.uniform(1, 3));
      m(i, j).canonicalize();
    }
  return m;
}

// 2x2 determinant by hand, used as an independent rank witness
Scalar det2(const Matrix& m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }

}  // namespace

TEST(Exact, IdentityIsItsOwnEchelon) {
  Matrix id{{1, 0}, {0, 1}};
  auto e = rref(id);
  EXPECT_EQ(e.rank, 2u);
  EXPECT_EQ(e.echelon.data(), id.data());
}

TEST(Exact, DependentRowsHaveRankOne) { EXPECT_EQ(rank(Matrix{{1, 1}, {2, 2}}), 1u); }

TEST(Exact, NonzeroDeterminantGivesFullRank) {
  Matrix m{{1, 2}, {3, 4}};
  EXPECT_EQ(det2(m), -2);
  EXPECT_EQ(rank(m), 2u);
}

TEST(Exact, KernelOfSingleRow) {
  auto k = kernel(Matrix{{1, 1}});
  ASSERT_EQ(k.size(), 1u);
  EXPECT_EQ(k[0][0] + k[0][1], 0);
  EXPECT_NE(k[0][0], 0);
  EXPECT_TRUE(kernel(Matrix{{1, 0}, {0, 1}}).empty());
  Matrix m{{1, 2, 3}};
  auto k3 = kernel(m);
  ASSERT_EQ(k3.size(), 2u);
  for (const auto& v : k3) EXPECT_TRUE(is_zero(multiply(m, v)));
}

TEST(Exact, SolveConsistentAndInconsistent) {
  Matrix m{{1, 1}};
  auto x = solve(m, {Scalar(1)});
  ASSERT_TRUE(x);
  EXPECT_EQ((*x)[0] + (*x)[1], 1);
  EXPECT_FALSE(solve(Matrix{{1}, {1}}, {Scalar(1), Scalar(2)}));
  EXPECT_THROW(solve(m, {Scalar(1), Scalar(2)}), Error);
}

TEST(Exact, ScalarsStayCanonical) {
  Scalar a(6, 4);
  a.canonicalize();
  EXPECT_EQ(a.get_num(), 3);
  EXPECT_EQ(a.get_den(), 2);
  Scalar b = Scalar(1, 3) + Scalar(2, 3);
  EXPECT_EQ(b, 1);
  EXPECT_EQ(to_string(Scalar(-1, 2)), "-1/2");
}

TEST(ExactProperty, RankNullityAndIdempotence) {
  Gen g(default_seed());
  for (int t = 0; t < 300; ++t) {
    std::size_t r = g.uniform(1, 6), c = g.uniform(1, 7);
    Matrix m = random_matrix(g, r, c);
    auto e = rref(m);
    auto again = rref(e.echelon);
    EXPECT_EQ(again.echelon.data(), e.echelon.data());
    auto k = kernel(m);
    EXPECT_EQ(e.rank + k.size(), c);
    for (const auto& v : k) EXPECT_TRUE(is_zero(multiply(m, v)));
    // kernel vectors are independent
    EXPECT_EQ(rank(Matrix::from_rows(c, k)), k.size());
  }
}

TEST(ExactProperty, SolveBySubstitution) {
  Gen g(default_seed() + 1);
  int solved = 0;
  for (int t = 0; t < 200; ++t) {
    std::size_t n = 5;
    Matrix m = random_matrix(g, n, n);
    Row b(n);
    for (auto& x : b) x = g.uniform(-5, 5);
    auto x = solve(m, b);
    if (rank(m) == n) {
      ASSERT_TRUE(x);
      ++solved;
    }
    if (x) {
      EXPECT_EQ(multiply(m, *x), b);
    }
  }
  EXPECT_GT(solved, 0);
}
