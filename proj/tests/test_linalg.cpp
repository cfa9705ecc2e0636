#include <gtest/gtest.h>

#include "koszulkit/linalg.hpp"

using namespace kk;

namespace {

Matrix random_matrix(Sampler& s, int r, int c) {
  Matrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = s.next();
  return m;
}

}  // namespace

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(parse_rational("-3/4"), Q(-3, 4));
  EXPECT_EQ(parse_rational("6/8"), Q(3, 4));
  EXPECT_EQ(parse_rational("12"), Q(12));
  EXPECT_EQ(to_string(Q(-3, 4)), "-3/4");
  EXPECT_EQ(to_string(Q(5)), "5");
  EXPECT_THROW(parse_rational("x"), InputError);
  EXPECT_THROW(parse_rational("1/0"), InputError);
}

TEST(Matrix, RrefOfKnownMatrix) {
  auto m = Matrix::from_rows({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}});
  auto r = rref(m);
  EXPECT_EQ(r.pivots, (std::vector<int>{0, 1}));
  EXPECT_EQ(rank(m), 2);
  EXPECT_EQ(r.m, Matrix::from_rows({{1, 0, 1}, {0, 1, 1}, {0, 0, 0}}));
}

TEST(Matrix, KernelOfKnownMatrix) {
  auto m = Matrix::from_rows({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}});
  auto k = kernel_basis(m);
  ASSERT_EQ(k.size(), 1u);
  EXPECT_TRUE(is_zero(m * k[0]));
  EXPECT_EQ(k[0], (Vec{-1, -1, 1}));
}

TEST(Matrix, ExactInverse) {
  auto m = Matrix::from_rows({{2, 1}, {7, 4}});
  auto inv = inverse(m);
  ASSERT_TRUE(inv);
  EXPECT_EQ(*inv, Matrix::from_rows({{4, -1}, {-7, 2}}));
  auto h = Matrix::from_rows({{1, Q(1, 2)}, {Q(1, 2), Q(1, 3)}});
  auto hi = inverse(h);
  ASSERT_TRUE(hi);
  EXPECT_EQ(*hi, Matrix::from_rows({{4, -6}, {-6, 12}}));
  EXPECT_FALSE(inverse(Matrix::from_rows({{1, 2}, {2, 4}})));
}

TEST(Matrix, SolveConsistentAndInconsistent) {
  auto a = Matrix::from_rows({{1, 1}, {1, -1}, {2, 0}});
  auto x = solve(a, Vec{3, 1, 4});
  ASSERT_TRUE(x);
  EXPECT_EQ(*x, (Vec{2, 1}));
  EXPECT_FALSE(solve(a, Vec{3, 1, 5}));
}

TEST(Matrix, StackingAndBlocks) {
  auto a = Matrix::from_rows({{1, 2}});
  auto b = Matrix::from_rows({{3}});
  EXPECT_EQ(hstack(a, b), Matrix::from_rows({{1, 2, 3}}));
  EXPECT_EQ(vstack(a, a), Matrix::from_rows({{1, 2}, {1, 2}}));
  EXPECT_EQ(block_diagonal({a, b}), Matrix::from_rows({{1, 2, 0}, {0, 0, 3}}));
  EXPECT_EQ(a.transpose(), Matrix::from_rows({{1}, {2}}));
}

TEST(Matrix, RandomInverseProperty) {
  Sampler s(7);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    int n = 1 + trial % 5;
    auto m = random_matrix(s, n, n);
    auto inv = inverse(m);
    if (!inv) {
      EXPECT_LT(rank(m), n);
      continue;
    }
    EXPECT_EQ(m * *inv, Matrix::identity(n));
    EXPECT_EQ(*inv * m, Matrix::identity(n));
    ++checked;
  }
  EXPECT_GT(checked, 20);
}

TEST(Matrix, RandomRankNullity) {
  Sampler s(11);
  for (int trial = 0; trial < 30; ++trial) {
    int r = 1 + trial % 4, c = 1 + (trial / 4) % 6;
    auto m = random_matrix(s, r, c);
    auto k = kernel_basis(m);
    EXPECT_EQ(rank(m) + static_cast<int>(k.size()), c);
    for (const auto& v : k) EXPECT_TRUE(is_zero(m * v));
    auto cols = independent_columns(m);
    EXPECT_EQ(static_cast<int>(cols.size()), rank(m));
  }
}

TEST(Matrix, LeftInverseAndComplement) {
  auto m = Matrix::from_rows({{1, 0}, {2, 1}, {0, 3}});
  EXPECT_EQ(left_inverse(m) * m, Matrix::identity(2));
  auto comp = complement_indices(m);
  ASSERT_EQ(comp.size(), 1u);
  Vec e(3);
  e[comp[0]] = 1;
  auto full = hstack(m, Matrix::from_columns({e}, 3));
  EXPECT_EQ(rank(full), 3);
}

TEST(RowReducer, IncrementalRankAndKernel) {
  RowReducer rr(3);
  EXPECT_TRUE(rr.add_dense({1, 1, 0}));
  EXPECT_TRUE(rr.add_dense({0, 1, 1}));
  EXPECT_FALSE(rr.add_dense({1, 2, 1}));
  EXPECT_EQ(rr.rank(), 2);
  auto k = rr.kernel();
  ASSERT_EQ(k.size(), 1u);
  auto m = Matrix::from_rows({{1, 1, 0}, {0, 1, 1}});
  EXPECT_TRUE(is_zero(m * k[0]));
  EXPECT_TRUE(rr.reduce(to_sparse({1, 2, 1})).empty());
}

TEST(QuotientSpace, CoordinatesModuloSubspace) {
  // V = span(e1, e2, e3), W = span(e1 + e2).
  QuotientSpace q(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, {{1, 1, 0}});
  EXPECT_EQ(q.dim(), 2);
  auto a = q.coordinates({1, 0, 0});
  auto b = q.coordinates({0, -1, 0});
  EXPECT_EQ(a, b);
  EXPECT_TRUE(is_zero(q.coordinates({2, 2, 0})));
  EXPECT_FALSE(is_zero(q.coordinates({0, 0, 1})));
}

TEST(QuotientSpace, RejectsVectorsOutsideSpan) {
  QuotientSpace q(3, {{1, 0, 0}}, {});
  EXPECT_ANY_THROW(q.coordinates({0, 1, 0}));
}

TEST(Sampler, DeterministicAndBounded) {
  Sampler a(3), b(3);
  for (int i = 0; i < 100; ++i) {
    int x = a.next();
    EXPECT_EQ(x, b.next());
    EXPECT_GE(x, -5);
    EXPECT_LE(x, 5);
  }
}
