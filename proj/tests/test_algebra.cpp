#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "koszulkit/truncated.hpp"

using namespace kk;
using namespace kk::test;

TEST(Algebra, CorpusValidates) {
  for (auto name : {"point", "a2", "kronecker", "dual_numbers", "cubic", "square_A", "square_deltaA", "delta_a2",
                    "delta_kronecker", "nakayama2"})
    EXPECT_NO_THROW(validate_algebra(*algebra(name))) << name;
}

TEST(Frobenius, SquareTrivialExtensionIsSymmetric) {
  auto d = algebra("square_deltaA");
  auto fr = frobenius_analysis(*d);
  ASSERT_TRUE(fr.data);
  EXPECT_EQ(fr.data->a, 1);
  EXPECT_TRUE(fr.data->symmetric);
  auto bp = fr.data->nakayama.basis_permutation();
  ASSERT_TRUE(bp);
  for (int x = 0; x < d->dim(); ++x) EXPECT_EQ((*bp)[x], x);
}

TEST(Frobenius, CubicHasTopDegreeTwo) {
  auto fr = frobenius_analysis(*algebra("cubic"));
  ASSERT_TRUE(fr.data);
  EXPECT_EQ(fr.data->a, 2);
  EXPECT_TRUE(fr.data->symmetric);
}

TEST(Frobenius, DualNumbers) {
  auto fr = frobenius_analysis(*algebra("dual_numbers"));
  ASSERT_TRUE(fr.data);
  EXPECT_EQ(fr.data->a, 1);
  EXPECT_TRUE(fr.data->symmetric);
}

TEST(Frobenius, HereditaryAlgebrasAreNotFrobenius) {
  EXPECT_FALSE(frobenius_analysis(*algebra("a2")).data);
  EXPECT_FALSE(frobenius_analysis(*algebra("kronecker")).data);
}

TEST(Frobenius, NakayamaAlgebraSwapsVertices) {
  auto a = algebra("nakayama2");
  auto fr = frobenius_analysis(*a);
  ASSERT_TRUE(fr.data);
  EXPECT_FALSE(fr.data->symmetric);
  auto vp = fr.data->nakayama.vertex_permutation(*a);
  ASSERT_TRUE(vp);
  EXPECT_EQ(*vp, (std::vector<int>{1, 0}));
  EXPECT_TRUE(is_graded_automorphism(*a, fr.data->nakayama));
}

TEST(Frobenius, NakayamaFormIdentity) {
  for (auto name : {"square_deltaA", "cubic", "nakayama2", "delta_a2"}) {
    auto a = algebra(name);
    auto fr = frobenius_analysis(*a);
    ASSERT_TRUE(fr.data) << name;
    const auto& f = *fr.data;
    auto pair = [&](const Vec& x, const Vec& y) {
      auto xy = a->multiply(x, y);
      Q s = 0;
      for (int k = 0; k < a->dim(); ++k) s += f.form[k] * xy[k];
      return s;
    };
    for (int x = 0; x < a->dim(); ++x)
      for (int y = 0; y < a->dim(); ++y) {
        Vec ex(a->dim()), ey(a->dim());
        ex[x] = 1;
        ey[y] = 1;
        EXPECT_EQ(pair(ex, ey), pair(ey, f.nakayama.apply(ex))) << name;
      }
  }
}

TEST(Algebra, TrivialExtensionDoublesDimension) {
  for (auto name : {"point", "a2", "kronecker", "square_A"}) {
    auto a = algebra(name);
    auto d = trivial_extension(*a);
    EXPECT_EQ(d.dim(), 2 * a->dim()) << name;
    EXPECT_EQ(d.highest_degree(), 1) << name;
  }
}

TEST(Algebra, TrivialExtensionOfSquareAMatchesFile) {
  auto built = trivial_extension(*algebra("square_A"));
  auto file = algebra("square_deltaA");
  EXPECT_EQ(graded_dims(built), graded_dims(*file));
  auto iso = find_isomorphism(truncate(built, 1), truncate(*file, 1));
  EXPECT_TRUE(iso.dims_match);
  EXPECT_TRUE(iso.iso);
}

TEST(Algebra, OppositeIsAnInvolution) {
  auto d = algebra("square_deltaA");
  auto op = opposite(opposite(*d));
  ASSERT_EQ(op.dim(), d->dim());
  for (int x = 0; x < d->dim(); ++x)
    for (int y = 0; y < d->dim(); ++y) EXPECT_EQ(op.product(x, y), d->product(x, y));
  // kA2 reversed: the arrow now runs 2 -> 1.
  auto a2 = algebra("a2");
  auto a2op = opposite(*a2);
  int arrow = a2op.generators().at(0);
  EXPECT_EQ(a2op.element(arrow).src, a2->element(a2->generators().at(0)).tgt);
}

TEST(Algebra, OppositeOfCommutativeAlgebraIsEqual) {
  auto c = algebra("cubic");
  auto op = opposite(*c);
  for (int x = 0; x < c->dim(); ++x)
    for (int y = 0; y < c->dim(); ++y) EXPECT_EQ(op.product(x, y), c->product(x, y));
}

TEST(Algebra, Regrade) {
  EXPECT_EQ(graded_dims(regrade(*algebra("dual_numbers"), 3)), (std::map<int, int>{{0, 1}, {3, 1}}));
  EXPECT_EQ(graded_dims(regrade(*algebra("square_deltaA"), 2)), (std::map<int, int>{{0, 8}, {2, 8}}));
  EXPECT_EQ(graded_dims(regrade(*algebra("cubic"), 1)), graded_dims(*algebra("cubic")));
}

TEST(Algebra, DegreeZeroPart) {
  auto p = degree_zero_part(*algebra("square_deltaA"));
  EXPECT_EQ(p.algebra.dim(), 8);
  EXPECT_EQ(p.embedding.size(), 8u);
  EXPECT_EQ(degree_zero_part(*algebra("cubic")).algebra.dim(), 1);
}

TEST(Algebra, MorphismCompositionAndInverse) {
  auto a = algebra("nakayama2");
  auto mu = frobenius_analysis(*a).data->nakayama;
  auto inv = inverse(mu);
  ASSERT_TRUE(inv);
  EXPECT_EQ(compose(mu, *inv).matrix, identity_morphism(*a).matrix);
  EXPECT_TRUE(is_graded_automorphism(*a, identity_morphism(*a)));
}

TEST(Algebra, SocleLiesInTopDegree) {
  for (auto name : {"square_deltaA", "cubic", "dual_numbers", "nakayama2", "delta_a2"}) {
    auto a = algebra(name);
    ASSERT_TRUE(a->is_self_injective()) << name;
    for (int v = 0; v < a->vertices(); ++v) {
      ASSERT_TRUE(a->right_socle(v)) << name;
      EXPECT_EQ(a->socle_degree(v), a->highest_degree()) << name;
    }
  }
}

TEST(Truncated, QuasiVeroneseOfPolynomialRing) {
  // k[x] truncated at degree 9, x in degree 1: the dual of the dual numbers.
  std::vector<TruncatedElement> basis;
  std::vector<std::vector<SparseVec>> prod(10, std::vector<SparseVec>(10));
  for (int d = 0; d <= 9; ++d) basis.push_back({d, 0, 0, "x" + std::to_string(d)});
  for (int i = 0; i <= 9; ++i)
    for (int j = 0; i + j <= 9; ++j) prod[i][j] = {{i + j, Q(1)}};
  TruncatedGradedAlgebra g(9, 1, basis, {0}, prod);
  auto v = quasi_veronese(g, 2);
  EXPECT_EQ(v.cutoff(), 4);
  EXPECT_EQ(v.dims(), (std::vector<int>{3, 4, 4, 4, 4}));
  EXPECT_FALSE(associativity_failure(v));
  EXPECT_TRUE(same_structure(quasi_veronese(g, 1), g));
}

TEST(Truncated, TwistBySwap) {
  // k x k in degree 0 plus one degree-1 element from vertex 1 to 2 and one back.
  std::vector<TruncatedElement> basis{{0, 0, 0, "e1"}, {0, 1, 1, "e2"}, {1, 0, 1, "p"}, {1, 1, 0, "q"}};
  std::vector<std::vector<SparseVec>> prod(4, std::vector<SparseVec>(4));
  prod[0][0] = {{0, 1}};
  prod[1][1] = {{1, 1}};
  prod[0][2] = {{2, 1}};
  prod[2][1] = {{2, 1}};
  prod[1][3] = {{3, 1}};
  prod[3][0] = {{3, 1}};
  TruncatedGradedAlgebra g(1, 2, basis, {0, 1}, prod);
  TruncatedMorphism swap{Matrix::from_rows({{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}})};
  ASSERT_TRUE(is_automorphism(g, swap));
  auto t = twist_algebra(g, swap);
  // e2 · p = swap(e2) p = e1 p = p in the twisted algebra.
  EXPECT_EQ(t.product(1, 2), (SparseVec{{2, 1}}));
  EXPECT_TRUE(t.product(0, 2).empty());
  EXPECT_TRUE(same_structure(twist_algebra(g, identity_morphism(g)), g));
  EXPECT_TRUE(same_structure(twist_algebra(t, *inverse(swap)), g));
  auto ind = induced_veronese_automorphism(g, swap, 1);
  EXPECT_EQ(ind.matrix, swap.matrix);
}
