#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace kk;
using namespace kk::test;

TEST(Resolution, DualNumbersSimpleIsLinear) {
  auto k = simple_module(algebra("dual_numbers"), 0);
  auto r = projective_resolution(k, 5);
  EXPECT_TRUE(is_minimal(r));
  for (int i = 0; i <= 5; ++i) EXPECT_EQ(r.generators(i), (std::vector<Key>{{0, i}}));
  EXPECT_FALSE(r.projective_dimension());
}

TEST(Resolution, CubicGeneratorDegrees) {
  auto k = simple_module(algebra("cubic"), 0);
  auto r = projective_resolution(k, 5);
  std::vector<int> degs;
  for (int i = 0; i <= 5; ++i) degs.push_back(r.generators(i).at(0).d);
  EXPECT_EQ(degs, (std::vector<int>{0, 1, 3, 4, 6, 7}));
}

TEST(Resolution, HereditarySimpleIsFinite) {
  auto a2 = algebra("a2");
  auto r = projective_resolution(simple_module(a2, 0), 4);
  ASSERT_TRUE(r.projective_dimension());
  EXPECT_EQ(*r.projective_dimension(), 1);
}

TEST(Ext, SquareTableIsConcentratedOnTheDiagonal) {
  auto p = square_example();
  auto t = direct_sum(p.t);
  auto table = ext_table(t, t, 6, -4, 4);
  for (int i = 0; i <= 6; ++i)
    for (int j = -4; j <= 4; ++j)
      if (i != 2 * j) EXPECT_EQ(table.at(i, j), 0) << i << "," << j;
  EXPECT_EQ(table.at(0, 0), 10);
  EXPECT_EQ(table.at(2, 1), 22);
  EXPECT_EQ(table.at(4, 2), 42);
}

TEST(Ext, DualNumbersAreKoszul) {
  auto k = simple_module(algebra("dual_numbers"), 0);
  auto table = ext_table(k, k, 5, -1, 6);
  for (int i = 0; i <= 5; ++i)
    for (int j = -1; j <= 6; ++j) EXPECT_EQ(table.at(i, j), i == j ? 1 : 0);
}

TEST(Ext, CubicPattern) {
  auto k = simple_module(algebra("cubic"), 0);
  auto table = ext_table(k, k, 4, 0, 7);
  EXPECT_EQ(table.at(1, 1), 1);
  EXPECT_EQ(table.at(2, 3), 1);
  EXPECT_EQ(table.at(3, 4), 1);
  EXPECT_EQ(table.at(4, 6), 1);
  EXPECT_EQ(table.at(2, 2), 0);
}

TEST(Ext, UngradedSumsAgree) {
  auto p = square_example();
  for (int i = 0; i <= 3; ++i) {
    auto u = ungraded_ext_dims(p.t[0], p.t[3], i);
    EXPECT_EQ(u.ungraded, u.graded_sum);
  }
}

TEST(Ext, StableHomOfCosyzygy) {
  // Over a self-injective algebra Ext^i(M, N<j>) = stable Hom(M, Ω^{-i} N<j>) for i >= 1.
  auto p = square_example();
  auto r = projective_resolution(p.t[0], 4);
  for (int i = 1; i <= 3; ++i)
    for (int j = -1; j <= 2; ++j)
      EXPECT_EQ(ext_group(r, shift(p.t[1], j), i, 0).dim(),
                stable_hom(p.t[0], shift(omega_power(p.t[1], -i), j)).dim())
          << i << "," << j;
}

TEST(Ext, YonedaProductOverDualNumbers) {
  // Ext(k, k) is k[x]; the square of the degree-one class is nonzero.
  auto k = simple_module(algebra("dual_numbers"), 0);
  auto r = projective_resolution(k, 4);
  auto e1 = ext_group(r, k, 1, 1);
  ASSERT_EQ(e1.dim(), 1);
  auto x = e1.classes.representatives()[0];
  auto sq = yoneda_product(r, r, k, 1, 1, x, 1, 1, x);
  auto e2 = ext_group(r, k, 2, 2);
  EXPECT_FALSE(is_zero(e2.classes.coordinates(sq)));
}

TEST(KoszulDual, DualNumbersGivePolynomialRing) {
  auto k = simple_module(algebra("dual_numbers"), 0);
  auto kd = koszul_dual({k}, 1, 5);
  EXPECT_EQ(kd.algebra.dims(), (std::vector<int>{1, 1, 1, 1, 1, 1}));
  EXPECT_FALSE(associativity_failure(kd.algebra));
  // x^5 is nonzero.
  Vec x(kd.algebra.dim());
  x[kd.algebra.in_degree(1).at(0)] = 1;
  Vec pw = x;
  for (int i = 1; i < 5; ++i) pw = kd.algebra.multiply(pw, x);
  EXPECT_FALSE(is_zero(pw));
}

TEST(KoszulDual, SquareDimensions) {
  auto p = square_example();
  auto kd = koszul_dual(p.t, 2, 4);
  EXPECT_EQ(kd.algebra.dims(), (std::vector<int>{10, 22, 42, 54, 74}));
  EXPECT_FALSE(associativity_failure(kd.algebra));
}

TEST(KoszulDual, UngradedFormMatchesGradedForSelfOrthogonalT) {
  auto p = square_example();
  auto t = direct_sum(p.t);
  for (int i = 0; i <= 2; ++i) {
    auto u = ungraded_ext_dims(t, t, 2 * i);
    auto r = projective_resolution(t, 2 * i + 1);
    EXPECT_EQ(u.ungraded, ext_group(r, shift(t, i), 2 * i, 0).dim());
  }
}

TEST(Gldim, Oracles) {
  EXPECT_EQ(gldim_upto(algebra("point"), 3).gldim, 0);
  EXPECT_EQ(gldim_upto(algebra("a2"), 3).gldim, 1);
  EXPECT_EQ(gldim_upto(algebra("kronecker"), 3).gldim, 1);
  EXPECT_EQ(gldim_upto(algebra("square_A"), 8).gldim, 2);
}

TEST(Tilting, RegularModuleIsTilting) {
  auto a = algebra("square_A");
  std::vector<GradedModule> t;
  for (int v = 0; v < 4; ++v) t.push_back(projective(a, v));
  EXPECT_EQ(tilting_module_check(t).verdict, TiltingVerdict::Tilting);
}

TEST(Tilting, SquareSummandsAreTiltingOverA) {
  auto p = square_example();
  auto zero = degree_zero_part(*p.delta);
  auto a0 = make_shared_algebra(zero.algebra);
  auto restricted = restrict_summands(p.t, a0, zero.embedding);
  auto rep = tilting_module_check(restricted);
  EXPECT_EQ(rep.verdict, TiltingVerdict::Tilting) << rep.detail;
}

TEST(Tilting, SimplesOfA2AreNotTilting) {
  auto a2 = algebra("a2");
  // S_1 ⊕ S_2 has Ext^1(S_1, S_2) != 0.
  auto rep = tilting_module_check({simple_module(a2, 0), simple_module(a2, 1)});
  EXPECT_EQ(rep.verdict, TiltingVerdict::NotTilting);
}

TEST(AddDecomposition, RecognisesMultiplicities) {
  auto a2 = algebra("a2");
  auto p0 = projective(a2, 0), p1 = projective(a2, 1);
  auto m = direct_sum({p0, p1, p1});
  auto d = decompose_in_add(m, {p0, p1});
  ASSERT_TRUE(d);
  EXPECT_EQ(d->multiplicity, (std::vector<int>{1, 2}));
  EXPECT_FALSE(decompose_in_add(simple_module(a2, 0), {p1}));
}
