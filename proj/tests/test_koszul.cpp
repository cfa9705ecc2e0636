#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace kk;
using namespace kk::test;

TEST(SelfOrthogonal, SquareExampleIsTwoKoszul) {
  auto p = square_example();
  auto rep = check_n_T_koszul(p.t, 2, 6);
  EXPECT_EQ(rep.verdict, Verdict::Pass);
  EXPECT_FALSE(rep.counterexample);
  EXPECT_FALSE(rep.probabilistic);
}

TEST(SelfOrthogonal, SquareExampleIsNotOneKoszul) {
  auto p = square_example();
  auto rep = check_self_orthogonal(p.t, 1, 6);
  EXPECT_EQ(rep.verdict, Verdict::Fail);
  ASSERT_TRUE(rep.counterexample);
  EXPECT_EQ(rep.counterexample->i, 2);
  EXPECT_EQ(rep.counterexample->j, 1);
  EXPECT_GT(rep.counterexample->dim, 0);
}

TEST(SelfOrthogonal, DeltaA2FailsAtTheFirstOffPatternGroup) {
  auto d = algebra("delta_a2");
  auto rep = check_n_T_koszul(degree_zero_summands(d), 2, 6);
  EXPECT_EQ(rep.verdict, Verdict::Fail);
  ASSERT_TRUE(rep.counterexample);
  EXPECT_EQ(rep.counterexample->i, 1);
  EXPECT_EQ(rep.counterexample->j, 1);
  // The periodicity Ω^{-3}(e_2 A) = e_1 A<-2> puts a nonzero group at Ext^3(T, T<2>) too.
  auto t = direct_sum(degree_zero_summands(d));
  EXPECT_GT(ext_table(t, t, 3, 2, 2).at(3, 2), 0);
}

TEST(SelfOrthogonal, DualNumbersAreOneKoszul) {
  auto d = algebra("dual_numbers");
  EXPECT_EQ(check_n_T_koszul({simple_module(d, 0)}, 1, 6).verdict, Verdict::Pass);
  EXPECT_EQ(check_n_T_koszul({simple_module(d, 0)}, 2, 6).verdict, Verdict::Fail);
}

TEST(SelfOrthogonal, TrivialExtensionOfKroneckerIsTwoKoszul) {
  auto d = algebra("delta_kronecker");
  EXPECT_EQ(check_n_T_koszul(degree_zero_summands(d), 2, 6).verdict, Verdict::Pass);
}

TEST(TTilde, CubicParts) {
  auto c = algebra("cubic");
  auto k = simple_module(c, 0);
  auto tt = build_T_tilde({k}, 1);
  EXPECT_EQ(tt.a, 2);
  ASSERT_EQ(tt.parts.size(), 2u);
  EXPECT_TRUE(is_isomorphic(tt.parts[0], k).yes());
  EXPECT_TRUE(is_isomorphic(tt.parts[1], shift(omega_power(k, -1), 1)).yes());
  EXPECT_EQ(tt.parts[1].dim(), 2);
  EXPECT_EQ(tt.part(0, 1), 1);
}

TEST(StableEndomorphism, CubicIsA2) {
  auto c = algebra("cubic");
  std::vector<GradedModule> t{simple_module(c, 0)};
  auto tt = build_T_tilde(t, 1);
  auto b = stable_endomorphism_algebra(tt, t);
  EXPECT_EQ(b.algebra->dim(), 3);
  EXPECT_EQ(b.gamma_dims, (std::vector<int>{1, 1}));
  // Upper triangular: block (j, i) is Γ_{i-j} for i >= j and zero below.
  EXPECT_EQ(b.block_dims[0][0], 1);
  EXPECT_EQ(b.block_dims[1][1], 1);
  EXPECT_EQ(b.block_dims[0][1], 1);
  EXPECT_EQ(b.block_dims[1][0], 0);
  EXPECT_TRUE(same_quiver(*b.algebra, *algebra("a2")));
  EXPECT_TRUE(b.algebra->concentrated_in_degree_zero());
}

TEST(StableEndomorphism, SquareBHasTheQuiverOfA) {
  auto p = square_example();
  auto tt = build_T_tilde(p.t, 2);
  EXPECT_EQ(tt.a, 1);
  auto b = stable_endomorphism_algebra(tt, p.t);
  EXPECT_EQ(b.algebra->dim(), 10);
  EXPECT_TRUE(same_quiver(*b.algebra, *p.a));
  EXPECT_NO_THROW(validate_algebra(*b.algebra));
}

TEST(Rigidity, SquareTTildeIsRigid) {
  auto p = square_example();
  auto tt = build_T_tilde(p.t, 2);
  auto r = rigidity_check(tt.sum(), 6);
  EXPECT_TRUE(r.pass);
  EXPECT_FALSE(r.failure);
}

TEST(Rigidity, ShiftedCopyFails) {
  auto k = simple_module(algebra("dual_numbers"), 0);
  auto r = rigidity_check(direct_sum({k, shift(k, 1)}), 4);
  EXPECT_FALSE(r.pass);
  ASSERT_TRUE(r.failure);
  EXPECT_EQ(std::abs(r.failure->first), 1);
}

TEST(ClassicAlmostKoszul, Cubic) {
  auto r = check_classic_almost_koszul(algebra("cubic"));
  EXPECT_FALSE(r.koszul_within_bound);
  ASSERT_TRUE(r.gl);
  EXPECT_EQ(r.gl->first, 2);
  EXPECT_EQ(r.gl->second, 1);
}

TEST(ClassicAlmostKoszul, DualNumbersAreKoszul) {
  auto r = check_classic_almost_koszul(algebra("dual_numbers"));
  EXPECT_TRUE(r.koszul_within_bound);
  EXPECT_FALSE(r.gl);
}

TEST(ClassicAlmostKoszul, NeedsSemisimpleDegreeZero) {
  EXPECT_THROW(check_classic_almost_koszul(algebra("square_deltaA")), InputError);
}

TEST(SolveMSigma, Formulas) {
  // l = nam - nσ + 1, g = a(m+1) - σ.
  for (int n = 1; n <= 3; ++n)
    for (int a = 1; a <= 3; ++a)
      for (int m = 0; m <= 3; ++m)
        for (int s = 0; s < a; ++s) {
          int l = n * a * m - n * s + 1, g = a * (m + 1) - s;
          if (l < 1) continue;
          auto sol = solve_m_sigma(n, a, l, g);
          ASSERT_TRUE(sol);
          EXPECT_EQ(sol->first, m);
          EXPECT_EQ(sol->second, s);
        }
  EXPECT_FALSE(solve_m_sigma(1, 2, 2, 2));
}

TEST(AlmostKoszul, CubicParameters) {
  auto c = algebra("cubic");
  auto r = check_n_m_sigma_koszul({simple_module(c, 0)}, 1, 24);
  ASSERT_EQ(r.verdict, Verdict::Pass);
  ASSERT_TRUE(r.params);
  EXPECT_EQ(r.params->l, (std::vector<int>{2}));
  EXPECT_EQ(r.params->g, (std::vector<int>{3}));
  EXPECT_EQ(r.params->m, (std::vector<int>{1}));
  EXPECT_EQ(r.params->sigma, (std::vector<int>{1}));
}

TEST(AlmostKoszul, DeltaA2Parameters) {
  auto d = algebra("delta_a2");
  auto r = check_n_m_sigma_koszul(degree_zero_summands(d), 2, 24);
  ASSERT_EQ(r.verdict, Verdict::Pass);
  ASSERT_TRUE(r.params);
  EXPECT_EQ(r.params->l, (std::vector<int>{1, 3}));
  EXPECT_EQ(r.params->g, (std::vector<int>{1, 2}));
  EXPECT_EQ(r.params->m, (std::vector<int>{0, 1}));
  EXPECT_EQ(r.params->sigma, (std::vector<int>{0, 0}));
  EXPECT_EQ(r.params->pi, (std::vector<int>{1, 0}));
}

TEST(AlmostKoszul, KoszulAlgebraHasNoPeriodicityWithinBound) {
  auto p = square_example();
  auto r = check_n_m_sigma_koszul(p.t, 2, 8);
  EXPECT_NE(r.verdict, Verdict::Pass);
}

TEST(AlmostParams, ClosedFormulas) {
  AlmostParams p;
  p.n = 1;
  p.a = 2;
  p.l = {2};
  p.g = {3};
  p.m = {1};
  p.sigma = {1};
  p.pi = {0};
  EXPECT_EQ(p.sigma_R(0, 0), 1);
  EXPECT_EQ(p.sigma_R(0, 1), 0);
  EXPECT_EQ(p.m_ij(0, 0), 1);
  EXPECT_EQ(p.m_ij(0, 1), 0);
  EXPECT_EQ(p.sigma_L(0, 0, {0}), 0);
  // m_i = m_{i,0} and σ_i = σ_i^R(0).
  EXPECT_EQ(p.m_ij(0, 0), p.m[0]);
  EXPECT_EQ(p.sigma_R(0, 0), p.sigma[0]);
}

TEST(MuPermutation, NakayamaAlgebraSwapsSummands) {
  auto a = algebra("nakayama2");
  auto fr = frobenius_analysis(*a);
  ASSERT_TRUE(fr.data);
  auto t = degree_zero_summands(a);
  auto mp = mu_permutation(t, fr.data->nakayama);
  EXPECT_EQ(mp.perm, (std::vector<int>{1, 0}));
  EXPECT_FALSE(mp.offending);
  for (size_t i = 0; i < t.size(); ++i)
    EXPECT_TRUE(is_homomorphism(twist_module(t[i], fr.data->nakayama), t[mp.perm[i]], mp.isos[i]));
}

TEST(MuBar, IsAnAutomorphismSwappingVertices) {
  auto a = algebra("nakayama2");
  auto fr = frobenius_analysis(*a);
  auto t = degree_zero_summands(a);
  auto mp = mu_permutation(t, fr.data->nakayama);
  auto kd = koszul_dual(t, 1, 3);
  auto mb = build_mu_bar(kd, fr.data->nakayama, mp);
  EXPECT_TRUE(is_automorphism(kd.algebra, mb));
  auto vp = vertex_permutation(kd.algebra, mb);
  ASSERT_TRUE(vp);
  EXPECT_EQ(*vp, (std::vector<int>{1, 0}));
}

TEST(MuBar, IdentityForSymmetricAlgebra) {
  auto p = square_example();
  MuPermutation id;
  for (const auto& s : p.t) {
    id.perm.push_back(static_cast<int>(id.perm.size()));
    id.isos.push_back(Matrix::identity(s.dim()));
  }
  auto kd = koszul_dual(p.t, 2, 2);
  auto mb = build_mu_bar(kd, identity_morphism(*p.delta), id);
  EXPECT_EQ(mb.matrix, Matrix::identity(kd.algebra.dim()));
}

TEST(DegreeZeroSummands, AreModulesOverTheWholeAlgebra) {
  auto d = algebra("square_deltaA");
  auto t = degree_zero_summands(d);
  ASSERT_EQ(t.size(), 4u);
  for (const auto& s : t) {
    EXPECT_NO_THROW(validate_module(s));
    EXPECT_EQ(s.highest_degree(), 0);
  }
}
