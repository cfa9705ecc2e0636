#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "koszulkit/hereditary.hpp"

using namespace kk;
using namespace kk::test;

TEST(Nakayama, ProjectivesGoToInjectives) {
  auto a2 = algebra("a2");
  for (int v = 0; v < 2; ++v) {
    auto nu = nakayama_on_projectives(projective(a2, v));
    EXPECT_TRUE(is_isomorphic(nu, injective(a2, v)).yes());
    auto back = nakayama_inverse_on_injectives(injective(a2, v));
    EXPECT_TRUE(is_isomorphic(back, projective(a2, v)).yes());
  }
  // P_1 = [1;2] has dim 2 while I_1 = S_1.
  EXPECT_EQ(projective(a2, 0).dim(), 2);
  EXPECT_EQ(injective(a2, 0).dim(), 1);
}

TEST(NuInverse, SimpleProjectiveOfA2) {
  auto a2 = algebra("a2");
  NuInverse nu(a2, 1);
  EXPECT_EQ(nu.gldim(), 1);
  // ν_1^{-1}(P_2) is S_1 in degree 0.
  auto h = nu.apply(projective(a2, 1));
  for (const auto& [l, m] : h) {
    if (l == 0)
      EXPECT_TRUE(is_isomorphic(m, simple_module(a2, 0)).yes());
    else
      EXPECT_TRUE(m.is_zero()) << l;
  }
  // ν_1^{-1}(S_1) = P_1[1]: cohomology in degree -1.
  auto s = nu.apply(simple_module(a2, 0));
  EXPECT_TRUE(s.at(0).is_zero());
  EXPECT_TRUE(is_isomorphic(s.at(-1), projective(a2, 0)).yes());
}

TEST(NuInverse, MapsCompose) {
  auto kr = algebra("kronecker");
  NuInverse nu(kr, 1);
  auto p0 = projective(kr, 0), p1 = projective(kr, 1);
  auto homs = hom_space(p1, p0);
  ASSERT_EQ(homs.size(), 2u);
  auto idm = nu.apply_map(p0, p0, Matrix::identity(p0.dim()), 0);
  EXPECT_EQ(idm, Matrix::identity(idm.rows()));
  auto f = nu.apply_map(p1, p0, homs[0], 0);
  auto src = nu.apply(p1, 0), tgt = nu.apply(p0, 0);
  EXPECT_TRUE(is_homomorphism(src, tgt, f));
}

TEST(RepFinite, A2) {
  auto r = is_n_rep_finite(algebra("a2"), 1);
  EXPECT_EQ(r.verdict, NRepVerdict::Yes);
  ASSERT_EQ(r.orbits.size(), 2u);
  EXPECT_EQ(r.orbits[0].m, 0);
  EXPECT_EQ(r.orbits[1].m, 1);
  EXPECT_EQ(r.orbits[0].endpoint, 1);
  EXPECT_EQ(r.orbits[1].endpoint, 0);
}

TEST(RepFinite, PointIsRepFinite) {
  auto r = is_n_rep_finite(algebra("point"), 1);
  EXPECT_EQ(r.verdict, NRepVerdict::Yes);
}

TEST(RepFinite, KroneckerOrbitsNeverEnd) {
  auto r = is_n_rep_finite(algebra("kronecker"), 1, 6);
  EXPECT_EQ(r.verdict, NRepVerdict::NoWithinCap);
}

TEST(RepFinite, GlobalDimensionTooLarge) {
  auto r = is_n_rep_finite(algebra("square_A"), 1);
  EXPECT_EQ(r.verdict, NRepVerdict::No);
  EXPECT_FALSE(r.gldim);
  EXPECT_NE(r.detail.find("global dimension"), std::string::npos);
}

TEST(RepInfinite, Kronecker) {
  auto r = is_n_rep_infinite_upto(algebra("kronecker"), 1, 6);
  EXPECT_EQ(r.verdict, NRepVerdict::PassUpToDepth);
  EXPECT_EQ(r.depth, 6);
}

TEST(RepInfinite, A2FailsAtFirstStep) {
  auto r = is_n_rep_infinite_upto(algebra("a2"), 1, 6);
  EXPECT_EQ(r.verdict, NRepVerdict::No);
  ASSERT_TRUE(r.failure);
  EXPECT_EQ(r.failure->first, 1);
  EXPECT_EQ(r.failure->second, -1);
}

TEST(RepInfinite, PointFails) {
  EXPECT_EQ(is_n_rep_infinite_upto(algebra("point"), 1, 6).verdict, NRepVerdict::No);
}

TEST(RepInfinite, SquareBIsOneRepInfinite) {
  auto p = square_example();
  auto tt = build_T_tilde(p.t, 2);
  auto b = stable_endomorphism_algebra(tt, p.t);
  EXPECT_EQ(is_n_rep_infinite_upto(b.algebra, 1, 6).verdict, NRepVerdict::PassUpToDepth);
}

TEST(DerivedNu, HereditaryComplexesStaySplit) {
  auto kr = algebra("kronecker");
  NuInverse nu(kr, 1);
  auto steps = derived_nu_inverse_power(nu, regular_complex(kr), 4);
  ASSERT_EQ(steps.steps.size(), 5u);
  std::vector<int> dims;
  for (const auto& s : steps.steps) {
    EXPECT_TRUE(s.split);
    EXPECT_TRUE(s.is_stalk());
    dims.push_back(s.h0().dim());
  }
  // dim Π_i of the Kronecker preprojective algebra: 4, 12, 20, ...
  EXPECT_EQ(dims, (std::vector<int>{4, 12, 20, 28, 36}));
}

TEST(Preprojective, A2) {
  auto pi = preprojective_algebra(algebra("a2"), 1, 4);
  EXPECT_EQ(pi.dims(), (std::vector<int>{3, 1, 0, 0, 0}));
  EXPECT_FALSE(associativity_failure(pi));
}

TEST(Preprojective, Kronecker) {
  auto pi = preprojective_algebra(algebra("kronecker"), 1, 5);
  EXPECT_EQ(pi.dims(), (std::vector<int>{4, 12, 20, 28, 36, 44}));
  EXPECT_FALSE(associativity_failure(pi));
}

TEST(Preprojective, Point) {
  auto pi = preprojective_algebra(algebra("point"), 1, 3);
  EXPECT_EQ(pi.dims(), (std::vector<int>{1, 0, 0, 0}));
}

TEST(Preprojective, IsomorphicToDualOfTrivialExtension) {
  for (auto name : {"a2", "kronecker"}) {
    auto a = algebra(name);
    auto delta = make_shared_algebra(trivial_extension(*a));
    auto pi = preprojective_algebra(a, 1, 5);
    auto dual = koszul_dual(degree_zero_summands(delta), 2, 5);
    auto iso = find_isomorphism(pi, dual.algebra);
    EXPECT_TRUE(iso.dims_match) << name;
    EXPECT_TRUE(iso.iso) << name << ": " << iso.detail;
  }
}

TEST(Serre, SquareIdentity) {
  auto p = square_example();
  auto tt = build_T_tilde(p.t, 2);
  auto b = stable_endomorphism_algebra(tt, p.t);
  auto s = serre_dimension_identity(tt, b, 3, 2);
  EXPECT_TRUE(s.all_equal);
  EXPECT_TRUE(s.exact);
  std::vector<int> diag;
  for (const auto& e : s.entries)
    if (e.l == 0) diag.push_back(e.stable);
  EXPECT_EQ(diag, (std::vector<int>{10, 22, 42, 54}));
}

TEST(Serre, CubicIdentity) {
  auto c = algebra("cubic");
  std::vector<GradedModule> t{simple_module(c, 0)};
  auto tt = build_T_tilde(t, 1);
  auto b = stable_endomorphism_algebra(tt, t);
  auto s = serre_dimension_identity(tt, b, 3, 2);
  EXPECT_TRUE(s.all_equal);
  for (const auto& e : s.entries) EXPECT_EQ(e.stable, e.derived) << e.i << "," << e.l;
}

TEST(BoundedComplex, Cohomology) {
  auto a2 = algebra("a2");
  BoundedComplex x{a2, {{-1, projective(a2, 0)}, {0, simple_module(a2, 1)}}, true};
  auto dims = x.cohomology_dims();
  EXPECT_EQ(dims[-1], 2);
  EXPECT_EQ(dims[0], 1);
  EXPECT_FALSE(x.is_stalk());
  EXPECT_TRUE(stalk_complex(simple_module(a2, 0)).is_stalk());
}
