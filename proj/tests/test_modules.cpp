#include <gtest/gtest.h>

#include <sstream>

#include "fixtures.hpp"

using namespace kk;
using namespace kk::test;

TEST(Modules, SquareSummandsLoadAndValidate) {
  auto p = square_example();
  std::vector<int> dims;
  for (const auto& t : p.t) {
    EXPECT_NO_THROW(validate_module(t));
    dims.push_back(t.dim());
  }
  EXPECT_EQ(dims, (std::vector<int>{3, 1, 1, 3}));
}

TEST(Modules, SquareCosyzygiesOfFirstSummand) {
  auto p = square_example();
  auto c1 = omega_power(p.t[0], -1);
  EXPECT_EQ(c1.dim(), 5);
  EXPECT_EQ(c1.dims_by_degree(), (std::map<int, int>{{-1, 4}, {0, 1}}));
  EXPECT_EQ(omega_power(p.t[0], -2).dim(), 7);
}

TEST(Modules, ProjectivesAndInjectives) {
  auto d = algebra("square_deltaA");
  for (int v = 0; v < 4; ++v) {
    auto pv = projective(d, v);
    auto iv = injective(d, v);
    EXPECT_EQ(pv.dim(), 4);
    EXPECT_EQ(iv.dim(), 4);
    EXPECT_NO_THROW(validate_module(pv));
    EXPECT_NO_THROW(validate_module(iv));
    EXPECT_TRUE(is_indecomposable(pv).indecomposable);
    // Self-injective and symmetric: e_v Λ is D(Λ e_v) shifted by the top degree.
    EXPECT_TRUE(is_isomorphic(pv, shift(iv, 1)).yes());
  }
}

TEST(Modules, DualNumbersSyzygyOfSimple) {
  auto a = algebra("dual_numbers");
  auto k = simple_module(a, 0);
  auto om = syzygy(k);
  EXPECT_TRUE(is_isomorphic(om, shift(k, 1)).yes());
  auto co = cosyzygy(k);
  EXPECT_TRUE(is_isomorphic(co, shift(k, -1)).yes());
}

TEST(Modules, CubicSyzygies) {
  auto a = algebra("cubic");
  auto k = simple_module(a, 0);
  auto o1 = syzygy(k);
  EXPECT_EQ(o1.dims_by_degree(), (std::map<int, int>{{1, 1}, {2, 1}}));
  auto o2 = syzygy(o1);
  EXPECT_TRUE(is_isomorphic(o2, shift(k, 3)).yes());
  EXPECT_TRUE(is_isomorphic(omega_power(k, -2), shift(k, -3)).yes());
}

TEST(Modules, SyzygyAndCosyzygyAreInverse) {
  auto p = square_example();
  for (const auto& t : p.t) {
    EXPECT_TRUE(is_isomorphic(syzygy(cosyzygy(t)), t).yes());
    EXPECT_TRUE(is_isomorphic(cosyzygy(syzygy(t)), t).yes());
  }
}

TEST(Modules, StableEndomorphismsOfSquareT) {
  auto p = square_example();
  auto t = direct_sum(p.t);
  EXPECT_EQ(stable_hom(t, t).dim(), 10);
}

TEST(Modules, ProjectiveMapsVanishStably) {
  auto d = algebra("square_deltaA");
  auto pv = projective(d, 0);
  EXPECT_EQ(stable_hom(pv, pv).dim(), 0);
  EXPECT_GT(static_cast<int>(hom_space(pv, pv).size()), 0);
}

TEST(Modules, HomSpaceOracle) {
  auto a2 = algebra("a2");
  // Hom(e_1 Λ, e_2 Λ) = e_2 Λ e_1 = 0 and Hom(e_2 Λ, e_1 Λ) = e_1 Λ e_2 = span of the arrow.
  EXPECT_EQ(hom_space(projective(a2, 0), projective(a2, 1)).size(), 0u);
  EXPECT_EQ(hom_space(projective(a2, 1), projective(a2, 0)).size(), 1u);
  for (const auto& f : hom_space(projective(a2, 1), projective(a2, 0)))
    EXPECT_TRUE(is_homomorphism(projective(a2, 1), projective(a2, 0), f));
}

TEST(Modules, DirectSumAndIndecomposability) {
  auto a = algebra("delta_a2");
  auto s0 = simple_module(a, 0), s1 = simple_module(a, 1);
  auto sum = direct_sum({s0, s1});
  EXPECT_EQ(sum.dim(), 2);
  EXPECT_FALSE(is_indecomposable(sum).indecomposable);
  EXPECT_TRUE(is_indecomposable(s0).indecomposable);
  EXPECT_EQ(summand_offsets({s0, s1, s0}), (std::vector<int>{0, 1, 2}));
}

TEST(Modules, StrippingRemovesProjectives) {
  auto d = algebra("square_deltaA");
  auto p = square_example();
  auto m = direct_sum({p.t[0], projective(d, 2, 1)});
  auto s = strip_projective_summands(m);
  EXPECT_EQ(s.removed.size(), 1u);
  EXPECT_EQ(s.removed[0], (Key{2, 1}));
  EXPECT_TRUE(is_isomorphic(s.module, p.t[0]).yes());
}

TEST(Modules, IsomorphismRejectsDifferentShifts) {
  auto k = simple_module(algebra("cubic"), 0);
  EXPECT_FALSE(is_isomorphic(k, shift(k, 1)).yes());
  EXPECT_FALSE(same_graded_dims(k, shift(k, 1)));
}

TEST(Modules, TruncationsSplitDimension) {
  auto d = algebra("square_deltaA");
  auto reg = direct_sum({projective(d, 0), projective(d, 1), projective(d, 2), projective(d, 3)});
  auto tr = truncations(reg, 1);
  EXPECT_EQ(tr.at_least.dim(), 8);
  EXPECT_EQ(truncations(reg, 0).at_most.dim() + tr.at_least.dim(), reg.dim());
  auto k = simple_module(d, 0);
  auto t0 = truncations(k, 0);
  EXPECT_EQ(t0.at_least.dim(), 1);
  EXPECT_EQ(t0.at_most.dim(), 1);
  EXPECT_EQ(t0.exactly.dim(), 1);
}

TEST(Modules, TwistAlongNakayamaAutomorphism) {
  auto a = algebra("nakayama2");
  auto mu = frobenius_analysis(*a).data->nakayama;
  auto s0 = simple_module(a, 0);
  auto tw = twist_module(s0, mu);
  EXPECT_NO_THROW(validate_module(tw));
  EXPECT_TRUE(is_isomorphic(tw, simple_module(a, 1)).yes());
}

TEST(Modules, FileRoundTrip) {
  auto p = square_example();
  for (const auto& t : p.t) {
    std::ostringstream out;
    write_module(out, t);
    auto back = module_from_string(out.str(), p.delta);
    EXPECT_TRUE(same_module(back, t));
  }
}

TEST(Modules, MalformedModulesAreRejected) {
  auto d = algebra("square_deltaA");
  // Wrong algebra name.
  EXPECT_THROW(module_from_string("module M over Cubic\nspace 1 0 1\nend\n", d), InputError);
  // Action that breaks the module axioms: a1 then a3 is a relation but both act nonzero.
  EXPECT_THROW(module_from_string("module M over DeltaA\nspace 1 0 1\nspace 2 0 1\nspace 4 0 1\n"
                                  "action a1 0 matrix 1\naction a3 0 matrix 1\nend\n",
                                  d),
               InputError);
}
