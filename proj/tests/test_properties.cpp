#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"

using namespace kk;
using namespace kk::test;

namespace {

struct FrobeniusCase {
  std::string name;
  AlgebraPtr alg;
  int a = 0;
};

std::vector<FrobeniusCase> frobenius_corpus() {
  std::vector<FrobeniusCase> out;
  for (auto name : {"square_deltaA", "dual_numbers", "cubic", "delta_a2", "nakayama2", "delta_kronecker"})
    out.push_back({name, algebra(name), 0});
  for (auto name : {"point", "a2", "kronecker", "square_A"})
    out.push_back({std::string("trivial extension of ") + name, trivial_extension_of(name), 0});
  for (auto& c : out) c.a = c.alg->highest_degree();
  return out;
}

// Modules concentrated in degree 0: simples and the degree-zero parts of the projectives.
std::vector<GradedModule> degree_zero_modules(const AlgebraPtr& a) {
  std::vector<GradedModule> out;
  for (int v = 0; v < a->vertices(); ++v) {
    out.push_back(simple_module(a, v));
    auto p = degree_zero_projective(a, v);
    if (p.dim() > 1) out.push_back(p);
  }
  return out;
}

const std::vector<std::string> kDegreeZeroAlgebras{"point", "a2", "kronecker", "square_A"};

TruncatedMorphism degree_scaling(const TruncatedGradedAlgebra& g, int c) {
  Matrix m(g.dim(), g.dim());
  for (int x = 0; x < g.dim(); ++x) {
    Q s = 1;
    for (int k = 0; k < g.element(x).deg; ++k) s *= c;
    m(x, x) = s;
  }
  return {m};
}

}  // namespace

TEST(DegreeLemma, SyzygyDegreeBounds) {
  for (const auto& c : frobenius_corpus()) {
    for (const auto& m : degree_zero_modules(c.alg)) {
      for (int i = 1; i <= 3; ++i) {
        auto om = omega_power(m, i);
        if (om.is_zero()) continue;
        // Syzygies sit inside projectives generated in degrees >= 0, and move up at most a degrees per step.
        EXPECT_GE(om.lowest_degree(), 0) << c.name;
        EXPECT_LE(om.highest_degree(), i * c.a) << c.name;
        // The socle of the projective cover survives in the syzygy.
        EXPECT_GE(om.highest_degree(), c.a) << c.name;
        auto co = omega_power(m, -i);
        EXPECT_LE(co.highest_degree(), 0) << c.name;
        EXPECT_GE(co.lowest_degree(), -i * c.a) << c.name;
      }
      // For i <= 0 the highest degree never exceeds that of M.
      for (int i = 0; i >= -3; --i) EXPECT_LE(omega_power(m, i).highest_degree(), 0) << c.name;
    }
  }
}

TEST(DegreeLemma, StableHomEqualsHomInDegreeZero) {
  for (const auto& c : frobenius_corpus()) {
    auto mods = degree_zero_modules(c.alg);
    for (const auto& m : mods)
      for (const auto& n : mods)
        EXPECT_EQ(stable_hom(m, n).dim(), static_cast<int>(hom_space(m, n).size())) << c.name;
  }
}

TEST(DegreeLemma, HomVanishing) {
  for (const auto& c : frobenius_corpus()) {
    auto mods = degree_zero_modules(c.alg);
    for (const auto& m : mods)
      for (const auto& n : mods) {
        for (int i = -2; i <= -1; ++i)
          for (int j = -2; j <= -1; ++j)
            EXPECT_TRUE(hom_space(m, shift(omega_power(n, i), j)).empty()) << c.name << " " << i << " " << j;
        for (int i = 1; i <= 2; ++i)
          for (int j = 1 - c.a; j <= 3; ++j)
            EXPECT_TRUE(hom_space(m, shift(omega_power(n, i), j)).empty()) << c.name << " " << i << " " << j;
      }
  }
}

TEST(DegreeLemma, OmegaInversesOnStableClasses) {
  for (const auto& c : frobenius_corpus())
    for (const auto& m : degree_zero_modules(c.alg)) {
      auto stripped = strip_projective_summands(m).module;
      EXPECT_TRUE(is_isomorphic(syzygy(cosyzygy(m)), stripped).yes()) << c.name;
      EXPECT_TRUE(is_isomorphic(cosyzygy(syzygy(m)), stripped).yes()) << c.name;
    }
}

TEST(GradedExt, UngradedSumOnRandomTriples) {
  // Pool of small modules over several algebras; draw (M, N, i) at random.
  struct Pool {
    std::vector<GradedModule> mods;
  };
  std::vector<Pool> pools;
  for (auto name : {"dual_numbers", "cubic", "delta_a2", "nakayama2", "square_deltaA", "delta_kronecker"}) {
    auto a = algebra(name);
    Pool p;
    for (const auto& m : degree_zero_modules(a)) {
      p.mods.push_back(m);
      p.mods.push_back(shift(m, 1));
      p.mods.push_back(syzygy(m));
    }
    pools.push_back(p);
  }
  std::mt19937 rng(20241016);
  int checked = 0;
  for (int trial = 0; trial < 24; ++trial) {
    const auto& pool = pools[rng() % pools.size()];
    const auto& m = pool.mods[rng() % pool.mods.size()];
    const auto& n = pool.mods[rng() % pool.mods.size()];
    int i = static_cast<int>(rng() % 5);
    UngradedExt u;
    ASSERT_NO_THROW(u = ungraded_ext_dims(m, n, i));
    EXPECT_EQ(u.ungraded, u.graded_sum);
    auto r = projective_resolution(m, i + 1);
    EXPECT_EQ(graded_ext_row_sum(r, n, i), u.graded_sum);
    ++checked;
  }
  EXPECT_GE(checked, 20);
}

TEST(Frobenius, SocleInTopDegree) {
  for (const auto& c : frobenius_corpus()) {
    std::vector<GradedModule> ps;
    for (int v = 0; v < c.alg->vertices(); ++v) ps.push_back(projective(c.alg, v));
    auto soc = socle_spaces(direct_sum(ps));
    for (const auto& [k, basis] : soc)
      if (basis.cols() > 0) EXPECT_EQ(k.d, c.a) << c.name;
  }
}

TEST(Frobenius, NakayamaAutomorphismIsGraded) {
  for (const auto& c : frobenius_corpus()) {
    auto fr = frobenius_analysis(*c.alg);
    ASSERT_TRUE(fr.data) << c.name;
    EXPECT_EQ(fr.data->a, c.a) << c.name;
    EXPECT_TRUE(is_graded_automorphism(*c.alg, fr.data->nakayama)) << c.name;
  }
}

TEST(TrivialExtension, AlwaysSymmetricWithTopDegreeOne) {
  std::vector<AlgebraPtr> bases;
  for (const auto& n : kDegreeZeroAlgebras) bases.push_back(algebra(n));
  bases.push_back(algebra_from_string(
      "algebra A3\nvertices 3\narrow a 1 2 0\narrow b 2 3 0\nend\n"));
  bases.push_back(algebra_from_string(
      "algebra Square\nvertices 4\narrow a 1 2 0\narrow b 1 3 0\narrow c 2 4 0\narrow d 3 4 0\n"
      "relation a*c - b*d\nend\n"));
  bases.push_back(algebra_from_string("algebra Rad2\nvertices 3\narrow a 1 2 0\narrow b 2 3 0\nrelation a*b\nend\n"));
  for (const auto& b : bases) {
    auto d = trivial_extension(*b);
    EXPECT_NO_THROW(validate_algebra(d)) << b->name();
    auto fr = frobenius_analysis(d);
    ASSERT_TRUE(fr.data) << b->name();
    EXPECT_EQ(fr.data->a, 1) << b->name();
    EXPECT_TRUE(fr.data->symmetric) << b->name();
  }
}

TEST(QuasiVeronese, DimensionFormula) {
  std::vector<TruncatedGradedAlgebra> gammas;
  gammas.push_back(koszul_dual({simple_module(algebra("dual_numbers"), 0)}, 1, 11).algebra);
  gammas.push_back(koszul_dual({simple_module(algebra("cubic"), 0)}, 1, 11).algebra);
  gammas.push_back(koszul_dual(degree_zero_summands(algebra("delta_kronecker")), 2, 7).algebra);
  for (const auto& g : gammas) {
    auto gd = g.dims();
    auto dim_at = [&](int d) { return d < 0 || d >= static_cast<int>(gd.size()) ? 0 : gd[d]; };
    for (int r = 1; r <= 3; ++r) {
      auto v = quasi_veronese(g, r);
      EXPECT_EQ(v.cutoff(), (g.cutoff() - r + 1) / r);
      auto vd = v.dims();
      for (int i = 0; i <= v.cutoff(); ++i) {
        int expect = 0;
        for (int j = 0; j < r; ++j)
          for (int k = 0; k < r; ++k) expect += dim_at(r * i + k - j);
        EXPECT_EQ(vd[i], expect) << "r=" << r << " i=" << i;
      }
      EXPECT_FALSE(associativity_failure(v));
    }
  }
}

TEST(Twist, IdentityAndDoubleTwist) {
  auto nak = algebra("nakayama2");
  auto fr = frobenius_analysis(*nak);
  auto t = degree_zero_summands(nak);
  auto mp = mu_permutation(t, fr.data->nakayama);
  auto kd = koszul_dual(t, 1, 4);
  auto mubar = build_mu_bar(kd, fr.data->nakayama, mp);
  std::vector<std::pair<TruncatedGradedAlgebra, TruncatedMorphism>> cases;
  cases.emplace_back(kd.algebra, mubar);
  auto poly = koszul_dual({simple_module(algebra("dual_numbers"), 0)}, 1, 6).algebra;
  cases.emplace_back(poly, degree_scaling(poly, 2));
  auto kr = koszul_dual(degree_zero_summands(algebra("delta_kronecker")), 2, 4).algebra;
  cases.emplace_back(kr, degree_scaling(kr, -3));
  for (const auto& [g, phi] : cases) {
    ASSERT_TRUE(is_automorphism(g, phi));
    EXPECT_TRUE(same_structure(twist_algebra(g, identity_morphism(g)), g));
    auto inv = inverse(phi);
    ASSERT_TRUE(inv);
    auto twisted = twist_algebra(g, phi);
    EXPECT_FALSE(associativity_failure(twisted));
    EXPECT_TRUE(same_structure(twist_algebra(twisted, *inv), g));
  }
}

TEST(Twist, InducedVeroneseAutomorphismIsMultiplicative) {
  auto kr = koszul_dual(degree_zero_summands(algebra("delta_kronecker")), 2, 5).algebra;
  auto phi = degree_scaling(kr, 2), psi = degree_scaling(kr, 5);
  for (int r = 1; r <= 2; ++r) {
    auto v = quasi_veronese(kr, r);
    auto lhs = induced_veronese_automorphism(kr, compose(phi, psi), r);
    auto rhs = compose(induced_veronese_automorphism(kr, phi, r), induced_veronese_automorphism(kr, psi, r));
    EXPECT_EQ(lhs.matrix, rhs.matrix);
    EXPECT_TRUE(is_automorphism(v, lhs));
    EXPECT_EQ(induced_veronese_automorphism(kr, identity_morphism(kr), r).matrix, identity_morphism(v).matrix);
  }
}

TEST(StableEndomorphism, BlockStructureNeverTrips) {
  struct Case {
    std::string name;
    std::vector<GradedModule> t;
    int n;
  };
  std::vector<Case> cases;
  cases.push_back({"square", square_example().t, 2});
  cases.push_back({"cubic", {simple_module(algebra("cubic"), 0)}, 1});
  cases.push_back({"dual numbers", {simple_module(algebra("dual_numbers"), 0)}, 1});
  cases.push_back({"delta_a2", degree_zero_summands(algebra("delta_a2")), 2});
  cases.push_back({"nakayama2", degree_zero_summands(algebra("nakayama2")), 2});
  cases.push_back({"delta_kronecker", degree_zero_summands(algebra("delta_kronecker")), 2});
  for (const auto& c : cases) {
    auto tt = build_T_tilde(c.t, c.n);
    StableEndomorphism b;
    ASSERT_NO_THROW(b = stable_endomorphism_algebra(tt, c.t)) << c.name;
    for (int j = 0; j < tt.a; ++j)
      for (int i = 0; i < tt.a; ++i)
        EXPECT_EQ(b.block_dims[j][i], i >= j ? b.gamma_dims[i - j] : 0) << c.name;
    EXPECT_NO_THROW(validate_algebra(*b.algebra)) << c.name;
  }
}

TEST(ProjectiveCover, DroppingAnySummandLosesSurjectivity) {
  for (const auto& c : frobenius_corpus()) {
    auto mods = degree_zero_modules(c.alg);
    mods.push_back(direct_sum(mods));
    for (const auto& m : mods) {
      auto pc = projective_cover(m);
      ASSERT_EQ(rank(pc.epi), m.dim()) << c.name;
      const auto& f = pc.cover;
      for (size_t g = 0; g < f.gens.size(); ++g) {
        int begin = f.offset[g];
        int end = g + 1 < f.gens.size() ? f.offset[g + 1] : f.module.dim();
        Matrix rest(m.dim(), f.module.dim() - (end - begin));
        for (int r = 0; r < m.dim(); ++r)
          for (int col = 0, out = 0; col < f.module.dim(); ++col)
            if (col < begin || col >= end) rest(r, out++) = pc.epi(r, col);
        EXPECT_LT(rank(rest), m.dim()) << c.name;
      }
    }
  }
}
