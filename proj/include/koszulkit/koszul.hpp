#pragma once

#include <optional>
#include <string>
#include <vector>

#include "koszulkit/homology.hpp"

namespace kk {

enum class Verdict { Pass, Fail, Inconclusive };
std::string to_string(Verdict v);

struct Counterexample {
  int i = 0, j = 0, dim = 0;
};

struct KoszulReport {
  Verdict verdict = Verdict::Inconclusive;
  int i_max = 0, j_min = 0, j_max = 0;
  std::optional<Counterexample> counterexample;
  bool probabilistic = false;
  std::vector<std::string> notes;
};

// Ext^i(T, T<j>) = 0 for i != nj, i <= i_max, over the window j ∈ [⌈-i_max/n⌉ - a, ⌈i_max/n⌉ + a].
KoszulReport check_self_orthogonal(const std::vector<GradedModule>& t, int n, int i_max);
// Tilting over Λ_0 (after a finite global dimension check) and graded n-self-orthogonal.
KoszulReport check_n_T_koszul(const std::vector<GradedModule>& t, int n, int i_max, std::uint64_t seed = 0);

// Λ_0 as a module over Λ, one summand e_v Λ_0 per vertex.
std::vector<GradedModule> degree_zero_summands(const AlgebraPtr& a);
// T restricted to the degree-zero algebra, for tilting checks over Λ_0.
std::vector<GradedModule> restrict_summands(const std::vector<GradedModule>& t, const AlgebraPtr& zero,
                                            const std::vector<int>& embedding);

// ⊕_{j=0}^{a-1} Ω^{-nj} T<j>; part (i, j) is Ω^{-nj} T^i <j>.
struct TTilde {
  int n = 1, a = 1;
  std::vector<GradedModule> parts;
  std::vector<std::pair<int, int>> index;  // (summand i, shift j) of each part
  GradedModule sum() const { return direct_sum(parts); }
  int part(int i, int j) const;
};
TTilde build_T_tilde(const std::vector<GradedModule>& t, int n);

struct RigidityReport {
  bool pass = false;
  int l_bound = 0;
  std::optional<std::pair<int, int>> failure;  // (l, dim of the stable Hom)
  std::string note;
};
// stable Hom(X, Ω^{-l} X) = 0 for 0 < |l| <= l_bound. Generation of the stable category is not checked.
RigidityReport rigidity_check(const GradedModule& x, int l_bound);

// B = End of T̃ in the stable category, one vertex per part, e_p B e_q = stable Hom(part q, part p).
struct StableEndomorphism {
  AlgebraPtr algebra;
  std::vector<std::pair<int, int>> vertex_part;  // (summand, shift) for each vertex
  std::vector<std::vector<int>> block_dims;      // [j][i]: Σ over summands of stable Hom(parts at shift j, parts at shift i)
  std::vector<int> gamma_dims;                   // dim ⊕_{u,v} Ext^{nd}(T^u, T^v<d>), d < a
  std::vector<Matrix> representatives;           // homomorphism for each basis element
};
// Throws InternalError when the block pattern or basicness fails.
StableEndomorphism stable_endomorphism_algebra(const TTilde& tt, const std::vector<GradedModule>& t);

struct MuPermutation {
  std::vector<int> perm;          // T^i_μ ≅ T^{perm[i]}
  std::vector<Matrix> isos;       // T^i_μ -> T^{perm[i]}
  std::optional<int> offending;   // summand whose twist matched nothing
  bool probabilistic = false;
};
MuPermutation mu_permutation(const std::vector<GradedModule>& t, const GradedAlgebraMorphism& mu, std::uint64_t seed = 0);

struct ClassicAlmostKoszul {
  bool koszul_within_bound = false;  // generator degrees stayed linear up to the bound
  std::optional<std::pair<int, int>> gl;  // (g, l)
  int bound = 0;
  std::string detail;
};
// Requires Λ_0 semisimple (InputError otherwise).
ClassicAlmostKoszul check_classic_almost_koszul(const AlgebraPtr& a, int bound = 12);

struct CosyzygyHit {
  int l = 0, g = 0, target = 0;
};
struct AlmostSelfOrthogonal {
  Verdict verdict = Verdict::Inconclusive;
  std::vector<std::vector<CosyzygyHit>> hits;  // per summand, all hits at the first l
  std::optional<std::pair<int, Counterexample>> ext_failure;  // (summand, Ext^j(T, T^i<k>) with j != nk, j < l_i)
  bool probabilistic = false;
  int l_max = 0;
  std::vector<std::string> notes;
};
AlmostSelfOrthogonal check_almost_self_orthogonal(const std::vector<GradedModule>& t, int n, int l_max,
                                                  std::uint64_t seed = 0);

struct AlmostParams {
  int n = 1, a = 1;
  std::vector<int> l, g, m, sigma, pi;
  int sigma_R(int i, int j) const;
  int m_ij(int i, int j) const;
  // Uses the summand permutation of μ.
  int sigma_L(int i, int j, const std::vector<int>& mu) const;
};
struct NMSigmaReport {
  Verdict verdict = Verdict::Inconclusive;
  std::optional<AlmostParams> params;
  AlmostSelfOrthogonal almost;
  std::optional<TiltingReport> tilting;
  std::vector<int> mu;  // summand permutation of the Nakayama automorphism
  std::vector<std::string> notes;
  bool probabilistic = false;
};
NMSigmaReport check_n_m_sigma_koszul(const std::vector<GradedModule>& t, int n, int l_max, std::uint64_t seed = 0);
// (m, σ) from (l, g): l = nam - nσ + 1, g = a(m+1) - σ, 0 <= σ <= a-1.
std::optional<std::pair<int, int>> solve_m_sigma(int n, int a, int l, int g);

// μ̄ on the Koszul dual: γ ↦ τ ∘ γ_μ ∘ τ^{-1}, using the isomorphisms of `perm`.
TruncatedMorphism build_mu_bar(const KoszulDual& kd, const GradedAlgebraMorphism& mu, const MuPermutation& perm);

}  // namespace kk
