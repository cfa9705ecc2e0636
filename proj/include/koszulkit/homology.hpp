#pragma once

#include <optional>
#include <string>
#include <vector>

#include "koszulkit/module.hpp"
#include "koszulkit/truncated.hpp"

namespace kk {

// Minimal graded projective resolution ... -> P^1 -> P^0 -> M -> 0.
struct ProjectiveResolution {
  GradedModule module;
  std::vector<FreeModule> terms;
  Matrix augmentation;               // P^0 -> M
  std::vector<Matrix> differentials; // differentials[i]: P^{i+1} -> P^i
  bool complete = false;             // every term after the last stored one is zero
  // Kernel of the last stored map, kept so the resolution can be extended.
  GradedModule kernel;
  Matrix kernel_inclusion;

  int computed() const { return static_cast<int>(terms.size()) - 1; }
  // True when P^i is known (possibly as the zero module past the end of a complete resolution).
  bool known(int i) const { return i <= computed() || complete; }
  const std::vector<Key>& generators(int i) const;
  std::optional<int> projective_dimension() const;
};

ProjectiveResolution projective_resolution(const GradedModule& m, int length);
void extend_resolution(ProjectiveResolution& r, int length);
// Every differential has entries in the radical: no generator maps to a generator.
bool is_minimal(const ProjectiveResolution& r);

// Hom(P^i, N<j>) in coordinates: for each generator (v, d) of P^i, the block N_(v, d - j).
int cochain_dim(const ProjectiveResolution& r, int i, const GradedModule& n, int j);
// δ: Hom(P^i, N<j>) -> Hom(P^{i+1}, N<j>), f ↦ f∘d.
Matrix coboundary(const ProjectiveResolution& r, int i, const GradedModule& n, int j);
// Value in N of the cochain f on an element y of P^i.
Vec evaluate_cochain(const ProjectiveResolution& r, int i, const GradedModule& n, int j, const Vec& f, const Vec& y);
// Value of the cochain f on each generator of P^i.
std::vector<Vec> cochain_values(const ProjectiveResolution& r, int i, const GradedModule& n, int j, const Vec& f);
// Cochain whose value on generator k of P^i is values[k] (a vector of N).
Vec cochain_from_values(const ProjectiveResolution& r, int i, const GradedModule& n, int j, const std::vector<Vec>& values);
// Cochain of the homomorphism h: M -> N<j> composed with the augmentation.
Vec hom_to_cochain(const ProjectiveResolution& r, const GradedModule& n, int j, const Matrix& h);

struct ExtGroup {
  int i = 0, j = 0;
  QuotientSpace classes;  // cocycles modulo coboundaries in cochain coordinates
  int dim() const { return classes.dim(); }
};
// Ext^i(M, N<j>); the resolution must reach P^{i+1}.
ExtGroup ext_group(const ProjectiveResolution& r, const GradedModule& n, int i, int j);
// Same group with a prescribed spanning list of cocycles, listed first among the representatives.
ExtGroup ext_group(const ProjectiveResolution& r, const GradedModule& n, int i, int j, const std::vector<Vec>& preferred);

struct ExtTable {
  int i_max = 0, j_min = 0, j_max = 0;
  std::vector<std::vector<int>> dims;  // dims[i][j - j_min]
  int at(int i, int j) const { return dims[i][j - j_min]; }
  std::string tsv() const;
};
ExtTable ext_table(const GradedModule& m, const GradedModule& n, int i_max, int j_min, int j_max);
ExtTable ext_table(ProjectiveResolution& r, const GradedModule& n, int i_max, int j_min, int j_max);

// Range of shifts j for which Ext^i(M, N<j>) can be nonzero.
std::pair<int, int> ext_support(const ProjectiveResolution& r, const GradedModule& n, int i);
int graded_ext_row_sum(ProjectiveResolution& r, const GradedModule& n, int i);

struct UngradedExt {
  int ungraded = 0;
  int graded_sum = 0;
};
// Ext^i over the algebra with its grading forgotten, compared with Σ_j Ext^i(M, N<j>);
// a mismatch raises InternalError.
UngradedExt ungraded_ext_dims(const GradedModule& m, const GradedModule& n, int i);

// Chain map P_L^{s+t} -> P_M^t<q> lifting a cocycle P_L^s -> M<q>;
// images[t][k] is the image of generator k of P_L^{s+t}.
struct ChainLift {
  int s = 0, q = 0;
  std::vector<std::vector<Vec>> images;
};
ChainLift lift_cocycle(const ProjectiveResolution& src, int s, const ProjectiveResolution& tgt, int q, const Vec& cocycle,
                       int steps);
// f ∘ g for g ∈ Ext^{p2}(L, M<q2>) (cocycle on src) and f ∈ Ext^{p}(M, N<q>) (cocycle on mid);
// the result is a cocycle for Ext^{p+p2}(L, N<q+q2>) on src.
Vec yoneda_product(const ProjectiveResolution& src, const ProjectiveResolution& mid, const GradedModule& n, int p, int q,
                   const Vec& f, int p2, int q2, const Vec& g);
Vec compose_with_lift(const ProjectiveResolution& src, const ProjectiveResolution& mid, const GradedModule& n, int p,
                      int q, const Vec& f, const ChainLift& lift);

// ⊕_i Ext^{ni}(T, T<i>) for T = ⊕ summands, with Hom(T^v, T^u) placed at (src, tgt) = (u, v).
struct KoszulDual {
  int n = 1;
  TruncatedGradedAlgebra algebra;
  std::vector<GradedModule> summands;
  std::vector<ProjectiveResolution> resolutions;
  // groups[d][u][v] = Ext^{nd}(T^v, T^u<d>); basis element x has cocycle classes.
  std::vector<std::vector<std::vector<ExtGroup>>> groups;
  std::vector<int> first;  // first basis index of each (d, u, v) group, in the order groups are laid out
  int index(int d, int u, int v) const;
  // Basis coordinates of a cocycle for Ext^{nd}(T^v, T^u<d>).
  Vec coordinates(int d, int u, int v, const Vec& cocycle) const;
  const Vec& cocycle(int x) const;
};
KoszulDual koszul_dual(const std::vector<GradedModule>& summands, int n, int d_max);

struct GldimResult {
  std::optional<int> gldim;  // exact value when every simple resolves within the bound
  int bound = 0;
};
GldimResult gldim_upto(const AlgebraPtr& a0, int bound);

enum class TiltingVerdict { Tilting, NotTilting, Inconclusive };
struct TiltingReport {
  TiltingVerdict verdict = TiltingVerdict::Inconclusive;
  std::optional<int> pd;
  int coresolution_length = -1;
  bool probabilistic = false;
  std::string detail;
};
// Summands are modules over the degree-zero algebra, concentrated in degree 0.
TiltingReport tilting_module_check(const std::vector<GradedModule>& summands, std::uint64_t seed = 0);

// Writes m as ⊕ summands[u]^{c_u} when possible: Hom-dimension fingerprint, then an isomorphism certificate.
struct AddDecomposition {
  std::vector<int> multiplicity;
  bool certified = false;
  bool probabilistic = false;
};
std::optional<AddDecomposition> decompose_in_add(const GradedModule& m, const std::vector<GradedModule>& summands,
                                                 std::uint64_t seed = 0);

}  // namespace kk
