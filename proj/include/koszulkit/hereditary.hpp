#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "koszulkit/homology.hpp"
#include "koszulkit/koszul.hpp"

namespace kk {

// A complex over a degree-zero algebra, held as the direct sum of its cohomology modules
// placed in their cohomological degrees. Over a hereditary algebra every complex has this form;
// otherwise `split` drops to false as soon as a step produces cohomology in two degrees.
struct Stalk {
  int degree = 0;
  GradedModule module;
};
struct BoundedComplex {
  AlgebraPtr algebra;
  std::vector<Stalk> stalks;
  bool split = true;
  std::map<int, int> cohomology_dims() const;
  // Cohomology concentrated in degree 0 (the zero complex counts).
  bool is_stalk() const;
  GradedModule h0() const;
};
BoundedComplex stalk_complex(const GradedModule& m, int degree = 0);
BoundedComplex regular_complex(const AlgebraPtr& a);

// ν(e_v A) = D(A e_v) and back, for sums of indecomposable projectives (resp. injectives).
GradedModule nakayama_on_projectives(const GradedModule& p, std::uint64_t seed = 0);
GradedModule nakayama_inverse_on_injectives(const GradedModule& i, std::uint64_t seed = 0);
// ν of the map e_v A -> e_u A given by left multiplication with x ∈ e_u A e_v: D(A e_v) -> D(A e_u).
Matrix nakayama_on_element(const GradedAlgebra& a, int x);

// ν_n^{-1} = RHom(DA, -)[n] on modules: H^l(ν_n^{-1} M) e_w = Ext^{l+n}(D(A e_w), M).
class NuInverse {
 public:
  NuInverse(AlgebraPtr a, int n);
  const AlgebraPtr& algebra() const { return a_; }
  int n() const { return n_; }
  int gldim() const { return gldim_; }
  const std::vector<GradedModule>& injectives() const { return inj_; }

  // H^l(ν_n^{-1} M) for l in [-n, gldim - n]; zero modules are kept.
  std::map<int, GradedModule> apply(const GradedModule& m) const;
  GradedModule apply(const GradedModule& m, int l) const;
  // H^l(ν_n^{-1} h) for h: M -> M2, in the bases produced by apply.
  Matrix apply_map(const GradedModule& m, const GradedModule& m2, const Matrix& h, int l) const;
  BoundedComplex apply(const BoundedComplex& x) const;

 private:
  struct ExtData {
    std::vector<ExtGroup> groups;  // per vertex w: Ext^k(D(A e_w), M)
  };
  ExtData ext_data(const GradedModule& m, int k) const;
  GradedModule build(const GradedModule& m, int k, const ExtData& e) const;

  AlgebraPtr a_;
  int n_ = 1;
  int gldim_ = 0;
  std::vector<GradedModule> inj_;
  std::vector<ProjectiveResolution> inj_res_;
  std::vector<ChainLift> lifts_;  // per basis element x: u -> v, lift of D(A e_v) -> D(A e_u)
};

struct DerivedNuPower {
  std::vector<BoundedComplex> steps;  // steps[j] = ν_n^{-j} X
};
// Requires finite global dimension (checked against a cap of dim A).
DerivedNuPower derived_nu_inverse_power(const NuInverse& nu, const BoundedComplex& x, int i);

enum class NRepVerdict { Yes, No, NoWithinCap, PassUpToDepth };
std::string to_string(NRepVerdict v);

struct OrbitData {
  int projective = 0;
  std::optional<int> m;         // ν_n^{-m} P ≅ injective
  std::optional<int> endpoint;  // vertex of that injective
  std::vector<std::map<int, int>> cohomology;  // per step
  std::string detail;
};

struct NRepReport {
  bool finite_mode = true;
  int n = 1;
  NRepVerdict verdict = NRepVerdict::No;
  std::optional<int> gldim;
  std::vector<OrbitData> orbits;
  int depth = 0;                            // certified depth (infinite mode) or orbit cap (finite mode)
  std::optional<std::pair<int, int>> failure;  // (j, cohomological degree) of the first off-degree cohomology
  std::string detail;
};

NRepReport is_n_rep_finite(const AlgebraPtr& a, int n, int orbit_cap = 10, std::uint64_t seed = 0);
NRepReport is_n_rep_infinite_upto(const AlgebraPtr& a, int n, int depth);

// ⊕_{i <= d_max} Hom_D(A, ν_n^{-i} A), with e_u Π_i e_v = H^0(ν_n^{-i} e_u A) e_v and
// x·y = ν_n^{-deg y}(x) ∘ y.
TruncatedGradedAlgebra preprojective_algebra(const AlgebraPtr& a, int n, int d_max);

struct SerreEntry {
  int i = 0, l = 0;
  int stable = 0;   // dim of the stable Hom(T~, Ω^{-(nai+l)} T~<ai>)
  int derived = 0;  // dim H^l(ν_{na-1}^{-i} B)
};
struct SerreReport {
  std::vector<SerreEntry> entries;
  bool all_equal = false;
  bool exact = true;  // false when the ν-iteration over B could not be kept split
};
SerreReport serre_dimension_identity(const TTilde& tt, const StableEndomorphism& b, int i_max, int l_max);

}  // namespace kk
