#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "koszulkit/algebra.hpp"

namespace kk {

// Element of e_src Γ_deg e_tgt. For Ext and Hom algebras an element in
// Hom(T^v, T^u) sits at (src, tgt) = (u, v), so products follow path order.
struct TruncatedElement {
  int deg = 0, src = 0, tgt = 0;
  std::string label;
};

class TruncatedGradedAlgebra {
 public:
  TruncatedGradedAlgebra() = default;
  // Basis must be sorted by degree; products with degree sum above the cutoff are ignored.
  TruncatedGradedAlgebra(int cutoff, int vertices, std::vector<TruncatedElement> basis, std::vector<int> idempotents,
                         std::vector<std::vector<SparseVec>> products);

  int cutoff() const { return cutoff_; }
  int vertices() const { return vertices_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const TruncatedElement& element(int x) const { return basis_[x]; }
  const std::vector<TruncatedElement>& basis() const { return basis_; }
  int idempotent(int v) const { return idem_[v]; }
  const SparseVec& product(int x, int y) const { return prod_[x][y]; }
  bool defined(int x, int y) const { return basis_[x].deg + basis_[y].deg <= cutoff_; }
  Vec multiply(const Vec& a, const Vec& b) const;
  // Basis indices in degree d.
  std::vector<int> in_degree(int d) const;
  std::vector<int> dims() const;  // per degree 0..cutoff
  int dim(int d, int u, int v) const;

 private:
  int cutoff_ = 0;
  int vertices_ = 0;
  std::vector<TruncatedElement> basis_;
  std::vector<int> idem_;
  std::vector<std::vector<SparseVec>> prod_;
};

struct TruncatedMorphism {
  Matrix matrix;  // column x holds the image of basis element x
};

TruncatedGradedAlgebra truncate(const GradedAlgebra& a, int cutoff);
// Associativity on all triples whose products stay within the cutoff; returns a description of the first failure.
std::optional<std::string> associativity_failure(const TruncatedGradedAlgebra& g);
bool is_automorphism(const TruncatedGradedAlgebra& g, const TruncatedMorphism& f);
TruncatedMorphism identity_morphism(const TruncatedGradedAlgebra& g);
TruncatedMorphism compose(const TruncatedMorphism& f, const TruncatedMorphism& g);
std::optional<TruncatedMorphism> inverse(const TruncatedMorphism& f);
// Vertex permutation induced on idempotents, if the morphism maps them to idempotents.
std::optional<std::vector<int>> vertex_permutation(const TruncatedGradedAlgebra& g, const TruncatedMorphism& f);

// Block (j,k) of degree i holds Γ_{ri+k-j}; vertex (j,u) has index j*V + u.
TruncatedGradedAlgebra quasi_veronese(const TruncatedGradedAlgebra& g, int r);
// γ·γ' = φ^i(γ)γ' for γ' of degree i.
TruncatedGradedAlgebra twist_algebra(const TruncatedGradedAlgebra& g, const TruncatedMorphism& phi);
TruncatedMorphism induced_veronese_automorphism(const TruncatedGradedAlgebra& g, const TruncatedMorphism& phi, int r);

bool same_structure(const TruncatedGradedAlgebra& a, const TruncatedGradedAlgebra& b);
void dump(std::ostream& out, const TruncatedGradedAlgebra& g);

struct TruncatedIsoResult {
  bool dims_match = false;
  std::optional<std::vector<int>> vertex_map;  // vertex of the first algebra -> vertex of the second
  std::optional<TruncatedMorphism> iso;        // columns: images in the second algebra's basis
  std::string detail;
};

// Bigraded dimension comparison, then a search for an isomorphism determined by
// its values in degrees 0 and 1 and checked on every product up to the common cutoff.
TruncatedIsoResult find_isomorphism(const TruncatedGradedAlgebra& a, const TruncatedGradedAlgebra& b,
                                    std::uint64_t seed = 0);

}  // namespace kk
