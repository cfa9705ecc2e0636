#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "koszulkit/linalg.hpp"

namespace kk {

struct Arrow {
  std::string name;
  int src = 0, tgt = 0, deg = 0;
};

// A basis element x = e_src x e_tgt of degree deg. Products follow path order:
// x*y is nonzero only when tgt(x) == src(y).
struct BasisElement {
  int src = 0, tgt = 0, deg = 0;
  std::string label;
};

class GradedAlgebra {
 public:
  GradedAlgebra() = default;
  GradedAlgebra(std::string name, int vertices, std::vector<BasisElement> basis, std::vector<int> idempotents,
                std::vector<std::vector<SparseVec>> products);

  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }
  int vertices() const { return vertices_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const BasisElement& element(int x) const { return basis_[x]; }
  const std::vector<BasisElement>& basis() const { return basis_; }
  int idempotent(int v) const { return idem_[v]; }
  bool is_idempotent(int x) const { return is_idem_[x]; }
  const SparseVec& product(int x, int y) const { return prod_[x][y]; }
  Vec multiply(const Vec& a, const Vec& b) const;
  Vec unit() const;

  int highest_degree() const { return max_deg_; }
  int lowest_degree() const { return min_deg_; }
  // Basis elements with the given source (resp. target) vertex, increasing index order.
  const std::vector<int>& with_source(int v) const { return by_src_[v]; }
  const std::vector<int>& with_target(int v) const { return by_tgt_[v]; }
  // Non-idempotent basis elements spanning the radical modulo its square.
  const std::vector<int>& generators() const { return gens_; }
  int find_label(const std::string& label) const;

  // Arrows of the defining presentation, if any, and each arrow's class in the basis.
  const std::vector<Arrow>& arrows() const { return arrows_; }
  const std::vector<SparseVec>& arrow_forms() const { return arrow_forms_; }
  // Path decomposition of each basis element into arrow indices (presentation-built algebras).
  const std::vector<std::vector<int>>& paths() const { return paths_; }
  void set_presentation(std::vector<Arrow> arrows, std::vector<SparseVec> arrow_forms,
                        std::vector<std::vector<int>> paths);

  // Socle of e_v Λ as a vector over the basis, when it is one-dimensional.
  const std::optional<Vec>& right_socle(int v) const { return right_soc_[v]; }
  bool is_self_injective() const { return self_injective_; }
  // For self-injective algebras: soc(e_v Λ) is the simple at vertex nakayama_vertex(v).
  int nakayama_vertex(int v) const { return nak_[v]; }
  int socle_degree(int v) const { return soc_deg_[v]; }

  bool concentrated_in_degree_zero() const { return max_deg_ == 0; }

 private:
  void finalize();
  std::string name_;
  int vertices_ = 0;
  std::vector<BasisElement> basis_;
  std::vector<int> idem_;
  std::vector<char> is_idem_;
  std::vector<std::vector<SparseVec>> prod_;
  int max_deg_ = 0, min_deg_ = 0;
  std::vector<std::vector<int>> by_src_, by_tgt_;
  std::vector<int> gens_;
  std::vector<Arrow> arrows_;
  std::vector<SparseVec> arrow_forms_;
  std::vector<std::vector<int>> paths_;
  std::vector<std::optional<Vec>> right_soc_;
  std::vector<int> nak_, soc_deg_;
  bool self_injective_ = false;
};

using AlgebraPtr = std::shared_ptr<const GradedAlgebra>;

// Checks associativity, the unit law, degree additivity and vertex bookkeeping on
// all basis triples, and that the non-idempotent basis elements span the radical
// (so the vertex idempotents are primitive and pairwise non-isomorphic).
void validate_algebra(const GradedAlgebra& a);

// Radical of the degree-zero part by the trace form of the left regular representation.
std::vector<Vec> degree_zero_radical(const GradedAlgebra& a);

struct GradedAlgebraMorphism {
  Matrix matrix;  // column x holds the image of basis element x
  Vec apply(const Vec& v) const { return matrix * v; }
  // e_v -> e_{perm[v]} when every idempotent goes to an idempotent.
  std::optional<std::vector<int>> vertex_permutation(const GradedAlgebra& a) const;
  // Basis permutation when every basis element goes to a basis element.
  std::optional<std::vector<int>> basis_permutation() const;
};

GradedAlgebraMorphism identity_morphism(const GradedAlgebra& a);
GradedAlgebraMorphism compose(const GradedAlgebraMorphism& f, const GradedAlgebraMorphism& g);  // f after g
std::optional<GradedAlgebraMorphism> inverse(const GradedAlgebraMorphism& f);
// Unit, product, degree and idempotent preservation on all basis pairs.
bool is_graded_automorphism(const GradedAlgebra& a, const GradedAlgebraMorphism& f);

AlgebraPtr make_shared_algebra(GradedAlgebra a);

// A ⊕ DA with (a,f)(b,g) = (ab, ag + fb), DA placed in degree 1.
GradedAlgebra trivial_extension(const GradedAlgebra& a0);
GradedAlgebra opposite(const GradedAlgebra& a);
GradedAlgebra regrade(const GradedAlgebra& a, int n);
GradedAlgebra forget_grading(const GradedAlgebra& a);

struct DegreeZeroPart {
  GradedAlgebra algebra;
  std::vector<int> embedding;  // basis index in the big algebra for each basis element
};
DegreeZeroPart degree_zero_part(const GradedAlgebra& a);

// Graded dual bimodule: basis x* for every basis element x, x* in degree -deg x,
// with right action (f·b)(y) = f(by) and left action (b·f)(y) = f(yb).
struct GradedDual {
  std::vector<int> degrees;
  std::vector<int> src, tgt;
  std::vector<Matrix> right_action;  // per basis element, column convention
  std::vector<Matrix> left_action;
  std::map<int, int> dims_by_degree() const;
};
GradedDual graded_dual(const GradedAlgebra& a);

struct FrobeniusData {
  int a = 0;
  Vec form;  // functional on Λ supported on Λ_a; <x,y> = form(xy)
  Matrix gram;
  GradedAlgebraMorphism nakayama;  // <x,y> = <y, μ(x)>
  bool symmetric = false;
  std::optional<std::vector<int>> nakayama_vertices;
};

struct FrobeniusResult {
  std::optional<FrobeniusData> data;
  bool certified = true;  // false when "not Frobenius" rests on sampling only
  std::string reason;
};

FrobeniusResult frobenius_analysis(const GradedAlgebra& a, std::uint64_t seed = 0);

}  // namespace kk
