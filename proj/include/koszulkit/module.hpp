#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "koszulkit/algebra.hpp"

namespace kk {

// Vertex and internal degree of a homogeneous piece M e_v ∩ M_d.
struct Key {
  int v = 0, d = 0;
  bool operator<(const Key& o) const { return d != o.d ? d < o.d : v < o.v; }
  bool operator==(const Key& o) const { return v == o.v && d == o.d; }
  bool operator!=(const Key& o) const { return !(*this == o); }
};

std::string to_string(const Key& k);

// Finite-dimensional graded right module. Basis vectors are tagged by keys; the
// action of a basis element x is stored as blocks from a source key (s(x), d) to
// the target key (t(x), d + deg x), with m·x = block * m (column convention).
class GradedModule {
 public:
  GradedModule() = default;
  GradedModule(AlgebraPtr alg, std::vector<Key> tags, std::string name = "");

  const AlgebraPtr& algebra() const { return alg_; }
  const GradedAlgebra& alg() const { return *alg_; }
  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }
  int dim() const { return static_cast<int>(tags_.size()); }
  bool is_zero() const { return tags_.empty(); }
  const std::vector<Key>& tags() const { return tags_; }
  const std::map<Key, std::vector<int>>& blocks() const { return index_; }
  const std::vector<int>& block(const Key& k) const;
  int block_dim(const Key& k) const { return static_cast<int>(block(k).size()); }
  Key target_key(int x, const Key& src) const {
    return {alg_->element(x).tgt, src.d + alg_->element(x).deg};
  }

  // Block of x leaving `src`; nullptr when it is zero.
  const Matrix* action_block(int x, const Key& src) const;
  void set_block(int x, const Key& src, Matrix m);
  Vec act(const Vec& m, int x) const;
  Vec act(const Vec& m, const Vec& lambda) const;
  Matrix action_matrix(int x) const;

  int highest_degree() const;
  int lowest_degree() const;
  std::map<int, int> dims_by_degree() const;
  // Sets identity blocks for the vertex idempotents.
  void set_idempotent_actions();

 private:
  AlgebraPtr alg_;
  std::string name_;
  std::vector<Key> tags_;
  std::map<Key, std::vector<int>> index_;
  std::vector<std::map<Key, Matrix>> act_;
};

// Right-module axioms for every pair of basis elements, idempotent actions and degree bookkeeping.
void validate_module(const GradedModule& m);
bool same_module(const GradedModule& a, const GradedModule& b);

Vec local_coords(const GradedModule& m, const Vec& v, const Key& k);
Vec unit_vector(int n, int i);

GradedModule shift(const GradedModule& m, int j);
GradedModule direct_sum(const std::vector<GradedModule>& ms);
// Offsets of each summand inside direct_sum(ms).
std::vector<int> summand_offsets(const std::vector<GradedModule>& ms);
// M_φ: same space, m·λ = m φ(λ). φ must send vertex idempotents to vertex idempotents.
GradedModule twist_module(const GradedModule& m, const GradedAlgebraMorphism& phi);
GradedModule simple_module(const AlgebraPtr& a, int v, int d = 0);
// e_v Λ_0 regarded as a Λ-module concentrated in degree d (positive degrees act by zero).
GradedModule degree_zero_projective(const AlgebraPtr& a, int v, int d = 0);
// Restriction along the inclusion of the degree-zero part; `zero` is the degree-zero algebra.
GradedModule restrict_to_degree_zero(const GradedModule& m, const AlgebraPtr& zero, const std::vector<int>& embedding);
// Same space and action, viewed over another algebra with the same basis (e.g. with the grading forgotten).
GradedModule change_algebra(const GradedModule& m, const AlgebraPtr& other, bool forget_degrees);

// Direct sum of e_v Λ<j>; summand k has basis with_source(v) in order, starting at offset[k].
struct FreeModule {
  GradedModule module;
  std::vector<Key> gens;
  std::vector<int> offset;
};
FreeModule free_module(const AlgebraPtr& a, const std::vector<Key>& gens);
// The homomorphism F -> N sending generator k to images[k].
Matrix map_from_free(const FreeModule& f, const GradedModule& n, const std::vector<Vec>& images);

// Direct sum of D(Λ e_w)<j>; summand k has basis y* for y in with_target(w), tagged (s(y), j - deg y).
struct CofreeModule {
  GradedModule module;
  std::vector<Key> cogens;
  std::vector<int> offset;
};
CofreeModule cofree_module(const AlgebraPtr& a, const std::vector<Key>& cogens);
// The homomorphism X -> I with h(m) = Σ_k Σ_y ψ_k(m·y) y*_k.
Matrix map_to_cofree(const GradedModule& x, const CofreeModule& i, const std::vector<Vec>& functionals);

GradedModule projective(const AlgebraPtr& a, int v, int j = 0);
GradedModule injective(const AlgebraPtr& a, int w, int j = 0);

// Subspace given per key by column bases (key-local coordinates).
using KeySpaces = std::map<Key, Matrix>;

struct Submodule {
  GradedModule module;
  Matrix inclusion;  // dim M x dim S
};
struct Quotient {
  GradedModule module;
  Matrix projection;  // dim Q x dim M
  Matrix section;     // dim M x dim Q, a linear (not module) splitting
};
Submodule submodule(const GradedModule& m, const KeySpaces& spaces);
Quotient quotient(const GradedModule& m, const KeySpaces& spaces);
KeySpaces image_spaces(const GradedModule& target, const GradedModule& source, const Matrix& f);
KeySpaces kernel_spaces(const GradedModule& source, const GradedModule& target, const Matrix& f);

KeySpaces radical_spaces(const GradedModule& m);
KeySpaces socle_spaces(const GradedModule& m);

// Homomorphisms N.dim x M.dim, degree 0.
std::vector<Matrix> hom_space(const GradedModule& m, const GradedModule& n);
bool is_homomorphism(const GradedModule& m, const GradedModule& n, const Matrix& f);

struct ProjectiveCover {
  FreeModule cover;
  Matrix epi;
};
ProjectiveCover projective_cover(const GradedModule& m);

struct InjectiveEnvelope {
  CofreeModule envelope;
  Matrix mono;
};
InjectiveEnvelope injective_envelope(const GradedModule& m);

// Kernel of the projective cover and cokernel of the injective envelope, before stripping.
Submodule raw_syzygy(const GradedModule& m, const ProjectiveCover& pc);
Quotient raw_cosyzygy(const GradedModule& m, const InjectiveEnvelope& ie);

struct StrippedModule {
  GradedModule module;             // no indecomposable projective summands
  std::vector<Key> removed;        // e_v Λ<j> summands split off
  Matrix inclusion;                // module -> original
};
StrippedModule strip_projective_summands(const GradedModule& m);

GradedModule syzygy(const GradedModule& m);
GradedModule cosyzygy(const GradedModule& m);
// Ω^k for k >= 0 and Ω^{-k} for k < 0, stripped at every stage.
GradedModule omega_power(const GradedModule& m, int k);

// Coordinates for degree-0 maps M -> N: entries inside common key blocks.
class HomCoordinates {
 public:
  HomCoordinates(const GradedModule& m, const GradedModule& n);
  int size() const { return static_cast<int>(entries_.size()); }
  Vec flatten(const Matrix& f) const;
  Matrix unflatten(const Vec& v) const;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<std::pair<int, int>> entries_;
};

struct StableHom {
  std::vector<Matrix> homs;       // basis of Hom(M, N)
  std::vector<Matrix> projective; // spanning set of maps factoring through projectives
  std::vector<Matrix> reps;       // representatives of a basis of the quotient
  QuotientSpace quotient;
  HomCoordinates coords;
  int dim() const { return quotient.dim(); }
  Vec classes(const Matrix& f) const { return quotient.coordinates(coords.flatten(f)); }
};
StableHom stable_hom(const GradedModule& m, const GradedModule& n);

enum class IsoVerdict { Yes, NoCertified, NoProbabilistic };
struct IsoResult {
  IsoVerdict verdict = IsoVerdict::NoCertified;
  std::optional<Matrix> iso;  // N.dim x M.dim
  bool yes() const { return verdict == IsoVerdict::Yes; }
};
IsoResult is_isomorphic(const GradedModule& m, const GradedModule& n, std::uint64_t seed = 0);
bool same_graded_dims(const GradedModule& m, const GradedModule& n);

struct IndecomposableResult {
  bool indecomposable = false;
  int end_dim = 0;
  int top_dim = 0;  // dim End/rad End
};
IndecomposableResult is_indecomposable(const GradedModule& m);

struct Truncations {
  GradedModule at_least;  // M_{>= i}
  GradedModule at_most;   // M_{<= i}
  GradedModule exactly;   // M_i
};
Truncations truncations(const GradedModule& m, int i);

// Total dimension of M e_v for each vertex, per degree.
std::map<Key, int> graded_dimension_vector(const GradedModule& m);

}  // namespace kk
