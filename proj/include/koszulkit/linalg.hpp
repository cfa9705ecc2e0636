#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kk {

using Q = mpq_class;
using Vec = std::vector<Q>;
using SparseVec = std::vector<std::pair<int, Q>>;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when an identity that must hold unconditionally fails; always a bug.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

inline bool is_zero(const Q& q) { return sgn(q) == 0; }

Q parse_rational(const std::string& s);
std::string to_string(const Q& q);

class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<size_t>(rows) * cols) {}

  static Matrix identity(int n);
  static Matrix from_rows(const std::vector<std::vector<Q>>& rows);
  static Matrix from_columns(const std::vector<Vec>& cols, int rows);

  int rows() const { return r_; }
  int cols() const { return c_; }

  Q& operator()(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }
  const Q& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }

  Vec row(int i) const;
  Vec column(int j) const;
  Matrix transpose() const;
  Matrix select(const std::vector<int>& rows, const std::vector<int>& cols) const;
  // Writes `b` into this matrix at the given row/column index lists.
  void place(const std::vector<int>& rows, const std::vector<int>& cols, const Matrix& b);
  bool is_zero() const;

  Matrix operator*(const Matrix& o) const;
  Vec operator*(const Vec& v) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix scaled(const Q& s) const;
  Matrix& operator+=(const Matrix& o);
  bool operator==(const Matrix& o) const;

 private:
  int r_ = 0, c_ = 0;
  std::vector<Q> a_;
};

Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);
Matrix block_diagonal(const std::vector<Matrix>& blocks);

struct Rref {
  Matrix m;
  std::vector<int> pivots;
};

Rref rref(Matrix m);
int rank(const Matrix& m);
std::vector<Vec> kernel_basis(const Matrix& m);
std::optional<Vec> solve(const Matrix& a, const Vec& b);
std::optional<Matrix> inverse(const Matrix& m);
// Basis of the column space, chosen among the columns of `m`.
std::vector<int> independent_columns(const Matrix& m);
// L with L * m = I for a matrix of full column rank.
Matrix left_inverse(const Matrix& m);
// Indices of standard basis vectors completing the columns of `m` to a basis.
std::vector<int> complement_indices(const Matrix& m);

Vec add(const Vec& a, const Vec& b);
Vec scale(const Vec& a, const Q& s);
bool is_zero(const Vec& v);

// Incremental Gaussian elimination over sparse rows.
class RowReducer {
 public:
  explicit RowReducer(int ncols) : n_(ncols) {}
  // Returns true when the row was independent of the rows added so far.
  bool add(const SparseVec& row);
  bool add_dense(const Vec& row);
  int rank() const { return static_cast<int>(rows_.size()); }
  int cols() const { return n_; }
  std::vector<Vec> kernel();
  SparseVec reduce(const SparseVec& row) const;
  // Rows keyed by pivot column, fully reduced against each other.
  const std::map<int, SparseVec>& reduced_rows() {
    back_substitute();
    return rows_;
  }

 private:
  void back_substitute();
  int n_;
  std::map<int, SparseVec> rows_;
  bool reduced_ = true;
};

SparseVec to_sparse(const Vec& v);

// Linear map from an ambient space onto coordinates of V/W, given bases of
// V (spanning, containing W) and W.
class QuotientSpace {
 public:
  QuotientSpace() = default;
  QuotientSpace(int ambient, const std::vector<Vec>& span, const std::vector<Vec>& sub);
  int dim() const { return static_cast<int>(reps_.size()); }
  const std::vector<Vec>& representatives() const { return reps_; }
  const std::vector<Vec>& subspace_basis() const { return sub_; }
  // Coordinates of v (assumed in V) modulo W; throws if v is not in V.
  Vec coordinates(const Vec& v) const;

 private:
  int ambient_ = 0;
  std::vector<Vec> reps_;
  std::vector<Vec> sub_;
  Matrix coord_;  // maps ambient vectors to [rep coords ; sub coords]
  std::vector<int> rows_;
};

// Deterministic integer sampler in [-5, 5] used by randomized certificate searches.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}
  int next() { return static_cast<int>(rng_() % 11) - 5; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace kk
