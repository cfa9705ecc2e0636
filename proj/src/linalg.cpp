#include "koszulkit/linalg.hpp"

#include <algorithm>

namespace kk {

Q parse_rational(const std::string& s) {
  std::string t;
  for (char c : s)
    if (c != ' ' && c != '\t') t += c;
  if (t.empty()) throw InputError("empty rational literal");
  size_t start = (t[0] == '+' || t[0] == '-') ? 1 : 0;
  size_t slash = t.find('/');
  auto digits = [](const std::string& d) {
    return !d.empty() && std::all_of(d.begin(), d.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  std::string num = t.substr(start, slash == std::string::npos ? std::string::npos : slash - start);
  if (!digits(num)) throw InputError("bad rational literal '" + s + "'");
  if (slash != std::string::npos && !digits(t.substr(slash + 1)))
    throw InputError("bad rational literal '" + s + "'");
  if (t[0] == '+') t = t.substr(1);
  Q q;
  if (q.set_str(t, 10) != 0) throw InputError("bad rational literal '" + s + "'");
  if (slash != std::string::npos && sgn(q.get_den()) == 0) throw InputError("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const Q& q) { return q.get_str(); }

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<Q>>& rows) {
  if (rows.empty()) return Matrix(0, 0);
  Matrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (int i = 0; i < m.rows(); ++i) {
    if (static_cast<int>(rows[i].size()) != m.cols()) throw InputError("ragged matrix rows");
    for (int j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Matrix Matrix::from_columns(const std::vector<Vec>& cols, int rows) {
  Matrix m(rows, static_cast<int>(cols.size()));
  for (int j = 0; j < m.cols(); ++j) {
    if (static_cast<int>(cols[j].size()) != rows) throw InputError("column length mismatch");
    for (int i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

Vec Matrix::row(int i) const { return Vec(a_.begin() + static_cast<size_t>(i) * c_, a_.begin() + static_cast<size_t>(i + 1) * c_); }

Vec Matrix::column(int j) const {
  Vec v(r_);
  for (int i = 0; i < r_; ++i) v[i] = (*this)(i, j);
  return v;
}

Matrix Matrix::transpose() const {
  Matrix t(c_, r_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j)
      if (!kk::is_zero((*this)(i, j))) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::select(const std::vector<int>& rows, const std::vector<int>& cols) const {
  Matrix s(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < cols.size(); ++j) {
      const Q& x = (*this)(rows[i], cols[j]);
      if (!kk::is_zero(x)) s(static_cast<int>(i), static_cast<int>(j)) = x;
    }
  return s;
}

void Matrix::place(const std::vector<int>& rows, const std::vector<int>& cols, const Matrix& b) {
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < cols.size(); ++j) (*this)(rows[i], cols[j]) = b(static_cast<int>(i), static_cast<int>(j));
}

bool Matrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const Q& q) { return kk::is_zero(q); });
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (c_ != o.r_) throw InputError("matrix product dimension mismatch");
  Matrix p(r_, o.c_);
  Q t;
  for (int i = 0; i < r_; ++i)
    for (int k = 0; k < c_; ++k) {
      const Q& x = (*this)(i, k);
      if (kk::is_zero(x)) continue;
      for (int j = 0; j < o.c_; ++j) {
        const Q& y = o(k, j);
        if (kk::is_zero(y)) continue;
        t = x * y;
        p(i, j) += t;
      }
    }
  return p;
}

Vec Matrix::operator*(const Vec& v) const {
  if (c_ != static_cast<int>(v.size())) throw InputError("matrix-vector dimension mismatch");
  Vec out(r_);
  Q t;
  for (int k = 0; k < c_; ++k) {
    if (kk::is_zero(v[k])) continue;
    for (int i = 0; i < r_; ++i) {
      const Q& x = (*this)(i, k);
      if (kk::is_zero(x)) continue;
      t = x * v[k];
      out[i] += t;
    }
  }
  return out;
}

Matrix Matrix::operator+(const Matrix& o) const {
  Matrix s = *this;
  s += o;
  return s;
}

Matrix& Matrix::operator+=(const Matrix& o) {
  if (r_ != o.r_ || c_ != o.c_) throw InputError("matrix sum dimension mismatch");
  for (size_t i = 0; i < a_.size(); ++i)
    if (!kk::is_zero(o.a_[i])) a_[i] += o.a_[i];
  return *this;
}

Matrix Matrix::operator-(const Matrix& o) const {
  if (r_ != o.r_ || c_ != o.c_) throw InputError("matrix difference dimension mismatch");
  Matrix s = *this;
  for (size_t i = 0; i < a_.size(); ++i)
    if (!kk::is_zero(o.a_[i])) s.a_[i] -= o.a_[i];
  return s;
}

Matrix Matrix::scaled(const Q& s) const {
  Matrix m = *this;
  for (auto& x : m.a_)
    if (!kk::is_zero(x)) x *= s;
  return m;
}

bool Matrix::operator==(const Matrix& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }

Matrix hstack(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw InputError("hstack row mismatch");
  Matrix m(a.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (int j = 0; j < b.cols(); ++j) m(i, a.cols() + j) = b(i, j);
  }
  return m;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) throw InputError("vstack column mismatch");
  Matrix m(a.rows() + b.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) m(a.rows() + i, j) = b(i, j);
  return m;
}

Matrix block_diagonal(const std::vector<Matrix>& blocks) {
  int r = 0, c = 0;
  for (const auto& b : blocks) r += b.rows(), c += b.cols();
  Matrix m(r, c);
  int i0 = 0, j0 = 0;
  for (const auto& b : blocks) {
    for (int i = 0; i < b.rows(); ++i)
      for (int j = 0; j < b.cols(); ++j) m(i0 + i, j0 + j) = b(i, j);
    i0 += b.rows();
    j0 += b.cols();
  }
  return m;
}

Rref rref(Matrix m) {
  Rref out;
  int r = m.rows(), c = m.cols();
  int prow = 0;
  Q f, t;
  for (int col = 0; col < c && prow < r; ++col) {
    int piv = -1;
    for (int i = prow; i < r; ++i)
      if (!is_zero(m(i, col))) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != prow)
      for (int j = col; j < c; ++j) std::swap(m(piv, j), m(prow, j));
    if (m(prow, col) != 1) {
      f = 1 / m(prow, col);
      for (int j = col; j < c; ++j)
        if (!is_zero(m(prow, j))) m(prow, j) *= f;
    }
    std::vector<int> nz;
    for (int j = col + 1; j < c; ++j)
      if (!is_zero(m(prow, j))) nz.push_back(j);
    for (int i = 0; i < r; ++i) {
      if (i == prow || is_zero(m(i, col))) continue;
      f = m(i, col);
      m(i, col) = 0;
      for (int j : nz) {
        t = f * m(prow, j);
        m(i, j) -= t;
      }
    }
    out.pivots.push_back(col);
    ++prow;
  }
  out.m = std::move(m);
  return out;
}

int rank(const Matrix& m) {
  RowReducer rr(m.cols());
  for (int i = 0; i < m.rows(); ++i) rr.add_dense(m.row(i));
  return rr.rank();
}

std::vector<Vec> kernel_basis(const Matrix& m) {
  RowReducer rr(m.cols());
  for (int i = 0; i < m.rows(); ++i) rr.add_dense(m.row(i));
  return rr.kernel();
}

std::optional<Vec> solve(const Matrix& a, const Vec& b) {
  if (a.rows() != static_cast<int>(b.size())) throw InputError("solve: rows(a) != length(b)");
  Matrix aug(a.rows(), a.cols() + 1);
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  Rref r = rref(std::move(aug));
  Vec x(a.cols());
  for (size_t k = 0; k < r.pivots.size(); ++k) {
    int p = r.pivots[k];
    if (p == a.cols()) return std::nullopt;
    x[p] = r.m(static_cast<int>(k), a.cols());
  }
  return x;
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  int n = m.rows();
  Rref r = rref(hstack(m, Matrix::identity(n)));
  if (static_cast<int>(r.pivots.size()) < n || (n > 0 && r.pivots[n - 1] != n - 1)) return std::nullopt;
  Matrix inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv(i, j) = r.m(i, n + j);
  return inv;
}

std::vector<int> independent_columns(const Matrix& m) {
  RowReducer rr(m.rows());
  std::vector<int> out;
  for (int j = 0; j < m.cols(); ++j)
    if (rr.add_dense(m.column(j))) out.push_back(j);
  return out;
}

Matrix left_inverse(const Matrix& m) {
  std::vector<int> rows = independent_columns(m.transpose());
  if (static_cast<int>(rows.size()) != m.cols()) throw InternalError("left_inverse: matrix lacks full column rank");
  std::vector<int> all(m.cols());
  for (int j = 0; j < m.cols(); ++j) all[j] = j;
  auto inv = inverse(m.select(rows, all));
  if (!inv) throw InternalError("left_inverse: singular selection");
  Matrix l(m.cols(), m.rows());
  for (int i = 0; i < m.cols(); ++i)
    for (size_t k = 0; k < rows.size(); ++k) l(i, rows[k]) = (*inv)(i, static_cast<int>(k));
  return l;
}

std::vector<int> complement_indices(const Matrix& m) {
  RowReducer rr(m.rows());
  for (int j = 0; j < m.cols(); ++j) rr.add_dense(m.column(j));
  std::vector<int> out;
  for (int i = 0; i < m.rows(); ++i)
    if (rr.add(SparseVec{{i, Q(1)}})) out.push_back(i);
  return out;
}

Vec add(const Vec& a, const Vec& b) {
  Vec s = a;
  for (size_t i = 0; i < b.size(); ++i)
    if (!is_zero(b[i])) s[i] += b[i];
  return s;
}

Vec scale(const Vec& a, const Q& s) {
  Vec v = a;
  for (auto& x : v)
    if (!is_zero(x)) x *= s;
  return v;
}

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Q& q) { return is_zero(q); });
}

SparseVec to_sparse(const Vec& v) {
  SparseVec s;
  for (size_t i = 0; i < v.size(); ++i)
    if (!is_zero(v[i])) s.emplace_back(static_cast<int>(i), v[i]);
  return s;
}

SparseVec RowReducer::reduce(const SparseVec& row) const {
  std::map<int, Q> w;
  for (const auto& [j, x] : row)
    if (!is_zero(x)) w[j] += x;
  Q t;
  for (auto it = w.begin(); it != w.end();) {
    if (is_zero(it->second)) {
      it = w.erase(it);
      continue;
    }
    auto p = rows_.find(it->first);
    if (p == rows_.end()) {
      ++it;
      continue;
    }
    Q f = it->second;
    for (const auto& [j, x] : p->second) {
      t = f * x;
      w[j] -= t;
    }
    it = w.erase(it);
  }
  SparseVec out;
  for (auto& [j, x] : w)
    if (!is_zero(x)) out.emplace_back(j, x);
  return out;
}

bool RowReducer::add(const SparseVec& row) {
  SparseVec r = reduce(row);
  if (r.empty()) return false;
  Q inv = 1 / r.front().second;
  for (auto& e : r) e.second *= inv;
  rows_.emplace(r.front().first, std::move(r));
  reduced_ = false;
  return true;
}

bool RowReducer::add_dense(const Vec& row) { return add(to_sparse(row)); }

void RowReducer::back_substitute() {
  if (reduced_) return;
  Q t;
  for (auto it = rows_.rbegin(); it != rows_.rend(); ++it) {
    std::map<int, Q> w(it->second.begin(), it->second.end());
    for (auto jt = std::next(w.begin()); jt != w.end();) {
      if (is_zero(jt->second)) {
        jt = w.erase(jt);
        continue;
      }
      auto p = rows_.find(jt->first);
      if (p == rows_.end()) {
        ++jt;
        continue;
      }
      Q f = jt->second;
      for (const auto& [j, x] : p->second) {
        t = f * x;
        w[j] -= t;
      }
      jt = w.erase(jt);
    }
    SparseVec out;
    for (auto& [j, x] : w)
      if (!is_zero(x)) out.emplace_back(j, x);
    it->second = std::move(out);
  }
  reduced_ = true;
}

std::vector<Vec> RowReducer::kernel() {
  back_substitute();
  std::vector<Vec> out;
  std::vector<char> pivot(n_, 0);
  for (const auto& [p, r] : rows_) pivot[p] = 1;
  std::vector<std::vector<std::pair<int, Q>>> by_free(n_);
  for (const auto& [p, r] : rows_)
    for (const auto& [j, x] : r)
      if (j != p) by_free[j].emplace_back(p, x);
  for (int f = 0; f < n_; ++f) {
    if (pivot[f]) continue;
    Vec v(n_);
    v[f] = 1;
    for (const auto& [p, x] : by_free[f]) v[p] = -x;
    out.push_back(std::move(v));
  }
  return out;
}

QuotientSpace::QuotientSpace(int ambient, const std::vector<Vec>& span, const std::vector<Vec>& sub) : ambient_(ambient) {
  RowReducer rr(ambient);
  for (const auto& w : sub)
    if (rr.add_dense(w)) sub_.push_back(w);
  for (const auto& v : span)
    if (rr.add_dense(v)) reps_.push_back(v);
  std::vector<Vec> cols = reps_;
  cols.insert(cols.end(), sub_.begin(), sub_.end());
  if (cols.empty()) return;
  Matrix m = Matrix::from_columns(cols, ambient);
  coord_ = left_inverse(m);
}

Vec QuotientSpace::coordinates(const Vec& v) const {
  Vec out(reps_.size());
  if (reps_.empty() && sub_.empty()) {
    if (!is_zero(v)) throw InternalError("QuotientSpace: vector outside the spanning space");
    return out;
  }
  Vec y = coord_ * v;
  Vec back(ambient_);
  Q t;
  for (size_t k = 0; k < y.size(); ++k) {
    if (is_zero(y[k])) continue;
    const Vec& b = k < reps_.size() ? reps_[k] : sub_[k - reps_.size()];
    for (int i = 0; i < ambient_; ++i)
      if (!is_zero(b[i])) {
        t = y[k] * b[i];
        back[i] += t;
      }
  }
  if (back != v) throw InternalError("QuotientSpace: vector outside the spanning space");
  for (size_t k = 0; k < reps_.size(); ++k) out[k] = y[k];
  return out;
}

}  // namespace kk
