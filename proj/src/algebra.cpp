#include "koszulkit/algebra.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace kk {

namespace {

void accumulate(std::map<int, Q>& acc, const SparseVec& v, const Q& c) {
  Q t;
  for (const auto& [z, x] : v) {
    t = c * x;
    acc[z] += t;
  }
}

SparseVec from_map(const std::map<int, Q>& m) {
  SparseVec s;
  for (const auto& [j, x] : m)
    if (!is_zero(x)) s.emplace_back(j, x);
  return s;
}

// Kernel of z -> z*g (side = right) or g*z (side = left) over the span of `candidates`.
std::vector<Vec> annihilated(const GradedAlgebra& a, const std::vector<int>& candidates, bool right) {
  const auto& gens = a.generators();
  // Each generator contributes a block of equations indexed by output basis element.
  int n = static_cast<int>(candidates.size());
  std::map<std::pair<int, int>, SparseVec> eqs;  // (gen, output) -> coefficients over candidates
  for (int k = 0; k < n; ++k) {
    int z = candidates[k];
    for (size_t gi = 0; gi < gens.size(); ++gi) {
      const SparseVec& p = right ? a.product(z, gens[gi]) : a.product(gens[gi], z);
      for (const auto& [w, c] : p) eqs[{static_cast<int>(gi), w}].emplace_back(k, c);
    }
  }
  RowReducer rr(n);
  for (auto& [key, row] : eqs) rr.add(row);
  std::vector<Vec> out;
  for (const Vec& k : rr.kernel()) {
    Vec v(a.dim());
    for (int i = 0; i < n; ++i) v[candidates[i]] = k[i];
    out.push_back(std::move(v));
  }
  return out;
}

int support_vertex(const GradedAlgebra& a, const Vec& v, bool target) {
  for (int i = 0; i < a.dim(); ++i)
    if (!is_zero(v[i])) return target ? a.element(i).tgt : a.element(i).src;
  return -1;
}

int support_degree(const GradedAlgebra& a, const Vec& v) {
  for (int i = 0; i < a.dim(); ++i)
    if (!is_zero(v[i])) return a.element(i).deg;
  return 0;
}

}  // namespace

GradedAlgebra::GradedAlgebra(std::string name, int vertices, std::vector<BasisElement> basis,
                             std::vector<int> idempotents, std::vector<std::vector<SparseVec>> products)
    : name_(std::move(name)),
      vertices_(vertices),
      basis_(std::move(basis)),
      idem_(std::move(idempotents)),
      prod_(std::move(products)) {
  if (static_cast<int>(idem_.size()) != vertices_) throw InputError("idempotent list does not match vertex count");
  if (static_cast<int>(prod_.size()) != dim()) throw InputError("product table has wrong size");
  for (const auto& row : prod_)
    if (static_cast<int>(row.size()) != dim()) throw InputError("product table has wrong size");
  finalize();
}

void GradedAlgebra::finalize() {
  const int n = dim();
  is_idem_.assign(n, 0);
  for (int v = 0; v < vertices_; ++v) {
    int e = idem_[v];
    if (e < 0 || e >= n || basis_[e].src != v || basis_[e].tgt != v || basis_[e].deg != 0)
      throw InputError("idempotent e" + std::to_string(v + 1) + " is malformed");
    is_idem_[e] = 1;
  }
  max_deg_ = 0;
  min_deg_ = 0;
  by_src_.assign(vertices_, {});
  by_tgt_.assign(vertices_, {});
  for (int x = 0; x < n; ++x) {
    const auto& b = basis_[x];
    if (b.src < 0 || b.src >= vertices_ || b.tgt < 0 || b.tgt >= vertices_)
      throw InputError("basis element " + b.label + " has an endpoint out of range");
    max_deg_ = std::max(max_deg_, b.deg);
    min_deg_ = std::min(min_deg_, b.deg);
    by_src_[b.src].push_back(x);
    by_tgt_[b.tgt].push_back(x);
  }
  if (min_deg_ < 0) throw InputError("algebra has basis elements of negative degree");

  RowReducer rr(n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (!is_idem_[x] && !is_idem_[y] && !prod_[x][y].empty()) rr.add(prod_[x][y]);
  std::vector<int> order;
  for (int x = 0; x < n; ++x)
    if (!is_idem_[x]) order.push_back(x);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return basis_[x].deg < basis_[y].deg; });
  gens_.clear();
  for (int x : order)
    if (rr.add(SparseVec{{x, Q(1)}})) gens_.push_back(x);
  std::sort(gens_.begin(), gens_.end());

  right_soc_.assign(vertices_, std::nullopt);
  nak_.assign(vertices_, -1);
  soc_deg_.assign(vertices_, -1);
  bool si = true;
  std::set<int> seen_right, seen_left;
  for (int v = 0; v < vertices_; ++v) {
    auto soc = annihilated(*this, by_src_[v], true);
    if (soc.size() == 1) {
      right_soc_[v] = soc[0];
      nak_[v] = support_vertex(*this, soc[0], true);
      soc_deg_[v] = support_degree(*this, soc[0]);
      si = si && seen_right.insert(nak_[v]).second;
    } else {
      si = false;
    }
    auto lsoc = annihilated(*this, by_tgt_[v], false);
    if (lsoc.size() == 1)
      si = si && seen_left.insert(support_vertex(*this, lsoc[0], false)).second;
    else
      si = false;
  }
  self_injective_ = si;
}

Vec GradedAlgebra::multiply(const Vec& a, const Vec& b) const {
  std::map<int, Q> acc;
  Q c;
  for (int x = 0; x < dim(); ++x) {
    if (is_zero(a[x])) continue;
    for (int y = 0; y < dim(); ++y) {
      if (is_zero(b[y]) || prod_[x][y].empty()) continue;
      c = a[x] * b[y];
      accumulate(acc, prod_[x][y], c);
    }
  }
  Vec out(dim());
  for (auto& [z, x] : acc) out[z] = x;
  return out;
}

Vec GradedAlgebra::unit() const {
  Vec u(dim());
  for (int e : idem_) u[e] = 1;
  return u;
}

int GradedAlgebra::find_label(const std::string& label) const {
  for (int x = 0; x < dim(); ++x)
    if (basis_[x].label == label) return x;
  return -1;
}

void GradedAlgebra::set_presentation(std::vector<Arrow> arrows, std::vector<SparseVec> arrow_forms,
                                     std::vector<std::vector<int>> paths) {
  arrows_ = std::move(arrows);
  arrow_forms_ = std::move(arrow_forms);
  paths_ = std::move(paths);
}

void validate_algebra(const GradedAlgebra& a) {
  const int n = a.dim();
  for (int v = 0; v < a.vertices(); ++v) {
    int e = a.idempotent(v);
    for (int y = 0; y < n; ++y) {
      SparseVec want_l = a.element(y).src == v ? SparseVec{{y, Q(1)}} : SparseVec{};
      SparseVec want_r = a.element(y).tgt == v ? SparseVec{{y, Q(1)}} : SparseVec{};
      if (a.product(e, y) != want_l || a.product(y, e) != want_r)
        throw InputError("idempotent e" + std::to_string(v + 1) + " does not act as a vertex idempotent on " +
                         a.element(y).label);
    }
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const auto& bx = a.element(x);
      const auto& by = a.element(y);
      const auto& p = a.product(x, y);
      if (bx.tgt != by.src && !p.empty())
        throw InputError("product " + bx.label + "*" + by.label + " of non-composable elements is nonzero");
      for (const auto& [z, c] : p) {
        const auto& bz = a.element(z);
        if (bz.deg != bx.deg + by.deg || bz.src != bx.src || bz.tgt != by.tgt)
          throw InputError("product " + bx.label + "*" + by.label + " breaks the grading");
      }
    }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (a.element(x).tgt != a.element(y).src) continue;
      for (int z = 0; z < n; ++z) {
        if (a.element(y).tgt != a.element(z).src) continue;
        std::map<int, Q> lhs, rhs;
        for (const auto& [w, c] : a.product(x, y)) accumulate(lhs, a.product(w, z), c);
        for (const auto& [w, c] : a.product(y, z)) accumulate(rhs, a.product(x, w), c);
        if (from_map(lhs) != from_map(rhs))
          throw InputError("multiplication is not associative on (" + a.element(x).label + ", " + a.element(y).label +
                           ", " + a.element(z).label + ")");
      }
    }
  // The radical must be the span of the non-idempotent basis elements.
  int nonidem0 = 0;
  for (int x = 0; x < n; ++x)
    if (a.element(x).deg == 0 && !a.is_idempotent(x)) ++nonidem0;
  auto rad = degree_zero_radical(a);
  bool ok = static_cast<int>(rad.size()) == nonidem0;
  for (const auto& r : rad)
    for (int v = 0; v < a.vertices(); ++v)
      if (!is_zero(r[a.idempotent(v)])) ok = false;
  if (!ok) throw InputError("the non-idempotent basis elements do not span the radical (algebra is not basic)");
}

std::vector<Vec> degree_zero_radical(const GradedAlgebra& a) {
  std::vector<int> zero;
  for (int x = 0; x < a.dim(); ++x)
    if (a.element(x).deg == 0) zero.push_back(x);
  std::vector<Q> tr(a.dim());
  for (int w : zero)
    for (int z : zero)
      for (const auto& [u, c] : a.product(w, z))
        if (u == z) tr[w] += c;
  const int m = static_cast<int>(zero.size());
  Matrix g(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (const auto& [u, c] : a.product(zero[i], zero[j])) g(i, j) += c * tr[u];
  std::vector<Vec> out;
  for (const Vec& k : kernel_basis(g)) {
    Vec v(a.dim());
    for (int i = 0; i < m; ++i) v[zero[i]] = k[i];
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<std::vector<int>> GradedAlgebraMorphism::vertex_permutation(const GradedAlgebra& a) const {
  std::vector<int> perm(a.vertices(), -1);
  std::set<int> used;
  for (int v = 0; v < a.vertices(); ++v) {
    Vec c = matrix.column(a.idempotent(v));
    int hit = -1;
    for (int w = 0; w < a.vertices(); ++w) {
      Vec e(a.dim());
      e[a.idempotent(w)] = 1;
      if (c == e) hit = w;
    }
    if (hit < 0 || !used.insert(hit).second) return std::nullopt;
    perm[v] = hit;
  }
  return perm;
}

std::optional<std::vector<int>> GradedAlgebraMorphism::basis_permutation() const {
  std::vector<int> perm(matrix.cols(), -1);
  std::set<int> used;
  for (int x = 0; x < matrix.cols(); ++x) {
    int hit = -1;
    for (int z = 0; z < matrix.rows(); ++z) {
      const Q& c = matrix(z, x);
      if (is_zero(c)) continue;
      if (c != 1 || hit >= 0) return std::nullopt;
      hit = z;
    }
    if (hit < 0 || !used.insert(hit).second) return std::nullopt;
    perm[x] = hit;
  }
  return perm;
}

GradedAlgebraMorphism identity_morphism(const GradedAlgebra& a) { return {Matrix::identity(a.dim())}; }

GradedAlgebraMorphism compose(const GradedAlgebraMorphism& f, const GradedAlgebraMorphism& g) {
  return {f.matrix * g.matrix};
}

std::optional<GradedAlgebraMorphism> inverse(const GradedAlgebraMorphism& f) {
  auto inv = inverse(f.matrix);
  if (!inv) return std::nullopt;
  return GradedAlgebraMorphism{*inv};
}

bool is_graded_automorphism(const GradedAlgebra& a, const GradedAlgebraMorphism& f) {
  const int n = a.dim();
  if (f.matrix.rows() != n || f.matrix.cols() != n || !inverse(f.matrix)) return false;
  for (int x = 0; x < n; ++x)
    for (int z = 0; z < n; ++z)
      if (!is_zero(f.matrix(z, x)) && a.element(z).deg != a.element(x).deg) return false;
  if (f.apply(a.unit()) != a.unit()) return false;
  if (!f.vertex_permutation(a)) return false;
  std::vector<Vec> img(n);
  for (int x = 0; x < n; ++x) img[x] = f.matrix.column(x);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      Vec xy(n);
      for (const auto& [z, c] : a.product(x, y)) xy[z] = c;
      if (f.apply(xy) != a.multiply(img[x], img[y])) return false;
    }
  return true;
}

AlgebraPtr make_shared_algebra(GradedAlgebra a) { return std::make_shared<const GradedAlgebra>(std::move(a)); }

GradedAlgebra trivial_extension(const GradedAlgebra& a0) {
  if (a0.highest_degree() != 0) throw InputError("trivial extension needs an algebra concentrated in degree 0");
  const int n = a0.dim();
  std::vector<BasisElement> basis = a0.basis();
  for (int x = 0; x < n; ++x) {
    const auto& b = a0.element(x);
    basis.push_back({b.tgt, b.src, 1, b.label + "^*"});
  }
  std::vector<std::vector<SparseVec>> prod(2 * n, std::vector<SparseVec>(2 * n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) prod[x][y] = a0.product(x, y);
  // x·y* = Σ_z c_{zx}^y z*,  y*·x = Σ_z c_{xz}^y z*
  for (int x = 0; x < n; ++x)
    for (int z = 0; z < n; ++z) {
      for (const auto& [y, c] : a0.product(z, x)) prod[x][n + y].emplace_back(n + z, c);
      for (const auto& [y, c] : a0.product(x, z)) prod[n + y][x].emplace_back(n + z, c);
    }
  for (auto& row : prod)
    for (auto& p : row) {
      std::map<int, Q> m;
      for (auto& [z, c] : p) m[z] += c;
      p = from_map(m);
    }
  std::vector<int> idem;
  for (int v = 0; v < a0.vertices(); ++v) idem.push_back(a0.idempotent(v));
  std::string name = a0.name().empty() ? "" : "Delta(" + a0.name() + ")";
  return GradedAlgebra(name, a0.vertices(), std::move(basis), std::move(idem), std::move(prod));
}

GradedAlgebra opposite(const GradedAlgebra& a) {
  std::vector<BasisElement> basis = a.basis();
  for (auto& b : basis) std::swap(b.src, b.tgt);
  const int n = a.dim();
  std::vector<std::vector<SparseVec>> prod(n, std::vector<SparseVec>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) prod[x][y] = a.product(y, x);
  std::vector<int> idem;
  for (int v = 0; v < a.vertices(); ++v) idem.push_back(a.idempotent(v));
  return GradedAlgebra(a.name().empty() ? "" : a.name() + "^op", a.vertices(), std::move(basis), std::move(idem),
                       std::move(prod));
}

namespace {

GradedAlgebra with_degrees(const GradedAlgebra& a, const std::vector<int>& degs, const std::string& name) {
  std::vector<BasisElement> basis = a.basis();
  for (int x = 0; x < a.dim(); ++x) basis[x].deg = degs[x];
  std::vector<std::vector<SparseVec>> prod(a.dim(), std::vector<SparseVec>(a.dim()));
  for (int x = 0; x < a.dim(); ++x)
    for (int y = 0; y < a.dim(); ++y) prod[x][y] = a.product(x, y);
  std::vector<int> idem;
  for (int v = 0; v < a.vertices(); ++v) idem.push_back(a.idempotent(v));
  GradedAlgebra out(name, a.vertices(), std::move(basis), std::move(idem), std::move(prod));
  if (!a.arrows().empty()) {
    auto arrows = a.arrows();
    for (size_t i = 0; i < arrows.size(); ++i)
      if (!a.arrow_forms()[i].empty()) arrows[i].deg = degs[a.arrow_forms()[i].front().first];
    out.set_presentation(arrows, a.arrow_forms(), a.paths());
  }
  return out;
}

}  // namespace

GradedAlgebra regrade(const GradedAlgebra& a, int n) {
  if (n < 1) throw InputError("regrading factor must be positive");
  std::vector<int> degs(a.dim());
  for (int x = 0; x < a.dim(); ++x) degs[x] = a.element(x).deg * n;
  return with_degrees(a, degs, a.name());
}

GradedAlgebra forget_grading(const GradedAlgebra& a) {
  return with_degrees(a, std::vector<int>(a.dim(), 0), a.name());
}

DegreeZeroPart degree_zero_part(const GradedAlgebra& a) {
  DegreeZeroPart out;
  std::vector<int> local(a.dim(), -1);
  std::vector<BasisElement> basis;
  for (int x = 0; x < a.dim(); ++x)
    if (a.element(x).deg == 0) {
      local[x] = static_cast<int>(out.embedding.size());
      out.embedding.push_back(x);
      basis.push_back(a.element(x));
    }
  const int m = static_cast<int>(out.embedding.size());
  std::vector<std::vector<SparseVec>> prod(m, std::vector<SparseVec>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (const auto& [z, c] : a.product(out.embedding[i], out.embedding[j])) prod[i][j].emplace_back(local[z], c);
  std::vector<int> idem;
  for (int v = 0; v < a.vertices(); ++v) idem.push_back(local[a.idempotent(v)]);
  out.algebra = GradedAlgebra(a.name().empty() ? "" : a.name() + "_0", a.vertices(), std::move(basis),
                              std::move(idem), std::move(prod));
  if (!a.arrows().empty()) {
    std::vector<Arrow> arrows;
    std::vector<SparseVec> forms;
    std::vector<int> arrow_map(a.arrows().size(), -1);
    for (size_t i = 0; i < a.arrows().size(); ++i)
      if (a.arrows()[i].deg == 0) {
        arrow_map[i] = static_cast<int>(arrows.size());
        arrows.push_back(a.arrows()[i]);
        SparseVec f;
        for (const auto& [z, c] : a.arrow_forms()[i]) f.emplace_back(local[z], c);
        forms.push_back(f);
      }
    std::vector<std::vector<int>> paths;
    for (int x : out.embedding) {
      std::vector<int> p;
      for (int ar : a.paths()[x]) p.push_back(arrow_map[ar]);
      paths.push_back(p);
    }
    out.algebra.set_presentation(arrows, forms, paths);
  }
  return out;
}

std::map<int, int> GradedDual::dims_by_degree() const {
  std::map<int, int> m;
  for (int d : degrees) ++m[d];
  return m;
}

GradedDual graded_dual(const GradedAlgebra& a) {
  const int n = a.dim();
  GradedDual d;
  for (int x = 0; x < n; ++x) {
    d.degrees.push_back(-a.element(x).deg);
    d.src.push_back(a.element(x).tgt);
    d.tgt.push_back(a.element(x).src);
  }
  d.right_action.assign(n, Matrix(n, n));
  d.left_action.assign(n, Matrix(n, n));
  // (x*·b)(y) = x*(by),  (b·x*)(y) = x*(yb)
  for (int b = 0; b < n; ++b)
    for (int y = 0; y < n; ++y) {
      for (const auto& [x, c] : a.product(b, y)) d.right_action[b](y, x) += c;
      for (const auto& [x, c] : a.product(y, b)) d.left_action[b](y, x) += c;
    }
  return d;
}

namespace {

Matrix gram_matrix(const GradedAlgebra& a, const Vec& form) {
  const int n = a.dim();
  Matrix g(n, n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (const auto& [z, c] : a.product(x, y))
        if (!is_zero(form[z])) g(x, y) += c * form[z];
  return g;
}

std::optional<FrobeniusData> try_form(const GradedAlgebra& a, const Vec& form) {
  Matrix g = gram_matrix(a, form);
  auto ginv = inverse(g);
  if (!ginv) return std::nullopt;
  FrobeniusData d;
  d.a = a.highest_degree();
  d.form = form;
  d.gram = g;
  d.nakayama.matrix = (*ginv) * g.transpose();
  d.symmetric = g == g.transpose();
  d.nakayama_vertices = d.nakayama.vertex_permutation(a);
  return d;
}

}  // namespace

FrobeniusResult frobenius_analysis(const GradedAlgebra& a, std::uint64_t seed) {
  FrobeniusResult res;
  const int top = a.highest_degree();
  if (!a.is_self_injective()) {
    res.reason = "some indecomposable projective has a non-simple socle or two share a socle";
    return res;
  }
  for (int v = 0; v < a.vertices(); ++v)
    if (a.socle_degree(v) != top) {
      res.reason = "socle of e" + std::to_string(v + 1) + " lies outside the highest degree";
      return res;
    }
  std::vector<int> top_basis;
  for (int x = 0; x < a.dim(); ++x)
    if (a.element(x).deg == top) top_basis.push_back(x);
  const int m = static_cast<int>(top_basis.size());
  auto embed = [&](const Vec& c) {
    Vec f(a.dim());
    for (int i = 0; i < m; ++i) f[top_basis[i]] = c[i];
    return f;
  };
  Sampler rng(seed);

  // Symmetric forms first: ψ(xy) = ψ(yx) for all x, y.
  RowReducer sym(m);
  std::vector<int> local(a.dim(), -1);
  for (int i = 0; i < m; ++i) local[top_basis[i]] = i;
  for (int x = 0; x < a.dim(); ++x)
    for (int y = x + 1; y < a.dim(); ++y) {
      std::map<int, Q> row;
      for (const auto& [z, c] : a.product(x, y))
        if (local[z] >= 0) row[local[z]] += c;
      for (const auto& [z, c] : a.product(y, x))
        if (local[z] >= 0) row[local[z]] -= c;
      SparseVec s = from_map(row);
      if (!s.empty()) sym.add(s);
    }
  auto sym_basis = sym.kernel();
  if (!sym_basis.empty()) {
    Vec c(m);
    for (const auto& b : sym_basis) c = add(c, b);
    for (int attempt = 0; attempt <= 64; ++attempt) {
      if (auto d = try_form(a, embed(c))) {
        res.data = d;
        return res;
      }
      c.assign(m, 0);
      for (const auto& b : sym_basis) c = add(c, scale(b, rng.next()));
    }
  }
  // Dual of the socle elements: nondegenerate whenever Λ is Frobenius.
  Vec form(a.dim());
  for (int v = 0; v < a.vertices(); ++v) {
    const Vec& s = *a.right_socle(v);
    for (int x = 0; x < a.dim(); ++x)
      if (!is_zero(s[x])) {
        form[x] = 1 / s[x];
        break;
      }
  }
  if (auto d = try_form(a, form)) {
    res.data = d;
    return res;
  }
  for (int attempt = 0; attempt < 64; ++attempt) {
    Vec c(m);
    for (auto& x : c) x = rng.next();
    if (auto d = try_form(a, embed(c))) {
      res.data = d;
      return res;
    }
  }
  res.certified = false;
  res.reason = "no invertible combination found (probabilistic)";
  return res;
}

}  // namespace kk
