#include "koszulkit/truncated.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <set>

namespace kk {

namespace {

SparseVec from_map(const std::map<int, Q>& m) {
  SparseVec s;
  for (const auto& [j, x] : m)
    if (!is_zero(x)) s.emplace_back(j, x);
  return s;
}

Vec dense(const SparseVec& s, int n) {
  Vec v(n);
  for (const auto& [j, x] : s) v[j] += x;
  return v;
}

}  // namespace

TruncatedGradedAlgebra::TruncatedGradedAlgebra(int cutoff, int vertices, std::vector<TruncatedElement> basis,
                                               std::vector<int> idempotents,
                                               std::vector<std::vector<SparseVec>> products)
    : cutoff_(cutoff),
      vertices_(vertices),
      basis_(std::move(basis)),
      idem_(std::move(idempotents)),
      prod_(std::move(products)) {
  for (size_t i = 1; i < basis_.size(); ++i)
    if (basis_[i].deg < basis_[i - 1].deg) throw InternalError("truncated algebra basis is not sorted by degree");
  for (const auto& b : basis_)
    if (b.deg < 0 || b.deg > cutoff_) throw InternalError("truncated algebra element outside the degree window");
  if (static_cast<int>(prod_.size()) != dim()) throw InternalError("truncated algebra product table has wrong size");
  for (int x = 0; x < dim(); ++x)
    for (int y = 0; y < dim(); ++y)
      if (!defined(x, y)) prod_[x][y].clear();
}

Vec TruncatedGradedAlgebra::multiply(const Vec& a, const Vec& b) const {
  std::vector<int> sa, sb;
  for (int x = 0; x < dim(); ++x) {
    if (!is_zero(a[x])) sa.push_back(x);
    if (!is_zero(b[x])) sb.push_back(x);
  }
  Vec out(dim());
  Q c, t;
  for (int x : sa)
    for (int y : sb) {
      if (prod_[x][y].empty()) continue;
      c = a[x] * b[y];
      for (const auto& [z, v] : prod_[x][y]) {
        t = c * v;
        out[z] += t;
      }
    }
  return out;
}

std::vector<int> TruncatedGradedAlgebra::in_degree(int d) const {
  std::vector<int> out;
  for (int x = 0; x < dim(); ++x)
    if (basis_[x].deg == d) out.push_back(x);
  return out;
}

std::vector<int> TruncatedGradedAlgebra::dims() const {
  std::vector<int> out(cutoff_ + 1, 0);
  for (const auto& b : basis_) ++out[b.deg];
  return out;
}

int TruncatedGradedAlgebra::dim(int d, int u, int v) const {
  int c = 0;
  for (const auto& b : basis_)
    if (b.deg == d && b.src == u && b.tgt == v) ++c;
  return c;
}

TruncatedGradedAlgebra truncate(const GradedAlgebra& a, int cutoff) {
  std::vector<int> order(a.dim());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return a.element(x).deg < a.element(y).deg; });
  std::vector<int> pos(a.dim());
  std::vector<TruncatedElement> basis;
  std::vector<int> kept;
  for (int x : order)
    if (a.element(x).deg <= cutoff) {
      pos[x] = static_cast<int>(kept.size());
      kept.push_back(x);
      const auto& b = a.element(x);
      basis.push_back({b.deg, b.src, b.tgt, b.label});
    }
  const int n = static_cast<int>(kept.size());
  std::vector<std::vector<SparseVec>> prod(n, std::vector<SparseVec>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (basis[i].deg + basis[j].deg <= cutoff) {
        for (const auto& [z, c] : a.product(kept[i], kept[j])) prod[i][j].emplace_back(pos[z], c);
        std::sort(prod[i][j].begin(), prod[i][j].end(), [](const auto& p, const auto& q) { return p.first < q.first; });
      }
  std::vector<int> idem;
  for (int v = 0; v < a.vertices(); ++v) idem.push_back(pos[a.idempotent(v)]);
  return TruncatedGradedAlgebra(cutoff, a.vertices(), std::move(basis), std::move(idem), std::move(prod));
}

std::optional<std::string> associativity_failure(const TruncatedGradedAlgebra& g) {
  const int n = g.dim();
  Q t;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (!g.defined(x, y)) continue;
      for (int z = 0; z < n; ++z) {
        if (g.element(x).deg + g.element(y).deg + g.element(z).deg > g.cutoff()) continue;
        std::map<int, Q> lhs, rhs;
        for (const auto& [w, c] : g.product(x, y))
          for (const auto& [u, d] : g.product(w, z)) {
            t = c * d;
            lhs[u] += t;
          }
        for (const auto& [w, c] : g.product(y, z))
          for (const auto& [u, d] : g.product(x, w)) {
            t = c * d;
            rhs[u] += t;
          }
        if (from_map(lhs) != from_map(rhs))
          return "(" + g.element(x).label + ", " + g.element(y).label + ", " + g.element(z).label + ")";
      }
    }
  return std::nullopt;
}

TruncatedMorphism identity_morphism(const TruncatedGradedAlgebra& g) { return {Matrix::identity(g.dim())}; }

TruncatedMorphism compose(const TruncatedMorphism& f, const TruncatedMorphism& g) { return {f.matrix * g.matrix}; }

std::optional<TruncatedMorphism> inverse(const TruncatedMorphism& f) {
  auto inv = inverse(f.matrix);
  if (!inv) return std::nullopt;
  return TruncatedMorphism{*inv};
}

std::optional<std::vector<int>> vertex_permutation(const TruncatedGradedAlgebra& g, const TruncatedMorphism& f) {
  std::vector<int> perm(g.vertices(), -1);
  std::set<int> used;
  for (int v = 0; v < g.vertices(); ++v) {
    Vec c = f.matrix.column(g.idempotent(v));
    int hit = -1;
    for (int w = 0; w < g.vertices(); ++w) {
      Vec e(g.dim());
      e[g.idempotent(w)] = 1;
      if (c == e) hit = w;
    }
    if (hit < 0 || !used.insert(hit).second) return std::nullopt;
    perm[v] = hit;
  }
  return perm;
}

bool is_automorphism(const TruncatedGradedAlgebra& g, const TruncatedMorphism& f) {
  const int n = g.dim();
  if (f.matrix.rows() != n || f.matrix.cols() != n || !inverse(f.matrix)) return false;
  for (int x = 0; x < n; ++x)
    for (int z = 0; z < n; ++z)
      if (!is_zero(f.matrix(z, x)) && g.element(z).deg != g.element(x).deg) return false;
  if (!vertex_permutation(g, f)) return false;
  std::vector<Vec> img(n);
  for (int x = 0; x < n; ++x) img[x] = f.matrix.column(x);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (g.defined(x, y) && f.matrix * dense(g.product(x, y), n) != g.multiply(img[x], img[y])) return false;
  return true;
}

TruncatedGradedAlgebra quasi_veronese(const TruncatedGradedAlgebra& g, int r) {
  if (r < 1) throw InputError("quasi-Veronese needs r >= 1");
  int cutoff = (g.cutoff() - r + 1) >= 0 ? (g.cutoff() - r + 1) / r : -1;
  if (cutoff < 0) throw InputError("cutoff too small for the requested quasi-Veronese algebra");
  const int V = g.vertices();
  struct Entry {
    int deg, j, k, x;
  };
  std::vector<Entry> entries;
  for (int i = 0; i <= cutoff; ++i)
    for (int j = 0; j < r; ++j)
      for (int k = 0; k < r; ++k) {
        int d = r * i + k - j;
        if (d < 0) continue;
        for (int x : g.in_degree(d)) entries.push_back({i, j, k, x});
      }
  std::map<std::tuple<int, int, int>, int> index;  // (j, k, x) -> new basis index
  std::vector<TruncatedElement> basis;
  for (const auto& e : entries) {
    index[{e.j, e.k, e.x}] = static_cast<int>(basis.size());
    const auto& b = g.element(e.x);
    std::string label = r == 1 ? b.label : "[" + std::to_string(e.j) + "," + std::to_string(e.k) + "]" + b.label;
    basis.push_back({e.deg, e.j * V + b.src, e.k * V + b.tgt, label});
  }
  const int n = static_cast<int>(basis.size());
  std::vector<std::vector<SparseVec>> prod(n, std::vector<SparseVec>(n));
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      const auto& e = entries[p];
      const auto& f = entries[q];
      if (e.k != f.j || e.deg + f.deg > cutoff) continue;
      for (const auto& [z, c] : g.product(e.x, f.x)) prod[p][q].emplace_back(index.at({e.j, f.k, z}), c);
      std::sort(prod[p][q].begin(), prod[p][q].end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    }
  std::vector<int> idem;
  for (int j = 0; j < r; ++j)
    for (int u = 0; u < V; ++u) idem.push_back(index.at({j, j, g.idempotent(u)}));
  return TruncatedGradedAlgebra(cutoff, r * V, std::move(basis), std::move(idem), std::move(prod));
}

TruncatedGradedAlgebra twist_algebra(const TruncatedGradedAlgebra& g, const TruncatedMorphism& phi) {
  const int n = g.dim();
  if (phi.matrix.rows() != n || phi.matrix.cols() != n) throw InputError("twist: morphism has the wrong shape");
  for (int x = 0; x < n; ++x)
    for (int z = 0; z < n; ++z)
      if (!is_zero(phi.matrix(z, x)) && g.element(z).deg != g.element(x).deg)
        throw InputError("twist: morphism does not preserve degrees");
  if (!inverse(phi.matrix)) throw InputError("twist: morphism is not invertible");
  auto perm = vertex_permutation(g, phi);
  if (!perm) throw InputError("twist: morphism does not permute the idempotents");
  std::vector<Matrix> powers{Matrix::identity(n)};
  for (int i = 1; i <= g.cutoff(); ++i) powers.push_back(phi.matrix * powers.back());
  std::vector<int> inv(g.vertices());
  for (int v = 0; v < g.vertices(); ++v) inv[(*perm)[v]] = v;
  auto inv_power = [&](int s, int i) {
    for (int k = 0; k < i; ++k) s = inv[s];
    return s;
  };
  std::vector<TruncatedElement> basis = g.basis();
  for (auto& b : basis) b.src = inv_power(b.src, b.deg);
  std::vector<std::vector<SparseVec>> prod(n, std::vector<SparseVec>(n));
  Q t;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (!g.defined(x, y)) continue;
      const Matrix& p = powers[g.element(y).deg];
      std::map<int, Q> acc;
      for (int w = 0; w < n; ++w) {
        if (is_zero(p(w, x))) continue;
        for (const auto& [z, c] : g.product(w, y)) {
          t = p(w, x) * c;
          acc[z] += t;
        }
      }
      prod[x][y] = from_map(acc);
    }
  std::vector<int> idem;
  for (int v = 0; v < g.vertices(); ++v) idem.push_back(g.idempotent(v));
  return TruncatedGradedAlgebra(g.cutoff(), g.vertices(), std::move(basis), std::move(idem), std::move(prod));
}

TruncatedMorphism induced_veronese_automorphism(const TruncatedGradedAlgebra& g, const TruncatedMorphism& phi,
                                                int r) {
  TruncatedGradedAlgebra v = quasi_veronese(g, r);
  // Rebuild the (j,k,x) indexing used by quasi_veronese.
  std::map<std::tuple<int, int, int>, int> index;
  std::vector<std::tuple<int, int, int>> entry;
  int pos = 0;
  for (int i = 0; i <= v.cutoff(); ++i)
    for (int j = 0; j < r; ++j)
      for (int k = 0; k < r; ++k) {
        int d = r * i + k - j;
        if (d < 0) continue;
        for (int x : g.in_degree(d)) {
          index[{j, k, x}] = pos++;
          entry.emplace_back(j, k, x);
        }
      }
  Matrix m(v.dim(), v.dim());
  for (int p = 0; p < v.dim(); ++p) {
    auto [j, k, x] = entry[p];
    for (int z = 0; z < g.dim(); ++z)
      if (!is_zero(phi.matrix(z, x))) m(index.at({j, k, z}), p) = phi.matrix(z, x);
  }
  return {m};
}

bool same_structure(const TruncatedGradedAlgebra& a, const TruncatedGradedAlgebra& b) {
  if (a.cutoff() != b.cutoff() || a.dim() != b.dim() || a.vertices() != b.vertices()) return false;
  for (int x = 0; x < a.dim(); ++x) {
    const auto& p = a.element(x);
    const auto& q = b.element(x);
    if (p.deg != q.deg || p.src != q.src || p.tgt != q.tgt) return false;
  }
  for (int x = 0; x < a.dim(); ++x)
    for (int y = 0; y < a.dim(); ++y)
      if (a.product(x, y) != b.product(x, y)) return false;
  return true;
}

void dump(std::ostream& out, const TruncatedGradedAlgebra& g) {
  out << "cutoff " << g.cutoff() << "\n";
  for (int d = 0; d <= g.cutoff(); ++d) {
    out << "degree " << d << ":";
    for (int x : g.in_degree(d))
      out << " " << g.element(x).label << "(" << g.element(x).src + 1 << "," << g.element(x).tgt + 1 << ")";
    out << "\n";
  }
  for (int x = 0; x < g.dim(); ++x)
    for (int y = 0; y < g.dim(); ++y) {
      if (!g.defined(x, y) || g.product(x, y).empty()) continue;
      out << g.element(x).label << " * " << g.element(y).label << " =";
      bool first = true;
      for (const auto& [z, c] : g.product(x, y)) {
        out << (first ? " " : " + ") << to_string(c) << "·" << g.element(z).label;
        first = false;
      }
      out << "\n";
    }
}

namespace {

// Spanning words for a degree-wise basis: in degree 0 words in the non-idempotent
// generators, in degree d >= 1 products y·w with y of degree 1 and w of degree d-1.
struct Generation {
  bool ok = true;
  std::string detail;
  std::vector<int> gens0;  // basis indices of degree-0 radical generators
  // degree-0 basis: for every degree-0 basis element a word (empty word = idempotent)
  std::vector<std::pair<int, std::vector<int>>> words0;  // (idempotent or -1, word of gens0)
  Matrix words0_inv;                                     // coordinates change: word span -> degree-0 basis
  std::vector<int> basis0;
  // degree d >= 2: chosen products (degree-1 index, degree-(d-1) index) and inverse change of basis
  std::vector<std::vector<std::pair<int, int>>> prods;
  std::vector<Matrix> prods_inv;
};

Generation analyse_generation(const TruncatedGradedAlgebra& g, int cutoff) {
  Generation gen;
  const int n = g.dim();
  gen.basis0 = g.in_degree(0);
  std::vector<int> local(n, -1);
  for (size_t i = 0; i < gen.basis0.size(); ++i) local[gen.basis0[i]] = static_cast<int>(i);
  const int m0 = static_cast<int>(gen.basis0.size());
  std::set<int> idem;
  for (int v = 0; v < g.vertices(); ++v) idem.insert(g.idempotent(v));
  std::vector<int> rad0;
  for (int x : gen.basis0)
    if (!idem.count(x)) rad0.push_back(x);
  RowReducer sq2(m0);
  for (int x : rad0)
    for (int y : rad0) {
      SparseVec s;
      for (const auto& [z, c] : g.product(x, y)) s.emplace_back(local[z], c);
      if (!s.empty()) sq2.add(s);
    }
  for (int x : rad0)
    if (sq2.add(SparseVec{{local[x], Q(1)}})) gen.gens0.push_back(x);

  RowReducer span(m0);
  std::vector<Vec> cols;
  for (int v = 0; v < g.vertices(); ++v) {
    Vec e(m0);
    e[local[g.idempotent(v)]] = 1;
    span.add_dense(e);
    cols.push_back(e);
    gen.words0.push_back({g.idempotent(v), {}});
  }
  std::vector<std::pair<std::vector<int>, Vec>> frontier;
  for (size_t i = 0; i < gen.gens0.size(); ++i) {
    Vec e(m0);
    e[local[gen.gens0[i]]] = 1;
    frontier.push_back({{static_cast<int>(i)}, e});
  }
  while (!frontier.empty()) {
    std::vector<std::pair<std::vector<int>, Vec>> next;
    for (auto& [w, vec] : frontier) {
      if (!span.add_dense(vec)) continue;
      cols.push_back(vec);
      gen.words0.push_back({-1, w});
      for (size_t i = 0; i < gen.gens0.size(); ++i) {
        Vec full(n);
        for (int k = 0; k < m0; ++k) full[gen.basis0[k]] = vec[k];
        Vec e(n);
        e[gen.gens0[i]] = 1;
        Vec p = g.multiply(full, e);
        Vec loc(m0);
        for (int k = 0; k < m0; ++k) loc[k] = p[gen.basis0[k]];
        if (!is_zero(loc)) {
          auto nw = w;
          nw.push_back(static_cast<int>(i));
          next.push_back({nw, loc});
        }
      }
    }
    frontier = std::move(next);
  }
  if (static_cast<int>(cols.size()) != m0) {
    gen.ok = false;
    gen.detail = "degree-0 part is not generated by its idempotents and radical generators";
    return gen;
  }
  gen.words0_inv = *inverse(Matrix::from_columns(cols, m0));

  gen.prods.resize(cutoff + 1);
  gen.prods_inv.resize(cutoff + 1);
  for (int d = 2; d <= cutoff; ++d) {
    auto bd = g.in_degree(d);
    std::vector<int> loc(n, -1);
    for (size_t i = 0; i < bd.size(); ++i) loc[bd[i]] = static_cast<int>(i);
    RowReducer rr(static_cast<int>(bd.size()));
    std::vector<Vec> pc;
    for (int y : g.in_degree(1))
      for (int w : g.in_degree(d - 1)) {
        Vec v(bd.size());
        for (const auto& [z, c] : g.product(y, w)) v[loc[z]] += c;
        if (rr.add_dense(v)) {
          gen.prods[d].push_back({y, w});
          pc.push_back(v);
        }
      }
    if (pc.size() != bd.size()) {
      gen.ok = false;
      gen.detail = "not generated in degrees 0 and 1 (degree " + std::to_string(d) + ")";
      return gen;
    }
    if (!bd.empty()) gen.prods_inv[d] = *inverse(Matrix::from_columns(pc, static_cast<int>(bd.size())));
  }
  return gen;
}

bool bigraded_match(const TruncatedGradedAlgebra& a, const TruncatedGradedAlgebra& b, const std::vector<int>& s,
                    int cutoff) {
  for (int d = 0; d <= cutoff; ++d)
    for (int u = 0; u < a.vertices(); ++u)
      for (int v = 0; v < a.vertices(); ++v)
        if (a.dim(d, u, v) != b.dim(d, s[u], s[v])) return false;
  return true;
}

// Candidate isomorphism from degree-0 and degree-1 data; returns nullopt when it fails verification.
std::optional<Matrix> extend_and_verify(const TruncatedGradedAlgebra& a, const TruncatedGradedAlgebra& b,
                                        const Generation& gen, int cutoff, const std::vector<Vec>& img0gens,
                                        const std::vector<int>& s, const Matrix& phi1, std::vector<Vec>& img) {
  const int na = a.dim(), nb = b.dim();
  img.assign(na, Vec(nb));
  // degree 0
  std::vector<Vec> word_images;
  for (const auto& [e, w] : gen.words0) {
    Vec v(nb);
    if (e >= 0) {
      int u = -1;
      for (int k = 0; k < a.vertices(); ++k)
        if (a.idempotent(k) == e) u = k;
      v[b.idempotent(s[u])] = 1;
    } else {
      v = img0gens[w[0]];
      for (size_t k = 1; k < w.size(); ++k) v = b.multiply(v, img0gens[w[k]]);
    }
    word_images.push_back(v);
  }
  const auto& b0 = gen.basis0;
  for (size_t i = 0; i < b0.size(); ++i) {
    Vec v(nb);
    for (size_t k = 0; k < word_images.size(); ++k)
      if (!is_zero(gen.words0_inv(static_cast<int>(k), static_cast<int>(i))))
        v = add(v, scale(word_images[k], gen.words0_inv(static_cast<int>(k), static_cast<int>(i))));
    img[b0[i]] = v;
  }
  // degree 1
  auto a1 = a.in_degree(1);
  auto b1 = b.in_degree(1);
  for (size_t i = 0; i < a1.size(); ++i) {
    Vec v(nb);
    for (size_t k = 0; k < b1.size(); ++k) v[b1[k]] = phi1(static_cast<int>(k), static_cast<int>(i));
    img[a1[i]] = v;
  }
  for (int d = 2; d <= cutoff; ++d) {
    auto ad = a.in_degree(d);
    std::vector<Vec> pimg;
    for (const auto& [y, w] : gen.prods[d]) pimg.push_back(b.multiply(img[y], img[w]));
    for (size_t i = 0; i < ad.size(); ++i) {
      Vec v(nb);
      for (size_t k = 0; k < pimg.size(); ++k) {
        const Q& c = gen.prods_inv[d](static_cast<int>(k), static_cast<int>(i));
        if (!is_zero(c)) v = add(v, scale(pimg[k], c));
      }
      img[ad[i]] = v;
    }
  }
  Matrix m = Matrix::from_columns(img, nb);
  for (int d = 0; d <= cutoff; ++d) {
    auto ad = a.in_degree(d);
    auto bd = b.in_degree(d);
    if (ad.size() != bd.size() || rank(m.select(bd, ad)) != static_cast<int>(ad.size())) return std::nullopt;
  }
  for (int x = 0; x < na; ++x)
    for (int y = 0; y < na; ++y) {
      if (a.element(x).deg + a.element(y).deg > cutoff) continue;
      Vec lhs(nb);
      for (const auto& [z, c] : a.product(x, y)) lhs = add(lhs, scale(img[z], c));
      if (lhs != b.multiply(img[x], img[y])) return std::nullopt;
    }
  return m;
}

}  // namespace

TruncatedIsoResult find_isomorphism(const TruncatedGradedAlgebra& a, const TruncatedGradedAlgebra& b,
                                    std::uint64_t seed) {
  TruncatedIsoResult res;
  const int cutoff = std::min(a.cutoff(), b.cutoff());
  if (a.vertices() != b.vertices()) {
    res.detail = "vertex counts differ";
    return res;
  }
  const int V = a.vertices();
  std::vector<int> s(V);
  std::iota(s.begin(), s.end(), 0);
  std::vector<std::vector<int>> candidates;
  do {
    if (bigraded_match(a, b, s, cutoff)) candidates.push_back(s);
  } while (V <= 7 && std::next_permutation(s.begin(), s.end()));
  if (candidates.empty()) {
    res.detail = "bigraded dimensions differ";
    return res;
  }
  res.dims_match = true;
  // The truncation of `a` used in the search is its own basis restricted to degrees <= cutoff.
  Generation gen = analyse_generation(a, cutoff);
  if (!gen.ok) {
    res.detail = gen.detail;
    return res;
  }
  Sampler rng(seed);
  const int nb = b.dim();
  auto a0 = a.in_degree(0);
  auto a1 = a.in_degree(1);
  auto b1 = b.in_degree(1);
  for (const auto& perm : candidates) {
    res.vertex_map = perm;
    for (int attempt0 = 0; attempt0 < 16; ++attempt0) {
      std::vector<Vec> img0gens;
      for (int x : gen.gens0) {
        Vec v(nb);
        int u = a.element(x).src, w = a.element(x).tgt;
        for (int z : b.in_degree(0)) {
          bool is_idem = false;
          for (int k = 0; k < V; ++k) is_idem = is_idem || b.idempotent(k) == z;
          if (!is_idem && b.element(z).src == perm[u] && b.element(z).tgt == perm[w])
            v[z] = attempt0 == 0 ? Q(1) : Q(rng.next());
        }
        img0gens.push_back(v);
      }
      // Degree-1 map: φ(x·y) = φ(x)φ(y) and φ(y·x) = φ(y)φ(x) for x in degree 0, y in degree 1.
      std::vector<Vec> phi0;
      {
        std::vector<Vec> dummy;
        Matrix zero(static_cast<int>(b1.size()), static_cast<int>(a1.size()));
        extend_and_verify(a, b, gen, 0, img0gens, perm, zero, dummy);
        phi0 = dummy;
      }
      // unknown index for pair (target k in b1, source i in a1)
      std::map<std::pair<int, int>, int> unk;
      for (size_t i = 0; i < a1.size(); ++i)
        for (size_t k = 0; k < b1.size(); ++k)
          if (b.element(b1[k]).src == perm[a.element(a1[i]).src] && b.element(b1[k]).tgt == perm[a.element(a1[i]).tgt])
            unk[{static_cast<int>(k), static_cast<int>(i)}] = static_cast<int>(unk.size());
      std::vector<int> b1loc(nb, -1);
      for (size_t k = 0; k < b1.size(); ++k) b1loc[b1[k]] = static_cast<int>(k);
      std::vector<int> a1loc(a.dim(), -1);
      for (size_t i = 0; i < a1.size(); ++i) a1loc[a1[i]] = static_cast<int>(i);
      RowReducer rr(static_cast<int>(unk.size()));
      if (cutoff >= 1) {
        for (int x : a0)
          for (size_t i = 0; i < a1.size(); ++i) {
            for (int side = 0; side < 2; ++side) {
              // coefficient rows indexed by output element of b1
              std::map<int, std::map<int, Q>> eq;
              const SparseVec& p = side == 0 ? a.product(x, a1[i]) : a.product(a1[i], x);
              for (const auto& [z, c] : p)
                for (size_t k = 0; k < b1.size(); ++k) {
                  auto it = unk.find({static_cast<int>(k), a1loc[z]});
                  if (it != unk.end()) eq[static_cast<int>(k)][it->second] += c;
                }
              for (size_t k = 0; k < b1.size(); ++k) {
                auto it = unk.find({static_cast<int>(k), static_cast<int>(i)});
                if (it == unk.end()) continue;
                Vec e(nb);
                e[b1[k]] = 1;
                Vec prod = side == 0 ? b.multiply(phi0[x], e) : b.multiply(e, phi0[x]);
                for (size_t kk2 = 0; kk2 < b1.size(); ++kk2)
                  if (!is_zero(prod[b1[kk2]])) eq[static_cast<int>(kk2)][it->second] -= prod[b1[kk2]];
              }
              for (auto& [row, coeffs] : eq) {
                SparseVec sv;
                for (auto& [j, c] : coeffs)
                  if (!is_zero(c)) sv.emplace_back(j, c);
                if (!sv.empty()) rr.add(sv);
              }
            }
          }
      }
      auto sols = rr.kernel();
      for (int attempt1 = 0; attempt1 < 64; ++attempt1) {
        Vec c(unk.size());
        for (const auto& sv : sols) c = add(c, scale(sv, attempt1 == 0 ? Q(1) : Q(rng.next())));
        Matrix phi1(static_cast<int>(b1.size()), static_cast<int>(a1.size()));
        for (const auto& [key, idx] : unk) phi1(key.first, key.second) = c[idx];
        std::vector<Vec> img;
        if (auto m = extend_and_verify(a, b, gen, cutoff, img0gens, perm, phi1, img)) {
          res.iso = TruncatedMorphism{*m};
          res.detail = "isomorphism found";
          return res;
        }
        if (sols.empty()) break;
      }
    }
  }
  res.vertex_map.reset();
  res.detail = "dimensions agree but no degree-1-generated isomorphism was found (probabilistic)";
  return res;
}

}  // namespace kk
