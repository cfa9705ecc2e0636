#include "koszulkit/module.hpp"

#include <algorithm>
#include <set>

namespace kk {

std::string to_string(const Key& k) { return "(" + std::to_string(k.v + 1) + "," + std::to_string(k.d) + ")"; }

namespace {

const std::vector<int> kEmpty;

// Accumulates single entries of action blocks before installing them.
class BlockBuilder {
 public:
  explicit BlockBuilder(GradedModule& m) : m_(m), pos_(m.dim()) {
    for (const auto& [k, idx] : m.blocks())
      for (size_t i = 0; i < idx.size(); ++i) pos_[idx[i]] = static_cast<int>(i);
  }
  void add(int x, int src, int tgt, const Q& c) {
    if (is_zero(c)) return;
    const Key& ks = m_.tags()[src];
    const Key& kt = m_.tags()[tgt];
    if (m_.target_key(x, ks) != kt) throw InternalError("action entry between incompatible keys");
    auto it = blocks_.find({x, ks});
    if (it == blocks_.end())
      it = blocks_.emplace(std::pair{x, ks}, Matrix(m_.block_dim(kt), m_.block_dim(ks))).first;
    it->second(pos_[tgt], pos_[src]) += c;
  }
  void install() {
    for (auto& [key, mat] : blocks_)
      if (!mat.is_zero()) m_.set_block(key.first, key.second, std::move(mat));
  }

 private:
  GradedModule& m_;
  std::vector<int> pos_;
  std::map<std::pair<int, Key>, Matrix> blocks_;
};

Matrix columns_of(const std::vector<Vec>& cols, int rows) { return Matrix::from_columns(cols, rows); }

Matrix span_basis(const Matrix& m) {
  auto cols = independent_columns(m);
  std::vector<int> rows(m.rows());
  for (int i = 0; i < m.rows(); ++i) rows[i] = i;
  return m.select(rows, cols);
}

}  // namespace

GradedModule::GradedModule(AlgebraPtr alg, std::vector<Key> tags, std::string name)
    : alg_(std::move(alg)), name_(std::move(name)), tags_(std::move(tags)) {
  for (size_t i = 0; i < tags_.size(); ++i) {
    if (tags_[i].v < 0 || tags_[i].v >= alg_->vertices()) throw InputError("module basis vector with invalid vertex");
    index_[tags_[i]].push_back(static_cast<int>(i));
  }
  act_.assign(alg_->dim(), {});
  set_idempotent_actions();
}

void GradedModule::set_idempotent_actions() {
  for (int v = 0; v < alg_->vertices(); ++v) {
    int e = alg_->idempotent(v);
    act_[e].clear();
    for (const auto& [k, idx] : index_)
      if (k.v == v) act_[e][k] = Matrix::identity(static_cast<int>(idx.size()));
  }
}

const std::vector<int>& GradedModule::block(const Key& k) const {
  auto it = index_.find(k);
  return it == index_.end() ? kEmpty : it->second;
}

const Matrix* GradedModule::action_block(int x, const Key& src) const {
  auto it = act_[x].find(src);
  return it == act_[x].end() ? nullptr : &it->second;
}

void GradedModule::set_block(int x, const Key& src, Matrix m) {
  if (src.v != alg_->element(x).src) throw InternalError("action block with wrong source vertex");
  Key tgt = target_key(x, src);
  if (m.rows() != block_dim(tgt) || m.cols() != block_dim(src)) throw InternalError("action block has wrong shape");
  if (m.rows() == 0 || m.cols() == 0) return;
  act_[x][src] = std::move(m);
}

Vec GradedModule::act(const Vec& m, int x) const {
  Vec out(dim());
  for (const auto& [src, b] : act_[x]) {
    const auto& si = index_.at(src);
    Vec local(si.size());
    bool any = false;
    for (size_t i = 0; i < si.size(); ++i) {
      local[i] = m[si[i]];
      any = any || !kk::is_zero(local[i]);
    }
    if (!any) continue;
    Vec img = b * local;
    const auto& ti = index_.at(target_key(x, src));
    for (size_t i = 0; i < ti.size(); ++i) out[ti[i]] += img[i];
  }
  return out;
}

Vec GradedModule::act(const Vec& m, const Vec& lambda) const {
  Vec out(dim());
  for (int x = 0; x < alg_->dim(); ++x)
    if (!kk::is_zero(lambda[x])) out = add(out, scale(act(m, x), lambda[x]));
  return out;
}

Matrix GradedModule::action_matrix(int x) const {
  Matrix full(dim(), dim());
  for (const auto& [src, b] : act_[x]) full.place(index_.at(target_key(x, src)), index_.at(src), b);
  return full;
}

int GradedModule::highest_degree() const {
  int h = 0;
  bool first = true;
  for (const auto& t : tags_) {
    h = first ? t.d : std::max(h, t.d);
    first = false;
  }
  return h;
}

int GradedModule::lowest_degree() const {
  int l = 0;
  bool first = true;
  for (const auto& t : tags_) {
    l = first ? t.d : std::min(l, t.d);
    first = false;
  }
  return l;
}

std::map<int, int> GradedModule::dims_by_degree() const {
  std::map<int, int> out;
  for (const auto& t : tags_) ++out[t.d];
  return out;
}

void validate_module(const GradedModule& m) {
  const auto& a = m.alg();
  for (int x = 0; x < a.dim(); ++x)
    for (const auto& [k, idx] : m.blocks()) {
      const Matrix* b = m.action_block(x, k);
      if (!b) continue;
      if (k.v != a.element(x).src) throw InputError("action of " + a.element(x).label + " leaves the wrong vertex");
      if (m.block_dim(m.target_key(x, k)) == 0) throw InputError("action lands outside the module");
    }
  for (int v = 0; v < a.vertices(); ++v)
    for (const auto& [k, idx] : m.blocks())
      if (k.v == v) {
        const Matrix* b = m.action_block(a.idempotent(v), k);
        if (!b || !(*b == Matrix::identity(static_cast<int>(idx.size()))))
          throw InputError("idempotent e" + std::to_string(v + 1) + " does not act as the identity");
      }
  for (int x = 0; x < a.dim(); ++x)
    for (int y = 0; y < a.dim(); ++y) {
      if (a.element(x).tgt != a.element(y).src) continue;
      for (const auto& [k, idx] : m.blocks()) {
        if (k.v != a.element(x).src) continue;
        Key k1 = m.target_key(x, k);
        Key k2 = m.target_key(y, k1);
        int r = m.block_dim(k2), c = static_cast<int>(idx.size());
        if (r == 0) continue;
        Matrix lhs(r, c), rhs(r, c);
        const Matrix* bx = m.action_block(x, k);
        const Matrix* by = m.action_block(y, k1);
        if (bx && by) lhs = (*by) * (*bx);
        for (const auto& [z, coeff] : a.product(x, y))
          if (const Matrix* bz = m.action_block(z, k)) rhs += bz->scaled(coeff);
        if (!(lhs == rhs))
          throw InputError("module action violates the product " + a.element(x).label + "*" + a.element(y).label +
                           " at " + to_string(k));
      }
    }
}

bool same_module(const GradedModule& a, const GradedModule& b) {
  if (a.tags() != b.tags() || a.alg().dim() != b.alg().dim()) return false;
  for (int x = 0; x < a.alg().dim(); ++x)
    for (const auto& [k, idx] : a.blocks()) {
      const Matrix* p = a.action_block(x, k);
      const Matrix* q = b.action_block(x, k);
      bool pz = !p || p->is_zero(), qz = !q || q->is_zero();
      if (pz != qz || (!pz && !(*p == *q))) return false;
    }
  return true;
}

Vec local_coords(const GradedModule& m, const Vec& v, const Key& k) {
  const auto& idx = m.block(k);
  Vec out(idx.size());
  for (size_t i = 0; i < idx.size(); ++i) out[i] = v[idx[i]];
  return out;
}

Vec unit_vector(int n, int i) {
  Vec v(n);
  v[i] = 1;
  return v;
}

GradedModule shift(const GradedModule& m, int j) {
  std::vector<Key> tags = m.tags();
  for (auto& t : tags) t.d += j;
  GradedModule out(m.algebra(), tags, m.name());
  for (int x = 0; x < m.alg().dim(); ++x) {
    if (m.alg().is_idempotent(x)) continue;
    for (const auto& [k, idx] : m.blocks())
      if (const Matrix* b = m.action_block(x, k)) out.set_block(x, {k.v, k.d + j}, *b);
  }
  return out;
}

std::vector<int> summand_offsets(const std::vector<GradedModule>& ms) {
  std::vector<int> off;
  int o = 0;
  for (const auto& m : ms) {
    off.push_back(o);
    o += m.dim();
  }
  return off;
}

GradedModule direct_sum(const std::vector<GradedModule>& ms) {
  if (ms.empty()) throw InternalError("direct sum of an empty list");
  std::vector<Key> tags;
  for (const auto& m : ms) tags.insert(tags.end(), m.tags().begin(), m.tags().end());
  GradedModule out(ms.front().algebra(), tags);
  auto off = summand_offsets(ms);
  BlockBuilder bb(out);
  for (size_t s = 0; s < ms.size(); ++s) {
    const auto& m = ms[s];
    for (int x = 0; x < m.alg().dim(); ++x) {
      if (m.alg().is_idempotent(x)) continue;
      for (const auto& [k, idx] : m.blocks()) {
        const Matrix* b = m.action_block(x, k);
        if (!b) continue;
        const auto& tidx = m.block(m.target_key(x, k));
        for (int r = 0; r < b->rows(); ++r)
          for (int c = 0; c < b->cols(); ++c)
            if (!is_zero((*b)(r, c))) bb.add(x, off[s] + idx[c], off[s] + tidx[r], (*b)(r, c));
      }
    }
  }
  bb.install();
  return out;
}

GradedModule twist_module(const GradedModule& m, const GradedAlgebraMorphism& phi) {
  const auto& a = m.alg();
  auto perm = phi.vertex_permutation(a);
  if (!perm) throw InputError("twist needs an automorphism permuting the vertex idempotents");
  std::vector<int> inv(a.vertices());
  for (int v = 0; v < a.vertices(); ++v) inv[(*perm)[v]] = v;
  std::vector<Key> tags = m.tags();
  for (auto& t : tags) t.v = inv[t.v];
  GradedModule out(m.algebra(), tags, m.name());
  for (int x = 0; x < a.dim(); ++x) {
    if (a.is_idempotent(x)) continue;
    for (const auto& [k, idx] : m.blocks()) {
      // k is an old key (w, d); in the twist it becomes (inv[w], d).
      Key nk{inv[k.v], k.d};
      if (nk.v != a.element(x).src) continue;
      Key nt = out.target_key(x, nk);
      if (out.block_dim(nt) == 0) continue;
      Matrix sum(out.block_dim(nt), static_cast<int>(idx.size()));
      bool any = false;
      for (int z = 0; z < a.dim(); ++z) {
        const Q& c = phi.matrix(z, x);
        if (is_zero(c)) continue;
        if (const Matrix* b = m.action_block(z, k)) {
          sum += b->scaled(c);
          any = true;
        }
      }
      if (any && !sum.is_zero()) out.set_block(x, nk, sum);
    }
  }
  return out;
}

GradedModule simple_module(const AlgebraPtr& a, int v, int d) {
  return GradedModule(a, {{v, d}}, "S" + std::to_string(v + 1));
}

GradedModule degree_zero_projective(const AlgebraPtr& a, int v, int d) {
  std::vector<int> basis;
  for (int x : a->with_source(v))
    if (a->element(x).deg == 0) basis.push_back(x);
  std::vector<Key> tags;
  std::vector<int> pos(a->dim(), -1);
  for (size_t i = 0; i < basis.size(); ++i) {
    pos[basis[i]] = static_cast<int>(i);
    tags.push_back({a->element(basis[i]).tgt, d});
  }
  GradedModule out(a, tags, "P" + std::to_string(v + 1) + "_0");
  BlockBuilder bb(out);
  for (int y = 0; y < a->dim(); ++y) {
    if (a->element(y).deg != 0 || a->is_idempotent(y)) continue;
    for (int x : basis)
      for (const auto& [z, c] : a->product(x, y)) bb.add(y, pos[x], pos[z], c);
  }
  bb.install();
  return out;
}

GradedModule restrict_to_degree_zero(const GradedModule& m, const AlgebraPtr& zero, const std::vector<int>& embedding) {
  GradedModule out(zero, m.tags(), m.name());
  for (int i = 0; i < zero->dim(); ++i) {
    if (zero->is_idempotent(i)) continue;
    for (const auto& [k, idx] : m.blocks())
      if (const Matrix* b = m.action_block(embedding[i], k)) out.set_block(i, k, *b);
  }
  return out;
}

GradedModule change_algebra(const GradedModule& m, const AlgebraPtr& other, bool forget_degrees) {
  std::vector<Key> tags = m.tags();
  if (forget_degrees)
    for (auto& t : tags) t.d = 0;
  GradedModule out(other, tags, m.name());
  BlockBuilder bb(out);
  for (int x = 0; x < m.alg().dim(); ++x) {
    if (m.alg().is_idempotent(x)) continue;
    for (const auto& [k, idx] : m.blocks()) {
      const Matrix* b = m.action_block(x, k);
      if (!b) continue;
      const auto& tidx = m.block(m.target_key(x, k));
      for (int r = 0; r < b->rows(); ++r)
        for (int c = 0; c < b->cols(); ++c) bb.add(x, idx[c], tidx[r], (*b)(r, c));
    }
  }
  bb.install();
  return out;
}

FreeModule free_module(const AlgebraPtr& a, const std::vector<Key>& gens) {
  FreeModule f;
  f.gens = gens;
  std::vector<Key> tags;
  for (const auto& g : gens) {
    f.offset.push_back(static_cast<int>(tags.size()));
    for (int x : a->with_source(g.v)) tags.push_back({a->element(x).tgt, a->element(x).deg + g.d});
  }
  f.module = GradedModule(a, tags, "P");
  BlockBuilder bb(f.module);
  for (size_t k = 0; k < gens.size(); ++k) {
    const auto& xs = a->with_source(gens[k].v);
    std::vector<int> pos(a->dim(), -1);
    for (size_t i = 0; i < xs.size(); ++i) pos[xs[i]] = static_cast<int>(i);
    for (size_t i = 0; i < xs.size(); ++i)
      for (int y = 0; y < a->dim(); ++y) {
        if (a->is_idempotent(y)) continue;
        for (const auto& [z, c] : a->product(xs[i], y))
          bb.add(y, f.offset[k] + static_cast<int>(i), f.offset[k] + pos[z], c);
      }
  }
  bb.install();
  return f;
}

Matrix map_from_free(const FreeModule& f, const GradedModule& n, const std::vector<Vec>& images) {
  const auto& a = f.module.alg();
  Matrix out(n.dim(), f.module.dim());
  for (size_t k = 0; k < f.gens.size(); ++k) {
    const auto& xs = a.with_source(f.gens[k].v);
    for (size_t i = 0; i < xs.size(); ++i) {
      Vec col = n.act(images[k], xs[i]);
      for (int r = 0; r < n.dim(); ++r)
        if (!is_zero(col[r])) out(r, f.offset[k] + static_cast<int>(i)) = col[r];
    }
  }
  return out;
}

CofreeModule cofree_module(const AlgebraPtr& a, const std::vector<Key>& cogens) {
  CofreeModule c;
  c.cogens = cogens;
  std::vector<Key> tags;
  for (const auto& g : cogens) {
    c.offset.push_back(static_cast<int>(tags.size()));
    for (int y : a->with_target(g.v)) tags.push_back({a->element(y).src, g.d - a->element(y).deg});
  }
  c.module = GradedModule(a, tags, "I");
  BlockBuilder bb(c.module);
  for (size_t k = 0; k < cogens.size(); ++k) {
    const auto& ys = a->with_target(cogens[k].v);
    std::vector<int> pos(a->dim(), -1);
    for (size_t i = 0; i < ys.size(); ++i) pos[ys[i]] = static_cast<int>(i);
    // y*·x = Σ_{y'} c_{x y'}^y y'*
    for (int x = 0; x < a->dim(); ++x) {
      if (a->is_idempotent(x)) continue;
      for (size_t j = 0; j < ys.size(); ++j)
        for (const auto& [y, coeff] : a->product(x, ys[j]))
          bb.add(x, c.offset[k] + pos[y], c.offset[k] + static_cast<int>(j), coeff);
    }
  }
  bb.install();
  return c;
}

Matrix map_to_cofree(const GradedModule& x, const CofreeModule& i, const std::vector<Vec>& functionals) {
  const auto& a = x.alg();
  Matrix out(i.module.dim(), x.dim());
  for (size_t k = 0; k < i.cogens.size(); ++k) {
    const Key& cg = i.cogens[k];
    const auto& ys = a.with_target(cg.v);
    Vec psi = local_coords(x, functionals[k], cg);
    for (size_t j = 0; j < ys.size(); ++j) {
      int y = ys[j];
      Key src{a.element(y).src, cg.d - a.element(y).deg};
      const Matrix* b = x.action_block(y, src);
      if (!b) continue;
      const auto& sidx = x.block(src);
      for (int c = 0; c < b->cols(); ++c) {
        Q s;
        for (int r = 0; r < b->rows(); ++r)
          if (!is_zero(psi[r]) && !is_zero((*b)(r, c))) s += psi[r] * (*b)(r, c);
        if (!is_zero(s)) out(i.offset[k] + static_cast<int>(j), sidx[c]) = s;
      }
    }
  }
  return out;
}

GradedModule projective(const AlgebraPtr& a, int v, int j) {
  auto m = free_module(a, {{v, j}}).module;
  m.set_name("P" + std::to_string(v + 1) + (j ? "<" + std::to_string(j) + ">" : ""));
  return m;
}

GradedModule injective(const AlgebraPtr& a, int w, int j) {
  auto m = cofree_module(a, {{w, j}}).module;
  m.set_name("I" + std::to_string(w + 1) + (j ? "<" + std::to_string(j) + ">" : ""));
  return m;
}

Submodule submodule(const GradedModule& m, const KeySpaces& spaces) {
  std::vector<Key> tags;
  std::map<Key, int> start;
  for (const auto& [k, b] : spaces) {
    if (b.cols() == 0) continue;
    if (b.rows() != m.block_dim(k)) throw InternalError("subspace basis has the wrong height");
    start[k] = static_cast<int>(tags.size());
    for (int c = 0; c < b.cols(); ++c) tags.push_back(k);
  }
  Submodule s;
  s.module = GradedModule(m.algebra(), tags);
  s.inclusion = Matrix(m.dim(), static_cast<int>(tags.size()));
  std::map<Key, Matrix> linv;
  for (const auto& [k, b] : spaces) {
    if (b.cols() == 0) continue;
    const auto& idx = m.block(k);
    for (int c = 0; c < b.cols(); ++c)
      for (int r = 0; r < b.rows(); ++r) s.inclusion(idx[r], start[k] + c) = b(r, c);
    linv[k] = left_inverse(b);
  }
  const auto& a = m.alg();
  for (int x = 0; x < a.dim(); ++x) {
    if (a.is_idempotent(x)) continue;
    for (const auto& [k, b] : spaces) {
      if (b.cols() == 0) continue;
      const Matrix* blk = m.action_block(x, k);
      if (!blk) continue;
      Key t = m.target_key(x, k);
      Matrix img = (*blk) * b;
      if (img.is_zero()) continue;
      auto it = spaces.find(t);
      if (it == spaces.end() || it->second.cols() == 0) throw InternalError("subspace is not closed under the action");
      Matrix coords = linv[t] * img;
      if (!(it->second * coords == img)) throw InternalError("subspace is not closed under the action");
      s.module.set_block(x, k, coords);
    }
  }
  return s;
}

Quotient quotient(const GradedModule& m, const KeySpaces& spaces) {
  struct Part {
    std::vector<int> comp;  // complement indices (key-local)
    Matrix proj;            // comp-coordinates of key-local vectors
  };
  std::map<Key, Part> parts;
  std::vector<Key> tags;
  std::map<Key, int> start;
  for (const auto& [k, idx] : m.blocks()) {
    int n = static_cast<int>(idx.size());
    Part p;
    auto it = spaces.find(k);
    if (it == spaces.end() || it->second.cols() == 0) {
      for (int i = 0; i < n; ++i) p.comp.push_back(i);
      p.proj = Matrix::identity(n);
    } else {
      const Matrix& w = it->second;
      p.comp = complement_indices(w);
      Matrix full(n, n);
      for (int c = 0; c < w.cols(); ++c)
        for (int r = 0; r < n; ++r) full(r, c) = w(r, c);
      for (size_t j = 0; j < p.comp.size(); ++j) full(p.comp[j], w.cols() + static_cast<int>(j)) = 1;
      auto inv = inverse(full);
      if (!inv) throw InternalError("quotient: subspace basis is dependent");
      std::vector<int> rows, cols(n);
      for (size_t j = 0; j < p.comp.size(); ++j) rows.push_back(w.cols() + static_cast<int>(j));
      for (int i = 0; i < n; ++i) cols[i] = i;
      p.proj = inv->select(rows, cols);
    }
    if (p.comp.empty()) continue;
    start[k] = static_cast<int>(tags.size());
    for (size_t j = 0; j < p.comp.size(); ++j) tags.push_back(k);
    parts[k] = std::move(p);
  }
  Quotient q;
  q.module = GradedModule(m.algebra(), tags);
  q.projection = Matrix(static_cast<int>(tags.size()), m.dim());
  q.section = Matrix(m.dim(), static_cast<int>(tags.size()));
  for (const auto& [k, p] : parts) {
    const auto& idx = m.block(k);
    for (int r = 0; r < p.proj.rows(); ++r)
      for (int c = 0; c < p.proj.cols(); ++c) q.projection(start[k] + r, idx[c]) = p.proj(r, c);
    for (size_t j = 0; j < p.comp.size(); ++j) q.section(idx[p.comp[j]], start[k] + static_cast<int>(j)) = 1;
  }
  const auto& a = m.alg();
  for (int x = 0; x < a.dim(); ++x) {
    if (a.is_idempotent(x)) continue;
    for (const auto& [k, p] : parts) {
      const Matrix* blk = m.action_block(x, k);
      if (!blk) continue;
      Key t = m.target_key(x, k);
      auto it = parts.find(t);
      if (it == parts.end()) continue;
      std::vector<int> rows(blk->rows());
      for (int i = 0; i < blk->rows(); ++i) rows[i] = i;
      Matrix b = it->second.proj * blk->select(rows, p.comp);
      if (!b.is_zero()) q.module.set_block(x, k, b);
    }
  }
  return q;
}

KeySpaces image_spaces(const GradedModule& target, const GradedModule& source, const Matrix& f) {
  KeySpaces out;
  for (const auto& [k, tidx] : target.blocks()) {
    const auto& sidx = source.block(k);
    if (sidx.empty()) continue;
    Matrix b = span_basis(f.select(tidx, sidx));
    if (b.cols() > 0) out[k] = b;
  }
  return out;
}

KeySpaces kernel_spaces(const GradedModule& source, const GradedModule& target, const Matrix& f) {
  KeySpaces out;
  for (const auto& [k, sidx] : source.blocks()) {
    const auto& tidx = target.block(k);
    std::vector<Vec> ker;
    if (tidx.empty()) {
      for (size_t i = 0; i < sidx.size(); ++i) ker.push_back(unit_vector(static_cast<int>(sidx.size()), static_cast<int>(i)));
    } else {
      ker = kernel_basis(f.select(tidx, sidx));
    }
    if (!ker.empty()) out[k] = columns_of(ker, static_cast<int>(sidx.size()));
  }
  return out;
}

KeySpaces radical_spaces(const GradedModule& m) {
  std::map<Key, std::vector<Vec>> cols;
  const auto& a = m.alg();
  for (int x : a.generators())
    for (const auto& [k, idx] : m.blocks()) {
      const Matrix* b = m.action_block(x, k);
      if (!b) continue;
      auto& dst = cols[m.target_key(x, k)];
      for (int c = 0; c < b->cols(); ++c) dst.push_back(b->column(c));
    }
  KeySpaces out;
  for (auto& [k, cs] : cols) {
    Matrix b = span_basis(columns_of(cs, m.block_dim(k)));
    if (b.cols() > 0) out[k] = b;
  }
  return out;
}

KeySpaces socle_spaces(const GradedModule& m) {
  KeySpaces out;
  const auto& a = m.alg();
  for (const auto& [k, idx] : m.blocks()) {
    int n = static_cast<int>(idx.size());
    RowReducer rr(n);
    for (int x : a.generators()) {
      const Matrix* b = m.action_block(x, k);
      if (!b) continue;
      for (int r = 0; r < b->rows(); ++r) rr.add_dense(b->row(r));
    }
    auto ker = rr.kernel();
    if (!ker.empty()) out[k] = columns_of(ker, n);
  }
  return out;
}

std::vector<Matrix> hom_space(const GradedModule& m, const GradedModule& n) {
  if (m.alg().dim() != n.alg().dim()) throw InputError("hom_space: modules over different algebras");
  std::map<Key, int> base;
  int unknowns = 0;
  for (const auto& [k, midx] : m.blocks()) {
    int nd = n.block_dim(k);
    if (nd == 0) continue;
    base[k] = unknowns;
    unknowns += nd * static_cast<int>(midx.size());
  }
  // unknown for f_k(r, q): base[k] + r * dim M_k + q
  RowReducer rr(unknowns);
  const auto& a = m.alg();
  for (int x : a.generators()) {
    for (const auto& [k, midx] : m.blocks()) {
      if (k.v != a.element(x).src) continue;
      Key t = m.target_key(x, k);
      int nt = n.block_dim(t);
      if (nt == 0) continue;
      int mk = static_cast<int>(midx.size());
      int mt = m.block_dim(t);
      const Matrix* bn = n.action_block(x, k);  // N_k -> N_t
      const Matrix* bm = m.action_block(x, k);  // M_k -> M_t
      bool fk = base.count(k) > 0, ft = base.count(t) > 0;
      int nk = n.block_dim(k);
      for (int p = 0; p < nt; ++p)
        for (int q = 0; q < mk; ++q) {
          std::map<int, Q> row;
          if (bn && fk)
            for (int r = 0; r < nk; ++r)
              if (!is_zero((*bn)(p, r))) row[base[k] + r * mk + q] += (*bn)(p, r);
          if (bm && ft)
            for (int r = 0; r < mt; ++r)
              if (!is_zero((*bm)(r, q))) row[base[t] + p * mt + r] -= (*bm)(r, q);
          SparseVec s;
          for (auto& [j, c] : row)
            if (!is_zero(c)) s.emplace_back(j, c);
          if (!s.empty()) rr.add(s);
        }
    }
  }
  std::vector<Matrix> out;
  for (const Vec& sol : rr.kernel()) {
    Matrix f(n.dim(), m.dim());
    for (const auto& [k, b] : base) {
      const auto& midx = m.block(k);
      const auto& nidx = n.block(k);
      int mk = static_cast<int>(midx.size());
      for (size_t r = 0; r < nidx.size(); ++r)
        for (int q = 0; q < mk; ++q) f(nidx[r], midx[q]) = sol[b + static_cast<int>(r) * mk + q];
    }
    out.push_back(std::move(f));
  }
  return out;
}

bool is_homomorphism(const GradedModule& m, const GradedModule& n, const Matrix& f) {
  if (f.rows() != n.dim() || f.cols() != m.dim()) return false;
  for (int i = 0; i < n.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j)
      if (!is_zero(f(i, j)) && n.tags()[i] != m.tags()[j]) return false;
  for (int x = 0; x < m.alg().dim(); ++x)
    if (!(f * m.action_matrix(x) == n.action_matrix(x) * f)) return false;
  return true;
}

ProjectiveCover projective_cover(const GradedModule& m) {
  auto rad = radical_spaces(m);
  std::vector<Key> gens;
  std::vector<Vec> images;
  for (const auto& [k, idx] : m.blocks()) {
    std::vector<int> comp;
    auto it = rad.find(k);
    if (it == rad.end()) {
      for (size_t i = 0; i < idx.size(); ++i) comp.push_back(static_cast<int>(i));
    } else {
      comp = complement_indices(it->second);
    }
    for (int c : comp) {
      gens.push_back(k);
      images.push_back(unit_vector(m.dim(), idx[c]));
    }
  }
  ProjectiveCover pc;
  pc.cover = free_module(m.algebra(), gens);
  pc.epi = map_from_free(pc.cover, m, images);
  return pc;
}

InjectiveEnvelope injective_envelope(const GradedModule& m) {
  auto soc = socle_spaces(m);
  std::vector<Key> cogens;
  std::vector<Vec> functionals;
  for (const auto& [k, s] : soc) {
    Matrix l = left_inverse(s);
    const auto& idx = m.block(k);
    for (int r = 0; r < l.rows(); ++r) {
      Vec psi(m.dim());
      for (int c = 0; c < l.cols(); ++c) psi[idx[c]] = l(r, c);
      cogens.push_back(k);
      functionals.push_back(psi);
    }
  }
  InjectiveEnvelope ie;
  ie.envelope = cofree_module(m.algebra(), cogens);
  ie.mono = map_to_cofree(m, ie.envelope, functionals);
  return ie;
}

Submodule raw_syzygy(const GradedModule& m, const ProjectiveCover& pc) {
  return submodule(pc.cover.module, kernel_spaces(pc.cover.module, m, pc.epi));
}

Quotient raw_cosyzygy(const GradedModule& m, const InjectiveEnvelope& ie) {
  return quotient(ie.envelope.module, image_spaces(ie.envelope.module, m, ie.mono));
}

namespace {

// Index of e_v inside the basis of e_v Λ.
int idempotent_position(const GradedAlgebra& a, int v) {
  const auto& xs = a.with_source(v);
  for (size_t i = 0; i < xs.size(); ++i)
    if (xs[i] == a.idempotent(v)) return static_cast<int>(i);
  throw InternalError("idempotent missing from its projective");
}

// Left multiplication by c ∈ e_v Λ e_v on e_v Λ<j>.
Matrix left_multiplication(const GradedAlgebra& a, int v, const Vec& c) {
  const auto& xs = a.with_source(v);
  std::vector<int> pos(a.dim(), -1);
  for (size_t i = 0; i < xs.size(); ++i) pos[xs[i]] = static_cast<int>(i);
  int n = static_cast<int>(xs.size());
  Matrix out(n, n);
  for (int w = 0; w < a.dim(); ++w) {
    if (is_zero(c[w])) continue;
    for (int i = 0; i < n; ++i)
      for (const auto& [z, coeff] : a.product(w, xs[i])) out(pos[z], i) += c[w] * coeff;
  }
  return out;
}

// Looks for a split embedding e_v Λ<j> -> M; returns the retraction M -> P when found.
std::optional<Matrix> find_projective_summand(const GradedModule& m, const Key& k) {
  const auto& a = m.alg();
  GradedModule p = projective(m.algebra(), k.v, k.d);
  for (const auto& [pk, pidx] : p.blocks())
    if (m.block_dim(pk) < static_cast<int>(pidx.size())) return std::nullopt;
  const auto& midx = m.block(k);
  if (a.is_self_injective()) {
    const Vec& s = *a.right_socle(k.v);
    bool hit = false;
    for (int i : midx)
      if (!is_zero(m.act(unit_vector(m.dim(), i), s))) hit = true;
    if (!hit) return std::nullopt;
  }
  auto homs = hom_space(m, p);
  if (homs.empty()) return std::nullopt;
  const int ev = idempotent_position(a, k.v);
  const auto& xs = a.with_source(k.v);
  for (int i : midx)
    for (const auto& g : homs) {
      const Q& lead = g(ev, i);
      if (is_zero(lead)) continue;
      // u = g(m) lies in e_v Λ_0 e_v; invert it there.
      Vec u(a.dim());
      for (size_t r = 0; r < xs.size(); ++r) u[xs[r]] = g(static_cast<int>(r), i);
      std::vector<int> local;
      for (int x : xs)
        if (a.element(x).tgt == k.v && a.element(x).deg == 0) local.push_back(x);
      int n = static_cast<int>(local.size());
      Matrix lm(n, n);
      for (int c = 0; c < n; ++c) {
        Vec w(a.dim());
        w[local[c]] = 1;
        Vec uw = a.multiply(u, w);
        for (int r = 0; r < n; ++r) lm(r, c) = uw[local[r]];
      }
      Vec target(n);
      for (int r = 0; r < n; ++r) target[r] = local[r] == a.idempotent(k.v) ? 1 : 0;
      auto sol = solve(lm, target);
      if (!sol) throw InternalError("unit of a local endomorphism ring has no inverse");
      Vec w(a.dim());
      for (int r = 0; r < n; ++r) w[local[r]] = (*sol)[r];
      Matrix retraction = left_multiplication(a, k.v, w) * g;
      if (!is_zero(retraction(ev, i) - 1)) throw InternalError("projective summand retraction is not normalized");
      return retraction;
    }
  return std::nullopt;
}

}  // namespace

StrippedModule strip_projective_summands(const GradedModule& m) {
  StrippedModule out;
  out.module = m;
  out.inclusion = Matrix::identity(m.dim());
  bool changed = true;
  while (changed && !out.module.is_zero()) {
    changed = false;
    std::vector<Key> keys;
    for (const auto& [k, idx] : out.module.blocks()) keys.push_back(k);
    for (const Key& k : keys) {
      auto g = find_projective_summand(out.module, k);
      if (!g) continue;
      GradedModule p = projective(out.module.algebra(), k.v, k.d);
      Submodule c = submodule(out.module, kernel_spaces(out.module, p, *g));
      if (c.module.dim() + p.dim() != out.module.dim()) throw InternalError("projective summand did not split");
      out.inclusion = out.inclusion * c.inclusion;
      out.module = c.module;
      out.removed.push_back(k);
      changed = true;
      break;
    }
  }
  out.module.set_name(m.name());
  return out;
}

GradedModule syzygy(const GradedModule& m) {
  auto s = raw_syzygy(m, projective_cover(m));
  return strip_projective_summands(s.module).module;
}

GradedModule cosyzygy(const GradedModule& m) {
  auto q = raw_cosyzygy(m, injective_envelope(m));
  return strip_projective_summands(q.module).module;
}

GradedModule omega_power(const GradedModule& m, int k) {
  GradedModule cur = m;
  for (int i = 0; i < std::abs(k) && !cur.is_zero(); ++i) cur = k > 0 ? syzygy(cur) : cosyzygy(cur);
  return cur;
}

HomCoordinates::HomCoordinates(const GradedModule& m, const GradedModule& n) : rows_(n.dim()), cols_(m.dim()) {
  for (const auto& [k, midx] : m.blocks())
    for (int r : n.block(k))
      for (int c : midx) entries_.emplace_back(r, c);
}

Vec HomCoordinates::flatten(const Matrix& f) const {
  Vec v(entries_.size());
  for (size_t i = 0; i < entries_.size(); ++i) v[i] = f(entries_[i].first, entries_[i].second);
  return v;
}

Matrix HomCoordinates::unflatten(const Vec& v) const {
  Matrix f(rows_, cols_);
  for (size_t i = 0; i < entries_.size(); ++i) f(entries_[i].first, entries_[i].second) = v[i];
  return f;
}

StableHom stable_hom(const GradedModule& m, const GradedModule& n) {
  StableHom s{hom_space(m, n), {}, {}, {}, HomCoordinates(m, n)};
  if (!s.homs.empty()) {
    auto pc = projective_cover(n);
    for (const auto& h : hom_space(m, pc.cover.module)) {
      Matrix f = pc.epi * h;
      if (!f.is_zero()) s.projective.push_back(std::move(f));
    }
  }
  std::vector<Vec> span, sub;
  for (const auto& h : s.homs) span.push_back(s.coords.flatten(h));
  for (const auto& h : s.projective) sub.push_back(s.coords.flatten(h));
  s.quotient = QuotientSpace(s.coords.size(), span, sub);
  for (const auto& r : s.quotient.representatives()) s.reps.push_back(s.coords.unflatten(r));
  return s;
}

bool same_graded_dims(const GradedModule& m, const GradedModule& n) {
  return graded_dimension_vector(m) == graded_dimension_vector(n);
}

std::map<Key, int> graded_dimension_vector(const GradedModule& m) {
  std::map<Key, int> out;
  for (const auto& [k, idx] : m.blocks()) out[k] = static_cast<int>(idx.size());
  return out;
}

IsoResult is_isomorphic(const GradedModule& m, const GradedModule& n, std::uint64_t seed) {
  IsoResult res;
  if (!same_graded_dims(m, n)) return res;
  if (m.is_zero()) {
    res.verdict = IsoVerdict::Yes;
    res.iso = Matrix(0, 0);
    return res;
  }
  auto homs = hom_space(m, n);
  if (homs.empty()) return res;
  Sampler rng(seed);
  for (int attempt = 0; attempt < 64; ++attempt) {
    Matrix f(n.dim(), m.dim());
    for (size_t i = 0; i < homs.size(); ++i) {
      Q c = attempt == 0 && homs.size() == 1 ? Q(1) : Q(rng.next());
      if (!is_zero(c)) f += homs[i].scaled(c);
    }
    if (rank(f) == m.dim()) {
      res.verdict = IsoVerdict::Yes;
      res.iso = f;
      return res;
    }
  }
  auto em = hom_space(m, m).size();
  auto en = hom_space(n, n).size();
  res.verdict = (em != homs.size() || en != homs.size()) ? IsoVerdict::NoCertified : IsoVerdict::NoProbabilistic;
  return res;
}

IndecomposableResult is_indecomposable(const GradedModule& m) {
  IndecomposableResult res;
  if (m.is_zero()) return res;
  auto ends = hom_space(m, m);
  res.end_dim = static_cast<int>(ends.size());
  const int e = res.end_dim;
  Matrix g(e, e);
  for (int i = 0; i < e; ++i)
    for (int j = i; j < e; ++j) {
      Matrix p = ends[i] * ends[j];
      Q t;
      for (int r = 0; r < p.rows(); ++r) t += p(r, r);
      g(i, j) = t;
      g(j, i) = t;
    }
  res.top_dim = rank(g);
  res.indecomposable = res.top_dim == 1;
  return res;
}

Truncations truncations(const GradedModule& m, int i) {
  KeySpaces ge, gt;
  for (const auto& [k, idx] : m.blocks()) {
    int n = static_cast<int>(idx.size());
    if (k.d >= i) ge[k] = Matrix::identity(n);
    if (k.d >= i + 1) gt[k] = Matrix::identity(n);
  }
  Truncations t;
  t.at_least = submodule(m, ge).module;
  t.at_most = quotient(m, gt).module;
  KeySpaces gt2;
  for (const auto& [k, idx] : t.at_least.blocks())
    if (k.d >= i + 1) gt2[k] = Matrix::identity(static_cast<int>(idx.size()));
  t.exactly = quotient(t.at_least, gt2).module;
  return t;
}

}  // namespace kk
