#include "koszulkit/homology.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace kk {

namespace {

const std::vector<Key> kNoGenerators;

int idempotent_position(const GradedAlgebra& a, int v) {
  const auto& xs = a.with_source(v);
  return static_cast<int>(std::find(xs.begin(), xs.end(), a.idempotent(v)) - xs.begin());
}

// Basis index of P decomposed as (summand, algebra basis element).
std::vector<std::pair<int, int>> decode(const FreeModule& f) {
  std::vector<std::pair<int, int>> out;
  const auto& a = f.module.alg();
  for (size_t k = 0; k < f.gens.size(); ++k)
    for (int x : a.with_source(f.gens[k].v)) out.emplace_back(static_cast<int>(k), x);
  return out;
}

int generator_index(const FreeModule& f, int k) {
  return f.offset[k] + idempotent_position(f.module.alg(), f.gens[k].v);
}

const FreeModule* term(const ProjectiveResolution& r, int i) {
  if (i < 0) return nullptr;
  if (i <= r.computed()) return &r.terms[i];
  if (r.complete) return nullptr;
  throw InternalError("projective resolution too short for term " + std::to_string(i));
}

struct Layout {
  std::vector<int> offset;
  std::vector<Key> keys;  // N-keys per generator
  int total = 0;
};

Layout layout(const ProjectiveResolution& r, int i, const GradedModule& n, int j) {
  Layout l;
  const FreeModule* p = term(r, i);
  if (!p) return l;
  for (const auto& g : p->gens) {
    Key k{g.v, g.d - j};
    l.offset.push_back(l.total);
    l.keys.push_back(k);
    l.total += n.block_dim(k);
  }
  return l;
}

Vec generator_value(const Layout& l, const GradedModule& n, const Vec& f, int k) {
  Vec out(n.dim());
  const auto& idx = n.block(l.keys[k]);
  for (size_t r = 0; r < idx.size(); ++r) out[idx[r]] = f[l.offset[k] + static_cast<int>(r)];
  return out;
}

void store_generator_value(const Layout& l, const GradedModule& n, Vec& f, int k, const Vec& value) {
  const auto& idx = n.block(l.keys[k]);
  for (size_t r = 0; r < idx.size(); ++r) f[l.offset[k] + static_cast<int>(r)] = value[idx[r]];
}

// Solves map(y) = rhs with y supported on the key block of `src` and rhs on the same key of `dst`.
Vec solve_in_block(const Matrix& map, const GradedModule& src, const GradedModule& dst, const Key& key, const Vec& rhs) {
  Vec y(src.dim());
  if (is_zero(rhs)) return y;
  const auto& cols = src.block(key);
  const auto& rows = dst.block(key);
  for (int i = 0; i < dst.dim(); ++i)
    if (!is_zero(rhs[i]) && std::find(rows.begin(), rows.end(), i) == rows.end())
      throw InternalError("lifting target leaves its degree block");
  if (cols.empty()) throw InternalError("chain map lift has no room in " + to_string(key));
  Vec local(rows.size());
  for (size_t r = 0; r < rows.size(); ++r) local[r] = rhs[rows[r]];
  auto sol = solve(map.select(rows, cols), local);
  if (!sol) throw InternalError("chain map lift does not exist at " + to_string(key));
  for (size_t c = 0; c < cols.size(); ++c) y[cols[c]] = (*sol)[c];
  return y;
}

}  // namespace

const std::vector<Key>& ProjectiveResolution::generators(int i) const {
  if (i < 0 || i > computed()) return kNoGenerators;
  return terms[i].gens;
}

std::optional<int> ProjectiveResolution::projective_dimension() const {
  if (!complete) return std::nullopt;
  return computed();
}

void extend_resolution(ProjectiveResolution& r, int length) {
  while (!r.complete && r.computed() < length) {
    if (r.terms.empty()) {
      if (r.module.is_zero()) {
        r.complete = true;
        break;
      }
      auto pc = projective_cover(r.module);
      auto k = raw_syzygy(r.module, pc);
      r.terms.push_back(pc.cover);
      r.augmentation = pc.epi;
      r.kernel = std::move(k.module);
      r.kernel_inclusion = std::move(k.inclusion);
    } else {
      auto pc = projective_cover(r.kernel);
      auto k = raw_syzygy(r.kernel, pc);
      r.differentials.push_back(r.kernel_inclusion * pc.epi);
      r.terms.push_back(pc.cover);
      r.kernel = std::move(k.module);
      r.kernel_inclusion = std::move(k.inclusion);
    }
    if (r.kernel.is_zero()) r.complete = true;
  }
}

ProjectiveResolution projective_resolution(const GradedModule& m, int length) {
  ProjectiveResolution r;
  r.module = m;
  extend_resolution(r, length);
  return r;
}

bool is_minimal(const ProjectiveResolution& r) {
  for (size_t i = 0; i < r.differentials.size(); ++i) {
    const auto& src = r.terms[i + 1];
    const auto& dst = r.terms[i];
    for (size_t k = 0; k < src.gens.size(); ++k) {
      int col = generator_index(src, static_cast<int>(k));
      for (size_t k2 = 0; k2 < dst.gens.size(); ++k2)
        if (!is_zero(r.differentials[i](generator_index(dst, static_cast<int>(k2)), col))) return false;
    }
  }
  return true;
}

int cochain_dim(const ProjectiveResolution& r, int i, const GradedModule& n, int j) {
  return layout(r, i, n, j).total;
}

Matrix coboundary(const ProjectiveResolution& r, int i, const GradedModule& n, int j) {
  Layout from = layout(r, i, n, j);
  Layout to = layout(r, i + 1, n, j);
  Matrix out(to.total, from.total);
  if (to.total == 0 || from.total == 0) return out;
  const FreeModule& src = r.terms[i + 1];
  const auto dec = decode(r.terms[i]);
  const Matrix& d = r.differentials[i];
  for (size_t k = 0; k < src.gens.size(); ++k) {
    if (n.block_dim(to.keys[k]) == 0) continue;
    int col = generator_index(src, static_cast<int>(k));
    for (int b = 0; b < d.rows(); ++b) {
      const Q& c = d(b, col);
      if (is_zero(c)) continue;
      auto [k2, x] = dec[b];
      const Matrix* blk = n.action_block(x, from.keys[k2]);
      if (!blk) continue;
      if (n.target_key(x, from.keys[k2]) != to.keys[k]) throw InternalError("coboundary mixes degree blocks");
      for (int rr = 0; rr < blk->rows(); ++rr)
        for (int cc = 0; cc < blk->cols(); ++cc)
          if (!is_zero((*blk)(rr, cc))) out(to.offset[k] + rr, from.offset[k2] + cc) += c * (*blk)(rr, cc);
    }
  }
  return out;
}

Vec evaluate_cochain(const ProjectiveResolution& r, int i, const GradedModule& n, int j, const Vec& f, const Vec& y) {
  Vec out(n.dim());
  const FreeModule* p = term(r, i);
  if (!p) return out;
  Layout l = layout(r, i, n, j);
  const auto dec = decode(*p);
  std::vector<std::optional<Vec>> values(p->gens.size());
  for (size_t b = 0; b < y.size(); ++b) {
    if (is_zero(y[b])) continue;
    auto [k, x] = dec[b];
    if (!values[k]) values[k] = generator_value(l, n, f, k);
    out = add(out, scale(n.act(*values[k], x), y[b]));
  }
  return out;
}

std::vector<Vec> cochain_values(const ProjectiveResolution& r, int i, const GradedModule& n, int j, const Vec& f) {
  Layout l = layout(r, i, n, j);
  std::vector<Vec> out;
  for (size_t k = 0; k < l.keys.size(); ++k) out.push_back(generator_value(l, n, f, static_cast<int>(k)));
  return out;
}

Vec cochain_from_values(const ProjectiveResolution& r, int i, const GradedModule& n, int j, const std::vector<Vec>& values) {
  Layout l = layout(r, i, n, j);
  Vec f(l.total);
  if (values.size() != l.keys.size()) throw InternalError("cochain needs one value per generator");
  for (size_t k = 0; k < values.size(); ++k) {
    if (values[k].empty()) continue;
    const auto& idx = n.block(l.keys[k]);
    for (int e = 0; e < n.dim(); ++e)
      if (!is_zero(values[k][e]) && std::find(idx.begin(), idx.end(), e) == idx.end())
        throw InternalError("cochain value leaves its degree block");
    store_generator_value(l, n, f, static_cast<int>(k), values[k]);
  }
  return f;
}

Vec hom_to_cochain(const ProjectiveResolution& r, const GradedModule& n, int j, const Matrix& h) {
  Layout l = layout(r, 0, n, j);
  Vec f(l.total);
  const FreeModule* p = term(r, 0);
  if (!p) return f;
  for (size_t k = 0; k < p->gens.size(); ++k) {
    Vec image = h * r.augmentation.column(generator_index(*p, static_cast<int>(k)));
    store_generator_value(l, n, f, static_cast<int>(k), image);
  }
  return f;
}

ExtGroup ext_group(const ProjectiveResolution& r, const GradedModule& n, int i, int j,
                   const std::vector<Vec>& preferred) {
  ExtGroup g{i, j, {}};
  int dim = cochain_dim(r, i, n, j);
  std::vector<Vec> span = preferred;
  Matrix d = coboundary(r, i, n, j);
  if (d.rows() == 0) {
    for (int c = 0; c < dim; ++c) span.push_back(unit_vector(dim, c));
  } else {
    for (auto& v : kernel_basis(d)) span.push_back(std::move(v));
  }
  std::vector<Vec> sub;
  if (i > 0) {
    Matrix b = coboundary(r, i - 1, n, j);
    for (int c = 0; c < b.cols(); ++c) {
      Vec col = b.column(c);
      if (!is_zero(col)) sub.push_back(std::move(col));
    }
  }
  g.classes = QuotientSpace(dim, span, sub);
  return g;
}

ExtGroup ext_group(const ProjectiveResolution& r, const GradedModule& n, int i, int j) {
  return ext_group(r, n, i, j, {});
}

std::string ExtTable::tsv() const {
  std::ostringstream out;
  out << "i\\j";
  for (int j = j_min; j <= j_max; ++j) out << '\t' << j;
  out << '\n';
  for (int i = 0; i <= i_max; ++i) {
    out << i;
    for (int j = j_min; j <= j_max; ++j) out << '\t' << at(i, j);
    out << '\n';
  }
  return out.str();
}

ExtTable ext_table(ProjectiveResolution& r, const GradedModule& n, int i_max, int j_min, int j_max) {
  extend_resolution(r, i_max + 1);
  ExtTable t{i_max, j_min, j_max, {}};
  t.dims.assign(i_max + 1, std::vector<int>(std::max(0, j_max - j_min + 1), 0));
  for (int j = j_min; j <= j_max; ++j) {
    int prev_rank = 0;
    for (int i = 0; i <= i_max; ++i) {
      int dim = cochain_dim(r, i, n, j);
      int rk = dim == 0 ? 0 : rank(coboundary(r, i, n, j));
      t.dims[i][j - j_min] = dim - rk - prev_rank;
      prev_rank = rk;
    }
  }
  return t;
}

ExtTable ext_table(const GradedModule& m, const GradedModule& n, int i_max, int j_min, int j_max) {
  auto r = projective_resolution(m, i_max + 1);
  return ext_table(r, n, i_max, j_min, j_max);
}

std::pair<int, int> ext_support(const ProjectiveResolution& r, const GradedModule& n, int i) {
  const auto& gens = r.generators(i);
  if (gens.empty() || n.is_zero()) return {1, 0};
  int dmin = gens.front().d, dmax = gens.front().d;
  for (const auto& g : gens) {
    dmin = std::min(dmin, g.d);
    dmax = std::max(dmax, g.d);
  }
  return {dmin - n.highest_degree(), dmax - n.lowest_degree()};
}

int graded_ext_row_sum(ProjectiveResolution& r, const GradedModule& n, int i) {
  extend_resolution(r, i + 1);
  auto [lo, hi] = ext_support(r, n, i);
  if (lo > hi) return 0;
  auto t = ext_table(r, n, i, lo, hi);
  int s = 0;
  for (int j = lo; j <= hi; ++j) s += t.at(i, j);
  return s;
}

UngradedExt ungraded_ext_dims(const GradedModule& m, const GradedModule& n, int i) {
  auto flat = make_shared_algebra(forget_grading(m.alg()));
  auto mf = change_algebra(m, flat, true);
  auto nf = change_algebra(n, flat, true);
  UngradedExt u;
  auto rf = projective_resolution(mf, i + 1);
  u.ungraded = ext_table(rf, nf, i, 0, 0).at(i, 0);
  auto r = projective_resolution(m, i + 1);
  u.graded_sum = graded_ext_row_sum(r, n, i);
  if (u.ungraded != u.graded_sum)
    throw InternalError("ungraded Ext^" + std::to_string(i) + " has dimension " + std::to_string(u.ungraded) +
                        " but the graded pieces sum to " + std::to_string(u.graded_sum));
  return u;
}

ChainLift lift_cocycle(const ProjectiveResolution& src, int s, const ProjectiveResolution& tgt, int q, const Vec& cocycle,
                       int steps) {
  ChainLift lift{s, q, {}};
  lift.images.resize(steps + 1);
  const GradedModule& m = tgt.module;
  {
    const FreeModule* p = term(src, s);
    const FreeModule* p0 = term(tgt, 0);
    if (p) {
      Layout l = layout(src, s, m, q);
      for (size_t k = 0; k < p->gens.size(); ++k) {
        Vec value = generator_value(l, m, cocycle, static_cast<int>(k));
        if (!p0) {
          if (!is_zero(value)) throw InternalError("nonzero cocycle into the zero module");
          lift.images[0].push_back({});
          continue;
        }
        lift.images[0].push_back(solve_in_block(tgt.augmentation, p0->module, m, l.keys[k], value));
      }
    }
  }
  for (int t = 1; t <= steps; ++t) {
    const FreeModule* p = term(src, s + t);
    if (!p) break;
    const FreeModule* prev_src = term(src, s + t - 1);
    const FreeModule* pt = term(tgt, t);
    const FreeModule* pprev = term(tgt, t - 1);
    const auto dec = decode(*prev_src);
    const Matrix& d = src.differentials[s + t - 1];
    for (size_t k = 0; k < p->gens.size(); ++k) {
      int col = generator_index(*p, static_cast<int>(k));
      Key key{p->gens[k].v, p->gens[k].d - q};
      Vec rhs(pprev ? pprev->module.dim() : 0);
      if (pprev)
        for (int b = 0; b < d.rows(); ++b) {
          if (is_zero(d(b, col))) continue;
          auto [k2, x] = dec[b];
          const Vec& img = lift.images[t - 1][k2];
          if (is_zero(img)) continue;
          rhs = add(rhs, scale(pprev->module.act(img, x), d(b, col)));
        }
      if (!pt) {
        if (!is_zero(rhs)) throw InternalError("chain map lift runs past the end of the target resolution");
        lift.images[t].push_back({});
        continue;
      }
      lift.images[t].push_back(solve_in_block(tgt.differentials[t - 1], pt->module, pprev->module, key, rhs));
    }
  }
  return lift;
}

Vec compose_with_lift(const ProjectiveResolution& src, const ProjectiveResolution& mid, const GradedModule& n, int p,
                      int q, const Vec& f, const ChainLift& lift) {
  int deg = lift.s + p;
  Layout l = layout(src, deg, n, q + lift.q);
  Vec out(l.total);
  const FreeModule* ps = term(src, deg);
  if (!ps) return out;
  if (p >= static_cast<int>(lift.images.size())) throw InternalError("chain map lift is too short");
  for (size_t k = 0; k < ps->gens.size(); ++k) {
    const Vec& y = lift.images[p][k];
    if (y.empty() || is_zero(y)) continue;
    Vec value = evaluate_cochain(mid, p, n, q, f, y);
    const auto& idx = n.block(l.keys[k]);
    for (int i = 0; i < n.dim(); ++i)
      if (!is_zero(value[i]) && std::find(idx.begin(), idx.end(), i) == idx.end())
        throw InternalError("Yoneda product leaves its degree block");
    store_generator_value(l, n, out, static_cast<int>(k), value);
  }
  return out;
}

Vec yoneda_product(const ProjectiveResolution& src, const ProjectiveResolution& mid, const GradedModule& n, int p, int q,
                   const Vec& f, int p2, int q2, const Vec& g) {
  auto lift = lift_cocycle(src, p2, mid, q2, g, p);
  return compose_with_lift(src, mid, n, p, q, f, lift);
}

int KoszulDual::index(int d, int u, int v) const {
  int t = static_cast<int>(summands.size());
  return first[(d * t + u) * t + v];
}

Vec KoszulDual::coordinates(int d, int u, int v, const Vec& cocycle) const {
  Vec out(algebra.dim());
  Vec c = groups[d][u][v].classes.coordinates(cocycle);
  int base = index(d, u, v);
  for (size_t k = 0; k < c.size(); ++k) out[base + k] = c[k];
  return out;
}

const Vec& KoszulDual::cocycle(int x) const {
  const auto& e = algebra.element(x);
  return groups[e.deg][e.src][e.tgt].classes.representatives()[x - index(e.deg, e.src, e.tgt)];
}

KoszulDual koszul_dual(const std::vector<GradedModule>& summands, int n, int d_max) {
  KoszulDual kd;
  kd.n = n;
  kd.summands = summands;
  const int t = static_cast<int>(summands.size());
  for (const auto& s : summands) kd.resolutions.push_back(projective_resolution(s, n * d_max + 1));
  kd.groups.assign(d_max + 1, std::vector<std::vector<ExtGroup>>(t, std::vector<ExtGroup>(t)));
  for (int u = 0; u < t; ++u)
    for (int v = 0; v < t; ++v) {
      auto homs = hom_space(summands[v], summands[u]);
      std::vector<Vec> preferred;
      if (u == v) {
        const int dim = summands[v].dim();
        preferred.push_back(hom_to_cochain(kd.resolutions[v], summands[u], 0, Matrix::identity(dim)));
        for (const auto& h : homs) {
          Q tr;
          for (int i = 0; i < dim; ++i) tr += h(i, i);
          Matrix nil = h - Matrix::identity(dim).scaled(tr / dim);
          preferred.push_back(hom_to_cochain(kd.resolutions[v], summands[u], 0, nil));
        }
      } else {
        for (const auto& h : homs) preferred.push_back(hom_to_cochain(kd.resolutions[v], summands[u], 0, h));
      }
      kd.groups[0][u][v] = ext_group(kd.resolutions[v], summands[u], 0, 0, preferred);
      if (kd.groups[0][u][v].dim() != static_cast<int>(homs.size()))
        throw InternalError("Ext^0 differs from Hom");
      for (int d = 1; d <= d_max; ++d) kd.groups[d][u][v] = ext_group(kd.resolutions[v], summands[u], n * d, d);
    }
  std::vector<TruncatedElement> basis;
  kd.first.assign((d_max + 1) * t * t, 0);
  for (int d = 0; d <= d_max; ++d)
    for (int u = 0; u < t; ++u)
      for (int v = 0; v < t; ++v) {
        kd.first[(d * t + u) * t + v] = static_cast<int>(basis.size());
        for (int k = 0; k < kd.groups[d][u][v].dim(); ++k) {
          std::string label = (d == 0 && u == v && k == 0)
                                  ? "e" + std::to_string(u + 1)
                                  : "x" + std::to_string(d) + "_" + std::to_string(u + 1) + std::to_string(v + 1) +
                                        "_" + std::to_string(k + 1);
          basis.push_back({d, u, v, label});
        }
      }
  const int dim = static_cast<int>(basis.size());
  std::vector<int> idem(t);
  for (int v = 0; v < t; ++v) {
    if (kd.groups[0][v][v].dim() == 0) throw InternalError("summand without identity");
    idem[v] = kd.first[v * t + v];
  }
  std::vector<std::vector<SparseVec>> prod(dim, std::vector<SparseVec>(dim));
  kd.algebra = TruncatedGradedAlgebra(d_max, t, basis, idem, prod);
  // x·y = x∘y for x ∈ Ext(T^v, T^u), y ∈ Ext(T^w, T^v).
  for (int y = 0; y < dim; ++y) {
    const auto& ey = basis[y];
    int q = ey.deg, v = ey.src, w = ey.tgt;
    auto lift = lift_cocycle(kd.resolutions[w], n * q, kd.resolutions[v], q, kd.cocycle(y), n * (d_max - q));
    for (int x = 0; x < dim; ++x) {
      const auto& ex = basis[x];
      if (ex.tgt != v || ex.deg + q > d_max) continue;
      int p = ex.deg, u = ex.src;
      Vec c = compose_with_lift(kd.resolutions[w], kd.resolutions[v], summands[u], n * p, p, kd.cocycle(x), lift);
      prod[x][y] = to_sparse(kd.coordinates(p + q, u, w, c));
    }
  }
  kd.algebra = TruncatedGradedAlgebra(d_max, t, basis, idem, prod);
  return kd;
}

GldimResult gldim_upto(const AlgebraPtr& a0, int bound) {
  GldimResult res{std::nullopt, bound};
  int g = 0;
  for (int v = 0; v < a0->vertices(); ++v) {
    auto r = projective_resolution(simple_module(a0, v, 0), bound);
    auto pd = r.projective_dimension();
    if (!pd || *pd > bound) return res;
    g = std::max(g, *pd);
  }
  res.gldim = g;
  return res;
}

std::optional<AddDecomposition> decompose_in_add(const GradedModule& m, const std::vector<GradedModule>& summands,
                                                 std::uint64_t seed) {
  const int t = static_cast<int>(summands.size());
  AddDecomposition dec;
  dec.multiplicity.assign(t, 0);
  if (m.is_zero()) {
    dec.certified = true;
    return dec;
  }
  // Fingerprint rows: dim Hom(T^v, -) and dim Hom(-, T^v).
  Matrix h(2 * t, t);
  Vec rhs(2 * t);
  for (int v = 0; v < t; ++v) {
    for (int u = 0; u < t; ++u) {
      h(v, u) = static_cast<int>(hom_space(summands[v], summands[u]).size());
      h(t + v, u) = static_cast<int>(hom_space(summands[u], summands[v]).size());
    }
    rhs[v] = static_cast<int>(hom_space(summands[v], m).size());
    rhs[t + v] = static_cast<int>(hom_space(m, summands[v]).size());
  }
  std::vector<std::vector<int>> candidates;
  if (kernel_basis(h).empty()) {
    auto sol = solve(h, rhs);
    if (!sol) return std::nullopt;
    std::vector<int> c;
    int total = 0;
    for (int u = 0; u < t; ++u) {
      const Q& x = (*sol)[u];
      if (x.get_den() != 1 || sgn(x) < 0) return std::nullopt;
      c.push_back(static_cast<int>(x.get_num().get_si()));
      total += c.back() * summands[u].dim();
    }
    // The multiplicities are forced, so a dimension mismatch rules out add T.
    if (total != m.dim()) return std::nullopt;
    candidates.push_back(c);
  } else {
    // Fingerprint does not separate the summands: enumerate by total dimension.
    std::vector<int> c(t, 0);
    std::function<void(int, int)> rec = [&](int u, int left) {
      if (candidates.size() > 64) return;
      if (u == t) {
        if (left != 0) return;
        Vec cv(t);
        for (int i = 0; i < t; ++i) cv[i] = c[i];
        if (h * cv == rhs) candidates.push_back(c);
        return;
      }
      for (int k = 0; k * summands[u].dim() <= left; ++k) {
        c[u] = k;
        rec(u + 1, left - k * summands[u].dim());
      }
      c[u] = 0;
    };
    rec(0, m.dim());
    if (candidates.empty()) return std::nullopt;
  }
  for (const auto& c : candidates) {
    std::vector<GradedModule> parts;
    int total = 0;
    for (int u = 0; u < t; ++u)
      for (int k = 0; k < c[u]; ++k) {
        parts.push_back(summands[u]);
        total += summands[u].dim();
      }
    if (total != m.dim() || parts.empty()) continue;
    auto iso = is_isomorphic(m, direct_sum(parts), seed);
    if (iso.yes()) {
      dec.multiplicity = c;
      dec.certified = true;
      dec.probabilistic = false;
      return dec;
    }
    if (iso.verdict == IsoVerdict::NoProbabilistic) dec.probabilistic = true;
  }
  dec.multiplicity = candidates.front();
  return dec;
}

TiltingReport tilting_module_check(const std::vector<GradedModule>& summands, std::uint64_t seed) {
  TiltingReport rep;
  if (summands.empty()) throw InputError("tilting check needs at least one summand");
  const AlgebraPtr& a0 = summands.front().algebra();
  const int cap = a0->dim() + 1;
  int pd = 0;
  std::vector<ProjectiveResolution> res;
  for (const auto& s : summands) {
    res.push_back(projective_resolution(s, cap));
    auto p = res.back().projective_dimension();
    if (!p) {
      rep.detail = "projective dimension of " + s.name() + " exceeds " + std::to_string(cap);
      return rep;
    }
    pd = std::max(pd, *p);
  }
  rep.pd = pd;
  for (int i = 1; i <= pd; ++i)
    for (size_t v = 0; v < summands.size(); ++v)
      for (size_t u = 0; u < summands.size(); ++u) {
        int e = ext_table(res[v], summands[u], i, 0, 0).at(i, 0);
        if (e != 0) {
          rep.verdict = TiltingVerdict::NotTilting;
          rep.detail = "Ext^" + std::to_string(i) + "(T" + std::to_string(v + 1) + ", T" + std::to_string(u + 1) +
                       ") has dimension " + std::to_string(e);
          return rep;
        }
      }
  std::vector<GradedModule> regular;
  for (int v = 0; v < a0->vertices(); ++v) regular.push_back(projective(a0, v, 0));
  GradedModule x = direct_sum(regular);
  const int steps = pd + a0->dim();
  for (int step = 0; step <= steps; ++step) {
    auto dec = decompose_in_add(x, summands, seed);
    if (dec && dec->certified) {
      rep.verdict = TiltingVerdict::Tilting;
      rep.coresolution_length = step;
      return rep;
    }
    if (dec && dec->probabilistic) rep.probabilistic = true;
    std::vector<GradedModule> parts;
    std::vector<Matrix> maps;
    for (const auto& s : summands)
      for (auto& h : hom_space(x, s)) {
        parts.push_back(s);
        maps.push_back(std::move(h));
      }
    if (parts.empty()) {
      rep.verdict = TiltingVerdict::NotTilting;
      rep.detail = "no maps into add T at coresolution step " + std::to_string(step);
      return rep;
    }
    GradedModule u = direct_sum(parts);
    Matrix f = maps.front();
    for (size_t i = 1; i < maps.size(); ++i) f = vstack(f, maps[i]);
    if (rank(f) != x.dim()) {
      rep.verdict = TiltingVerdict::NotTilting;
      rep.detail = "universal map into add T is not injective at coresolution step " + std::to_string(step);
      return rep;
    }
    x = quotient(u, image_spaces(u, x, f)).module;
  }
  rep.detail = "coresolution did not reach add T within " + std::to_string(steps) + " steps";
  return rep;
}

}  // namespace kk
