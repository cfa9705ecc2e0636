#include "koszulkit/hereditary.hpp"

#include <algorithm>

namespace kk {

namespace {

void require_degree_zero(const GradedAlgebra& a) {
  if (!a.concentrated_in_degree_zero()) throw InputError("algebra " + a.name() + " is not concentrated in degree 0");
}

GradedModule zero_module(const AlgebraPtr& a) { return GradedModule(a, {}); }

GradedModule sum_with_multiplicity(const AlgebraPtr& a, const std::vector<GradedModule>& pieces,
                                   const std::vector<int>& mult) {
  std::vector<GradedModule> parts;
  for (size_t v = 0; v < pieces.size(); ++v)
    for (int k = 0; k < mult[v]; ++k) parts.push_back(pieces[v]);
  if (parts.empty()) return zero_module(a);
  return direct_sum(parts);
}

std::vector<int> block_offsets(const std::vector<ExtGroup>& groups) {
  std::vector<int> off;
  int total = 0;
  for (const auto& g : groups) {
    off.push_back(total);
    total += g.dim();
  }
  off.push_back(total);
  return off;
}

std::optional<int> injective_vertex(const GradedModule& x, const std::vector<GradedModule>& inj, std::uint64_t seed) {
  for (size_t w = 0; w < inj.size(); ++w)
    if (same_graded_dims(x, inj[w]) && is_isomorphic(x, inj[w], seed).yes()) return static_cast<int>(w);
  return std::nullopt;
}

std::string dims_text(const std::map<int, int>& dims) {
  std::string out;
  for (const auto& [l, d] : dims) {
    if (d == 0) continue;
    if (!out.empty()) out += ", ";
    out += "H^" + std::to_string(l) + " = " + std::to_string(d);
  }
  return out.empty() ? "0" : out;
}

}  // namespace

std::map<int, int> BoundedComplex::cohomology_dims() const {
  std::map<int, int> out;
  for (const auto& s : stalks)
    if (!s.module.is_zero()) out[s.degree] += s.module.dim();
  return out;
}

bool BoundedComplex::is_stalk() const {
  for (const auto& s : stalks)
    if (!s.module.is_zero() && s.degree != 0) return false;
  return true;
}

GradedModule BoundedComplex::h0() const {
  std::vector<GradedModule> parts;
  for (const auto& s : stalks)
    if (s.degree == 0 && !s.module.is_zero()) parts.push_back(s.module);
  if (parts.empty()) return zero_module(algebra);
  return parts.size() == 1 ? parts.front() : direct_sum(parts);
}

BoundedComplex stalk_complex(const GradedModule& m, int degree) {
  BoundedComplex c;
  c.algebra = m.algebra();
  c.stalks.push_back({degree, m});
  return c;
}

BoundedComplex regular_complex(const AlgebraPtr& a) {
  std::vector<GradedModule> ps;
  for (int v = 0; v < a->vertices(); ++v) ps.push_back(projective(a, v, 0));
  return stalk_complex(direct_sum(ps));
}

GradedModule nakayama_on_projectives(const GradedModule& p, std::uint64_t seed) {
  const AlgebraPtr& a = p.algebra();
  std::vector<GradedModule> proj, inj;
  for (int v = 0; v < a->vertices(); ++v) {
    proj.push_back(projective(a, v, 0));
    inj.push_back(injective(a, v, 0));
  }
  auto dec = decompose_in_add(p, proj, seed);
  if (!dec || !dec->certified) throw InputError("module is not a sum of indecomposable projectives");
  return sum_with_multiplicity(a, inj, dec->multiplicity);
}

GradedModule nakayama_inverse_on_injectives(const GradedModule& i, std::uint64_t seed) {
  const AlgebraPtr& a = i.algebra();
  std::vector<GradedModule> proj, inj;
  for (int v = 0; v < a->vertices(); ++v) {
    proj.push_back(projective(a, v, 0));
    inj.push_back(injective(a, v, 0));
  }
  auto dec = decompose_in_add(i, inj, seed);
  if (!dec || !dec->certified) throw InputError("module is not a sum of indecomposable injectives");
  return sum_with_multiplicity(a, proj, dec->multiplicity);
}

Matrix nakayama_on_element(const GradedAlgebra& a, int x) {
  const int u = a.element(x).src, v = a.element(x).tgt;
  const auto& rows = a.with_target(u);
  const auto& cols = a.with_target(v);
  Matrix m(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  for (size_t r = 0; r < rows.size(); ++r)
    for (const auto& [y, c] : a.product(rows[r], x)) {
      auto it = std::find(cols.begin(), cols.end(), y);
      if (it != cols.end()) m(static_cast<int>(r), static_cast<int>(it - cols.begin())) = c;
    }
  return m;
}

NuInverse::NuInverse(AlgebraPtr a, int n) : a_(std::move(a)), n_(n) {
  require_degree_zero(*a_);
  if (n_ < 0) throw InputError("n must be non-negative");
  const int cap = a_->dim() + 1;
  auto gl = gldim_upto(a_, cap);
  if (!gl.gldim) throw InputError("global dimension of " + a_->name() + " exceeds " + std::to_string(cap));
  gldim_ = *gl.gldim;
  for (int w = 0; w < a_->vertices(); ++w) {
    inj_.push_back(injective(a_, w, 0));
    inj_res_.push_back(projective_resolution(inj_.back(), gldim_ + 1));
  }
  for (int x = 0; x < a_->dim(); ++x) {
    if (a_->is_idempotent(x)) {
      lifts_.emplace_back();
      continue;
    }
    const int u = a_->element(x).src, v = a_->element(x).tgt;
    Vec c = hom_to_cochain(inj_res_[v], inj_[u], 0, nakayama_on_element(*a_, x));
    lifts_.push_back(lift_cocycle(inj_res_[v], 0, inj_res_[u], 0, c, gldim_));
  }
}

NuInverse::ExtData NuInverse::ext_data(const GradedModule& m, int k) const {
  ExtData e;
  for (int w = 0; w < a_->vertices(); ++w) e.groups.push_back(ext_group(inj_res_[w], m, k, 0));
  return e;
}

GradedModule NuInverse::build(const GradedModule& m, int k, const ExtData& e) const {
  std::vector<Key> tags;
  for (int w = 0; w < a_->vertices(); ++w)
    for (int c = 0; c < e.groups[w].dim(); ++c) tags.push_back({w, 0});
  GradedModule out(a_, tags);
  for (int x = 0; x < a_->dim(); ++x) {
    if (a_->is_idempotent(x)) continue;
    const int u = a_->element(x).src, v = a_->element(x).tgt;
    const auto& gu = e.groups[u];
    const auto& gv = e.groups[v];
    if (gu.dim() == 0 || gv.dim() == 0) continue;
    Matrix block(gv.dim(), gu.dim());
    for (int c = 0; c < gu.dim(); ++c) {
      Vec image = compose_with_lift(inj_res_[v], inj_res_[u], m, k, 0, gu.classes.representatives()[c], lifts_[x]);
      Vec coords = gv.classes.coordinates(image);
      for (int r = 0; r < gv.dim(); ++r) block(r, c) = coords[r];
    }
    if (!block.is_zero()) out.set_block(x, {u, 0}, block);
  }
  validate_module(out);
  return out;
}

GradedModule NuInverse::apply(const GradedModule& m, int l) const {
  const int k = l + n_;
  if (k < 0 || k > gldim_) return zero_module(a_);
  return build(m, k, ext_data(m, k));
}

std::map<int, GradedModule> NuInverse::apply(const GradedModule& m) const {
  std::map<int, GradedModule> out;
  for (int k = 0; k <= gldim_; ++k) out[k - n_] = build(m, k, ext_data(m, k));
  return out;
}

Matrix NuInverse::apply_map(const GradedModule& m, const GradedModule& m2, const Matrix& h, int l) const {
  const int k = l + n_;
  if (k < 0 || k > gldim_) return Matrix(0, 0);
  auto e1 = ext_data(m, k);
  auto e2 = ext_data(m2, k);
  auto off1 = block_offsets(e1.groups);
  auto off2 = block_offsets(e2.groups);
  Matrix out(off2.back(), off1.back());
  for (int w = 0; w < a_->vertices(); ++w)
    for (int c = 0; c < e1.groups[w].dim(); ++c) {
      auto values = cochain_values(inj_res_[w], k, m, 0, e1.groups[w].classes.representatives()[c]);
      for (auto& val : values) val = h * val;
      Vec image = cochain_from_values(inj_res_[w], k, m2, 0, values);
      Vec coords = e2.groups[w].classes.coordinates(image);
      for (size_t r = 0; r < coords.size(); ++r) out(off2[w] + static_cast<int>(r), off1[w] + c) = coords[r];
    }
  return out;
}

BoundedComplex NuInverse::apply(const BoundedComplex& x) const {
  BoundedComplex out;
  out.algebra = a_;
  out.split = x.split;
  for (const auto& s : x.stalks) {
    if (s.module.is_zero()) continue;
    int degrees = 0;
    for (auto& [l, h] : apply(s.module)) {
      if (h.is_zero()) continue;
      ++degrees;
      out.stalks.push_back({s.degree + l, std::move(h)});
    }
    if (degrees > 1 && gldim_ > 1) out.split = false;
  }
  return out;
}

DerivedNuPower derived_nu_inverse_power(const NuInverse& nu, const BoundedComplex& x, int i) {
  DerivedNuPower out;
  out.steps.push_back(x);
  for (int j = 1; j <= i && out.steps.back().split; ++j) out.steps.push_back(nu.apply(out.steps.back()));
  return out;
}

std::string to_string(NRepVerdict v) {
  switch (v) {
    case NRepVerdict::Yes: return "yes";
    case NRepVerdict::No: return "no";
    case NRepVerdict::NoWithinCap: return "no-within-cap";
    case NRepVerdict::PassUpToDepth: return "pass-up-to-depth";
  }
  return "?";
}

NRepReport is_n_rep_finite(const AlgebraPtr& a, int n, int orbit_cap, std::uint64_t seed) {
  require_degree_zero(*a);
  NRepReport rep;
  rep.finite_mode = true;
  rep.n = n;
  rep.depth = orbit_cap;
  auto gl = gldim_upto(a, n);
  if (!gl.gldim) {
    rep.detail = "global dimension exceeds " + std::to_string(n);
    return rep;
  }
  rep.gldim = gl.gldim;
  NuInverse nu(a, n);
  bool capped = false;
  for (int v = 0; v < a->vertices(); ++v) {
    OrbitData orbit;
    orbit.projective = v;
    GradedModule x = projective(a, v, 0);
    for (int m = 0;; ++m) {
      if (auto w = injective_vertex(x, nu.injectives(), seed)) {
        orbit.m = m;
        orbit.endpoint = *w;
        break;
      }
      if (m == orbit_cap) {
        orbit.detail = "no injective within " + std::to_string(orbit_cap) + " steps";
        capped = true;
        break;
      }
      auto hs = nu.apply(x);
      std::map<int, int> dims;
      for (const auto& [l, h] : hs) dims[l] = h.dim();
      orbit.cohomology.push_back(dims);
      bool stalk = true;
      for (const auto& [l, d] : dims)
        if (l != 0 && d != 0) stalk = false;
      if (!stalk || hs[0].is_zero()) {
        orbit.detail = "step " + std::to_string(m + 1) + " is not a stalk module: " + dims_text(dims);
        rep.orbits.push_back(orbit);
        rep.detail = "orbit of P" + std::to_string(v + 1) + " leaves the module category before reaching an injective";
        return rep;
      }
      x = hs[0];
    }
    rep.orbits.push_back(orbit);
  }
  if (capped) {
    rep.verdict = NRepVerdict::NoWithinCap;
    rep.detail = "some orbit did not reach an injective within the cap";
    return rep;
  }
  std::vector<char> hit(a->vertices(), 0);
  for (const auto& o : rep.orbits) {
    if (hit[*o.endpoint]) {
      rep.detail = "two orbits end at I" + std::to_string(*o.endpoint + 1);
      return rep;
    }
    hit[*o.endpoint] = 1;
  }
  rep.verdict = NRepVerdict::Yes;
  return rep;
}

NRepReport is_n_rep_infinite_upto(const AlgebraPtr& a, int n, int depth) {
  require_degree_zero(*a);
  NRepReport rep;
  rep.finite_mode = false;
  rep.n = n;
  rep.depth = depth;
  auto gl = gldim_upto(a, n);
  if (!gl.gldim) {
    rep.detail = "global dimension exceeds " + std::to_string(n);
    return rep;
  }
  rep.gldim = gl.gldim;
  NuInverse nu(a, n);
  for (int v = 0; v < a->vertices(); ++v) {
    OrbitData orbit;
    orbit.projective = v;
    GradedModule x = projective(a, v, 0);
    for (int j = 1; j <= depth; ++j) {
      auto hs = nu.apply(x);
      std::map<int, int> dims;
      for (const auto& [l, h] : hs) dims[l] = h.dim();
      orbit.cohomology.push_back(dims);
      std::optional<int> off;
      for (const auto& [l, d] : dims)
        if (l != 0 && d != 0 && !off) off = l;
      if (off) {
        if (!rep.failure || j < rep.failure->first) rep.failure = std::make_pair(j, *off);
        orbit.detail = "H^" + std::to_string(*off) + " of step " + std::to_string(j) + " is nonzero";
        break;
      }
      x = hs[0];
    }
    rep.orbits.push_back(orbit);
  }
  if (rep.failure) {
    rep.detail = "H^" + std::to_string(rep.failure->second) + "(nu_n^-" + std::to_string(rep.failure->first) +
                 " A) is nonzero";
    return rep;
  }
  rep.verdict = NRepVerdict::PassUpToDepth;
  return rep;
}

TruncatedGradedAlgebra preprojective_algebra(const AlgebraPtr& a, int n, int d_max) {
  require_degree_zero(*a);
  auto gl = gldim_upto(a, n);
  if (!gl.gldim) throw InputError("preprojective algebra needs global dimension at most " + std::to_string(n));
  NuInverse nu(a, n);
  const int t = a->vertices();
  // chain[u][i] = H^0(ν_n^{-i} e_u A)
  std::vector<std::vector<GradedModule>> chain(t);
  for (int u = 0; u < t; ++u) {
    chain[u].push_back(projective(a, u, 0));
    for (int i = 1; i <= d_max; ++i) chain[u].push_back(nu.apply(chain[u].back(), 0));
  }

  struct Entry {
    int deg, u, v, vec;  // basis vector index inside chain[u][deg]
  };
  std::vector<TruncatedElement> basis;
  std::vector<Entry> entries;
  std::map<std::tuple<int, int, int>, int> start;
  for (int d = 0; d <= d_max; ++d)
    for (int u = 0; u < t; ++u)
      for (int v = 0; v < t; ++v) {
        start[{d, u, v}] = static_cast<int>(basis.size());
        const auto& idx = chain[u][d].block({v, 0});
        for (size_t k = 0; k < idx.size(); ++k) {
          std::string label = d == 0 ? a->element(a->with_source(u)[idx[k]]).label
                                     : "p" + std::to_string(d) + "_" + std::to_string(u + 1) + std::to_string(v + 1) +
                                           "_" + std::to_string(k + 1);
          basis.push_back({d, u, v, label});
          entries.push_back({d, u, v, idx[k]});
        }
      }
  const int dim = static_cast<int>(basis.size());
  std::vector<int> idem(t);
  for (int u = 0; u < t; ++u) {
    const auto& xs = a->with_source(u);
    int pos = static_cast<int>(std::find(xs.begin(), xs.end(), a->idempotent(u)) - xs.begin());
    const auto& idx = chain[u][0].block({u, 0});
    idem[u] = start[{0, u, u}] + static_cast<int>(std::find(idx.begin(), idx.end(), pos) - idx.begin());
  }

  std::vector<std::vector<SparseVec>> prod(dim, std::vector<SparseVec>(dim));
  for (int x = 0; x < dim; ++x) {
    const auto& ex = entries[x];
    const GradedModule& target = chain[ex.u][ex.deg];
    const Vec xi = unit_vector(target.dim(), ex.vec);
    // f_x: e_v A -> chain[u][deg], e_v ↦ ξ.
    const auto& src_basis = a->with_source(ex.v);
    Matrix f(target.dim(), static_cast<int>(src_basis.size()));
    for (size_t c = 0; c < src_basis.size(); ++c) {
      Vec col = target.act(xi, src_basis[c]);
      for (int r = 0; r < target.dim(); ++r) f(r, static_cast<int>(c)) = col[r];
    }
    std::vector<Matrix> powers{f};  // powers[j]: chain[v][j] -> chain[u][deg + j]
    for (int j = 1; ex.deg + j <= d_max; ++j)
      powers.push_back(nu.apply_map(chain[ex.v][j - 1], chain[ex.u][ex.deg + j - 1], powers.back(), 0));
    for (int y = 0; y < dim; ++y) {
      const auto& ey = entries[y];
      if (ey.u != ex.v || ex.deg + ey.deg > d_max) continue;
      const GradedModule& mid = chain[ex.v][ey.deg];
      Vec image = powers[ey.deg] * unit_vector(mid.dim(), ey.vec);
      const int d = ex.deg + ey.deg;
      const auto& idx = chain[ex.u][d].block({ey.v, 0});
      Vec full(dim);
      for (int r = 0; r < static_cast<int>(image.size()); ++r) {
        if (is_zero(image[r])) continue;
        auto it = std::find(idx.begin(), idx.end(), r);
        if (it == idx.end()) throw InternalError("preprojective product leaves its vertex block");
        full[start[{d, ex.u, ey.v}] + static_cast<int>(it - idx.begin())] = image[r];
      }
      prod[x][y] = to_sparse(full);
    }
  }
  return TruncatedGradedAlgebra(d_max, t, basis, idem, prod);
}

SerreReport serre_dimension_identity(const TTilde& tt, const StableEndomorphism& b, int i_max, int l_max) {
  SerreReport rep;
  const int n = tt.n, a = tt.a;
  const GradedModule sum = tt.sum();
  NuInverse nu(b.algebra, n * a - 1);
  // Ω^{-k} T~ for k in [-l_max, n a i_max + l_max].
  std::map<int, GradedModule> omega;
  omega[0] = sum;
  for (int k = 1; k <= n * a * i_max + l_max; ++k) omega[k] = cosyzygy(omega[k - 1]);
  for (int k = -1; k >= -l_max; --k) omega[k] = syzygy(omega[k + 1]);
  BoundedComplex x = regular_complex(b.algebra);
  for (int i = 0; i <= i_max; ++i) {
    if (!x.split) rep.exact = false;
    auto dims = x.cohomology_dims();
    for (int l = -l_max; l <= l_max; ++l) {
      SerreEntry e{i, l, 0, 0};
      e.stable = stable_hom(sum, shift(omega.at(n * a * i + l), a * i)).dim();
      e.derived = dims.count(l) ? dims[l] : 0;
      rep.entries.push_back(e);
    }
    if (i < i_max) x = nu.apply(x);
  }
  rep.all_equal = rep.exact && std::all_of(rep.entries.begin(), rep.entries.end(),
                                           [](const SerreEntry& e) { return e.stable == e.derived; });
  return rep;
}

}  // namespace kk
