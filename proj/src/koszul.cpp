#include "koszulkit/koszul.hpp"

#include <algorithm>
#include <set>

namespace kk {

namespace {

int ceil_div(int p, int q) {
  int r = p / q;
  if (p % q != 0 && (p > 0) == (q > 0)) ++r;
  return r;
}

void require_summands(const std::vector<GradedModule>& t) {
  if (t.empty()) throw InputError("T needs at least one summand");
  for (const auto& s : t) {
    if (s.is_zero()) throw InputError("summand " + s.name() + " is zero");
    if (s.algebra() != t.front().algebra()) throw InputError("summands live over different algebras");
  }
}

void require_degree_zero(const std::vector<GradedModule>& t) {
  for (const auto& s : t)
    if (s.lowest_degree() != 0 || s.highest_degree() != 0)
      throw InputError("summand " + s.name() + " is not concentrated in degree 0");
}

std::string ext_name(int i, int j) { return "Ext^" + std::to_string(i) + "(T, T<" + std::to_string(j) + ">)"; }

struct ZeroPart {
  AlgebraPtr algebra;
  std::vector<int> embedding;
};

ZeroPart zero_part(const GradedAlgebra& a) {
  auto z = degree_zero_part(a);
  z.algebra.set_name(a.name() + "_0");
  return {make_shared_algebra(std::move(z.algebra)), z.embedding};
}

std::vector<int> inverse_permutation(const std::vector<int>& p) {
  std::vector<int> inv(p.size());
  for (size_t i = 0; i < p.size(); ++i) inv[p[i]] = static_cast<int>(i);
  return inv;
}

bool is_permutation(const std::vector<int>& p) {
  std::vector<char> seen(p.size(), 0);
  for (int x : p) {
    if (x < 0 || x >= static_cast<int>(p.size()) || seen[x]) return false;
    seen[x] = 1;
  }
  return true;
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

KoszulReport check_self_orthogonal(const std::vector<GradedModule>& t, int n, int i_max) {
  require_summands(t);
  require_degree_zero(t);
  if (n < 1) throw InputError("n must be positive");
  if (i_max < 0) throw InputError("i_max must be non-negative");
  const int a = t.front().alg().highest_degree();
  KoszulReport rep;
  rep.i_max = i_max;
  rep.j_min = ceil_div(-i_max, n) - a;
  rep.j_max = ceil_div(i_max, n) + a;
  GradedModule sum = direct_sum(t);
  auto r = projective_resolution(sum, i_max + 1);
  // The window covers the support in every example; widen it when the resolution says otherwise.
  for (int i = 0; i <= i_max; ++i) {
    auto [lo, hi] = ext_support(r, sum, i);
    if (lo > hi) continue;
    if (lo < rep.j_min || hi > rep.j_max) {
      rep.notes.push_back("window widened to the Ext support at i = " + std::to_string(i));
      rep.j_min = std::min(rep.j_min, lo);
      rep.j_max = std::max(rep.j_max, hi);
    }
  }
  auto table = ext_table(r, sum, i_max, rep.j_min, rep.j_max);
  for (int i = 0; i <= i_max; ++i)
    for (int j = rep.j_min; j <= rep.j_max; ++j) {
      if (i == n * j || table.at(i, j) == 0) continue;
      rep.verdict = Verdict::Fail;
      rep.counterexample = Counterexample{i, j, table.at(i, j)};
      rep.notes.push_back(ext_name(i, j) + " has dimension " + std::to_string(table.at(i, j)));
      return rep;
    }
  rep.verdict = Verdict::Pass;
  rep.notes.push_back("off-pattern Ext vanishes for i <= " + std::to_string(i_max));
  return rep;
}

std::vector<GradedModule> degree_zero_summands(const AlgebraPtr& a) {
  std::vector<GradedModule> out;
  for (int v = 0; v < a->vertices(); ++v) {
    auto m = degree_zero_projective(a, v, 0);
    m.set_name("P" + std::to_string(v + 1));
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<GradedModule> restrict_summands(const std::vector<GradedModule>& t, const AlgebraPtr& zero,
                                            const std::vector<int>& embedding) {
  std::vector<GradedModule> out;
  for (const auto& s : t) out.push_back(restrict_to_degree_zero(s, zero, embedding));
  return out;
}

KoszulReport check_n_T_koszul(const std::vector<GradedModule>& t, int n, int i_max, std::uint64_t seed) {
  require_summands(t);
  require_degree_zero(t);
  auto z = zero_part(t.front().alg());
  KoszulReport rep;
  rep.i_max = i_max;
  auto gl = gldim_upto(z.algebra, z.algebra->dim());
  if (!gl.gldim) {
    rep.notes.push_back("global dimension of the degree-zero part exceeds " + std::to_string(gl.bound));
    return rep;
  }
  rep.notes.push_back("gldim of the degree-zero part is " + std::to_string(*gl.gldim));
  auto tilt = tilting_module_check(restrict_summands(t, z.algebra, z.embedding), seed);
  if (tilt.verdict != TiltingVerdict::Tilting) {
    rep.verdict = tilt.verdict == TiltingVerdict::NotTilting ? Verdict::Fail : Verdict::Inconclusive;
    rep.probabilistic = tilt.probabilistic;
    rep.notes.push_back("T is not certified tilting over the degree-zero part: " + tilt.detail);
    return rep;
  }
  auto so = check_self_orthogonal(t, n, i_max);
  so.notes.insert(so.notes.begin(), rep.notes.begin(), rep.notes.end());
  so.notes.insert(so.notes.begin() + rep.notes.size(), "T is tilting over the degree-zero part");
  so.probabilistic = so.probabilistic || tilt.probabilistic;
  return so;
}

int TTilde::part(int i, int j) const {
  for (size_t p = 0; p < index.size(); ++p)
    if (index[p] == std::make_pair(i, j)) return static_cast<int>(p);
  throw InputError("T~ has no part (" + std::to_string(i) + ", " + std::to_string(j) + ")");
}

TTilde build_T_tilde(const std::vector<GradedModule>& t, int n) {
  require_summands(t);
  if (n < 1) throw InputError("n must be positive");
  auto fr = frobenius_analysis(t.front().alg());
  if (!fr.data) throw InputError("algebra is not graded Frobenius: " + fr.reason);
  TTilde tt;
  tt.n = n;
  tt.a = fr.data->a;
  if (tt.a < 1) throw InputError("T~ needs highest degree at least 1");
  for (int j = 0; j < tt.a; ++j)
    for (size_t i = 0; i < t.size(); ++i) {
      auto part = shift(omega_power(t[i], -n * j), j);
      if (part.is_zero())
        throw InputError("cosyzygy of summand " + std::to_string(i + 1) + " vanishes; T has a projective summand");
      part.set_name(t[i].name() + (j ? "~" + std::to_string(j) : ""));
      tt.parts.push_back(std::move(part));
      tt.index.emplace_back(static_cast<int>(i), j);
    }
  return tt;
}

RigidityReport rigidity_check(const GradedModule& x, int l_bound) {
  RigidityReport rep;
  rep.l_bound = l_bound;
  rep.note = "thick generation of the stable category is not checked";
  GradedModule up = x, down = x;
  for (int l = 1; l <= l_bound; ++l) {
    up = cosyzygy(up);
    down = syzygy(down);
    int d = stable_hom(x, up).dim();
    if (d != 0) {
      rep.failure = std::make_pair(l, d);
      return rep;
    }
    d = stable_hom(x, down).dim();
    if (d != 0) {
      rep.failure = std::make_pair(-l, d);
      return rep;
    }
  }
  rep.pass = true;
  return rep;
}

StableEndomorphism stable_endomorphism_algebra(const TTilde& tt, const std::vector<GradedModule>& t) {
  const int parts = static_cast<int>(tt.parts.size());
  StableEndomorphism out;
  out.vertex_part = tt.index;

  std::vector<std::vector<StableHom>> sh(parts);
  std::vector<std::vector<QuotientSpace>> qs(parts);
  for (int p = 0; p < parts; ++p)
    for (int q = 0; q < parts; ++q) {
      sh[p].push_back(stable_hom(tt.parts[q], tt.parts[p]));
      const StableHom& s = sh[p].back();
      std::vector<Vec> span;
      if (p == q) {
        const int dim = tt.parts[p].dim();
        Matrix id = Matrix::identity(dim);
        span.push_back(s.coords.flatten(id));
        for (const auto& h : s.homs) {
          Q tr;
          for (int i = 0; i < dim; ++i) tr += h(i, i);
          span.push_back(s.coords.flatten(h - id.scaled(tr / dim)));
        }
      } else {
        for (const auto& h : s.homs) span.push_back(s.coords.flatten(h));
      }
      qs[p].emplace_back(s.coords.size(), span, s.quotient.subspace_basis());
      if (qs[p].back().dim() != s.dim()) throw InternalError("stable Hom basis changed size");
      if (p == q && s.dim() == 0) throw InternalError("part " + std::to_string(p + 1) + " of T~ is projective");
    }

  std::vector<BasisElement> basis;
  std::vector<int> idem;
  std::vector<std::vector<int>> first(parts, std::vector<int>(parts, -1));
  for (int p = 0; p < parts; ++p) {
    idem.push_back(static_cast<int>(basis.size()));
    basis.push_back({p, p, 0, "e" + std::to_string(p + 1)});
    out.representatives.push_back(sh[p][p].coords.unflatten(qs[p][p].representatives()[0]));
  }
  for (int p = 0; p < parts; ++p)
    for (int q = 0; q < parts; ++q) {
      first[p][q] = static_cast<int>(basis.size()) - (p == q ? 1 : 0);
      for (int k = (p == q ? 1 : 0); k < qs[p][q].dim(); ++k) {
        basis.push_back({p, q, 0, "b" + std::to_string(p + 1) + "_" + std::to_string(q + 1) + "_" + std::to_string(k)});
        out.representatives.push_back(sh[p][q].coords.unflatten(qs[p][q].representatives()[k]));
      }
    }
  auto position = [&](int p, int q, int k) { return (p == q && k == 0) ? idem[p] : first[p][q] + k; };

  const int dim = static_cast<int>(basis.size());
  std::vector<std::vector<SparseVec>> prod(dim, std::vector<SparseVec>(dim));
  for (int x = 0; x < dim; ++x)
    for (int y = 0; y < dim; ++y) {
      if (basis[x].tgt != basis[y].src) continue;
      int p = basis[x].src, r = basis[y].tgt;
      Matrix c = out.representatives[x] * out.representatives[y];
      Vec coords = qs[p][r].coordinates(sh[p][r].coords.flatten(c));
      Vec full(dim);
      for (size_t k = 0; k < coords.size(); ++k) full[position(p, r, static_cast<int>(k))] = coords[k];
      prod[x][y] = to_sparse(full);
    }
  GradedAlgebra b("B", parts, basis, idem, prod);
  try {
    validate_algebra(b);
  } catch (const std::exception& e) {
    throw InternalError(std::string("stable endomorphism algebra is not a basic algebra: ") + e.what());
  }
  out.algebra = make_shared_algebra(std::move(b));

  // Block (j, i) collects maps from the parts shifted by j to the parts shifted by i.
  const int a = tt.a, n = tt.n;
  out.block_dims.assign(a, std::vector<int>(a, 0));
  for (int p = 0; p < parts; ++p)
    for (int q = 0; q < parts; ++q) out.block_dims[tt.index[q].second][tt.index[p].second] += sh[p][q].dim();
  std::vector<ProjectiveResolution> res;
  for (const auto& s : t) res.push_back(projective_resolution(s, n * (a - 1) + 1));
  out.gamma_dims.assign(a, 0);
  for (int d = 0; d < a; ++d)
    for (size_t u = 0; u < t.size(); ++u)
      for (size_t v = 0; v < t.size(); ++v) out.gamma_dims[d] += ext_group(res[u], t[v], n * d, d).dim();
  for (int j = 0; j < a; ++j)
    for (int i = 0; i < a; ++i) {
      int expect = i >= j ? out.gamma_dims[i - j] : 0;
      if (out.block_dims[j][i] != expect)
        throw InternalError("block (" + std::to_string(j) + ", " + std::to_string(i) + ") of B has dimension " +
                            std::to_string(out.block_dims[j][i]) + ", expected " + std::to_string(expect));
    }
  return out;
}

MuPermutation mu_permutation(const std::vector<GradedModule>& t, const GradedAlgebraMorphism& mu, std::uint64_t seed) {
  require_summands(t);
  MuPermutation out;
  for (size_t i = 0; i < t.size(); ++i) {
    auto tw = twist_module(t[i], mu);
    bool found = false;
    for (size_t u = 0; u < t.size() && !found; ++u) {
      if (!same_graded_dims(tw, t[u])) continue;
      auto iso = is_isomorphic(tw, t[u], seed);
      if (iso.yes()) {
        out.perm.push_back(static_cast<int>(u));
        out.isos.push_back(*iso.iso);
        found = true;
      } else if (iso.verdict == IsoVerdict::NoProbabilistic) {
        out.probabilistic = true;
      }
    }
    if (!found) {
      out.offending = static_cast<int>(i);
      return out;
    }
  }
  if (!is_permutation(out.perm)) throw InputError("twisted summands collide; T is not basic");
  return out;
}

ClassicAlmostKoszul check_classic_almost_koszul(const AlgebraPtr& a, int bound) {
  auto z = degree_zero_part(*a);
  if (z.algebra.dim() != z.algebra.vertices())
    throw InputError("degree-zero part is not semisimple; the classic almost Koszul check does not apply");
  ClassicAlmostKoszul out;
  out.bound = bound;
  std::vector<GradedModule> simples;
  for (int v = 0; v < a->vertices(); ++v) simples.push_back(simple_module(a, v, 0));
  auto r = projective_resolution(direct_sum(simples), bound + 1);
  const int g = a->highest_degree();
  for (int i = 0; i <= bound + 1; ++i) {
    if (i > r.computed()) {
      out.koszul_within_bound = true;
      out.detail = r.complete ? "resolution is linear and ends at term " + std::to_string(r.computed())
                              : "resolution is linear up to term " + std::to_string(r.computed());
      return out;
    }
    const auto& gens = r.generators(i);
    if (std::all_of(gens.begin(), gens.end(), [&](const Key& k) { return k.d == i; })) continue;
    const int l = i - 1;
    if (l < 1) {
      out.detail = "term 1 is not generated in degree 1";
      return out;
    }
    if (!std::all_of(gens.begin(), gens.end(), [&](const Key& k) { return k.d == g + l; })) {
      out.detail = "term " + std::to_string(i) + " is not generated in degree " + std::to_string(g + l);
      return out;
    }
    // The kernel of P^l -> P^{l-1} must be the whole degree g + l part of P^l.
    const auto& pl = r.terms[l].module;
    const Matrix& dl = r.differentials[l - 1];
    std::vector<int> top;
    for (int b = 0; b < pl.dim(); ++b)
      if (pl.tags()[b].d == g + l) top.push_back(b);
    bool kills = true;
    for (int b : top)
      for (int row = 0; row < dl.rows() && kills; ++row)
        if (!is_zero(dl(row, b))) kills = false;
    if (!kills || pl.dim() - rank(dl) != static_cast<int>(top.size())) {
      out.detail = "cohomology at term " + std::to_string(l) + " is not the top degree part";
      return out;
    }
    out.gl = std::make_pair(g, l);
    out.detail = "linear up to term " + std::to_string(l) + ", term " + std::to_string(l + 1) +
                 " generated in degree " + std::to_string(g + l);
    return out;
  }
  out.koszul_within_bound = true;
  out.detail = "resolution is linear up to term " + std::to_string(bound + 1);
  return out;
}

AlmostSelfOrthogonal check_almost_self_orthogonal(const std::vector<GradedModule>& t, int n, int l_max,
                                                  std::uint64_t seed) {
  require_summands(t);
  require_degree_zero(t);
  if (n < 1) throw InputError("n must be positive");
  AlmostSelfOrthogonal out;
  out.l_max = l_max;
  out.hits.resize(t.size());
  bool missing = false;
  for (size_t i = 0; i < t.size(); ++i) {
    GradedModule x = t[i];
    for (int l = 1; l <= l_max && out.hits[i].empty(); ++l) {
      x = cosyzygy(x);
      if (x.is_zero()) break;
      for (size_t u = 0; u < t.size(); ++u) {
        int s = x.lowest_degree() - t[u].lowest_degree();
        auto cand = shift(t[u], s);
        if (!same_graded_dims(x, cand)) continue;
        auto iso = is_isomorphic(x, cand, seed);
        if (iso.yes())
          out.hits[i].push_back({l, -s, static_cast<int>(u)});
        else if (iso.verdict == IsoVerdict::NoProbabilistic)
          out.probabilistic = true;
      }
    }
    if (out.hits[i].empty()) {
      missing = true;
      out.notes.push_back("summand " + std::to_string(i + 1) + ": no cosyzygy within " + std::to_string(l_max) +
                          " steps is a shifted summand");
    }
  }
  if (missing) return out;

  int longest = 0;
  for (const auto& h : out.hits) longest = std::max(longest, h.front().l);
  GradedModule sum = direct_sum(t);
  auto r = projective_resolution(sum, longest);
  for (size_t i = 0; i < t.size(); ++i) {
    const int li = out.hits[i].front().l;
    for (int j = 0; j < li; ++j) {
      auto [lo, hi] = ext_support(r, t[i], j);
      for (int k = lo; k <= hi; ++k) {
        if (j == n * k) continue;
        int d = ext_group(r, t[i], j, k).dim();
        if (d == 0) continue;
        out.ext_failure = std::make_pair(static_cast<int>(i), Counterexample{j, k, d});
        out.verdict = Verdict::Fail;
        out.notes.push_back("Ext^" + std::to_string(j) + "(T, T" + std::to_string(i + 1) + "<" + std::to_string(k) +
                            ">) has dimension " + std::to_string(d));
        return out;
      }
    }
  }
  out.verdict = Verdict::Pass;
  return out;
}

std::optional<std::pair<int, int>> solve_m_sigma(int n, int a, int l, int g) {
  if (g < 1 || a < 1) return std::nullopt;
  int m = ceil_div(g, a) - 1;
  int sigma = a * (m + 1) - g;
  if (m < 0 || sigma < 0 || sigma > a - 1) return std::nullopt;
  if (l != n * a * m - n * sigma + 1) return std::nullopt;
  return std::make_pair(m, sigma);
}

int AlmostParams::sigma_R(int i, int j) const { return sigma[i] + j <= a - 1 ? sigma[i] + j : sigma[i] + j - a; }

int AlmostParams::m_ij(int i, int j) const { return j <= sigma_R(i, j) ? m[i] : m[i] - 1; }

int AlmostParams::sigma_L(int i, int j, const std::vector<int>& mu) const {
  auto inv = inverse_permutation(mu);
  int x = pi[i];
  for (int k = 0; k < m_ij(i, j) + 1; ++k) x = inv[x];
  return x;
}

NMSigmaReport check_n_m_sigma_koszul(const std::vector<GradedModule>& t, int n, int l_max, std::uint64_t seed) {
  require_summands(t);
  require_degree_zero(t);
  NMSigmaReport rep;
  const auto& alg = t.front().alg();
  auto fr = frobenius_analysis(alg, seed);
  if (!fr.data) throw InputError("algebra is not graded Frobenius: " + fr.reason);
  const int a = fr.data->a;

  auto z = zero_part(alg);
  auto gl = gldim_upto(z.algebra, z.algebra->dim());
  if (!gl.gldim) {
    rep.notes.push_back("global dimension of the degree-zero part exceeds " + std::to_string(gl.bound));
    return rep;
  }
  rep.tilting = tilting_module_check(restrict_summands(t, z.algebra, z.embedding), seed);
  rep.probabilistic = rep.tilting->probabilistic;
  if (rep.tilting->verdict != TiltingVerdict::Tilting) {
    rep.verdict = rep.tilting->verdict == TiltingVerdict::NotTilting ? Verdict::Fail : Verdict::Inconclusive;
    rep.notes.push_back("T is not certified tilting over the degree-zero part: " + rep.tilting->detail);
    return rep;
  }

  rep.almost = check_almost_self_orthogonal(t, n, l_max, seed);
  rep.probabilistic = rep.probabilistic || rep.almost.probabilistic;
  if (rep.almost.verdict != Verdict::Pass) {
    rep.verdict = rep.almost.verdict;
    rep.notes.insert(rep.notes.end(), rep.almost.notes.begin(), rep.almost.notes.end());
    return rep;
  }

  const int count = static_cast<int>(t.size());
  AlmostParams p;
  p.n = n;
  p.a = a;
  for (int i = 0; i < count; ++i) {
    const auto& hits = rep.almost.hits[i];
    std::set<int> gs;
    for (const auto& h : hits) gs.insert(h.g);
    if (hits.size() > 1) {
      std::string list;
      for (const auto& h : hits)
        list += " (l " + std::to_string(h.l) + ", g " + std::to_string(h.g) + ", T" + std::to_string(h.target + 1) + ")";
      rep.notes.push_back("summand " + std::to_string(i + 1) + " has several hits at the same step:" + list);
      return rep;
    }
    const auto& h = hits.front();
    auto ms = solve_m_sigma(n, a, h.l, h.g);
    if (!ms) {
      rep.verdict = Verdict::Fail;
      rep.notes.push_back("summand " + std::to_string(i + 1) + ": (l, g) = (" + std::to_string(h.l) + ", " +
                          std::to_string(h.g) + ") admits no (m, sigma)");
      return rep;
    }
    p.l.push_back(h.l);
    p.g.push_back(h.g);
    p.m.push_back(ms->first);
    p.sigma.push_back(ms->second);
    p.pi.push_back(h.target);
  }
  // Minimality: the scan stops at the first step whose cosyzygy is any shifted summand,
  // so no step nk < l_i carries a hit of shift k.
  rep.notes.push_back("minimality holds: no earlier cosyzygy is a shifted summand");
  if (!is_permutation(p.pi)) throw InternalError("cosyzygy targets do not form a permutation");

  if (fr.data->symmetric) {
    for (int i = 0; i < count; ++i) rep.mu.push_back(i);
  } else {
    auto mp = mu_permutation(t, fr.data->nakayama, seed);
    rep.probabilistic = rep.probabilistic || mp.probabilistic;
    if (mp.offending) {
      rep.notes.push_back("twist of summand " + std::to_string(*mp.offending + 1) +
                          " by the Nakayama automorphism is not a summand of T");
      return rep;
    }
    rep.mu = mp.perm;
  }

  for (int i = 0; i < count; ++i) {
    if (p.g[i] < a) throw InternalError("g < a for summand " + std::to_string(i + 1));
    if (p.m[i] == 0 && p.sigma[i] != 0) throw InternalError("m = 0 with nonzero sigma");
    int mi = rep.mu[i];
    if (p.pi[mi] != rep.mu[p.pi[i]]) throw InternalError("pi does not commute with the Nakayama permutation");
    if (p.l[mi] != p.l[i] || p.g[mi] != p.g[i]) throw InternalError("(l, g) is not Nakayama invariant");
  }
  rep.params = p;
  rep.verdict = Verdict::Pass;
  return rep;
}

TruncatedMorphism build_mu_bar(const KoszulDual& kd, const GradedAlgebraMorphism& mu, const MuPermutation& perm) {
  const int count = static_cast<int>(kd.summands.size());
  if (static_cast<int>(perm.perm.size()) != count) throw InputError("summand permutation has the wrong size");
  const int n = kd.n, d_max = kd.algebra.cutoff(), dim = kd.algebra.dim();

  // The twisted resolution of T^v_μ uses the same spaces and differentials.
  std::vector<ChainLift> lifts;
  for (int v = 0; v < count; ++v) {
    ProjectiveResolution tw = kd.resolutions[v];
    tw.module = twist_module(tw.module, mu);
    for (auto& term : tw.terms) term.module = twist_module(term.module, mu);
    const int pv = perm.perm[v];
    auto tau_inv = inverse(perm.isos[v]);
    if (!tau_inv) throw InputError("tau for summand " + std::to_string(v + 1) + " is not invertible");
    if (!is_homomorphism(kd.summands[pv], tw.module, *tau_inv))
      throw InputError("tau for summand " + std::to_string(v + 1) + " is not a module isomorphism");
    Vec c0 = hom_to_cochain(kd.resolutions[pv], tw.module, 0, *tau_inv);
    lifts.push_back(lift_cocycle(kd.resolutions[pv], 0, tw, 0, c0, n * d_max));
  }

  TruncatedMorphism out{Matrix(dim, dim)};
  for (int x = 0; x < dim; ++x) {
    const auto& e = kd.algebra.element(x);
    const int d = e.deg, u = e.src, v = e.tgt;
    const int pu = perm.perm[u], pv = perm.perm[v];
    const auto& src = kd.resolutions[pv];
    const auto& gens = src.generators(n * d);
    std::vector<Vec> values(gens.size());
    for (size_t k = 0; k < gens.size(); ++k) {
      const Vec& y = lifts[v].images[n * d][k];
      if (y.empty() || is_zero(y)) continue;
      Vec val = evaluate_cochain(kd.resolutions[v], n * d, kd.summands[u], d, kd.cocycle(x), y);
      values[k] = perm.isos[u] * val;
    }
    Vec c = cochain_from_values(src, n * d, kd.summands[pu], d, values);
    Vec col = kd.coordinates(d, pu, pv, c);
    for (int r = 0; r < dim; ++r) out.matrix(r, x) = col[r];
  }
  return out;
}

}  // namespace kk
