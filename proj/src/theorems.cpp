#include "koszulkit/theorems.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

namespace kk {

namespace {

std::string dims_list(const std::vector<int>& d) {
  std::string out;
  for (size_t i = 0; i < d.size(); ++i) out += (i ? "," : "") + std::to_string(d[i]);
  return out;
}

std::string int_list(const std::vector<int>& d, int offset = 0) {
  std::string out = "(";
  for (size_t i = 0; i < d.size(); ++i) out += (i ? "," : "") + std::to_string(d[i] + offset);
  return out + ")";
}

std::vector<int> dims_upto(const TruncatedGradedAlgebra& g, int d) {
  auto all = g.dims();
  all.resize(std::min<size_t>(all.size(), d + 1));
  return all;
}

std::vector<GradedModule> summands_of(const TheoremInputs& in) {
  if (!in.algebra) throw InputError("an algebra is required");
  return in.t.empty() ? degree_zero_summands(in.algebra) : in.t;
}

Agreement biconditional(bool left, bool right) { return left == right ? Agreement::Agree : Agreement::Disagree; }

std::string yes_no(bool b) { return b ? "yes" : "no"; }

struct BData {
  TTilde tt;
  StableEndomorphism b;
};

BData b_data(const std::vector<GradedModule>& t, int n) {
  BData d{build_T_tilde(t, n), {}};
  d.b = stable_endomorphism_algebra(d.tt, t);
  return d;
}

void add_b_facts(TheoremReport& rep, const BData& d) {
  rep.facts.emplace_back("a", std::to_string(d.tt.a));
  rep.facts.emplace_back("dim B", std::to_string(d.b.algebra->dim()));
  rep.facts.emplace_back("B blocks", dims_list(d.b.gamma_dims));
}

// Summand permutation of the Nakayama automorphism, with the isomorphisms used as τ.
MuPermutation nakayama_permutation(const std::vector<GradedModule>& t, const FrobeniusData& fd, std::uint64_t seed) {
  if (fd.symmetric) {
    MuPermutation p;
    for (size_t i = 0; i < t.size(); ++i) {
      p.perm.push_back(static_cast<int>(i));
      p.isos.push_back(Matrix::identity(t[i].dim()));
    }
    return p;
  }
  return mu_permutation(t, fd.nakayama, seed);
}

TheoremReport characterization(const TheoremInputs& in) {
  TheoremReport rep;
  rep.statement = "Lambda is n-T-Koszul iff T~ is tilting in the stable category and B is (na-1)-representation infinite";
  auto t = summands_of(in);
  auto left = check_n_T_koszul(t, in.n, in.i_max, in.seed);
  rep.facts.emplace_back("n-T-Koszul", to_string(left.verdict));
  if (left.counterexample)
    rep.facts.emplace_back("counterexample", "Ext^" + std::to_string(left.counterexample->i) + "(T, T<" +
                                                 std::to_string(left.counterexample->j) + ">) = " +
                                                 std::to_string(left.counterexample->dim));
  auto d = b_data(t, in.n);
  add_b_facts(rep, d);
  const int bound = 2 * in.n * d.tt.a + 2;
  auto rig = rigidity_check(d.tt.sum(), bound);
  rep.facts.emplace_back("rigid", yes_no(rig.pass));
  if (rig.failure)
    rep.facts.emplace_back("rigidity failure", "l = " + std::to_string(rig.failure->first) + ", dim " +
                                                   std::to_string(rig.failure->second));
  rep.facts.emplace_back("rigidity note", rig.note);
  auto inf = is_n_rep_infinite_upto(d.b.algebra, in.n * d.tt.a - 1, in.depth);
  rep.facts.emplace_back("B rep-infinite", to_string(inf.verdict));
  if (!inf.detail.empty()) rep.facts.emplace_back("B detail", inf.detail);
  rep.bounds = {"i_max " + std::to_string(in.i_max), "rigidity |l| <= " + std::to_string(bound),
                "depth " + std::to_string(in.depth)};
  rep.probabilistic = left.probabilistic;
  if (left.verdict == Verdict::Inconclusive) return rep;
  rep.result = biconditional(left.verdict == Verdict::Pass, rig.pass && inf.verdict == NRepVerdict::PassUpToDepth);
  return rep;
}

TheoremReport trivext_koszul(const TheoremInputs& in) {
  TheoremReport rep;
  rep.statement = "A is n-representation infinite iff its trivial extension is (n+1)-Koszul with respect to A";
  if (!in.algebra->concentrated_in_degree_zero()) throw InputError("trivext-koszul expects a degree-zero algebra");
  auto delta = make_shared_algebra(trivial_extension(*in.algebra));
  auto left = check_n_T_koszul(degree_zero_summands(delta), in.n + 1, in.i_max, in.seed);
  rep.facts.emplace_back("trivial extension (n+1)-Koszul", to_string(left.verdict));
  if (left.counterexample)
    rep.facts.emplace_back("counterexample", "(i, j) = (" + std::to_string(left.counterexample->i) + ", " +
                                                 std::to_string(left.counterexample->j) + ")");
  auto right = is_n_rep_infinite_upto(in.algebra, in.n, in.depth);
  rep.facts.emplace_back("n-rep-infinite", to_string(right.verdict));
  if (!right.detail.empty()) rep.facts.emplace_back("detail", right.detail);
  rep.bounds = {"i_max " + std::to_string(in.i_max), "depth " + std::to_string(in.depth)};
  rep.probabilistic = left.probabilistic;
  if (left.verdict == Verdict::Inconclusive) return rep;
  rep.result = biconditional(left.verdict == Verdict::Pass, right.verdict == NRepVerdict::PassUpToDepth);
  return rep;
}

TheoremReport trivext_dual(const TheoremInputs& in) {
  TheoremReport rep;
  rep.statement = "the (n+1)-preprojective algebra of A is isomorphic to the Koszul dual of its trivial extension";
  if (!in.algebra->concentrated_in_degree_zero()) throw InputError("trivext-dual expects a degree-zero algebra");
  auto delta = make_shared_algebra(trivial_extension(*in.algebra));
  auto pi = preprojective_algebra(in.algebra, in.n, in.d_max);
  auto dual = koszul_dual(degree_zero_summands(delta), in.n + 1, in.d_max);
  rep.facts.emplace_back("preprojective dims", dims_list(pi.dims()));
  rep.facts.emplace_back("dual dims", dims_list(dual.algebra.dims()));
  auto iso = find_isomorphism(pi, dual.algebra, in.seed);
  rep.facts.emplace_back("isomorphism", iso.iso ? "found" : iso.detail);
  rep.bounds = {"degree <= " + std::to_string(in.d_max)};
  if (!iso.dims_match)
    rep.result = Agreement::Disagree;
  else
    rep.result = iso.iso ? Agreement::Agree : Agreement::Inconclusive;
  return rep;
}

struct Hypothesis {
  Verdict verdict;
  bool probabilistic;
};

// n-T-Koszul, or failing that (n, m_i, sigma_i)-T-Koszul.
Hypothesis koszul_hypothesis(TheoremReport& rep, const std::vector<GradedModule>& t, const TheoremInputs& in) {
  auto k = check_n_T_koszul(t, in.n, in.i_max, in.seed);
  rep.facts.emplace_back("n-T-Koszul", to_string(k.verdict));
  rep.bounds.push_back("i_max " + std::to_string(in.i_max));
  if (k.verdict != Verdict::Fail) return {k.verdict, k.probabilistic};
  auto ms = check_n_m_sigma_koszul(t, in.n, in.l_max, in.seed);
  rep.facts.emplace_back("(n, m, sigma)-T-Koszul", to_string(ms.verdict));
  rep.bounds.push_back("cosyzygy steps <= " + std::to_string(in.l_max));
  return {ms.verdict, k.probabilistic || ms.probabilistic};
}

TheoremReport preproj_veronese(const TheoremInputs& in) {
  TheoremReport rep;
  rep.statement = "Pi_{na} B is isomorphic to the a-th quasi-Veronese of the Koszul dual twisted by the inverse of mu-bar";
  auto t = summands_of(in);
  auto fr = frobenius_analysis(*in.algebra, in.seed);
  if (!fr.data) throw InputError("the algebra is not graded Frobenius: " + fr.reason);
  auto hyp = koszul_hypothesis(rep, t, in);
  rep.probabilistic = hyp.probabilistic;
  if (hyp.verdict != Verdict::Pass) {
    rep.facts.emplace_back("status", "hypothesis not met, nothing to compare");
    return rep;
  }
  auto d = b_data(t, in.n);
  add_b_facts(rep, d);
  const int a = d.tt.a;
  auto pi = preprojective_algebra(d.b.algebra, in.n * a - 1, in.d_max);
  auto kd = koszul_dual(t, in.n, a * in.d_max + a - 1);
  auto perm = nakayama_permutation(t, *fr.data, in.seed);
  rep.probabilistic = rep.probabilistic || perm.probabilistic;
  if (perm.offending) throw InternalError("a twisted summand of T matched no summand");
  auto mubar = build_mu_bar(kd, fr.data->nakayama, perm);
  auto mubar_inv = inverse(mubar);
  if (!mubar_inv || !is_automorphism(kd.algebra, mubar))
    throw InternalError("mu-bar is not an automorphism of the Koszul dual");
  auto ver = quasi_veronese(kd.algebra, a);
  auto twisted = twist_algebra(ver, induced_veronese_automorphism(kd.algebra, *mubar_inv, a));
  auto pd = dims_upto(pi, in.d_max), td = dims_upto(twisted, in.d_max);
  rep.facts.emplace_back("preprojective dims", dims_list(pd));
  rep.facts.emplace_back("twisted Veronese dims", dims_list(td));
  bool untwisted_ok = true;
  if (fr.data->symmetric) {
    auto vd = dims_upto(ver, in.d_max);
    rep.facts.emplace_back("untwisted Veronese dims", dims_list(vd));
    untwisted_ok = vd == pd;
  }
  auto iso = find_isomorphism(pi, twisted, in.seed);
  rep.facts.emplace_back("isomorphism", iso.iso ? "found" : iso.detail);
  rep.bounds.push_back("degree <= " + std::to_string(in.d_max));
  if (pd != td || !untwisted_ok || !iso.dims_match)
    rep.result = Agreement::Disagree;
  else
    rep.result = iso.iso ? Agreement::Agree : Agreement::Inconclusive;
  return rep;
}

void add_param_facts(TheoremReport& rep, const NMSigmaReport& r) {
  if (!r.params) return;
  const auto& p = *r.params;
  rep.facts.emplace_back("l", int_list(p.l));
  rep.facts.emplace_back("g", int_list(p.g));
  rep.facts.emplace_back("m", int_list(p.m));
  rep.facts.emplace_back("sigma", int_list(p.sigma));
  rep.facts.emplace_back("pi", int_list(p.pi, 1));
}

std::string orbit_list(const NRepReport& r) {
  std::string out;
  for (const auto& o : r.orbits) {
    if (!out.empty()) out += " ";
    out += "P" + std::to_string(o.projective + 1) + ":";
    out += o.m ? "m=" + std::to_string(*o.m) + "->I" + std::to_string(*o.endpoint + 1) : "open";
  }
  return out;
}

TheoremReport nrepfin_char(const TheoremInputs& in) {
  TheoremReport rep;
  rep.statement = "Lambda is (n, m_i, sigma_i)-T-Koszul iff B is (na-1)-representation finite";
  auto t = summands_of(in);
  auto left = check_n_m_sigma_koszul(t, in.n, in.l_max, in.seed);
  rep.probabilistic = left.probabilistic;
  rep.facts.emplace_back("(n, m, sigma)-T-Koszul", to_string(left.verdict));
  add_param_facts(rep, left);
  for (const auto& note : left.notes) rep.facts.emplace_back("note", note);
  rep.bounds = {"cosyzygy steps <= " + std::to_string(in.l_max), "orbit cap " + std::to_string(in.orbit_cap)};
  if (left.verdict == Verdict::Inconclusive) return rep;
  BData d;
  try {
    d = b_data(t, in.n);
  } catch (const InternalError& e) {
    rep.facts.emplace_back("B", std::string("not built: ") + e.what());
    return rep;
  }
  add_b_facts(rep, d);
  auto right = is_n_rep_finite(d.b.algebra, in.n * d.tt.a - 1, in.orbit_cap, in.seed);
  rep.facts.emplace_back("B rep-finite", to_string(right.verdict));
  rep.facts.emplace_back("orbits", orbit_list(right));
  if (!right.detail.empty()) rep.facts.emplace_back("B detail", right.detail);
  if (right.verdict == NRepVerdict::NoWithinCap) return rep;
  rep.result = biconditional(left.verdict == Verdict::Pass, right.verdict == NRepVerdict::Yes);
  return rep;
}

TheoremReport param_consistency(const TheoremInputs& in) {
  TheoremReport rep;
  rep.statement = "the nu-orbits of B realise m_{i,j}, sigma^R_i(j) and sigma^L_j(i)";
  auto t = summands_of(in);
  auto left = check_n_m_sigma_koszul(t, in.n, in.l_max, in.seed);
  rep.probabilistic = left.probabilistic;
  rep.facts.emplace_back("(n, m, sigma)-T-Koszul", to_string(left.verdict));
  add_param_facts(rep, left);
  rep.bounds = {"cosyzygy steps <= " + std::to_string(in.l_max), "orbit cap " + std::to_string(in.orbit_cap)};
  if (left.verdict != Verdict::Pass) {
    rep.facts.emplace_back("status", "no parameters to compare");
    return rep;
  }
  auto d = b_data(t, in.n);
  add_b_facts(rep, d);
  auto orbits = is_n_rep_finite(d.b.algebra, in.n * d.tt.a - 1, in.orbit_cap, in.seed);
  rep.facts.emplace_back("B rep-finite", to_string(orbits.verdict));
  if (orbits.verdict != NRepVerdict::Yes) {
    rep.result = Agreement::Disagree;
    return rep;
  }
  auto cmp = compare_parameters(*left.params, left.mu, d.b, orbits);
  for (const auto& r : cmp.rows) {
    std::ostringstream s;
    s << "m " << r.m_formula << " vs " << (r.m_orbit ? std::to_string(*r.m_orbit) : "-") << ", end (" << r.sigma_l + 1
      << "," << r.sigma_r << ") vs ";
    if (r.endpoint_i)
      s << "(" << *r.endpoint_i + 1 << "," << *r.endpoint_j << ")";
    else
      s << "-";
    rep.facts.emplace_back("part (" + std::to_string(r.i + 1) + "," + std::to_string(r.j) + ")", s.str());
  }
  rep.result = cmp.all_match ? Agreement::Agree : Agreement::Disagree;
  return rep;
}

TheoremReport serre_identity(const TheoremInputs& in) {
  TheoremReport rep;
  rep.statement = "dim stable Hom(T~, Omega^{-(nai+l)} T~<ai>) = dim H^l(nu_{na-1}^{-i} B)";
  auto t = summands_of(in);
  auto d = b_data(t, in.n);
  add_b_facts(rep, d);
  auto s = serre_dimension_identity(d.tt, d.b, in.serre_i, in.serre_l);
  for (const auto& e : s.entries) {
    if (e.stable == 0 && e.derived == 0) continue;
    rep.facts.emplace_back("i=" + std::to_string(e.i) + " l=" + std::to_string(e.l),
                           std::to_string(e.stable) + " vs " + std::to_string(e.derived));
  }
  rep.facts.emplace_back("split complexes", yes_no(s.exact));
  rep.bounds = {"0 <= i <= " + std::to_string(in.serre_i), "|l| <= " + std::to_string(in.serre_l)};
  if (s.all_equal)
    rep.result = Agreement::Agree;
  else
    rep.result = s.exact ? Agreement::Disagree : Agreement::Inconclusive;
  return rep;
}

}  // namespace

std::string to_string(Agreement a) {
  switch (a) {
    case Agreement::Agree: return "agree";
    case Agreement::Disagree: return "disagree";
    case Agreement::Inconclusive: return "inconclusive";
  }
  return "?";
}

int exit_code(Agreement a) {
  switch (a) {
    case Agreement::Agree: return 0;
    case Agreement::Disagree: return 1;
    case Agreement::Inconclusive: return 3;
  }
  return 3;
}

const std::vector<std::string>& theorem_ids() {
  static const std::vector<std::string> ids{"characterization", "trivext-koszul", "preproj-veronese", "trivext-dual",
                                            "nrepfin-char",     "param-consistency", "serre-identity"};
  return ids;
}

TheoremReport verify_theorem(const std::string& id, const TheoremInputs& in) {
  if (!in.algebra) throw InputError("an algebra is required");
  if (in.n < 1 || in.i_max < 1 || in.d_max < 0 || in.depth < 1 || in.orbit_cap < 1 || in.l_max < 1)
    throw InputError("bounds must be positive");
  TheoremReport rep;
  if (id == "characterization")
    rep = characterization(in);
  else if (id == "trivext-koszul")
    rep = trivext_koszul(in);
  else if (id == "preproj-veronese")
    rep = preproj_veronese(in);
  else if (id == "trivext-dual")
    rep = trivext_dual(in);
  else if (id == "nrepfin-char")
    rep = nrepfin_char(in);
  else if (id == "param-consistency")
    rep = param_consistency(in);
  else if (id == "serre-identity")
    rep = serre_identity(in);
  else
    throw InputError("unknown theorem id '" + id + "'");
  rep.id = id;
  if (rep.probabilistic && rep.result == Agreement::Disagree) rep.result = Agreement::Inconclusive;
  return rep;
}

ParamComparison compare_parameters(const AlmostParams& p, const std::vector<int>& mu, const StableEndomorphism& b,
                                   const NRepReport& orbits) {
  ParamComparison cmp;
  cmp.all_match = !orbits.orbits.empty();
  for (const auto& o : orbits.orbits) {
    ParamComparison::Row r;
    std::tie(r.i, r.j) = b.vertex_part[o.projective];
    r.m_formula = p.m_ij(r.i, r.j);
    r.sigma_r = p.sigma_R(r.i, r.j);
    r.sigma_l = p.sigma_L(r.i, r.j, mu);
    r.m_orbit = o.m;
    if (o.endpoint) {
      r.endpoint_i = b.vertex_part[*o.endpoint].first;
      r.endpoint_j = b.vertex_part[*o.endpoint].second;
    }
    r.match = r.m_orbit == r.m_formula && r.endpoint_i == r.sigma_l && r.endpoint_j == r.sigma_r;
    cmp.all_match = cmp.all_match && r.match;
    cmp.rows.push_back(r);
  }
  return cmp;
}

}  // namespace kk
