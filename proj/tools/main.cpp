#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "koszulkit/hereditary.hpp"
#include "koszulkit/io.hpp"
#include "koszulkit/koszul.hpp"
#include "koszulkit/theorems.hpp"

using json = nlohmann::ordered_json;
using namespace kk;

namespace {

struct Config {
  std::string algebra;
  std::vector<std::string> tilting;
  std::string m_path, n_path;
  std::string theorem;
  std::string mode = "finite";
  int n = 1;
  int i_max = 8;
  int d_max = 6;
  int depth = 6;
  int orbit_cap = 10;
  int l_max = 24;
  int r = 1;
  std::uint64_t seed = 0;
  bool json = false;
  bool dump = false;
  bool almost = false;
  bool classic = false;
  std::string out;
};

std::string join(const std::vector<int>& v, const char* sep = ",") {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + std::to_string(v[i]);
  return s;
}

std::vector<int> one_based(std::vector<int> v) {
  for (int& x : v) ++x;
  return v;
}

// Text rendering: one "key: value" line per field, nested objects indented.
void render(std::ostream& out, const json& j, int indent = 0) {
  const std::string pad(indent, ' ');
  for (const auto& [k, v] : j.items()) {
    if (v.is_object()) {
      out << pad << k << ":\n";
      render(out, v, indent + 2);
    } else if (v.is_array() && !v.empty() && v.front().is_object()) {
      out << pad << k << ":\n";
      for (const auto& e : v) {
        out << pad << "  -\n";
        render(out, e, indent + 4);
      }
    } else if (v.is_array()) {
      out << pad << k << ":";
      for (const auto& e : v) out << " " << (e.is_string() ? e.get<std::string>() : e.dump());
      out << "\n";
    } else {
      out << pad << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
  }
}

void emit(const Config& c, const json& report, const std::string& extra = "") {
  std::ostringstream s;
  if (c.json)
    s << report.dump(2) << "\n";
  else {
    render(s, report);
    s << extra;
  }
  if (c.out.empty()) {
    std::cout << s.str();
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw InputError("cannot write " + c.out);
  f << s.str();
}

AlgebraPtr algebra_of(const Config& c) {
  if (c.algebra.empty()) throw InputError("--algebra is required");
  return load_algebra(c.algebra);
}

std::vector<GradedModule> summands_of(const Config& c, const AlgebraPtr& a) {
  std::vector<GradedModule> t;
  for (const auto& p : c.tilting) t.push_back(load_module(p, a));
  return t;
}

std::vector<GradedModule> summands_or_zero(const Config& c, const AlgebraPtr& a) {
  auto t = summands_of(c, a);
  return t.empty() ? degree_zero_summands(a) : t;
}

json graded_dims(const GradedAlgebra& a) {
  std::map<int, int> d;
  for (const auto& e : a.basis()) ++d[e.deg];
  json j = json::object();
  for (auto [deg, n] : d) j[std::to_string(deg)] = n;
  return j;
}

int cmd_build(const Config& c) {
  auto a = algebra_of(c);
  json r;
  r["command"] = "build";
  r["algebra"] = a->name();
  r["dim"] = a->dim();
  r["vertices"] = a->vertices();
  r["graded dims"] = graded_dims(*a);
  auto fr = frobenius_analysis(*a, c.seed);
  std::string summary = "dim " + std::to_string(a->dim());
  if (fr.data) {
    r["frobenius"] = true;
    r["a"] = fr.data->a;
    r["symmetric"] = fr.data->symmetric;
    if (auto vp = fr.data->nakayama.vertex_permutation(*a)) r["nakayama vertices"] = one_based(*vp);
    if (auto bp = fr.data->nakayama.basis_permutation()) r["nakayama basis"] = one_based(*bp);
    summary += ", a = " + std::to_string(fr.data->a) + (fr.data->symmetric ? ", symmetric" : ", not symmetric");
  } else {
    r["frobenius"] = false;
    r["frobenius detail"] = fr.reason;
    summary += ", not graded Frobenius";
  }
  r["probabilistic"] = !fr.certified;
  auto zero = make_shared_algebra(degree_zero_part(*a).algebra);
  auto gl = gldim_upto(zero, zero->dim());
  if (gl.gldim) {
    r["degree-zero gldim"] = *gl.gldim;
    summary += ", degree-zero gldim " + std::to_string(*gl.gldim);
  } else {
    r["degree-zero gldim"] = "> " + std::to_string(gl.bound);
    summary += ", degree-zero gldim > " + std::to_string(gl.bound);
  }
  r["bounds"] = {"gldim <= " + std::to_string(gl.bound)};
  r["summary"] = summary;
  emit(c, r);
  return 0;
}

int cmd_verify(const Config& c) {
  TheoremInputs in;
  in.algebra = algebra_of(c);
  in.t = summands_of(c, in.algebra);
  in.n = c.n;
  in.i_max = c.i_max;
  in.d_max = c.d_max;
  in.depth = c.depth;
  in.orbit_cap = c.orbit_cap;
  in.l_max = c.l_max;
  in.seed = c.seed;
  auto rep = verify_theorem(c.theorem, in);
  json r;
  r["command"] = "verify";
  r["theorem"] = rep.id;
  r["statement"] = rep.statement;
  r["n"] = c.n;
  json facts = json::object();
  for (const auto& [k, v] : rep.facts) {
    if (facts.contains(k))
      facts[k] = facts[k].get<std::string>() + "; " + v;
    else
      facts[k] = v;
  }
  r["facts"] = facts;
  r["bounds"] = rep.bounds;
  r["probabilistic"] = rep.probabilistic;
  r["result"] = to_string(rep.result);
  emit(c, r);
  return exit_code(rep.result);
}

int cmd_ext(const Config& c) {
  auto a = algebra_of(c);
  if (c.m_path.empty() || c.n_path.empty()) throw InputError("--M and --N are required");
  auto m = load_module(c.m_path, a);
  auto n = load_module(c.n_path, a);
  auto res = projective_resolution(m, c.i_max + 1);
  int lo = 0, hi = 0;
  bool any = false;
  for (int i = 0; i <= c.i_max; ++i) {
    auto [l, h] = ext_support(res, n, i);
    if (l > h) continue;
    lo = any ? std::min(lo, l) : l;
    hi = any ? std::max(hi, h) : h;
    any = true;
  }
  auto table = ext_table(res, n, c.i_max, lo, hi);
  json r;
  r["command"] = "ext";
  r["i_max"] = c.i_max;
  r["j_min"] = table.j_min;
  r["j_max"] = table.j_max;
  json rows = json::array();
  for (const auto& row : table.dims) rows.push_back(row);
  r["bounds"] = {"i <= " + std::to_string(c.i_max), "j outside the listed range vanishes by degree support"};
  r["probabilistic"] = false;
  if (c.json) {
    r["dims"] = rows;
    emit(c, r);
  } else {
    emit(c, r, table.tsv());
  }
  return 0;
}

int verdict_code(Verdict v) { return v == Verdict::Pass ? 0 : v == Verdict::Fail ? 1 : 3; }

int cmd_koszul(const Config& c) {
  auto a = algebra_of(c);
  json r;
  r["command"] = "koszul";
  r["n"] = c.n;
  if (c.classic) {
    auto ck = check_classic_almost_koszul(a, c.l_max);
    r["check"] = "classic almost Koszul";
    r["linear within bound"] = ck.koszul_within_bound;
    if (ck.gl) r["(g, l)"] = {ck.gl->first, ck.gl->second};
    r["detail"] = ck.detail;
    r["bounds"] = {"resolution length <= " + std::to_string(ck.bound)};
    r["probabilistic"] = false;
    emit(c, r);
    return ck.gl || ck.koszul_within_bound ? 0 : 1;
  }
  auto t = summands_or_zero(c, a);
  if (c.almost) {
    auto rep = check_n_m_sigma_koszul(t, c.n, c.l_max, c.seed);
    r["check"] = "(n, m, sigma)-T-Koszul";
    r["verdict"] = to_string(rep.verdict);
    if (rep.params) {
      r["l"] = rep.params->l;
      r["g"] = rep.params->g;
      r["m"] = rep.params->m;
      r["sigma"] = rep.params->sigma;
      r["pi"] = one_based(rep.params->pi);
    }
    r["nakayama permutation"] = one_based(rep.mu);
    r["notes"] = rep.notes;
    r["bounds"] = {"cosyzygy steps <= " + std::to_string(c.l_max)};
    r["probabilistic"] = rep.probabilistic;
    emit(c, r);
    return verdict_code(rep.verdict);
  }
  auto rep = check_n_T_koszul(t, c.n, c.i_max, c.seed);
  r["check"] = "n-T-Koszul";
  r["verdict"] = to_string(rep.verdict);
  r["window"] = {rep.j_min, rep.j_max};
  if (rep.counterexample)
    r["counterexample"] = {{"i", rep.counterexample->i}, {"j", rep.counterexample->j}, {"dim", rep.counterexample->dim}};
  r["notes"] = rep.notes;
  r["bounds"] = {"i <= " + std::to_string(rep.i_max)};
  r["probabilistic"] = rep.probabilistic;
  emit(c, r);
  return verdict_code(rep.verdict);
}

int cmd_nrep(const Config& c) {
  auto a = algebra_of(c);
  NRepReport rep;
  if (c.mode == "finite")
    rep = is_n_rep_finite(a, c.n, c.orbit_cap, c.seed);
  else if (c.mode == "infinite")
    rep = is_n_rep_infinite_upto(a, c.n, c.depth);
  else
    throw InputError("--mode must be finite or infinite");
  json r;
  r["command"] = "nrep";
  r["mode"] = c.mode;
  r["n"] = c.n;
  r["verdict"] = to_string(rep.verdict);
  if (rep.gldim) r["gldim"] = *rep.gldim;
  json orbits = json::array();
  for (const auto& o : rep.orbits) {
    json e;
    e["projective"] = o.projective + 1;
    if (o.m) e["m"] = *o.m;
    if (o.endpoint) e["injective"] = *o.endpoint + 1;
    if (!o.detail.empty()) e["detail"] = o.detail;
    orbits.push_back(e);
  }
  if (!orbits.empty()) r["orbits"] = orbits;
  if (rep.failure) r["failure (j, degree)"] = {rep.failure->first, rep.failure->second};
  if (!rep.detail.empty()) r["detail"] = rep.detail;
  r["bounds"] = {c.mode == "finite" ? "orbit cap " + std::to_string(c.orbit_cap) : "depth " + std::to_string(c.depth)};
  r["probabilistic"] = false;
  emit(c, r);
  switch (rep.verdict) {
    case NRepVerdict::Yes:
    case NRepVerdict::PassUpToDepth: return 0;
    case NRepVerdict::No: return 1;
    case NRepVerdict::NoWithinCap: return 3;
  }
  return 3;
}

json truncated_report(const TruncatedGradedAlgebra& g) {
  json r;
  r["dims"] = g.dims();
  r["total"] = g.dim();
  auto assoc = associativity_failure(g);
  r["associative"] = !assoc.has_value();
  if (assoc) r["associativity failure"] = *assoc;
  return r;
}

std::string dump_text(const Config& c, const TruncatedGradedAlgebra& g) {
  if (!c.dump) return "";
  std::ostringstream s;
  dump(s, g);
  return s.str();
}

int cmd_preprojective(const Config& c) {
  auto a = algebra_of(c);
  auto pi = preprojective_algebra(a, c.n, c.d_max);
  json r;
  r["command"] = "preprojective";
  r["n"] = c.n;
  r["algebra"] = truncated_report(pi);
  r["bounds"] = {"degree <= " + std::to_string(c.d_max)};
  r["probabilistic"] = false;
  emit(c, r, dump_text(c, pi));
  return 0;
}

int cmd_dual(const Config& c) {
  auto a = algebra_of(c);
  auto kd = koszul_dual(summands_or_zero(c, a), c.n, c.d_max);
  json r;
  r["command"] = "dual";
  r["n"] = c.n;
  r["algebra"] = truncated_report(kd.algebra);
  r["bounds"] = {"degree <= " + std::to_string(c.d_max)};
  r["probabilistic"] = false;
  emit(c, r, dump_text(c, kd.algebra));
  return 0;
}

int cmd_veronese(const Config& c) {
  if (c.r < 1) throw InputError("--r must be positive");
  auto a = algebra_of(c);
  auto kd = koszul_dual(summands_or_zero(c, a), c.n, c.r * c.d_max + c.r - 1);
  auto v = quasi_veronese(kd.algebra, c.r);
  json r;
  r["command"] = "veronese";
  r["n"] = c.n;
  r["r"] = c.r;
  r["dual dims"] = kd.algebra.dims();
  r["algebra"] = truncated_report(v);
  r["identical to the dual"] = same_structure(v, kd.algebra);
  r["bounds"] = {"degree <= " + std::to_string(c.d_max)};
  r["probabilistic"] = false;
  emit(c, r, dump_text(c, v));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"koszulkit: graded algebras, higher Koszul duality and n-hereditary checks"};
  app.require_subcommand(1);
  Config c;

  auto common = [&c](CLI::App* s) {
    s->add_option("--algebra", c.algebra, "algebra file");
    s->add_option("--n", c.n, "n")->check(CLI::PositiveNumber);
    s->add_option("--seed", c.seed, "seed for randomized searches");
    s->add_flag("--json", c.json, "emit JSON");
    s->add_option("--out", c.out, "write the report to a file");
  };
  auto tilting = [&c](CLI::App* s) {
    s->add_option("--tilting,--module", c.tilting, "module file of one summand of T (repeatable)");
  };
  auto degree_max = [&c](CLI::App* s) {
    s->add_option("--degree-max", c.d_max, "highest degree computed")->check(CLI::NonNegativeNumber);
    s->add_flag("--dump", c.dump, "print the multiplication table");
  };

  auto* build = app.add_subcommand("build", "validate an algebra and describe it");
  common(build);

  auto* verify = app.add_subcommand("verify", "check both sides of a theorem");
  common(verify);
  tilting(verify);
  verify->add_option("theorem", c.theorem, "theorem id")->required()->check(CLI::IsMember(theorem_ids()));
  verify->add_option("--i-max", c.i_max, "Ext degree bound")->check(CLI::PositiveNumber);
  verify->add_option("--degree-max", c.d_max, "degree bound for algebras")->check(CLI::NonNegativeNumber);
  verify->add_option("--depth", c.depth, "depth for representation-infinite checks")->check(CLI::PositiveNumber);
  verify->add_option("--orbit-cap", c.orbit_cap, "orbit length cap")->check(CLI::PositiveNumber);
  verify->add_option("--l-max", c.l_max, "cosyzygy steps for almost Koszul checks")->check(CLI::PositiveNumber);

  auto* ext = app.add_subcommand("ext", "graded Ext table");
  common(ext);
  ext->add_option("--M", c.m_path, "first module")->required();
  ext->add_option("--N", c.n_path, "second module")->required();
  ext->add_option("--i-max", c.i_max, "Ext degree bound")->check(CLI::PositiveNumber);

  auto* koszul = app.add_subcommand("koszul", "n-T-Koszul and almost Koszul checks");
  common(koszul);
  tilting(koszul);
  koszul->add_option("--i-max", c.i_max, "Ext degree bound")->check(CLI::PositiveNumber);
  koszul->add_option("--l-max", c.l_max, "cosyzygy or resolution steps")->check(CLI::PositiveNumber);
  koszul->add_flag("--almost", c.almost, "(n, m, sigma)-T-Koszul check");
  koszul->add_flag("--classic", c.classic, "classic almost Koszul check");

  auto* nrep = app.add_subcommand("nrep", "n-representation finite or infinite");
  common(nrep);
  nrep->add_option("--mode", c.mode, "finite or infinite")->check(CLI::IsMember({"finite", "infinite"}));
  nrep->add_option("--depth", c.depth, "depth for the infinite check")->check(CLI::PositiveNumber);
  nrep->add_option("--orbit-cap", c.orbit_cap, "orbit length cap")->check(CLI::PositiveNumber);

  auto* pre = app.add_subcommand("preprojective", "higher preprojective algebra");
  common(pre);
  degree_max(pre);

  auto* ver = app.add_subcommand("veronese", "quasi-Veronese algebra of the Koszul dual");
  common(ver);
  tilting(ver);
  degree_max(ver);
  ver->add_option("--r", c.r, "order")->check(CLI::PositiveNumber);

  auto* dual = app.add_subcommand("dual", "Koszul dual");
  common(dual);
  tilting(dual);
  degree_max(dual);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*build) return cmd_build(c);
    if (*verify) return cmd_verify(c);
    if (*ext) return cmd_ext(c);
    if (*koszul) return cmd_koszul(c);
    if (*nrep) return cmd_nrep(c);
    if (*pre) return cmd_preprojective(c);
    if (*ver) return cmd_veronese(c);
    if (*dual) return cmd_dual(c);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
  return 2;
}
