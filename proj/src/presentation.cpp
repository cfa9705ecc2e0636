#include "koszulkit/presentation.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace kk {

namespace {

constexpr long long kPathCap = 2'000'000;

std::string path_label(const Quiver& q, const std::vector<int>& p) {
  std::string s;
  for (size_t i = 0; i < p.size(); ++i) {
    if (i) s += '*';
    s += q.arrows[p[i]].name;
  }
  return s;
}

struct Level {
  std::vector<std::vector<int>> paths;  // lexicographic order
  std::map<std::vector<int>, int> index;
  // Column of path k in the reduction is paths.size() - 1 - k, so pivots land on
  // the largest paths and the smallest ones survive.
  std::vector<int> survivors;               // path indices, increasing
  std::map<int, SparseVec> normal_form;     // path index -> combination of survivor path indices
  std::vector<SparseVec> ideal;             // basis of I_l over path indices
};

void check_relation(const Quiver& q, const Relation& r, int& len) {
  if (r.terms.empty()) throw InputError("empty relation");
  const auto& first = r.terms.front().second;
  if (first.empty()) throw InputError("relation term without arrows");
  auto shape = [&](const std::vector<int>& p) {
    for (size_t i = 0; i + 1 < p.size(); ++i)
      if (q.arrows[p[i]].tgt != q.arrows[p[i + 1]].src)
        throw InputError("relation path " + path_label(q, p) + " is not composable");
    int d = 0;
    for (int a : p) d += q.arrows[a].deg;
    return std::tuple(q.arrows[p.front()].src, q.arrows[p.back()].tgt, d, static_cast<int>(p.size()));
  };
  auto ref = shape(first);
  for (const auto& [c, p] : r.terms) {
    if (p.empty()) throw InputError("relation term without arrows");
    if (shape(p) != ref)
      throw InputError("inhomogeneous relation: " + path_label(q, p) + " vs " + path_label(q, first) +
                       " (source, target, degree and length must agree)");
  }
  len = std::get<3>(ref);
}

}  // namespace

int Quiver::arrow_index(const std::string& name) const {
  for (size_t i = 0; i < arrows.size(); ++i)
    if (arrows[i].name == name) return static_cast<int>(i);
  return -1;
}

long long path_count(const Quiver& q, int bound) {
  std::vector<long long> ending(q.vertices, 1);
  long long total = q.vertices;
  for (int l = 1; l <= bound; ++l) {
    std::vector<long long> next(q.vertices, 0);
    for (const auto& a : q.arrows) next[a.tgt] += ending[a.src];
    ending = next;
    for (long long c : ending) total += c;
  }
  return total;
}

GradedAlgebra build_algebra(const Quiver& q, const std::vector<Relation>& rels, int bound, const std::string& name) {
  if (bound < 1) throw InputError("path-length bound must be at least 1");
  if (q.vertices < 1) throw InputError("quiver needs at least one vertex");
  for (const auto& a : q.arrows) {
    if (a.src < 0 || a.src >= q.vertices || a.tgt < 0 || a.tgt >= q.vertices)
      throw InputError("arrow " + a.name + " has an endpoint out of range");
    if (a.deg < 0) throw InputError("arrow " + a.name + " has negative degree");
  }
  std::map<int, std::vector<const Relation*>> rels_by_len;
  for (const auto& r : rels) {
    int len = 0;
    check_relation(q, r, len);
    rels_by_len[len].push_back(&r);
  }

  std::vector<Level> levels(1);
  long long enumerated = 0;
  int top = -1;  // first length at which nothing survives
  for (int l = 1; l <= bound; ++l) {
    Level cur;
    const Level& prev = levels[l - 1];
    if (l == 1) {
      for (size_t a = 0; a < q.arrows.size(); ++a) cur.paths.push_back({static_cast<int>(a)});
    } else {
      for (const auto& p : prev.paths)
        for (size_t a = 0; a < q.arrows.size(); ++a)
          if (q.arrows[p.back()].tgt == q.arrows[a].src) {
            auto np = p;
            np.push_back(static_cast<int>(a));
            cur.paths.push_back(std::move(np));
          }
    }
    enumerated += static_cast<long long>(cur.paths.size());
    if (enumerated > kPathCap) throw InputError("presentation too large: path enumeration cap exceeded");
    std::sort(cur.paths.begin(), cur.paths.end());
    for (size_t i = 0; i < cur.paths.size(); ++i) cur.index[cur.paths[i]] = static_cast<int>(i);
    const int n = static_cast<int>(cur.paths.size());
    auto col = [n](int k) { return n - 1 - k; };

    RowReducer rr(n);
    for (const Relation* r : rels_by_len[l]) {
      std::map<int, Q> row;
      for (const auto& [c, p] : r->terms) row[col(cur.index.at(p))] += c;
      SparseVec s;
      for (auto& [j, c] : row)
        if (!is_zero(c)) s.emplace_back(j, c);
      rr.add(s);
    }
    if (l > 1) {
      for (const auto& y : prev.ideal) {
        for (size_t a = 0; a < q.arrows.size(); ++a) {
          std::map<int, Q> left, right;
          for (const auto& [k, c] : y) {
            const auto& p = prev.paths[k];
            if (q.arrows[a].tgt == q.arrows[p.front()].src) {
              std::vector<int> np{static_cast<int>(a)};
              np.insert(np.end(), p.begin(), p.end());
              left[col(cur.index.at(np))] += c;
            }
            if (q.arrows[p.back()].tgt == q.arrows[a].src) {
              auto np = p;
              np.push_back(static_cast<int>(a));
              right[col(cur.index.at(np))] += c;
            }
          }
          for (auto* m : {&left, &right}) {
            SparseVec s;
            for (auto& [j, c] : *m)
              if (!is_zero(c)) s.emplace_back(j, c);
            if (!s.empty()) rr.add(s);
          }
        }
      }
    }
    const auto& rows = rr.reduced_rows();
    std::vector<char> pivot(n, 0);
    for (const auto& [p, r] : rows) {
      pivot[n - 1 - p] = 1;
      SparseVec over_paths;
      for (const auto& [j, c] : r) over_paths.emplace_back(n - 1 - j, c);
      std::sort(over_paths.begin(), over_paths.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
      cur.ideal.push_back(over_paths);
      SparseVec nf;
      for (const auto& [j, c] : r)
        if (j != p) nf.emplace_back(n - 1 - j, -c);
      std::sort(nf.begin(), nf.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
      cur.normal_form[n - 1 - p] = std::move(nf);
    }
    for (int k = 0; k < n; ++k)
      if (!pivot[k]) cur.survivors.push_back(k);
    bool empty = cur.survivors.empty();
    levels.push_back(std::move(cur));
    if (empty) {
      top = l;
      break;
    }
  }
  if (top < 0)
    throw InputError("not finite-dimensional within bound: paths of length " + std::to_string(bound) + " survive");

  std::vector<BasisElement> basis;
  std::vector<std::vector<int>> paths;
  std::vector<int> idem;
  for (int v = 0; v < q.vertices; ++v) {
    idem.push_back(static_cast<int>(basis.size()));
    basis.push_back({v, v, 0, "e" + std::to_string(v + 1)});
    paths.push_back({});
  }
  // basis index of survivor path k at length l
  std::vector<std::map<int, int>> basis_of(top + 1);
  for (int l = 1; l < top; ++l) {
    for (int k : levels[l].survivors) {
      const auto& p = levels[l].paths[k];
      int d = 0;
      for (int a : p) d += q.arrows[a].deg;
      basis_of[l][k] = static_cast<int>(basis.size());
      basis.push_back({q.arrows[p.front()].src, q.arrows[p.back()].tgt, d, path_label(q, p)});
      paths.push_back(p);
    }
  }
  auto reduce_path = [&](const std::vector<int>& p) -> SparseVec {
    int l = static_cast<int>(p.size());
    if (l >= top) return {};
    int k = levels[l].index.at(p);
    auto it = basis_of[l].find(k);
    if (it != basis_of[l].end()) return {{it->second, Q(1)}};
    SparseVec out;
    for (const auto& [j, c] : levels[l].normal_form.at(k)) out.emplace_back(basis_of[l].at(j), c);
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    return out;
  };

  const int dim = static_cast<int>(basis.size());
  std::vector<std::vector<SparseVec>> prod(dim, std::vector<SparseVec>(dim));
  for (int x = 0; x < dim; ++x)
    for (int y = 0; y < dim; ++y) {
      if (basis[x].tgt != basis[y].src) continue;
      if (paths[x].empty()) {
        prod[x][y] = {{y, Q(1)}};
      } else if (paths[y].empty()) {
        prod[x][y] = {{x, Q(1)}};
      } else {
        auto p = paths[x];
        p.insert(p.end(), paths[y].begin(), paths[y].end());
        prod[x][y] = reduce_path(p);
      }
    }
  GradedAlgebra alg(name, q.vertices, std::move(basis), std::move(idem), std::move(prod));
  std::vector<SparseVec> arrow_forms;
  for (size_t a = 0; a < q.arrows.size(); ++a) arrow_forms.push_back(reduce_path({static_cast<int>(a)}));
  alg.set_presentation(q.arrows, std::move(arrow_forms), std::move(paths));
  return alg;
}

GradedAlgebra build_algebra(const Presentation& p, int bound) {
  return build_algebra(p.quiver, p.relations, bound, p.name);
}

namespace {

std::string strip_comment(const std::string& line) {
  auto h = line.find('#');
  return h == std::string::npos ? line : line.substr(0, h);
}

bool is_numeric_factor(const std::string& s) {
  return !s.empty() && (std::isdigit(static_cast<unsigned char>(s[0])) != 0);
}

Relation parse_relation(const Quiver& q, const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw InputError("empty relation");
  std::vector<std::pair<int, std::string>> signed_terms;
  int sign = 1;
  std::string cur;
  for (size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if ((c == '+' || c == '-') && !(i > 0 && s[i - 1] == '/')) {
      if (!cur.empty()) signed_terms.emplace_back(sign, cur);
      else if (i > 0) throw InputError("malformed relation: " + text);
      sign = c == '-' ? -1 : 1;
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (cur.empty()) throw InputError("malformed relation: " + text);
  signed_terms.emplace_back(sign, cur);

  std::map<std::vector<int>, Q> combined;
  std::vector<std::vector<int>> order;
  for (const auto& [sg, term] : signed_terms) {
    Q coeff(sg);
    std::vector<int> path;
    std::stringstream ss(term);
    std::string f;
    while (std::getline(ss, f, '*')) {
      if (f.empty()) throw InputError("malformed relation term: " + term);
      if (is_numeric_factor(f)) {
        coeff *= parse_rational(f);
      } else {
        int a = q.arrow_index(f);
        if (a < 0) throw InputError("unknown arrow '" + f + "' in relation");
        path.push_back(a);
      }
    }
    if (path.empty()) throw InputError("relation term without arrows: " + term);
    if (!combined.count(path)) order.push_back(path);
    combined[path] += coeff;
  }
  Relation r;
  for (const auto& p : order)
    if (!is_zero(combined[p])) r.terms.emplace_back(combined[p], p);
  if (r.terms.empty()) throw InputError("relation reduces to zero: " + text);
  return r;
}

}  // namespace

Presentation parse_presentation(std::istream& in) {
  Presentation p;
  std::string line;
  int lineno = 0;
  bool have_vertices = false, ended = false, started = false;
  std::vector<std::string> pending;  // relation texts, parsed once all arrows are known
  std::vector<int> pending_line;
  while (std::getline(in, line)) {
    ++lineno;
    std::string body = strip_comment(line);
    std::stringstream ss(body);
    std::string kw;
    if (!(ss >> kw)) continue;
    auto fail = [&](const std::string& msg) {
      throw InputError("line " + std::to_string(lineno) + ": " + msg);
    };
    if (ended) fail("content after 'end'");
    if (kw == "algebra") {
      if (!(ss >> p.name)) fail("algebra needs a name");
      started = true;
    } else if (kw == "vertices") {
      if (!(ss >> p.quiver.vertices) || p.quiver.vertices < 1) fail("vertices needs a positive count");
      have_vertices = true;
    } else if (kw == "arrow") {
      if (!have_vertices) fail("arrow before vertices");
      Arrow a;
      if (!(ss >> a.name >> a.src >> a.tgt >> a.deg)) fail("arrow needs NAME SRC TGT DEG");
      if (a.src < 1 || a.src > p.quiver.vertices || a.tgt < 1 || a.tgt > p.quiver.vertices)
        fail("arrow endpoint out of range");
      if (a.deg < 0) fail("arrow degree must be non-negative");
      if (is_numeric_factor(a.name) || a.name.find_first_of("*+-/") != std::string::npos)
        fail("invalid arrow name '" + a.name + "'");
      if (p.quiver.arrow_index(a.name) >= 0) fail("duplicate arrow name '" + a.name + "'");
      --a.src;
      --a.tgt;
      p.quiver.arrows.push_back(a);
    } else if (kw == "relation") {
      std::string rest;
      std::getline(ss, rest);
      pending.push_back(rest);
      pending_line.push_back(lineno);
    } else if (kw == "end") {
      ended = true;
    } else {
      fail("unknown keyword '" + kw + "'");
    }
  }
  if (!started) throw InputError("missing 'algebra NAME' line");
  if (!have_vertices) throw InputError("missing 'vertices' line");
  if (!ended) throw InputError("missing 'end' line");
  for (size_t i = 0; i < pending.size(); ++i) {
    try {
      Relation r = parse_relation(p.quiver, pending[i]);
      int len = 0;
      check_relation(p.quiver, r, len);
      p.relations.push_back(std::move(r));
    } catch (const InputError& e) {
      throw InputError("line " + std::to_string(pending_line[i]) + ": " + e.what());
    }
  }
  return p;
}

Presentation parse_presentation_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open algebra file " + path);
  return parse_presentation(in);
}

Presentation parse_presentation_string(const std::string& text) {
  std::istringstream in(text);
  return parse_presentation(in);
}

void write_presentation(std::ostream& out, const Presentation& p) {
  out << "algebra " << (p.name.empty() ? "unnamed" : p.name) << "\n";
  out << "vertices " << p.quiver.vertices << "\n";
  for (const auto& a : p.quiver.arrows)
    out << "arrow " << a.name << " " << a.src + 1 << " " << a.tgt + 1 << " " << a.deg << "\n";
  for (const auto& r : p.relations) {
    out << "relation";
    bool first = true;
    for (const auto& [c, path] : r.terms) {
      Q m = abs(c);
      out << (sgn(c) < 0 ? (first ? " -" : " - ") : (first ? " " : " + "));
      if (m != 1) out << to_string(m) << "*";
      out << path_label(p.quiver, path);
      first = false;
    }
    out << "\n";
  }
  out << "end\n";
}

}  // namespace kk
