#include "koszulkit/io.hpp"

#include <fstream>
#include <sstream>

namespace kk {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

Matrix parse_matrix(const std::string& text, int rows, int cols) {
  Matrix m(rows, cols);
  std::string body;
  for (char c : text)
    if (c != ' ' && c != '\t') body += c;
  auto rs = split(body, ';');
  if (static_cast<int>(rs.size()) != rows)
    throw InputError("matrix has " + std::to_string(rs.size()) + " rows, expected " + std::to_string(rows));
  for (int i = 0; i < rows; ++i) {
    auto cs = split(rs[i], ',');
    if (static_cast<int>(cs.size()) != cols)
      throw InputError("matrix row has " + std::to_string(cs.size()) + " entries, expected " + std::to_string(cols));
    for (int j = 0; j < cols; ++j) m(i, j) = parse_rational(cs[j]);
  }
  return m;
}

struct ArrowAction {
  int arrow;
  Key src;
  Matrix block;
};

}  // namespace

AlgebraPtr algebra_from_string(const std::string& text, int bound) {
  auto a = build_algebra(parse_presentation_string(text), bound);
  validate_algebra(a);
  return make_shared_algebra(std::move(a));
}

AlgebraPtr load_algebra(const std::string& path, int bound) {
  auto a = build_algebra(parse_presentation_file(path), bound);
  validate_algebra(a);
  return make_shared_algebra(std::move(a));
}

GradedModule parse_module(std::istream& in, const AlgebraPtr& alg) {
  const auto& a = *alg;
  if (a.arrows().empty() && a.dim() > a.vertices())
    throw InputError("module files need an algebra given by a presentation");
  std::string name;
  std::vector<Key> tags;
  std::vector<std::pair<int, std::string>> action_lines;  // line number, text
  std::string line;
  int lineno = 0;
  bool ended = false;
  auto fail = [&](const std::string& msg) { throw InputError("line " + std::to_string(lineno) + ": " + msg); };
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string kw;
    ls >> kw;
    if (kw == "module") {
      std::string over, alg_name;
      if (!(ls >> name >> over >> alg_name) || over != "over") fail("expected 'module NAME over ALGEBRA'");
      if (!a.name().empty() && alg_name != a.name())
        fail("module is over " + alg_name + " but the algebra is " + a.name());
    } else if (kw == "space") {
      int v, d, dim;
      if (!(ls >> v >> d >> dim)) fail("expected 'space VERTEX DEGREE DIM'");
      if (v < 1 || v > a.vertices()) fail("vertex out of range");
      if (dim < 0) fail("negative dimension");
      for (const auto& t : tags)
        if (t.v == v - 1 && t.d == d) fail("space (" + std::to_string(v) + "," + std::to_string(d) + ") repeated");
      for (int i = 0; i < dim; ++i) tags.push_back({v - 1, d});
    } else if (kw == "action") {
      action_lines.emplace_back(lineno, line);
    } else if (kw == "end") {
      ended = true;
      break;
    } else {
      fail("unknown keyword '" + kw + "'");
    }
  }
  if (!ended) throw InputError("module file is missing 'end'");
  GradedModule m(alg, tags, name);

  std::vector<ArrowAction> actions;
  for (const auto& [ln, text] : action_lines) {
    lineno = ln;
    std::istringstream ls(text);
    std::string kw, arrow, mat;
    int d;
    if (!(ls >> kw >> arrow >> d >> mat) || mat != "matrix") fail("expected 'action ARROW DEGREE matrix ...'");
    std::string rest;
    std::getline(ls, rest);
    int ai = -1;
    for (size_t i = 0; i < a.arrows().size(); ++i)
      if (a.arrows()[i].name == arrow) ai = static_cast<int>(i);
    if (ai < 0) fail("unknown arrow '" + arrow + "'");
    const Arrow& ar = a.arrows()[ai];
    Key src{ar.src, d}, tgt{ar.tgt, d + ar.deg};
    int rows = m.block_dim(tgt), cols = m.block_dim(src);
    if (rows == 0 || cols == 0) fail("action of " + arrow + " at degree " + std::to_string(d) + " has an empty block");
    for (const auto& prev : actions)
      if (prev.arrow == ai && prev.src == src) fail("action of " + arrow + " given twice");
    try {
      actions.push_back({ai, src, parse_matrix(trim(rest), rows, cols)});
    } catch (const InputError& e) {
      fail(e.what());
    }
  }

  auto arrow_block = [&](int ai, const Key& src) -> std::optional<Matrix> {
    for (const auto& act : actions)
      if (act.arrow == ai && act.src == src) return act.block;
    return std::nullopt;
  };
  // Each basis path acts as the product of its arrows' blocks.
  for (int x = 0; x < a.dim(); ++x) {
    if (a.is_idempotent(x)) continue;
    const auto& path = a.paths()[x];
    if (path.empty()) throw InputError("algebra basis element " + a.element(x).label + " has no path");
    for (const auto& [k, idx] : m.blocks()) {
      if (k.v != a.element(x).src) continue;
      Key cur = k;
      Matrix acc = Matrix::identity(static_cast<int>(idx.size()));
      bool zero = false;
      for (int ai : path) {
        const Arrow& ar = a.arrows()[ai];
        Key next{ar.tgt, cur.d + ar.deg};
        auto b = arrow_block(ai, cur);
        if (!b || m.block_dim(next) == 0) {
          zero = true;
          break;
        }
        acc = (*b) * acc;
        cur = next;
      }
      if (!zero && !acc.is_zero()) m.set_block(x, k, acc);
    }
  }
  for (const auto& act : actions) {
    Matrix expect(act.block.rows(), act.block.cols());
    for (const auto& [z, c] : a.arrow_forms()[act.arrow])
      if (const Matrix* b = m.action_block(z, act.src)) expect += b->scaled(c);
    if (!(expect == act.block))
      throw InputError("action of arrow " + a.arrows()[act.arrow].name + " is inconsistent with the relations");
  }
  validate_module(m);
  return m;
}

GradedModule load_module(const std::string& path, const AlgebraPtr& alg) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return parse_module(in, alg);
}

GradedModule module_from_string(const std::string& text, const AlgebraPtr& alg) {
  std::istringstream in(text);
  return parse_module(in, alg);
}

std::string matrix_literal(const Matrix& m) {
  std::string out;
  for (int i = 0; i < m.rows(); ++i) {
    if (i) out += ';';
    for (int j = 0; j < m.cols(); ++j) {
      if (j) out += ',';
      out += to_string(m(i, j));
    }
  }
  return out;
}

void write_module(std::ostream& out, const GradedModule& m) {
  const auto& a = m.alg();
  out << "module " << (m.name().empty() ? "M" : m.name()) << " over " << (a.name().empty() ? "L" : a.name()) << "\n";
  for (const auto& [k, idx] : m.blocks()) out << "space " << k.v + 1 << ' ' << k.d << ' ' << idx.size() << "\n";
  for (size_t ai = 0; ai < a.arrows().size(); ++ai) {
    const auto& form = a.arrow_forms()[ai];
    for (const auto& [k, idx] : m.blocks()) {
      if (k.v != a.arrows()[ai].src) continue;
      Key t{a.arrows()[ai].tgt, k.d + a.arrows()[ai].deg};
      if (m.block_dim(t) == 0) continue;
      Matrix b(m.block_dim(t), static_cast<int>(idx.size()));
      for (const auto& [z, c] : form)
        if (const Matrix* blk = m.action_block(z, k)) b += blk->scaled(c);
      if (!b.is_zero()) out << "action " << a.arrows()[ai].name << ' ' << k.d << " matrix " << matrix_literal(b) << "\n";
    }
  }
  out << "end\n";
}

GradedModule inflate(const GradedModule& m, const AlgebraPtr& alg, const std::vector<int>& embedding) {
  if (m.highest_degree() != m.lowest_degree()) throw InputError("inflation needs a module concentrated in one degree");
  GradedModule out(alg, m.tags(), m.name());
  for (int i = 0; i < m.alg().dim(); ++i) {
    if (m.alg().is_idempotent(i)) continue;
    for (const auto& [k, idx] : m.blocks())
      if (const Matrix* b = m.action_block(i, k)) out.set_block(embedding[i], k, *b);
  }
  validate_module(out);
  return out;
}

}  // namespace kk
