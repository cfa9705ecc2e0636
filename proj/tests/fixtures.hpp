#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "koszulkit/io.hpp"
#include "koszulkit/koszul.hpp"

namespace kk::test {

inline std::string data_path(const std::string& file) { return std::string(KOSZULKIT_DATA_DIR) + "/" + file; }

inline AlgebraPtr algebra(const std::string& name) { return load_algebra(data_path(name + ".alg")); }

inline GradedModule module(const std::string& name, const AlgebraPtr& a) {
  return load_module(data_path(name + ".mod"), a);
}

inline AlgebraPtr trivial_extension_of(const std::string& name) {
  return make_shared_algebra(trivial_extension(*algebra(name)));
}

struct SquareExample {
  AlgebraPtr a, delta;
  std::vector<GradedModule> t;
};

inline SquareExample square_example() {
  SquareExample p;
  p.a = algebra("square_A");
  p.delta = algebra("square_deltaA");
  for (int i = 1; i <= 4; ++i) p.t.push_back(module("square_T" + std::to_string(i), p.delta));
  return p;
}

inline std::map<int, int> graded_dims(const GradedAlgebra& a) {
  std::map<int, int> d;
  for (const auto& e : a.basis()) ++d[e.deg];
  return d;
}

// Multiset of (source, target) over the generators of the radical modulo its square.
inline std::vector<std::pair<int, int>> arrow_endpoints(const GradedAlgebra& a, const std::vector<int>& relabel) {
  std::vector<std::pair<int, int>> out;
  for (int x : a.generators()) out.emplace_back(relabel[a.element(x).src], relabel[a.element(x).tgt]);
  std::sort(out.begin(), out.end());
  return out;
}

// True when some vertex bijection carries the quiver of `a` onto the quiver of `b`.
inline bool same_quiver(const GradedAlgebra& a, const GradedAlgebra& b) {
  if (a.vertices() != b.vertices()) return false;
  std::vector<int> id(b.vertices());
  std::iota(id.begin(), id.end(), 0);
  auto target = arrow_endpoints(b, id);
  std::vector<int> perm = id;
  do {
    if (arrow_endpoints(a, perm) == target) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace kk::test
