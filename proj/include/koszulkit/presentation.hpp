#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "koszulkit/algebra.hpp"

namespace kk {

struct Quiver {
  int vertices = 0;
  std::vector<Arrow> arrows;  // vertices are 0-based internally
  int arrow_index(const std::string& name) const;
};

struct Relation {
  std::vector<std::pair<Q, std::vector<int>>> terms;  // coefficient, arrow indices in αβ order
};

struct Presentation {
  std::string name;
  Quiver quiver;
  std::vector<Relation> relations;
};

inline constexpr int kDefaultPathBound = 24;

// kQ/<rels>, basis chosen length by length as the lexicographically smallest
// surviving paths. Relations must be homogeneous in path length as well as degree.
GradedAlgebra build_algebra(const Quiver& q, const std::vector<Relation>& rels, int bound = kDefaultPathBound,
                            const std::string& name = "");
GradedAlgebra build_algebra(const Presentation& p, int bound = kDefaultPathBound);

// Number of paths of length <= bound, trivial paths included.
long long path_count(const Quiver& q, int bound);

Presentation parse_presentation(std::istream& in);
Presentation parse_presentation_file(const std::string& path);
Presentation parse_presentation_string(const std::string& text);
void write_presentation(std::ostream& out, const Presentation& p);

}  // namespace kk
