#pragma once

#include <iosfwd>
#include <string>

#include "koszulkit/module.hpp"
#include "koszulkit/presentation.hpp"

namespace kk {

// Parses, builds and validates an algebra file.
AlgebraPtr load_algebra(const std::string& path, int bound = kDefaultPathBound);
AlgebraPtr algebra_from_string(const std::string& text, int bound = kDefaultPathBound);

// Module file: `space V D DIM` lines fix the basis (in order); `action ARROW D matrix ...`
// gives the block from (src, D) to (tgt, D + deg) with rows indexing the target basis.
// Arrows without an action line act by zero.
GradedModule parse_module(std::istream& in, const AlgebraPtr& alg);
GradedModule load_module(const std::string& path, const AlgebraPtr& alg);
GradedModule module_from_string(const std::string& text, const AlgebraPtr& alg);
void write_module(std::ostream& out, const GradedModule& m);

// Module over the degree-zero part, inflated to Λ with positive degrees acting by zero.
// Valid for modules concentrated in one degree.
GradedModule inflate(const GradedModule& m, const AlgebraPtr& alg, const std::vector<int>& embedding);

// "12", "-3/4" style rendering of a matrix for module files.
std::string matrix_literal(const Matrix& m);

}  // namespace kk
